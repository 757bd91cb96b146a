"""Exact DG models for the cohomology of polyhedral products and
moment-angle complexes."""

from .coeffs import GF, QQ, ZZ, Coeff
from .results import CohomologyResult, Group
from .simplicial import InputError, SimplicialComplex, catalog, load_complex, splitting_oracle

__version__ = "0.1.0"

__all__ = ["Coeff", "ZZ", "QQ", "GF", "CohomologyResult", "Group", "InputError",
           "SimplicialComplex", "catalog", "load_complex", "splitting_oracle"]
