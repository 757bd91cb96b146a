"""Simplicial complexes on [m], full subcomplexes and the reduced simplicial
cohomology oracle.

Simplices are bitmasks: vertex ``i`` (1-based) is bit ``i - 1``.
"""

from __future__ import annotations

import json
from functools import cached_property
from itertools import combinations, product
from typing import Iterable, Sequence

from .coeffs import Coeff, ZZ
from .linalg import FiniteCochainComplex, cohomology
from .results import CohomologyResult


class InputError(ValueError):
    """Malformed user input (complexes, spaces, configuration)."""


def mask(vertices: Iterable[int]) -> int:
    out = 0
    for v in vertices:
        out |= 1 << (v - 1)
    return out


def members(m: int) -> list[int]:
    """Increasing list of the 1-based vertices in a bitmask."""
    out = []
    i = 1
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return out


def popcount(m: int) -> int:
    return bin(m).count("1")


def simplex_order(s: int):
    return (popcount(s), members(s))


class SimplicialComplex:
    """Downward closed family of subsets of [m] containing the empty set."""

    def __init__(self, m: int, simplices: Iterable[int], name: str = ""):
        if m < 0 or m > 63:
            raise InputError("vertex count must lie in 0..63")
        self.m = m
        self.name = name
        faces = set(simplices) | {0}
        full = (1 << m) - 1
        for s in faces:
            if s & ~full:
                raise InputError(f"simplex {members(s)} is not a subset of [{m}]")
        self._faces = frozenset(faces)
        for s in faces:
            for v in members(s):
                if s & ~(1 << (v - 1)) not in self._faces:
                    raise InputError(f"not downward closed at {members(s)}")

    @cached_property
    def simplices(self) -> list[int]:
        return sorted(self._faces, key=simplex_order)

    @property
    def vertex_mask(self) -> int:
        return (1 << self.m) - 1

    def __contains__(self, s: int) -> bool:
        return s in self._faces

    def __len__(self):
        return len(self._faces)

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self.m == other.m and self._faces == other._faces

    def __hash__(self):
        return hash((self.m, self._faces))

    def __repr__(self):
        return f"SimplicialComplex(m={self.m}, facets={[members(f) for f in self.facets]})"

    @cached_property
    def facets(self) -> list[int]:
        return [s for s in self.simplices
                if not any(s != t and s & t == s for t in self._faces)]

    @property
    def dim(self) -> int:
        return max(popcount(s) for s in self._faces) - 1

    def f_vector(self) -> list[int]:
        """Number of simplices of each dimension -1, 0, 1, ..."""
        out = [0] * (self.dim + 2)
        for s in self._faces:
            out[popcount(s)] += 1
        return out

    def euler_characteristic(self) -> int:
        """Reduced Euler characteristic (the empty simplex counts in degree -1)."""
        return sum((n if k % 2 else -n) for k, n in enumerate(self.f_vector()))

    def relabel(self, perm: Sequence[int]) -> "SimplicialComplex":
        """Image under the vertex map i -> perm[i-1]."""
        return SimplicialComplex(self.m, [mask(perm[v - 1] for v in members(s)) for s in self._faces],
                                 self.name + "'")

    def to_json(self) -> dict:
        return {"m": self.m, "facets": [members(f) for f in self.facets]}


def close_and_validate(facets: Iterable[Iterable[int]], m: int, name: str = "") -> SimplicialComplex:
    """Downward closure of a facet list on the vertex set [m]."""
    faces = {0}
    for f in facets:
        f = list(f)
        for v in f:
            if not isinstance(v, int) or v < 1 or v > m:
                raise InputError(f"facet {f} has vertex {v} outside [1, {m}]")
        vs = sorted(set(f))
        for k in range(1, len(vs) + 1):
            for sub in combinations(vs, k):
                faces.add(mask(sub))
    return SimplicialComplex(m, faces, name)


def load_complex(text: str, name: str = "") -> SimplicialComplex:
    """Parse the JSON complex format ``{"m": int, "facets": [[...], ...]}``."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"bad complex JSON at line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(data, dict) or "m" not in data or "facets" not in data:
        raise InputError('complex JSON must be an object with keys "m" and "facets"')
    return close_and_validate(data["facets"], int(data["m"]), name)


def full_subcomplex(K: SimplicialComplex, J: int | Iterable[int]) -> SimplicialComplex:
    """K_J = {sigma in K : sigma subset of J}, re-indexed over J (order kept)."""
    Jm = J if isinstance(J, int) else mask(J)
    if Jm & ~K.vertex_mask:
        raise InputError("J must be a subset of [m]")
    verts = members(Jm)
    pos = {v: i + 1 for i, v in enumerate(verts)}
    faces = [mask(pos[v] for v in members(s)) for s in K.simplices if s & Jm == s]
    return SimplicialComplex(len(verts), faces, f"{K.name}_{verts}")


def full_subcomplex_masks(K: SimplicialComplex, J: int) -> list[int]:
    """Simplices of K_J without re-indexing."""
    return [s for s in K.simplices if s & J == s]


# ------------------------------------------------------------------- oracle

def simplicial_cochain_complex(K: SimplicialComplex) -> FiniteCochainComplex:
    """Augmented cochain complex: C^{-1} = k (empty simplex), C^q = q-simplices.
    (delta phi)(tau) = sum_i (-1)^i phi(tau minus its i-th vertex)."""
    by_size: dict[int, list[int]] = {}
    for s in K.simplices:
        by_size.setdefault(popcount(s), []).append(s)
    top = max(by_size)
    layers = [by_size.get(k, []) for k in range(top + 1)]
    ranks = [len(L) for L in layers]
    diffs = []
    for k in range(top):
        src = {s: i for i, s in enumerate(layers[k])}
        D = [[0] * len(layers[k]) for _ in layers[k + 1]]
        for r, tau in enumerate(layers[k + 1]):
            for i, v in enumerate(members(tau)):
                D[r][src[tau & ~(1 << (v - 1))]] = (-1) ** i
        diffs.append(D)
    return FiniteCochainComplex(ranks, diffs, start=-1)


def reduced_cohomology(K: SimplicialComplex, coeff: Coeff = ZZ) -> CohomologyResult:
    """Reduced simplicial cohomology; {empty} has k in degree -1."""
    if not isinstance(coeff, Coeff):
        raise InputError(f"unsupported coefficient ring {coeff!r}")
    return cohomology(simplicial_cochain_complex(K), coeff)


def splitting_oracle(K: SimplicialComplex, coeff: Coeff = ZZ, mode: str = "real",
                     degrees: Sequence | None = None) -> CohomologyResult:
    """Sum over J of the reduced cohomology of the suspension of K_J, shifted.

    mode ``"real"``:   shift 1 (the real moment-angle complex).
    mode ``"sphere"``: ``degrees`` = (n_1..n_m); the J-summand is shifted by
                       1 + sum of n_i over J (all n_i = 1: moment-angle complex).
    mode ``"tensor"``: ``degrees`` = per-vertex lists of the degrees of a basis
                       of the reduced cohomology H_i; the J-summand is tensored
                       with the product of the H_i over J.
    """
    m = K.m
    if mode == "real":
        per_vertex = [[0]] * m
    elif mode == "sphere":
        if degrees is None or len(degrees) != m:
            raise InputError("sphere mode needs one degree per vertex")
        per_vertex = [[int(n)] for n in degrees]
    elif mode == "tensor":
        if degrees is None or len(degrees) != m:
            raise InputError("tensor mode needs one degree list per vertex")
        per_vertex = [list(d) for d in degrees]
    else:
        raise InputError(f"unknown oracle mode {mode!r}")
    out = CohomologyResult(coeff=str(coeff))
    for J in range(1 << m):
        H = reduced_cohomology(full_subcomplex(K, J), coeff)
        if not H.groups:
            continue
        for choice in product(*(per_vertex[v - 1] for v in members(J))):
            out = out.direct_sum(H, 1 + sum(choice))
    return out


# ------------------------------------------------------------------ catalog

RP2_6_FACETS = [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
                (2, 3, 5), (2, 4, 5), (2, 4, 6), (3, 4, 6), (3, 5, 6)]

ALIASES = {"square": "gon4", "pentagon": "gon5", "hexagon": "gon6",
           "triangle": "boundary3", "rp2": "rp2_6"}


def catalog(name: str) -> SimplicialComplex:
    """Built-in complexes: simplex{m}, boundary{m}, gon{m} (m = 4..8),
    points{m}, rp2_6."""
    key = ALIASES.get(name, name)
    if key == "rp2_6":
        return close_and_validate(RP2_6_FACETS, 6, key)
    for prefix in ("simplex", "boundary", "gon", "points"):
        if key.startswith(prefix) and key[len(prefix):].isdigit():
            m = int(key[len(prefix):])
            break
    else:
        raise InputError(f"unknown catalog complex {name!r}")
    if m < 1 or m > 63:
        raise InputError(f"bad vertex count in {name!r}")
    V = range(1, m + 1)
    if prefix == "simplex":
        return close_and_validate([list(V)], m, key)
    if prefix == "boundary":
        if m < 2:
            raise InputError("boundary needs m >= 2")
        return close_and_validate([[v for v in V if v != i] for i in V], m, key)
    if prefix == "gon":
        if not 4 <= m <= 8:
            raise InputError("gon{m} is defined for m = 4..8")
        return close_and_validate([[i, i % m + 1] for i in V], m, key)
    return close_and_validate([[i] for i in V], m, key)


CATALOG_NAMES = ["simplex3", "boundary3", "boundary4", "boundary5", "gon4", "gon5", "gon6",
                 "points2", "points3", "points4", "rp2_6"]
