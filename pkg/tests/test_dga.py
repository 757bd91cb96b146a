from __future__ import annotations

import pytest

from dgpoly.coeffs import GF, QQ, ZZ
from dgpoly.dga import (MonomialComplex, ProductTable, check_associativity, check_d_squared,
                        check_graded_commutative, check_leibniz, check_ring_well_defined, check_unit,
                        cohomology_ring)
from dgpoly.linalg import StructureError
from dgpoly.realmac import build_bk, build_rbar
from dgpoly.simplicial import catalog


def test_d_squared_passes_on_models():
    assert check_d_squared(build_rbar(catalog("points2"))).ok
    assert check_d_squared(build_bk(catalog("gon4"))[0]).ok


def test_flipped_sign_is_caught_with_witness():
    B, _ = build_bk(catalog("simplex3"))
    src = (0b111, 0)
    tgt = next(iter(B.d_basis(src)))
    bad = B.with_flipped_sign(src, tgt)
    r = check_d_squared(bad)
    assert not r.ok and r.witness is not None


def test_leibniz_catches_product_sign_fault():
    B, P = build_bk(catalog("gon4"))
    site = ((0b0001, 0b0010), (0b0100, 0))       # s1 t2 * s3
    assert P(*site)

    def mul(a, b):
        r = P(a, b)
        return {k: -v for k, v in r.items()} if (a, b) == site else r

    bad = ProductTable(B, mul, P.unit, "faulty")
    assert not (check_associativity(bad).ok and check_leibniz(B, bad, "total_degree").ok)


def test_cohomology_refuses_non_cochain_block():
    C = MonomialComplex("bad", ["a", "b", "c"], {"a": (0, 0), "b": (0, 1), "c": (0, 2)},
                        {"a": 1, "b": 1, "c": 1}, {"a": {"b": 1}, "b": {"c": 1}})
    with pytest.raises(StructureError):
        C.cohomology()


def ring_of(name, coeff=QQ):
    B, P = build_bk(catalog(name))
    return cohomology_ring(B, P, coeff)


def test_ring_two_points_is_circle():
    ring = ring_of("points2")
    assert ring.degrees == [0, 1]
    assert ring.product(1, 1) == {}
    assert ring.unit_index() == 0


def test_ring_square_is_torus():
    ring = ring_of("gon4")
    assert ring.degrees == [0, 1, 1, 2]
    a, b = ring.classes_in(1)
    assert ring.product(a, a) == {} and ring.product(b, b) == {}
    ab, ba = ring.product(a, b), ring.product(b, a)
    assert ab and ba == {k: -v for k, v in ab.items()}
    assert list(ab) == ring.classes_in(2)


@pytest.mark.parametrize("name", ["points3", "gon5", "boundary4", "simplex3"])
def test_ring_axioms(name):
    for coeff in (QQ, GF(2)):
        ring = ring_of(name, coeff)
        assert ring.unit_index() is not None
        assert check_graded_commutative(ring).ok
        assert check_ring_well_defined(ring).ok


def test_ring_over_integers_is_refused():
    B, P = build_bk(catalog("points2"))
    with pytest.raises(ValueError):
        cohomology_ring(B, P, ZZ)


def test_unit_law_fails_without_unit():
    B, P = build_bk(catalog("points2"))
    bad = ProductTable(B, P._mul, (0b1, 0), "wrong unit")
    assert not check_unit(bad).ok
