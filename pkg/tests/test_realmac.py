from __future__ import annotations

import pytest

from dgpoly.coeffs import QQ, ZZ, GF
from dgpoly.dga import (check_associativity, check_d_squared, check_leibniz, check_product_grading,
                        check_unit)
from dgpoly.realmac import (basis_pairs, build_bk, build_rbar, epsilon, map_f, rbar_product,
                            support_components, verify_f)
from dgpoly.results import Group
from dgpoly.simplicial import CATALOG_NAMES, InputError, catalog, mask, reduced_cohomology, full_subcomplex

W12 = (mask([1, 2]), 0)


def key(I=(), L=()):
    return (mask(I), mask(L))


def test_basis_size_two_points():
    K = catalog("points2")
    assert len(build_rbar(K)) == 8 == len(build_bk(K)[0])


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_basis_count_formula(name):
    K = catalog(name)
    want = sum(2 ** (K.m - bin(L).count("1")) for L in K.simplices)
    assert len(basis_pairs(K)) == want


def test_rbar_differential_of_w1w2():
    R = build_rbar(catalog("simplex2"))
    assert R.d_basis(W12) == {key([2], [1]): 1, key([1], [2]): -1}


def test_rbar_missing_face_kills_term():
    R = build_rbar(catalog("points2"))
    assert R.d_basis(key([1], [2])) == {}


def test_bk_differential_of_s1s2():
    B, _ = build_bk(catalog("simplex2"))
    assert B.d_basis(W12) == {key([2], [1]): -1, key([1], [2]): -1}


def test_bk_products():
    K = catalog("simplex2")
    _, P = build_bk(K)
    assert P(key([], [2]), key([], [1])) == {key([], [1, 2]): -1}
    assert P(key([2], [1]), key([1], [2])) == {}       # s2 t2 = 0 at index 2
    assert P(key([1]), key([1])) == {key([1]): 1}      # s1 s1 = s1
    assert P(key([], [1]), key([1])) == {key([], [1]): 1}   # t1 s1 = t1
    assert P(key([1]), key([], [1])) == {}             # s1 t1 = 0
    _, P2 = build_bk(catalog("points2"))
    assert P2(key([], [1]), key([], [2])) == {}        # t1 t2 = 0 off K


def test_epsilon_examples():
    assert epsilon([], [1, 2, 3]) == 1
    assert epsilon([2], [1]) == -1
    assert epsilon([1, 3], [2]) == -1
    with pytest.raises(InputError):
        epsilon([1, 2], [2])


def test_map_f_examples():
    f = map_f(catalog("simplex2"))
    assert f[(0, 0)] == ((0, 0), 1)
    assert f[key([2], [1])] == (key([2], [1]), -1)


def test_f_on_w1w2_matches_both_sides():
    K = catalog("simplex2")
    R, (B, _) = build_rbar(K), build_bk(K)
    f = map_f(K)
    lhs = {f[k][0]: f[k][1] * c for k, c in R.d_basis(W12).items()}
    assert lhs == {key([2], [1]): -1, key([1], [2]): -1}
    assert lhs == B.d_basis(W12)         # p = 2, sign +1


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_fddf_on_catalog(name):
    assert verify_f(catalog(name)).ok


def test_support_component_two_points():
    R = build_rbar(catalog("points2"))
    comps = support_components(R)
    assert set(comps[0].basis) == {(0, 0)} and not comps[0].diff
    top = comps[mask([1, 2])]
    assert set(top.basis) == {W12, key([1], [2]), key([2], [1])}
    assert top.cohomology().groups == {1: Group(1)}


@pytest.mark.parametrize("name", ["gon5", "boundary4", "rp2_6"])
def test_support_components_match_oracle(name):
    K = catalog(name)
    for J, C in support_components(build_rbar(K)).items():
        want = reduced_cohomology(full_subcomplex(K, J)).shifted(1)
        assert C.cohomology() == want


@pytest.mark.parametrize("name", ["points3", "gon4", "boundary4", "simplex3"])
def test_structure_of_both_models(name):
    K = catalog(name)
    R, (B, PB) = build_rbar(K), build_bk(K)
    PR = rbar_product(K, R)
    assert check_d_squared(R).ok and check_d_squared(B).ok
    assert check_leibniz(R, PR, "first_degree").ok
    assert check_leibniz(B, PB, "total_degree").ok
    for P in (PR, PB):
        assert check_associativity(P).ok and check_unit(P).ok
    assert check_product_grading(PR, True).ok
    assert check_product_grading(PB, False).ok


def test_bk_wrong_sign_mode_fails():
    B, P = build_bk(catalog("gon4"))
    assert not check_leibniz(B, P, "first_degree").ok


def test_bk_product_is_not_bigraded():
    # s1 t1 ... t1 s1 = t1 loses the bidegree of s1
    _, P = build_bk(catalog("gon4"))
    assert not check_product_grading(P, True).ok


def test_rp2_torsion_in_degree_three():
    K = catalog("rp2_6")
    B, _ = build_bk(K)
    H = B.cohomology(ZZ)
    assert H[3] == Group(0, (2,))
    assert H == build_rbar(K).cohomology(ZZ)
    assert B.cohomology(GF(2))[3].rank == 1 and B.cohomology(QQ)[3].rank == 0
