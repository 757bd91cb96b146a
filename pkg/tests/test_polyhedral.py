from __future__ import annotations

import json

import pytest

from dgpoly.coeffs import QQ, ZZ
from dgpoly.dga import check_d_squared, check_leibniz, check_unit, cohomology_ring
from dgpoly.polyhedral import (Space, build_b_dga, build_bxk, build_cxk, build_rxk, cp2, load_spaces,
                               map_f_X, map_g, map_h, oracle_compare_cxx, preset_spaces, sphere,
                               summand_check, suspension_coincidence_check, validate_space,
                               verify_f_X, verify_h_g, wedge_s1_s2)
from dgpoly.results import Group
from dgpoly.simplicial import InputError, catalog, mask


def circles(m):
    return preset_spaces("spheres", m)


def s1_wedge_s1():
    return validate_space(Space("S1vS1", ["a", "b"], [1, 1], is_suspension=True))


def test_presets_are_valid():
    assert sphere(3).degs == [3]
    w = wedge_s1_s2()
    assert w.degs == [1, 2] and w.is_suspension and not w.mul


def test_torus_like_input_rejected():
    text = json.dumps({"spaces": [{"name": "T", "generators": [{"id": "x", "deg": 1}, {"id": "y", "deg": 1},
                                                                {"id": "z", "deg": 2}],
                                   "products": [{"left": "x", "right": "y", "value": [{"id": "z"}]},
                                                {"left": "y", "right": "x", "value": [{"id": "z"}]}]}]})
    with pytest.raises(InputError, match="graded commutative"):
        load_spaces(text)


def test_suspension_with_product_rejected():
    with pytest.raises(InputError):
        validate_space(Space("bad", ["x", "y"], [2, 4], {(0, 0): {1: 1}}, is_suspension=True))


def test_degree_mismatch_rejected():
    with pytest.raises(InputError, match="additive"):
        validate_space(Space("bad", ["x", "y"], [2, 3], {(0, 0): {1: 1}}))


def test_spaces_json_round_trip():
    spaces = [wedge_s1_s2(), cp2()]
    again = load_spaces(json.dumps({"spaces": [s.to_json() for s in spaces]}))
    assert [s.to_json() for s in again] == [s.to_json() for s in spaces]


def test_cxk_basis_size_two_points_circles():
    assert len(build_cxk(catalog("points2"), circles(2))) == 8


def test_cxk_wedge_doubles_component_one():
    K = catalog("points2")
    C = build_cxk(K, preset_spaces("wedge", 2))
    comp = [k for k in C.basis if C.support[k] == 0b01]
    base = [k for k in build_cxk(K, circles(2)).basis if k[0] | k[1] == 0b01]
    assert len(comp) == 2 * len(base)


def test_cxk_total_degree():
    C = build_cxk(catalog("points2"), circles(2))
    assert C.total((0b01, 0b10, (0, 0))) == 3


def test_bxk_repeated_index_products_vanish():
    B, P = build_bxk(catalog("gon4"), circles(4))
    for a in B.basis:
        for b in B.basis:
            if (a[0] | a[1]) & (b[0] | b[1]):
                assert P(a, b) == {}


def test_bxk_two_points_top_class_squares_to_zero():
    B, P = build_bxk(catalog("points2"), circles(2))
    ring = cohomology_ring(B, P, QQ)
    assert ring.degrees == [0, 3]
    assert ring.product(1, 1) == {}
    assert check_unit(P).ok


def test_rxk_matches_cxk_for_spheres():
    for name in ("gon4", "boundary3", "points3"):
        K = catalog(name)
        C, R = build_cxk(K, circles(K.m)), build_rxk(K, circles(K.m))
        assert len(C) == len(R)
        assert C.cohomology() == R.cohomology()


def test_rxk_repeated_first_index():
    K = catalog("points1")
    R = build_rxk(K, [s1_wedge_s1()])
    word = (((1, 0),), ((1, 1),))       # ub_{1,a} b_{1,b}
    assert word in R.index
    assert R.d_basis((((1, 0), (1, 1)), ())) == {(((1, 1),), ((1, 0),)): 1, (((1, 0),), ((1, 1),)): -1}
    assert word not in map_g(R)


def test_h_g_spheres_are_inverse():
    K = catalog("gon5")
    C, R = build_cxk(K, circles(5)), build_rxk(K, circles(5))
    h, g = map_h(C), map_g(R)
    assert sorted(h.values()) == sorted(R.basis)
    assert all(g[h[x]] == x for x in C.basis)


@pytest.mark.parametrize("preset", ["spheres", "wedge"])
def test_h_g_chain_maps(preset):
    K = catalog("gon4")
    assert all(r.ok for r in verify_h_g(K, preset_spaces(preset, 4)))


def test_f_X_examples():
    C = build_cxk(catalog("simplex2"), circles(2))
    f = map_f_X(C)
    assert f[(0, 0, ())] == ((0, 0, ()), 1)
    assert f[(0b10, 0b01, (0, 0))] == ((0b10, 0b01, (0, 0)), -1)
    assert verify_f_X(catalog("gon4"), circles(4)).ok


def test_b_dga_zero_differential_reduces_to_bxk():
    K = catalog("gon4")
    D, P = build_b_dga(K, circles(4))
    B, PB = build_bxk(K, circles(4))
    assert D.basis == B.basis and D.diff == B.diff
    assert all(P(a, b) == PB(a, b) for a in B.basis[:20] for b in B.basis)


def test_b_dga_three_term_circle_model():
    K = catalog("points2")
    D, P = build_b_dga(K, preset_spaces("s1dga", 2))
    assert check_d_squared(D).ok
    assert check_leibniz(D, P, "total_degree").ok
    assert D.cohomology() == build_bxk(K, circles(2))[0].cohomology()


def test_suspension_coincidence_on_square():
    assert all(r.ok for r in suspension_coincidence_check(catalog("gon4"), circles(4)))


def test_non_suspension_gate():
    (r,) = suspension_coincidence_check(catalog("points2"), preset_spaces("cp2", 2))
    assert r.status == "skipped" and "not applicable" in r.detail
    assert r.witness


def test_oracle_two_points_is_s3():
    K = catalog("points2")
    assert all(r.ok for r in oracle_compare_cxx(K, circles(2)))
    assert build_bxk(K, circles(2))[0].cohomology().groups == {0: Group(1), 3: Group(1)}


def test_oracle_triangle_is_s5():
    K = catalog("boundary3")
    assert build_bxk(K, circles(3))[0].cohomology().groups == {0: Group(1), 5: Group(1)}


def test_oracle_rp2_mixed_spheres():
    K = catalog("rp2_6")
    X = preset_spaces("spheres:1,1,2,2,3,3", 6)
    assert all(r.ok for r in oracle_compare_cxx(K, X, ZZ, models=("C",)))
    H = build_cxk(K, X).cohomology()
    assert any(g.torsion == (2,) for g in H.groups.values())


def test_summand_wedge_strict_and_spheres_equal():
    K = catalog("points2")
    assert summand_check(K, preset_spaces("wedge", 2), strict=True).ok
    assert summand_check(K, circles(2), strict=False).ok


def test_wrong_number_of_spaces():
    with pytest.raises(InputError):
        build_cxk(catalog("gon4"), circles(3))
