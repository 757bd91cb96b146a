from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dgpoly.coeffs import GF, QQ, ZZ
from dgpoly.linalg import (FiniteCochainComplex, StructureError, cohomology, det, identity, matmul,
                           rank, smith_normal_form, solve_in_image)
from dgpoly.results import Group
from dgpoly.simplicial import catalog, simplicial_cochain_complex

TRIANGLE_COBOUNDARY = [[-1, 1, 0], [-1, 0, 1], [0, -1, 1]]


def test_snf_small():
    snf = smith_normal_form([[2, 4], [6, 8]])
    assert snf.diagonal == [2, 4]


def test_snf_zero_and_identity():
    assert smith_normal_form([[0, 0], [0, 0]]).diagonal == [0, 0]
    snf = smith_normal_form(identity(3))
    assert snf.D == identity(3)


def test_cohomology_multiplication_by_two():
    H = cohomology(FiniteCochainComplex([1, 1], [[[2]]]))
    assert H.groups == {1: Group(0, (2,))}


def test_cohomology_zero_differentials():
    H = cohomology(FiniteCochainComplex([2, 0, 3]))
    assert H.groups == {0: Group(2), 2: Group(3)}


def test_cohomology_of_triangle_cochains():
    H = cohomology(FiniteCochainComplex([3, 3], [TRIANGLE_COBOUNDARY]))
    assert H.groups == {0: Group(1), 1: Group(1)}


def test_d_squared_violation_is_an_error():
    with pytest.raises(StructureError):
        cohomology(FiniteCochainComplex([1, 1, 1], [[[1]], [[1]]]))


def test_solve_identity():
    assert solve_in_image(identity(3), [4, -1, 7]) == [4, -1, 7]


def test_solve_two():
    assert solve_in_image([[2]], [1], ZZ) is None
    assert solve_in_image([[2]], [1], QQ) == [Fraction(1, 2)]


def test_solve_coboundary_round_trip():
    x0 = [3, -2, 5]
    b = [sum(a * x for a, x in zip(row, x0)) for row in TRIANGLE_COBOUNDARY]
    x = solve_in_image(TRIANGLE_COBOUNDARY, b)
    assert [sum(a * v for a, v in zip(row, x)) for row in TRIANGLE_COBOUNDARY] == b
    assert solve_in_image(TRIANGLE_COBOUNDARY, [1, 0, 0]) is None


def test_simplicial_cochains_of_rp2_compose_to_zero():
    simplicial_cochain_complex(catalog("rp2_6")).check_d_squared()


matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)))


@given(matrices)
def test_snf_invariants(A):
    snf = smith_normal_form(A)
    r, c = len(A), len(A[0])
    assert matmul(matmul(snf.U, A), snf.V, cols=c) == snf.D
    assert abs(det(snf.U)) == 1 and abs(det(snf.V)) == 1
    for i in range(r):
        for j in range(c):
            if i != j:
                assert snf.D[i][j] == 0
    d = snf.diagonal
    assert all(x >= 0 for x in d)
    for a, b in zip(d, d[1:]):
        assert (b == 0) if a == 0 else (b % a == 0)
    assert rank(A, QQ) == snf.rank


@given(matrices, st.data())
def test_solve_in_image_round_trip(A, data):
    c = len(A[0])
    x0 = data.draw(st.lists(st.integers(-5, 5), min_size=c, max_size=c))
    b = [sum(a * x for a, x in zip(row, x0)) for row in A]
    for coeff in (ZZ, QQ):
        x = solve_in_image(A, b, coeff)
        assert x is not None
        assert [sum(a * v for a, v in zip(row, x)) for row in A] == b


@st.composite
def cochain_complexes(draw):
    """d1 o d0 = 0 by construction: d0 = P X, d1 = Y Q with Q P = 0."""
    n0, n1, n2 = (draw(st.integers(0, 4)) for _ in range(3))
    k = draw(st.integers(0, n1))
    # split Z^n1 as Z^k + Z^(n1-k): d0 lands in the first part, d1 kills it
    d0 = [[draw(st.integers(-3, 3)) if i < k else 0 for _ in range(n0)] for i in range(n1)]
    d1 = [[draw(st.integers(-3, 3)) if j >= k else 0 for j in range(n1)] for _ in range(n2)]
    return FiniteCochainComplex([n0, n1, n2], [d0, d1])


@given(cochain_complexes())
def test_rational_ranks_are_integral_free_ranks(C):
    HZ, HQ = cohomology(C, ZZ), cohomology(C, QQ)
    assert HQ.ranks() == {k: g.rank for k, g in HZ.groups.items() if g.rank}


@given(cochain_complexes())
def test_euler_characteristic_of_complex(C):
    for coeff in (QQ, GF(2), GF(3)):
        assert cohomology(C, coeff).euler_characteristic() == C.ranks[0] - C.ranks[1] + C.ranks[2]
