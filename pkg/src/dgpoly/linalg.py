"""Exact integer and finite-field linear algebra.

Matrices are lists of rows of Python ints (arbitrary precision).  Over the
rationals, elimination uses :class:`fractions.Fraction`; over Z/p it works
with residues.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Optional

from .coeffs import Coeff, ZZ
from .results import CohomologyResult


class StructureError(ValueError):
    """A structural contract (such as d o d = 0) is violated."""


Matrix = list  # list[list[int]]


def zeros(r: int, c: int) -> Matrix:
    return [[0] * c for _ in range(r)]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def shape(A: Matrix, cols: int | None = None) -> tuple[int, int]:
    if not A:
        return 0, (cols or 0)
    return len(A), len(A[0])


def matmul(A: Matrix, B: Matrix, inner: int | None = None, cols: int | None = None) -> Matrix:
    r = len(A)
    k = len(A[0]) if A else (inner or 0)
    c = len(B[0]) if B else (cols or 0)
    out = zeros(r, c)
    for i in range(r):
        Ai = A[i]
        Oi = out[i]
        for t in range(k):
            a = Ai[t]
            if a:
                Bt = B[t]
                for j in range(c):
                    if Bt[j]:
                        Oi[j] += a * Bt[j]
    return out


def is_zero(A: Matrix) -> bool:
    return all(not x for row in A for x in row)


def det(A: Matrix) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [row[:] for row in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


# ---------------------------------------------------------------- Smith form

@dataclass
class SNFResult:
    U: Matrix
    D: Matrix
    V: Matrix

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def _snf(A: Matrix, cols: int, track: bool):
    """Core Smith reduction.  Pivot = entry of minimal absolute value in the
    trailing block, ties broken by (row, col).  Returns (D, U, V) with
    U A V = D (U, V are None when not tracked)."""
    M = [row[:] for row in A]
    r, c = len(M), cols
    U = identity(r) if track else None
    V = identity(c) if track else None

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        if track:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        if track:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        Md, Ms = M[dst], M[src]
        for j in range(c):
            if Ms[j]:
                Md[j] += q * Ms[j]
        if track:
            Ud, Us = U[dst], U[src]
            for j in range(r):
                if Us[j]:
                    Ud[j] += q * Us[j]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in M:
            if row[src]:
                row[dst] += q * row[src]
        if track:
            for row in V:
                if row[src]:
                    row[dst] += q * row[src]

    for t in range(min(r, c)):
        while True:
            best = None
            for i in range(t, r):
                Mi = M[i]
                for j in range(t, c):
                    v = Mi[j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
                        if best[0] == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                return M, U, V
            _, pi, pj = best
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            p = M[t][t]
            clean = True
            for i in range(t + 1, r):
                if M[i][t]:
                    add_row(i, t, -(M[i][t] // p))
                    if M[i][t]:
                        clean = False
            for j in range(t + 1, c):
                if M[t][j]:
                    add_col(j, t, -(M[t][j] // p))
                    if M[t][j]:
                        clean = False
            if not clean:
                continue
            bad = None
            for i in range(t + 1, r):
                Mi = M[i]
                for j in range(t + 1, c):
                    if Mi[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if M[t][t] < 0:
            M[t] = [-x for x in M[t]]
            if track:
                U[t] = [-x for x in U[t]]
    return M, U, V


def smith_normal_form(A: Matrix, cols: int | None = None) -> SNFResult:
    """Smith normal form with unimodular transforms: U A V = D."""
    r, c = shape(A, cols)
    D, U, V = _snf(A, c, track=True)
    if r == 0:
        D = []
    return SNFResult(U, D, V)


def elementary_divisors(A: Matrix, cols: int | None = None) -> list[int]:
    """Nonzero diagonal entries of the Smith form (no transforms kept)."""
    r, c = shape(A, cols)
    if r == 0 or c == 0:
        return []
    D, _, _ = _snf(A, c, track=False)
    return [D[i][i] for i in range(min(r, c)) if D[i][i]]


# ------------------------------------------------------------ field routines

def _to_field(A: Matrix, coeff: Coeff) -> list[list]:
    return [[coeff.convert(x) for x in row] for row in A]


def rref(A: Matrix, coeff: Coeff, cols: int | None = None):
    """Reduced row echelon form over a field.  Returns (R, pivot_columns)."""
    r, c = shape(A, cols)
    M = _to_field(A, coeff)
    pivots = []
    row = 0
    for j in range(c):
        if row >= r:
            break
        piv = next((i for i in range(row, r) if M[i][j]), None)
        if piv is None:
            continue
        M[row], M[piv] = M[piv], M[row]
        inv = coeff.inv(M[row][j])
        M[row] = [coeff.norm(x * inv) for x in M[row]]
        for i in range(r):
            if i != row and M[i][j]:
                f = M[i][j]
                Mi, Mr = M[i], M[row]
                M[i] = [coeff.norm(Mi[k] - f * Mr[k]) for k in range(c)]
        pivots.append(j)
        row += 1
    return M, pivots


def _rank_Z(A: Matrix) -> int:
    """Rank over Q by fraction-free elimination on integer rows."""
    rows = [row[:] for row in A if any(row)]
    if not rows:
        return 0
    c = len(rows[0])
    rank = 0
    for j in range(c):
        piv = next((i for i in range(rank, len(rows)) if rows[i][j]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        P = rows[rank]
        a = P[j]
        for i in range(rank + 1, len(rows)):
            b = rows[i][j]
            if b:
                Ri = rows[i]
                g = gcd(a, b)
                fa, fb = a // g, b // g
                new = [fa * Ri[k] - fb * P[k] for k in range(c)]
                cont = 0
                for x in new:
                    if x:
                        cont = gcd(cont, x)
                        if cont == 1:
                            break
                if cont > 1:
                    new = [x // cont for x in new]
                rows[i] = new
        rank += 1
    return rank


def rank(A: Matrix, coeff: Coeff = ZZ, cols: int | None = None) -> int:
    """Rank of an integer matrix; over Z this is the rank over Q."""
    r, c = shape(A, cols)
    if r == 0 or c == 0:
        return 0
    if coeff.kind == "Zp":
        return len(rref(A, coeff, c)[1])
    return _rank_Z(A)


def kernel_basis(A: Matrix, coeff: Coeff, cols: int) -> list[list]:
    """Basis of the null space over a field, ordered by free column."""
    if not A:
        return [[coeff.convert(int(i == j)) for i in range(cols)] for j in range(cols)]
    R, pivots = rref(A, coeff, cols)
    pset = set(pivots)
    out = []
    for f in range(cols):
        if f in pset:
            continue
        v = [coeff.convert(0)] * cols
        v[f] = coeff.convert(1)
        for i, pc in enumerate(pivots):
            v[pc] = coeff.norm(-R[i][f])
        out.append(v)
    return out


def solve_field(A: Matrix, b: list, coeff: Coeff, cols: int | None = None) -> Optional[list]:
    """Some x with A x = b over a field, or None."""
    r, c = shape(A, cols)
    if r == 0:
        return [coeff.convert(0)] * c
    aug = [list(A[i]) + [b[i]] for i in range(r)]
    R, pivots = rref(aug, coeff, c + 1)
    if c in pivots:
        return None
    x = [coeff.convert(0)] * c
    for i, pc in enumerate(pivots):
        x[pc] = R[i][c]
    return x


def solve_in_image(A: Matrix, b: list, coeff: Coeff = ZZ, cols: int | None = None) -> Optional[list]:
    """Return x with A x = b over ``coeff`` or None when b is not in the image."""
    r, c = shape(A, cols)
    if len(b) != r:
        raise ValueError("dimension mismatch")
    if coeff.is_field:
        return solve_field(A, b, coeff, c)
    if r == 0:
        return [0] * c
    snf = smith_normal_form(A, c)
    Ub = [sum(u * x for u, x in zip(row, b)) for row in snf.U]
    y = [0] * c
    for i in range(r):
        d = snf.D[i][i] if i < c else 0
        if d:
            if Ub[i] % d:
                return None
            y[i] = Ub[i] // d
        elif Ub[i]:
            return None
    return [sum(snf.V[i][j] * y[j] for j in range(c)) for i in range(c)]


# ---------------------------------------------------------- cochain complexes

@dataclass
class FiniteCochainComplex:
    """Free modules of the given ranks in degrees start, start+1, ...;
    ``diffs[n]`` is the matrix (rows = rank n+1, cols = rank n) of the
    differential leaving the n-th module."""

    ranks: list[int]
    diffs: list[Matrix] = field(default_factory=list)
    start: int = 0

    def __post_init__(self):
        n = len(self.ranks)
        if not self.diffs:
            self.diffs = [zeros(self.ranks[i + 1], self.ranks[i]) for i in range(n - 1)]
        if len(self.diffs) != max(n - 1, 0):
            raise ValueError("need one differential between each pair of consecutive degrees")
        for i, D in enumerate(self.diffs):
            r, c = shape(D, self.ranks[i])
            if r != self.ranks[i + 1] or c != self.ranks[i]:
                raise ValueError(f"differential {i} has shape {(r, c)}, "
                                 f"expected {(self.ranks[i + 1], self.ranks[i])}")

    def check_d_squared(self):
        for i in range(len(self.diffs) - 1):
            P = matmul(self.diffs[i + 1], self.diffs[i], self.ranks[i + 1], self.ranks[i])
            if not is_zero(P):
                raise StructureError(f"d o d != 0 leaving degree {self.start + i}")


def cohomology(C: FiniteCochainComplex, coeff: Coeff = ZZ, check: bool = True) -> CohomologyResult:
    """Cohomology per degree.  Over Z torsion sits in the degree of the target
    of the incoming differential."""
    if check:
        C.check_d_squared()
    n = len(C.ranks)
    out_rank = [0] * n
    in_rank = [0] * n
    torsion = [()] * n
    for i, D in enumerate(C.diffs):
        cols = C.ranks[i]
        if coeff.kind == "Z":
            ed = elementary_divisors(D, cols)
            rk = len(ed)
            torsion[i + 1] = tuple(d for d in ed if d > 1)
        else:
            rk = rank(D, coeff, cols)
        out_rank[i] = rk
        in_rank[i + 1] = rk
    res = CohomologyResult(coeff=str(coeff))
    for i in range(n):
        res.add(C.start + i, C.ranks[i] - out_rank[i] - in_rank[i], torsion[i])
    return res
