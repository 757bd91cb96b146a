"""The quotient model Rbar(K) and the non-commutative model B(K) of the
real moment-angle complex, with the signed comparison map between them.

Basis monomials of both models are pairs ``(I, L)`` of disjoint bitmasks with
``L`` a simplex of K: ``w_I y_L`` in Rbar(K) and ``s_I t_L`` in B(K).
Bidegree is ``(-|I|, |I| + |L|)``, total degree ``|L|``, support ``I | L``.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .dga import MonomialComplex, ProductTable, add_into
from .report import CheckResult, failed, passed
from .simplicial import InputError, SimplicialComplex, members, popcount


def _bits_above(x: int, v: int) -> int:
    """Number of vertices of bitmask x that are greater than vertex v."""
    return popcount(x >> v)


def _bits_below(x: int, v: int) -> int:
    return popcount(x & ((1 << (v - 1)) - 1))


def basis_pairs(K: SimplicialComplex) -> list[tuple[int, int]]:
    """All (I, L) with L in K and I disjoint from L, ordered by support then
    (|I|, I, L)."""
    full = K.vertex_mask
    out = []
    for L in K.simplices:
        rest = full & ~L
        sub = rest
        while True:
            out.append((sub, L))
            if sub == 0:
                break
            sub = (sub - 1) & rest
    out.sort(key=lambda p: (popcount(p[0] | p[1]), members(p[0] | p[1]), popcount(p[0]), members(p[0]), members(p[1])))
    return out


def _label(prefix_i: str, prefix_l: str):
    def label(key):
        I, L = key[0], key[1]
        s = "".join(f"{prefix_i}{i}" for i in members(I)) + "".join(f"{prefix_l}{l}" for l in members(L))
        return s or "1"
    return label


label_rbar = _label("w", "y")
label_bk = _label("s", "t")


def epsilon(I: Sequence[int] | int, L: Sequence[int] | int) -> int:
    """Sign of the permutation sorting the concatenation I L (both increasing)."""
    Is = members(I) if isinstance(I, int) else list(I)
    Ls = members(L) if isinstance(L, int) else list(L)
    if set(Is) & set(Ls):
        raise InputError("epsilon needs disjoint index sequences")
    if any(a >= b for a, b in zip(Is, Is[1:])) or any(a >= b for a, b in zip(Ls, Ls[1:])):
        raise InputError("epsilon needs increasing sequences")
    inv = sum(1 for i in Is for l in Ls if l < i)
    return -1 if inv % 2 else 1


def _grading(pairs):
    bideg = {p: (-popcount(p[0]), popcount(p[0]) + popcount(p[1])) for p in pairs}
    support = {p: p[0] | p[1] for p in pairs}
    return bideg, support


def build_rbar(K: SimplicialComplex) -> MonomialComplex:
    """Rbar(K): d(w_I y_L) = sum_k (-1)^{k+1} w_{I - i_k} y_{L + i_k}, terms
    with L + i_k not in K dropped."""
    pairs = basis_pairs(K)
    diff = {}
    for I, L in pairs:
        img = {}
        for k, i in enumerate(members(I)):
            bit = 1 << (i - 1)
            if (L | bit) in K:
                img[(I & ~bit, L | bit)] = 1 if k % 2 == 0 else -1
        diff[(I, L)] = img
    bideg, support = _grading(pairs)
    return MonomialComplex(f"Rbar({K.name})", pairs, bideg, support, diff, label=label_rbar)


def build_bk_complex(K: SimplicialComplex) -> MonomialComplex:
    """B(K) as a differential module: d(s_I t_L) = sum_k (-1)^{r+1}
    s_{I - i_k} t_{L + i_k}, r = #{l in L : l < i_k}."""
    pairs = basis_pairs(K)
    diff = {}
    for I, L in pairs:
        img = {}
        for i in members(I):
            bit = 1 << (i - 1)
            if (L | bit) in K:
                r = _bits_below(L, i)
                img[(I & ~bit, L | bit)] = 1 if r % 2 else -1
        diff[(I, L)] = img
    bideg, support = _grading(pairs)
    return MonomialComplex(f"B({K.name})", pairs, bideg, support, diff, label=label_bk)


def t_interleave_sign(L1: int, L2: int) -> int:
    """Koszul sign of merging t_{L1} t_{L2} into index order: parity of
    pairs (a in L1, b in L2) with b < a."""
    n = 0
    for b in members(L2):
        n += _bits_above(L1, b)
    return -1 if n % 2 else 1


def bk_mul(K: SimplicialComplex, a, b) -> dict:
    """Product of basis monomials of B(K).

    Interleave the two index-ordered words (t-sign only), then multiply
    per shared index: s s = s, t s = t, s t = 0, t t = 0; finally kill the
    result if its t-set is not a simplex.
    """
    I1, L1 = a
    I2, L2 = b
    if L1 & L2 or I1 & L2:
        return {}
    L = L1 | L2
    if L not in K:
        return {}
    I = (I1 | I2) & ~L
    return {(I, L): t_interleave_sign(L1, L2)}


def rbar_mul(K: SimplicialComplex, a, b) -> dict:
    """Product in Rbar(K): w's anticommute, y's commute with everything,
    y_i^2 = w_i^2 = w_i y_i = 0 and y_L = 0 for L not in K."""
    I1, L1 = a
    I2, L2 = b
    I, L = I1 | I2, L1 | L2
    if I1 & I2 or L1 & L2 or I & L or L not in K:
        return {}
    n = sum(_bits_above(I1, i) for i in members(I2))
    return {(I, L): -1 if n % 2 else 1}


def _pair_arrays(K: SimplicialComplex, basis, kind: str):
    """Dense (T, V) tables of bk_mul / rbar_mul, vectorised over all pairs."""
    m = K.m
    size = 1 << m
    pc = np.array([popcount(x) for x in range(size)], dtype=np.int64)
    in_K = np.zeros(size, dtype=bool)
    in_K[list(K.simplices)] = True
    where = np.full((size, size), -1, dtype=np.int64)
    I = np.array([p[0] for p in basis], dtype=np.int64)
    L = np.array([p[1] for p in basis], dtype=np.int64)
    where[I, L] = np.arange(len(basis))
    I1, I2 = I[:, None], I[None, :]
    L1, L2 = L[:, None], L[None, :]
    Lu = L1 | L2
    n = np.zeros((len(basis), len(basis)), dtype=np.int64)
    if kind == "bk":
        ok = ((L1 & L2) == 0) & ((I1 & L2) == 0) & in_K[Lu]
        Iu = (I1 | I2) & ~Lu
        for v in range(1, m + 1):     # pairs (a in L1, b in L2) with b < a
            n += ((L2 >> (v - 1)) & 1) * pc[L1 >> v]
    else:
        Iu = I1 | I2
        ok = ((I1 & I2) == 0) & ((L1 & L2) == 0) & ((Iu & Lu) == 0) & in_K[Lu]
        for v in range(1, m + 1):
            n += ((I2 >> (v - 1)) & 1) * pc[I1 >> v]
    T = np.where(ok, where[np.where(ok, Iu, 0), np.where(ok, Lu, 0)], -1)
    V = np.where(ok, 1 - 2 * (n % 2), 0)
    return T, V


def build_bk(K: SimplicialComplex) -> tuple[MonomialComplex, ProductTable]:
    C = build_bk_complex(K)
    return C, ProductTable(C, lambda a, b: bk_mul(K, a, b), unit=(0, 0),
                           array_builder=lambda: _pair_arrays(K, C.basis, "bk"))


def rbar_product(K: SimplicialComplex, C: MonomialComplex) -> ProductTable:
    return ProductTable(C, lambda a, b: rbar_mul(K, a, b), unit=(0, 0),
                        array_builder=lambda: _pair_arrays(K, C.basis, "rbar"))


# ------------------------------------------------------------ comparison map

def map_f(K: SimplicialComplex) -> dict:
    """f(w_I y_L) = epsilon(I, L) s_I t_L, as key -> (key, sign)."""
    return {p: (p, epsilon(p[0], p[1])) for p in basis_pairs(K)}


def apply_signed_map(f: dict, vec: dict) -> dict:
    out: dict = {}
    for k, c in vec.items():
        t, s = f[k]
        add_into(out, {t: s * c})
    return out


def verify_signed_chain_map(f: dict, src: MonomialComplex, dst: MonomialComplex,
                            sign_of, name: str) -> CheckResult:
    """f d_src(x) = sign_of(x) d_dst f(x) exactly, for every basis element x."""
    for k in src.basis:
        lhs = apply_signed_map(f, src.d_basis(k))
        t, s = f[k]
        rhs = {u: sign_of(k) * s * c for u, c in dst.d_basis(t).items()}
        if lhs != rhs:
            return failed(name, {"monomial": src.label(k),
                                 "f(dx)": {dst.label(u): c for u, c in lhs.items()},
                                 "(-1)^p d(fx)": {dst.label(u): c for u, c in rhs.items()}})
    return passed(name, f"{len(src)} basis elements")


def _p_sign(key) -> int:
    return -1 if popcount(key[0]) % 2 else 1


def verify_f(K: SimplicialComplex, R: MonomialComplex | None = None,
             B: MonomialComplex | None = None) -> CheckResult:
    """f d_R = (-1)^{|I|} d_B f on every basis element of Rbar(K)."""
    R = R or build_rbar(K)
    B = B or build_bk_complex(K)
    f = map_f(K)
    if set(f) != set(R.basis) or {t for t, _ in f.values()} != set(B.basis):
        return failed(f"fddf[{K.name}]", None, "f is not a bijection of bases")
    for k in R.basis:
        if R.bideg[k] != B.bideg[f[k][0]] or R.support[k] != B.support[f[k][0]]:
            return failed(f"fddf[{K.name}]", R.label(k), "f does not preserve bidegree/support")
    return verify_signed_chain_map(f, R, B, _p_sign, f"fddf[{K.name}]")


def support_components(C: MonomialComplex) -> dict[int, MonomialComplex]:
    """J -> subcomplex spanned by monomials of support J (d must restrict)."""
    groups: dict = {}
    for k in C.basis:
        groups.setdefault(C.support[k], []).append(k)
    return {J: C.subcomplex(keys, f"{C.name}_{members(J)}")
            for J, keys in sorted(groups.items(), key=lambda x: (popcount(x[0]), members(x[0])))}
