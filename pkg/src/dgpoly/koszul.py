"""The resolution complex E = L(w) (x) k<y>, the Koszul complex
L(w) (x) SR<K> computing Tor, their chain homotopies, and the comparison of
Tor with the cohomology of Rbar(K).

Monomials are pairs ``(I, a)``: a bitmask of w-indices and an exponent
tuple for the y's.  The y's commute strictly with everything; the only
signs come from reordering w's (first-degree signs).
Bidegree is ``(-|I|, |I| + sum(a))``; the multidegree ``1_I + a`` is
preserved by d and used as the block weight.
"""

from __future__ import annotations

from itertools import combinations

from .coeffs import Coeff, ZZ
from .dga import MonomialComplex, ProductTable, add_into
from .realmac import build_rbar
from .report import CheckResult, failed, passed, skipped
from .results import CohomologyResult
from .simplicial import SimplicialComplex, catalog, members, popcount


def _supp(a: tuple) -> int:
    s = 0
    for i, e in enumerate(a):
        if e:
            s |= 1 << i
    return s


def _compositions(m: int, total: int, allowed: int):
    """Exponent vectors of length m, sum == total, support inside `allowed`."""
    idx = [i for i in range(m) if allowed >> i & 1]

    def rec(pos, left):
        if pos == len(idx) - 1:
            yield (left,)
            return
        for e in range(left, -1, -1):
            for rest in rec(pos + 1, left - e):
                yield (e,) + rest

    if not idx:
        if total == 0:
            yield (0,) * m
        return
    for part in rec(0, total):
        a = [0] * m
        for i, e in zip(idx, part):
            a[i] = e
        yield tuple(a)


def sr_basis(K: SimplicialComplex, cap: int) -> dict[int, list[tuple]]:
    """Monomials y^a of SR<K> by degree <= cap: those whose support is a
    simplex of K."""
    if cap < 0:
        raise ValueError("cap must be >= 0")
    out = {}
    for j in range(cap + 1):
        mons = {a for a in _compositions(K.m, j, K.vertex_mask) if _supp(a) in K}
        out[j] = sorted(mons, reverse=True)
    return out


def label_koszul(key) -> str:
    I, a = key
    w = "".join(f"w{i}" for i in members(I))
    y = "".join(f"y{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(a) if e)
    if w and y:
        return f"{w}*{y}"
    return w or y or "1"


def _multideg(I: int, a: tuple) -> tuple:
    return tuple(e + (I >> i & 1) for i, e in enumerate(a))


def _koszul(name: str, m: int, cap: int, admissible) -> MonomialComplex:
    basis = []
    full = (1 << m) - 1
    subsets_by_size = {p: [sum(1 << (i - 1) for i in c) for c in combinations(range(1, m + 1), p)]
                       for p in range(m + 1)}
    for j in range(cap + 1):
        avec = [a for a in _compositions(m, j, full) if admissible(_supp(a))]
        for p in range(min(m, cap - j) + 1):
            for I in subsets_by_size[p]:
                for a in avec:
                    basis.append((I, a))
    basis.sort(key=lambda k: (popcount(k[0]) + sum(k[1]), _multideg(*k), popcount(k[0]), members(k[0])))
    diff = {}
    for I, a in basis:
        img = {}
        for k, i in enumerate(members(I)):
            b = list(a)
            b[i - 1] += 1
            b = tuple(b)
            if admissible(_supp(b)):
                img[(I & ~(1 << (i - 1)), b)] = 1 if k % 2 == 0 else -1
        diff[(I, a)] = img
    bideg = {k: (-popcount(k[0]), popcount(k[0]) + sum(k[1])) for k in basis}
    support = {k: k[0] | _supp(k[1]) for k in basis}
    weight = {k: _multideg(*k) for k in basis}
    return MonomialComplex(name, basis, bideg, support, diff, weight, label=label_koszul)


def build_koszul(K: SimplicialComplex, cap: int) -> MonomialComplex:
    """L(w) (x) SR<K> truncated to second degree <= cap:
    d(w_I (x) y^a) = sum_k (-1)^{k+1} w_{I - i_k} (x) y_{i_k} y^a."""
    return _koszul(f"Kos({K.name},N={cap})", K.m, cap, lambda s: s in K)


def build_E(m: int, cap: int) -> MonomialComplex:
    """The free resolution E = L(w) (x) k<y> in m variables, second degree <= cap."""
    return _koszul(f"E(m={m},N={cap})", m, cap, lambda s: True)


def koszul_mul(a, b):
    (I1, a1), (I2, a2) = a, b
    if I1 & I2:
        return {}
    n = sum(popcount(I1 >> i) for i in members(I2))
    return {(I1 | I2, tuple(x + y for x, y in zip(a1, a2))): -1 if n % 2 else 1}


def e_product(E: MonomialComplex) -> ProductTable:
    m = len(E.basis[0][1])
    return ProductTable(E, koszul_mul, unit=(0, (0,) * m), name=E.name)


def e_leibniz_pairs(E: MonomialComplex, cap: int):
    """Basis pairs whose product stays inside the truncation."""
    return [(a, b) for a in E.basis for b in E.basis if E.bideg[a][1] + E.bideg[b][1] <= cap]


def tor(K: SimplicialComplex, cap: int, coeff: Coeff = ZZ) -> CohomologyResult:
    """Tor of SR<K> over k<y>, by bidegree, for second degree <= cap."""
    return build_koszul(K, cap).cohomology(coeff, by="bidegree")


# ----------------------------------------------------------- homotopies

def s_one(e: int, j: int) -> dict:
    """s_1 in one variable on w^e y^j: y^j -> w y^{j-1} (j >= 1), else 0.
    Returns {(e', j'): coef}."""
    if e == 0 and j >= 1:
        return {(1, j - 1): 1}
    return {}


def homotopy_s(m: int, key) -> dict:
    """s_m = s_{m-1} (x) id + eta_{m-1} eps_{m-1} (x) s_1 on a basis monomial
    of E in m variables (the last variable is split off at each step)."""
    I, a = key
    if m == 0:
        return {}
    head = (I & ((1 << (m - 1)) - 1), a[:m - 1])
    e, j = I >> (m - 1) & 1, a[m - 1]
    out: dict = {}
    for (hI, ha), c in homotopy_s(m - 1, head).items():
        # x (x) z with z in the last variable: w's of x precede w_m, no sign
        out[(hI | (e << (m - 1)), ha + (j,))] = c
    if head[0] == 0 and not any(head[1]):
        for (e2, j2), c in s_one(e, j).items():
            add_into(out, {((e2 << (m - 1)), (0,) * (m - 1) + (j2,)): c})
    return out


def verify_homotopy_E(m: int, cap: int) -> CheckResult:
    """ds + sd = id - eta eps on every basis element of E(m) with deg2 <= cap."""
    name = f"homotopy_E[m={m},N={cap}]"
    E = build_E(m, cap)
    unit = (0, (0,) * m)
    for x in E.basis:
        lhs = E.d(homotopy_s(m, x))
        for t, c in E.d_basis(x).items():
            add_into(lhs, homotopy_s(m, t), c)
        want = {} if x == unit else {x: 1}
        if lhs != want:
            return failed(name, {"monomial": label_koszul(x),
                                 "ds+sd": {label_koszul(k): v for k, v in lhs.items()}})
    return passed(name, f"{len(E)} basis elements")


def bad_index(key) -> int | None:
    """Least i with y_i^2 or w_i y_i dividing the monomial, else None."""
    I, a = key
    for i, e in enumerate(a, start=1):
        if e >= 2 or (e >= 1 and I >> (i - 1) & 1):
            return i
    return None


def ideal_s(key) -> dict:
    """s(x) = w_{i(x)} x / y_{i(x)} on a monomial of the ideal."""
    i = bad_index(key)
    if i is None:
        raise ValueError(f"{label_koszul(key)} is not in the ideal")
    I, a = key
    bit = 1 << (i - 1)
    if I & bit:
        return {}
    b = list(a)
    b[i - 1] -= 1
    sign = -1 if popcount(I & (bit - 1)) % 2 else 1
    return {(I | bit, tuple(b)): sign}


def ideal_monomials(C: MonomialComplex) -> list:
    return [k for k in C.basis if bad_index(k) is not None]


def verify_ideal_homotopy(K: SimplicialComplex, cap: int, identity: str = "ds+sd") -> CheckResult:
    """Check ``ds + sd = id`` (or the variant ``ds - sd = id``) for the
    ideal homotopy on every ideal monomial of second degree <= cap."""
    if identity not in ("ds+sd", "ds-sd"):
        raise ValueError(identity)
    sign = 1 if identity == "ds+sd" else -1
    name = f"ideal_homotopy[{K.name},N={cap},{identity}]"
    C = build_koszul(K, cap)
    mons = ideal_monomials(C)
    for x in mons:
        lhs = C.d(ideal_s(x))
        for t, c in C.d_basis(x).items():
            if bad_index(t) is None:
                return failed(name, label_koszul(x), "d leaves the ideal")
            add_into(lhs, ideal_s(t), sign * c)
        if lhs != {x: 1}:
            return failed(name, {"monomial": label_koszul(x),
                                 identity: {label_koszul(k): v for k, v in lhs.items()}})
    return passed(name, f"{len(mons)} ideal monomials")


# ------------------------------------------------------------- comparison

def quotient_quasi_iso_check(K: SimplicialComplex, cap: int, coeff: Coeff = ZZ) -> list[CheckResult]:
    """Tor (truncated Koszul complex) against H(Rbar(K)) per bidegree with
    deg2 <= min(cap, m); vanishing of Tor for m < deg2 <= cap."""
    T = tor(K, cap, coeff)
    R = build_rbar(K).cohomology(coeff, by="bidegree")
    top = min(cap, K.m)
    name = f"quotient[{K.name},{coeff},N={cap}]"
    out = []
    lowT = T.restrict(lambda k: k[1] <= top)
    lowR = R.restrict(lambda k: k[1] <= top)
    if lowT == lowR:
        out.append(passed(name, "truncated verification"))
    else:
        bad = sorted(set(lowT.groups) ^ set(lowR.groups) |
                     {k for k in lowT.groups if lowT[k] != lowR[k]})
        out.append(failed(name, {"bidegree": list(bad[0]), "tor": str(lowT[bad[0]]),
                                 "rbar": str(lowR[bad[0]])}, "truncated verification"))
    vname = f"quotient_vanishing[{K.name},{coeff},N={cap}]"
    if cap <= K.m:
        out.append(skipped(vname, "truncated below m: skipped vanishing assertion"
                           if cap < K.m else "cap = m: nothing above m to check"))
    else:
        high = T.restrict(lambda k: k[1] > K.m)
        if high.groups:
            k = high.degrees()[0]
            out.append(failed(vname, {"bidegree": list(k), "tor": str(high[k])}))
        else:
            out.append(passed(vname, f"Tor vanishes for {K.m} < deg2 <= {cap}"))
    return out
