"""Models for the cohomology of polyhedral products (CX, X)^K.

A space X_i enters only through a finite presentation of its reduced
cohomology (or of a small reduced cochain dga): ordered generators with
degrees, products of generators, optionally a differential.  Tensor
monomials are triples ``(I, L, h)`` where ``(I, L)`` is a monomial of Rbar(K)
or B(K) with support J and ``h`` picks one generator (by position) of X_i for
each i in J, in increasing i.

C(X,K) = Rbar(K) (x) H and B(X,K) = B(K) (x) H, with H carrying zero
differential; R(X,K) is the generalised Koszul model on bi-indexed letters
``ub_{i,j}``, ``b_{i,j}``.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product

import numpy as np

from .coeffs import Coeff, ZZ
from .dga import MonomialComplex, ProductTable, add_into
from .realmac import (_p_sign, build_bk, build_rbar, epsilon, label_bk, label_rbar, rbar_product,
                      verify_signed_chain_map)
from .report import CheckResult, failed, passed
from .simplicial import InputError, SimplicialComplex, members, popcount, splitting_oracle


# ------------------------------------------------------------------ spaces

@dataclass
class Space:
    """Presentation of a reduced (non-unital) graded ring, optionally with a
    differential.  Generators are referred to by position."""
    name: str
    ids: list[str]
    degs: list[int]
    mul: dict = field(default_factory=dict)     # (a, b) -> {c: coef}
    is_suspension: bool = False
    diff: dict = field(default_factory=dict)    # a -> {c: coef}

    @property
    def k(self) -> int:
        return len(self.ids)

    @property
    def has_differential(self) -> bool:
        return any(self.diff.values())

    def product(self, a: int, b: int) -> dict:
        return self.mul.get((a, b), {})

    def d(self, a: int) -> dict:
        return self.diff.get(a, {})

    def to_json(self) -> dict:
        out = {"name": self.name,
               "generators": [{"id": i, "deg": d} for i, d in zip(self.ids, self.degs)],
               "products": [{"left": self.ids[a], "right": self.ids[b],
                             "value": [{"id": self.ids[c], "coef": v} for c, v in sorted(val.items())]}
                            for (a, b), val in sorted(self.mul.items()) if val],
               "is_suspension": self.is_suspension}
        if self.has_differential:
            out["differential"] = [{"id": self.ids[a],
                                    "value": [{"id": self.ids[c], "coef": v} for c, v in sorted(val.items())]}
                                   for a, val in sorted(self.diff.items()) if val]
        return out


def _vec_mul(S: Space, x: dict, y: dict) -> dict:
    out: dict = {}
    for a, ca in x.items():
        for b, cb in y.items():
            add_into(out, S.product(a, b), ca * cb)
    return out


def _vec_d(S: Space, x: dict) -> dict:
    out: dict = {}
    for a, c in x.items():
        add_into(out, S.d(a), c)
    return out


def validate_space(S: Space) -> Space:
    """Exhaustive checks; raises InputError with a witness."""
    n = S.k
    if n == 0:
        raise InputError(f"space {S.name!r}: at least one generator is required")
    if len(set(S.ids)) != n:
        raise InputError(f"space {S.name!r}: repeated generator id")
    for i, d in zip(S.ids, S.degs):
        if not isinstance(d, int) or d < 0:
            raise InputError(f"space {S.name!r}: generator {i!r} needs a degree >= 0")
    for (a, b), val in S.mul.items():
        for c in val:
            if S.degs[c] != S.degs[a] + S.degs[b]:
                raise InputError(f"space {S.name!r}: degree not additive in "
                                 f"{S.ids[a]}*{S.ids[b]} -> {S.ids[c]}")
        if val and S.is_suspension:
            raise InputError(f"space {S.name!r} is flagged is_suspension but "
                             f"{S.ids[a]}*{S.ids[b]} is nonzero")
    for a in range(n):
        for b in range(n):
            s = -1 if S.degs[a] * S.degs[b] % 2 else 1
            ab = S.product(a, b)
            ba = {c: s * v for c, v in S.product(b, a).items()}
            if ab != ba:
                raise InputError(f"space {S.name!r}: not graded commutative at "
                                 f"({S.ids[a]}, {S.ids[b]})")
    for a, b, c in product(range(n), repeat=3):
        if _vec_mul(S, S.product(a, b), {c: 1}) != _vec_mul(S, {a: 1}, S.product(b, c)):
            raise InputError(f"space {S.name!r}: not associative at "
                             f"({S.ids[a]}, {S.ids[b]}, {S.ids[c]})")
    for a, val in S.diff.items():
        for c in val:
            if S.degs[c] != S.degs[a] + 1:
                raise InputError(f"space {S.name!r}: d({S.ids[a]}) has a term of the wrong degree")
    for a in range(n):
        if _vec_d(S, S.d(a)):
            raise InputError(f"space {S.name!r}: d^2 != 0 on {S.ids[a]}")
    for a in range(n):
        for b in range(n):
            lhs = _vec_d(S, S.product(a, b))
            rhs = _vec_mul(S, S.d(a), {b: 1})
            add_into(rhs, _vec_mul(S, {a: 1}, S.d(b)), -1 if S.degs[a] % 2 else 1)
            if lhs != rhs:
                raise InputError(f"space {S.name!r}: Leibniz fails at ({S.ids[a]}, {S.ids[b]})")
    return S


def space_from_json(d: dict, where: str = "") -> Space:
    try:
        name = str(d.get("name", where or "X"))
        gens = d["generators"]
        ids = [str(g["id"]) for g in gens]
        degs = [g["deg"] for g in gens]
        pos = {i: n for n, i in enumerate(ids)}

        def vec(items):
            out: dict = {}
            for t in items:
                add_into(out, {pos[str(t["id"])]: int(t.get("coef", 1))})
            return out

        mul = {}
        for p in d.get("products", []):
            key = (pos[str(p["left"])], pos[str(p["right"])])
            v = vec(p["value"])
            if v:
                mul[key] = v
        diff = {}
        for p in d.get("differential", []):
            src = pos[str(p.get("id", p.get("source")))]
            v = vec(p["value"])
            if v:
                diff[src] = v
        S = Space(name, ids, degs, mul, bool(d.get("is_suspension", False)), diff)
    except KeyError as e:
        raise InputError(f"{where or 'space'}: missing or unknown key/id {e}") from None
    except (TypeError, ValueError) as e:
        raise InputError(f"{where or 'space'}: malformed entry ({e})") from None
    return validate_space(S)


def load_spaces(text: str) -> list[Space]:
    """Parse ``{"spaces": [...]}``; JSON errors carry line and column."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(data, dict) or not isinstance(data.get("spaces"), list):
        raise InputError('expected an object with a "spaces" list')
    return [space_from_json(s, f"spaces[{n}]") for n, s in enumerate(data["spaces"])]


# ------------------------------------------------------------------ presets

def sphere(n: int) -> Space:
    return validate_space(Space(f"S{n}", [f"x{n}"], [n], is_suspension=n >= 1))


def wedge_s1_s2() -> Space:
    return validate_space(Space("S1vS2", ["x", "y"], [1, 2], is_suspension=True))


def cp2() -> Space:
    """Reduced cohomology of CP^2: x in degree 2 with x^2 = y."""
    return validate_space(Space("CP2", ["x", "y"], [2, 4], {(0, 0): {1: 1}}))


def s0() -> Space:
    """Reduced H^0 of two points: an idempotent in degree 0."""
    return validate_space(Space("S0", ["e"], [0], {(0, 0): {0: 1}}))


def s1_three_term() -> Space:
    """A non-minimal reduced cochain model of S^1: e (deg 0), f, g (deg 1),
    d e = f, zero products.  Its cohomology is one class in degree 1."""
    return validate_space(Space("S1[3]", ["e", "f", "g"], [0, 1, 1], diff={0: {1: 1}}, is_suspension=True))


PRESETS = ("spheres", "spheres:<n1,...>", "wedge", "cp2", "s0", "s1dga")


def preset_spaces(spec: str, m: int) -> list[Space]:
    """``spheres`` (all S^1), ``spheres:n1,..,nm`` (one value is broadcast),
    ``wedge`` (X_1 = S^1 v S^2, others S^1), ``cp2`` (X_1 = CP^2, others S^1),
    ``s0`` (all S^0), ``s1dga`` (X_1 = the 3-term model of S^1, others S^1)."""
    name, _, arg = spec.partition(":")
    if name in ("spheres", "circles", "sphere"):
        if not arg:
            return [sphere(1) for _ in range(m)]
        try:
            degs = [int(x) for x in arg.split(",")]
        except ValueError:
            raise InputError(f"bad sphere degrees {arg!r}") from None
        if len(degs) == 1:
            degs = degs * m
        if len(degs) != m or min(degs) < 1:
            raise InputError(f"need {m} sphere degrees >= 1, got {arg!r}")
        return [sphere(n) for n in degs]
    first = {"wedge": wedge_s1_s2, "cp2": cp2, "s1dga": s1_three_term}.get(name)
    if first is not None and not arg:
        return [first()] + [sphere(1) for _ in range(m - 1)]
    if name == "s0" and not arg:
        return [s0() for _ in range(m)]
    raise InputError(f"unknown spaces preset {spec!r}; choose from {', '.join(PRESETS)} or a JSON file")


def check_spaces(K: SimplicialComplex, spaces: list[Space]):
    if len(spaces) != K.m:
        raise InputError(f"{K.name} has {K.m} vertices but {len(spaces)} spaces were given")


# ------------------------------------------------------------ tensor models

_members = lru_cache(maxsize=None)(lambda J: tuple(members(J)))


def _h_choices(spaces, J: int):
    return product(*(range(spaces[i - 1].k) for i in _members(J)))


def h_degree(spaces, J: int, h: tuple) -> int:
    return sum(spaces[i - 1].degs[g] for i, g in zip(_members(J), h))


def _odd_mask(spaces, J: int, h: tuple) -> int:
    return sum(1 << (i - 1) for i, g in zip(_members(J), h) if spaces[i - 1].degs[g] % 2)


def h_mul(spaces, J1: int, h1: tuple, J2: int, h2: tuple) -> dict:
    """Product of coefficient tensors: merge by vertex with the Koszul sign,
    multiplying in the ring of X_i where both sides have vertex i."""
    m1, m2 = _members(J1), _members(J2)
    g1, g2 = dict(zip(m1, h1)), dict(zip(m2, h2))
    shared = {}
    for i in _members(J1 & J2):
        p = spaces[i - 1].product(g1[i], g2[i])
        if not p:
            return {}
        shared[i] = list(p.items())
    # sign: pairs (a in J1, b in J2) with b < a and both classes odd
    odd1, odd2 = _odd_mask(spaces, J1, h1), _odd_mask(spaces, J2, h2)
    n = sum(popcount(odd1 >> b) for b in _members(odd2))
    sign = -1 if n % 2 else 1
    factors = [shared[i] if i in shared else [(g1[i] if i in g1 else g2[i], 1)]
               for i in _members(J1 | J2)]
    out = {}
    for combo in product(*factors):
        c = sign
        for _, v in combo:
            c *= v
        out[tuple(g for g, _ in combo)] = c
    return out


def _tensor_label(base_label, spaces):
    def label(key):
        I, L, h = key
        base = base_label((I, L))
        if not h:
            return base
        return base + "[" + ",".join(spaces[i - 1].ids[g] for i, g in zip(members(I | L), h)) + "]"
    return label


def _tensor_complex(base: MonomialComplex, spaces, name: str, base_label) -> MonomialComplex:
    basis, bideg, support, weight, diff = [], {}, {}, {}, {}
    for I, L in base.basis:
        J = I | L
        for h in _h_choices(spaces, J):
            key = (I, L, h)
            basis.append(key)
            dh = h_degree(spaces, J, h)
            bideg[key] = (-popcount(I), popcount(I) + popcount(L) + dh)
            support[key] = J
            weight[key] = (J, h)
            diff[key] = {(I2, L2, h): c for (I2, L2), c in base.d_basis((I, L)).items()}
    return MonomialComplex(name, basis, bideg, support, diff, weight,
                           label=_tensor_label(base_label, spaces))


def _tensor_table(C: MonomialComplex, base: ProductTable, spaces) -> ProductTable:
    """(b (x) h)(b' (x) h') = (-1)^{|h||b'|} bb' (x) hh', with |b'| the total
    degree |L'|.  The dense table is assembled from the nonzero entries of
    the base table only."""

    def combine(r, x, y):
        (I1, L1, h1), (I2, L2, h2) = x, y
        hp = h_mul(spaces, I1 | L1, h1, I2 | L2, h2)
        if not hp:
            return {}
        kappa = -1 if h_degree(spaces, I1 | L1, h1) * popcount(L2) % 2 else 1
        return {(I, L, h): kappa * c * c2 for (I, L), c in r.items() for h, c2 in hp.items()}

    def mul(x, y):
        r = base(x[:2], y[:2])
        return combine(r, x, y) if r else {}

    def build():
        arrs = base.arrays()
        if arrs is None:
            return None
        Tb, Vb = arrs
        groups = defaultdict(list)
        for i, key in enumerate(C.basis):
            groups[base.index[key[:2]]].append(i)
        n = len(C.basis)
        T = np.full((n, n), -1, dtype=np.int64)
        V = np.zeros((n, n), dtype=np.int64)
        for p, q in zip(*np.nonzero(Tb >= 0)):
            r = {base.basis[Tb[p, q]]: int(Vb[p, q])}
            for i in groups[p]:
                x = C.basis[i]
                for j in groups[q]:
                    out = combine(r, x, C.basis[j])
                    if not out:
                        continue
                    if len(out) > 1:
                        return None
                    (k, c), = out.items()
                    T[i, j] = C.index[k]
                    V[i, j] = c
        return T, V

    return ProductTable(C, mul, unit=(0, 0, ()), array_builder=build)


def _names(spaces) -> str:
    return ",".join(s.name for s in spaces)


def build_cxk(K: SimplicialComplex, spaces: list[Space]) -> MonomialComplex:
    """C(X,K): Rbar(K) (x) H with d = d_Rbar (x) id."""
    check_spaces(K, spaces)
    return _tensor_complex(build_rbar(K), spaces, f"C({_names(spaces)};{K.name})", label_rbar)


def cxk_product(K: SimplicialComplex, C: MonomialComplex, spaces) -> ProductTable:
    R = build_rbar(K)
    return _tensor_table(C, rbar_product(K, R), spaces)


def build_bxk(K: SimplicialComplex, spaces: list[Space]) -> tuple[MonomialComplex, ProductTable]:
    """B(X,K): B(K) (x) H with d = d_B (x) id and product
    (b (x) h)(b' (x) h') = (-1)^{|h||b'|} bb' (x) hh'."""
    check_spaces(K, spaces)
    B, PB = build_bk(K)
    C = _tensor_complex(B, spaces, f"B({_names(spaces)};{K.name})", label_bk)
    return C, _tensor_table(C, PB, spaces)


def build_b_dga(K: SimplicialComplex, dgas: list[Space]) -> tuple[MonomialComplex, ProductTable]:
    """B(K) (x) (reduced cochain models), d(b (x) c) = db (x) c + (-1)^{|b|} b (x) d_C c,
    where d_C acts on the ordered tensor c as a derivation with Koszul signs.
    With zero differentials this is exactly build_bxk."""
    C, P = build_bxk(K, dgas)
    if not any(S.has_differential for S in dgas):
        return C, P
    diff = {}
    weight = {}
    for key in C.basis:
        I, L, h = key
        J = I | L
        img = dict(C.d_basis(key))
        sgn = -1 if popcount(L) % 2 else 1
        before = 0
        for pos, i in enumerate(members(J)):
            S = dgas[i - 1]
            for g, c in S.d(h[pos]).items():
                h2 = h[:pos] + (g,) + h[pos + 1:]
                add_into(img, {(I, L, h2): sgn * (-1 if before % 2 else 1) * c})
            before += S.degs[h[pos]]
        diff[key] = img
        weight[key] = J
    D = MonomialComplex(f"B[dga]({_names(dgas)};{K.name})", C.basis, C.bideg, C.support, diff,
                        weight, bigraded=False, label=C._label)
    return D, P.on(D)


# -------------------------------------------------------------- maps f_X

def map_f_X(C: MonomialComplex) -> dict:
    """f_X(w_I y_L (x) h) = epsilon(I, L) s_I t_L (x) h."""
    return {k: (k, epsilon(k[0], k[1])) for k in C.basis}


def verify_f_X(K: SimplicialComplex, spaces, C=None, B=None) -> CheckResult:
    C = C or build_cxk(K, spaces)
    B = B or build_bxk(K, spaces)[0]
    f = map_f_X(C)
    name = f"fddf_X[{K.name};{_names(spaces)}]"
    if set(C.basis) != set(B.basis):
        return failed(name, None, "f_X is not a bijection of bases")
    return verify_signed_chain_map(f, C, B, _p_sign, name)


# ------------------------------------------------------------------ R(X,K)

def _proj(letters) -> int:
    s = 0
    for i, _ in letters:
        s |= 1 << (i - 1)
    return s


def label_rxk(spaces):
    def label(key):
        U, B = key
        s = "".join(f"u{spaces[i - 1].ids[j]}_{i}" for i, j in U) + \
            "".join(f"b{spaces[i - 1].ids[j]}_{i}" for i, j in B)
        return s or "1"
    return label


def build_rxk(K: SimplicialComplex, spaces: list[Space]) -> MonomialComplex:
    """R(X,K): words (ub_{i1,j1}..ub_{is,js})(b_{l1,k1}..b_{lt,kt}) on
    disjoint sets of bi-indices with {l} a simplex of K;
    d(ub) = b extended as a first-degree derivation."""
    check_spaces(K, spaces)
    letters = [(i, j) for i in range(1, K.m + 1) for j in range(spaces[i - 1].k)]
    deg = {x: spaces[x[0] - 1].degs[x[1]] + 1 for x in letters}
    basis = []
    for t in range(len(letters) + 1):
        for B in combinations(letters, t):
            if _proj(B) not in K:
                continue
            rest = [x for x in letters if x not in B]
            for s in range(len(rest) + 1):
                for U in combinations(rest, s):
                    basis.append((U, B))
    basis.sort(key=lambda k: (len(k[0]) + len(k[1]), sorted(k[0] + k[1]), len(k[0]), k))
    diff, bideg, support, weight = {}, {}, {}, {}
    for U, B in basis:
        img = {}
        for pos, x in enumerate(U):
            B2 = tuple(sorted(B + (x,)))
            if _proj(B2) in K:
                img[(U[:pos] + U[pos + 1:], B2)] = -1 if pos % 2 else 1
        diff[(U, B)] = img
        bideg[(U, B)] = (-len(U), sum(deg[x] for x in U + B))
        support[(U, B)] = _proj(U + B)
        weight[(U, B)] = tuple(sorted(U + B))
    return MonomialComplex(f"R({_names(spaces)};{K.name})", basis, bideg, support, diff, weight,
                           label=label_rxk(spaces))


def map_h(C: MonomialComplex) -> dict:
    """C(X,K) -> R(X,K): w_I y_L (x) h -> (ub_{i,h_i})_{i in I} (b_{l,h_l})_{l in L}."""
    out = {}
    for I, L, h in C.basis:
        g = dict(zip(members(I | L), h))
        out[(I, L, h)] = (tuple((i, g[i]) for i in members(I)), tuple((l, g[l]) for l in members(L)))
    return out


def map_g(R: MonomialComplex) -> dict:
    """R(X,K) -> C(X,K): zero on words whose first indices repeat, else the
    inverse relabelling of map_h."""
    out = {}
    for U, B in R.basis:
        firsts = [i for i, _ in U + B]
        if len(set(firsts)) < len(firsts):
            continue
        I, L = _proj(U), _proj(B)
        g = dict(U + B)
        out[(U, B)] = (I, L, tuple(g[i] for i in members(I | L)))
    return out


def _apply(f: dict, vec: dict) -> dict:
    out: dict = {}
    for k, c in vec.items():
        t = f.get(k)
        if t is not None:
            add_into(out, {t: c})
    return out


def verify_h_g(K: SimplicialComplex, spaces, C=None, R=None) -> list[CheckResult]:
    """h and g commute with the differentials on every basis element and
    g o h = id exactly."""
    C = C or build_cxk(K, spaces)
    R = R or build_rxk(K, spaces)
    h, g = map_h(C), map_g(R)
    tag = f"[{K.name};{_names(spaces)}]"
    out = []
    bad = next((x for x in C.basis if h[x] not in R.index), None)
    if bad is not None:
        return [failed("h_chain" + tag, C.label(bad), "h(x) is not a basis word")]
    bad = next((x for x in C.basis if _apply(h, C.d_basis(x)) != R.d_basis(h[x])), None)
    out.append(failed("h_chain" + tag, C.label(bad)) if bad is not None
               else passed("h_chain" + tag, f"{len(C)} basis elements"))
    bad = next((y for y in R.basis if _apply(g, R.d_basis(y)) != C.d(_apply(g, {y: 1}))), None)
    out.append(failed("g_chain" + tag, R.label(bad)) if bad is not None
               else passed("g_chain" + tag, f"{len(R)} basis elements"))
    bad = next((x for x in C.basis if g.get(h[x]) != x), None)
    out.append(failed("g_h_identity" + tag, C.label(bad)) if bad is not None
               else passed("g_h_identity" + tag, f"{len(C)} basis elements"))
    return out


def summand_check(K: SimplicialComplex, spaces, coeff: Coeff = ZZ, strict: bool | None = None,
                  C=None, R=None) -> CheckResult:
    """rank H(R(X,K)) >= rank H(C(X,K)) per total degree; with
    ``strict=True`` some degree must be strictly larger, with
    ``strict=False`` all degrees must agree."""
    C = C or build_cxk(K, spaces)
    R = R or build_rxk(K, spaces)
    hc, hr = C.cohomology(coeff).ranks(), R.cohomology(coeff).ranks()
    degs = sorted(set(hc) | set(hr))
    name = f"summand[{K.name};{_names(spaces)}]"
    table = {str(t): [hc.get(t, 0), hr.get(t, 0)] for t in degs}
    low = [t for t in degs if hr.get(t, 0) < hc.get(t, 0)]
    if low:
        return failed(name, {"degree": low[0], "C_R": table[str(low[0])]}, "H(R) smaller than H(C)")
    bigger = [t for t in degs if hr.get(t, 0) > hc.get(t, 0)]
    if strict is True and not bigger:
        return failed(name, table, "expected a strictly larger summand")
    if strict is False and bigger:
        return failed(name, {"degree": bigger[0], "C_R": table[str(bigger[0])]}, "expected equal ranks")
    return CheckResult(name, "pass", None, f"ranks C/R by degree {table}")


# ------------------------------------------------------------- oracles

def oracle_compare_cxx(K: SimplicialComplex, spaces, coeff: Coeff = ZZ,
                       models=("C", "B")) -> list[CheckResult]:
    """H(C(X,K)) and H(B(X,K)) against the splitting oracle, per degree."""
    check_spaces(K, spaces)
    want = splitting_oracle(K, coeff, "tensor", [s.degs for s in spaces])
    out = []
    for which in models:
        X = build_cxk(K, spaces) if which == "C" else build_bxk(K, spaces)[0]
        got = X.cohomology(coeff)
        name = f"oracle_{which}XK[{K.name};{_names(spaces)};{coeff}]"
        if got == want:
            out.append(passed(name))
        else:
            t = next(t for t in sorted(set(got.groups) | set(want.groups)) if got[t] != want[t])
            out.append(failed(name, {"degree": t, "model": str(got[t]), "oracle": str(want[t])}))
    return out


# --------------------------------------------------- suspension coincidence

def overlap_scan(C: MonomialComplex, P: ProductTable):
    """First pair of basis elements with overlapping support and nonzero
    product, or None."""
    arrs = P.arrays()
    sup = np.array([C.support[k] for k in C.basis], dtype=np.int64)
    if arrs is not None:
        T, _ = arrs
        for i in range(len(C.basis)):
            bad = np.nonzero(((sup[i] & sup) != 0) & (T[i] >= 0))[0]
            if len(bad):
                return C.basis[i], C.basis[int(bad[0])]
        return None
    for a in C.basis:
        for b in C.basis:
            if C.support[a] & C.support[b] and P(a, b):
                return a, b
    return None


def suspension_coincidence_check(K: SimplicialComplex, spaces, B=None, PB=None) -> list[CheckResult]:
    """(a) B(X,K) products of basis elements with overlapping support vanish;
    (b) on disjoint supports f_X(x) f_X(y) = sigma f_X(xy) with sigma = +-1
    depending only on the base monomials.  Spaces not all flagged as
    suspensions make the check not applicable."""
    check_spaces(K, spaces)
    tag = f"[{K.name};{_names(spaces)}]"
    if B is None or PB is None:
        B, PB = build_bxk(K, spaces)
    hit = overlap_scan(B, PB)
    if not all(s.is_suspension for s in spaces):
        w = None if hit is None else {"a": B.label(hit[0]), "b": B.label(hit[1]),
                                      "ab": {B.label(k): v for k, v in PB(*hit).items()}}
        return [CheckResult("suspension_overlap" + tag, "skipped", w,
                            "not applicable: some space is not a suspension")]
    out = [passed("suspension_overlap" + tag) if hit is None else
           failed("suspension_overlap" + tag, {"a": B.label(hit[0]), "b": B.label(hit[1])})]
    C = build_cxk(K, spaces)
    PC = cxk_product(K, C, spaces)
    name = "suspension_disjoint" + tag
    arrB, arrC = PB.arrays(), PC.arrays()
    if C.basis != B.basis or arrB is None or arrC is None:
        return out + [_disjoint_loop(C, PC, B, PB, name)]
    (TB, VB), (TC, VC) = arrB, arrC
    eps = np.array([epsilon(k[0], k[1]) for k in C.basis], dtype=np.int64)
    sup = np.array([C.support[k] for k in C.basis], dtype=np.int64)
    base_ids = {}
    base = np.array([base_ids.setdefault(k[:2], len(base_ids)) for k in C.basis], dtype=np.int64)
    disjoint = (sup[:, None] & sup[None, :]) == 0
    nzB, nzC = disjoint & (TB >= 0), disjoint & (TC >= 0)
    bad = (nzB != nzC) | (nzB & (TB != TC))
    if bad.any():
        i, j = map(int, np.argwhere(bad)[0])
        return out + [failed(name, {"x": C.label(C.basis[i]), "y": C.label(C.basis[j])},
                             "products differ beyond sign")]
    lhs = (eps[:, None] * eps[None, :] * VB)[nzB]
    rhs = (eps[np.where(TC >= 0, TC, 0)] * VC)[nzB]
    if (np.abs(lhs) != np.abs(rhs)).any():
        i, j = map(int, np.argwhere(nzB)[np.nonzero(np.abs(lhs) != np.abs(rhs))[0][0]])
        return out + [failed(name, {"x": C.label(C.basis[i]), "y": C.label(C.basis[j])}, "ratio is not a sign")]
    sigma = np.sign(lhs * rhs)
    keys = (base[:, None] * len(base_ids) + base[None, :])[nzB]
    order = np.argsort(keys, kind="stable")
    ks, ss = keys[order], sigma[order]
    starts = np.flatnonzero(np.r_[True, ks[1:] != ks[:-1]]) if len(ks) else np.array([], dtype=np.int64)
    if len(ks) and (np.minimum.reduceat(ss, starts) != np.maximum.reduceat(ss, starts)).any():
        return out + [failed(name, None, "sign depends on the coefficient classes")]
    return out + [passed(name, f"{int((sigma > 0).sum())} pairs agree, {int((sigma < 0).sum())} differ by -1")]


def _disjoint_loop(C, PC, B, PB, name) -> CheckResult:
    f = map_f_X(C)
    sigma: dict = {}
    counts = {1: 0, -1: 0}
    for x in C.basis:
        for y in C.basis:
            if C.support[x] & C.support[y]:
                continue
            (fx, sx), (fy, sy) = f[x], f[y]
            lhs = {k: sx * sy * c for k, c in PB(fx, fy).items()}
            rhs = {}
            for k, c in PC(x, y).items():
                t, s = f[k]
                rhs[t] = s * c
            if not lhs and not rhs:
                continue
            if lhs.keys() != rhs.keys() or len(lhs) != 1:
                return failed(name, {"x": C.label(x), "y": C.label(y)}, "products differ beyond sign")
            (k, a), = lhs.items()
            s = a // rhs[k]
            if s not in (1, -1) or s * rhs[k] != a:
                return failed(name, {"x": C.label(x), "y": C.label(y)}, "ratio is not a sign")
            if sigma.setdefault((x[:2], y[:2]), s) != s:
                return failed(name, {"x": C.label(x), "y": C.label(y)},
                              "sign depends on the coefficient classes")
            counts[s] += 1
    return passed(name, f"{counts[1]} pairs agree, {counts[-1]} differ by -1")
