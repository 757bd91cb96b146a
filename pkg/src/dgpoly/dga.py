"""Finite bigraded differential modules and algebras on ordered monomial bases.

A :class:`MonomialComplex` carries, for every basis monomial, a bidegree
``(deg1, deg2)``, a support bitmask and a *weight*: a hashable grading that
the differential preserves and that is used to split cohomology computations
into small independent blocks.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Hashable, Optional

import numpy as np
import scipy.sparse as sp

from .coeffs import Coeff, ZZ
from .linalg import FiniteCochainComplex, StructureError, cohomology, kernel_basis
from .report import CheckResult, failed, passed, skipped
from .results import CohomologyResult

Vector = dict  # key -> coefficient


def add_into(acc: dict, vec: dict, c=1):
    for k, v in vec.items():
        x = acc.get(k, 0) + c * v
        if x:
            acc[k] = x
        else:
            acc.pop(k, None)
    return acc


class MonomialComplex:
    def __init__(self, name: str, basis: list, bideg: dict, support: dict, diff: dict,
                 weight: Optional[dict] = None, bigraded: bool = True, label: Optional[Callable] = None):
        self.name = name
        self.basis = list(basis)
        self.index = {k: i for i, k in enumerate(self.basis)}
        if len(self.index) != len(self.basis):
            raise StructureError("repeated basis monomial")
        self.bideg = bideg
        self.support = support
        self.diff = {k: v for k, v in diff.items() if v}
        self.weight = weight if weight is not None else support
        self.bigraded = bigraded
        self._label = label

    def __len__(self):
        return len(self.basis)

    def __repr__(self):
        return f"MonomialComplex({self.name!r}, {len(self)} monomials)"

    def label(self, key) -> str:
        return self._label(key) if self._label else str(key)

    def total(self, key) -> int:
        a, b = self.bideg[key]
        return a + b

    def d(self, vec: Vector) -> Vector:
        out: dict = {}
        for k, c in vec.items():
            dk = self.diff.get(k)
            if dk:
                add_into(out, dk, c)
        return out

    def d_basis(self, key) -> Vector:
        return self.diff.get(key, {})

    def sparse_matrix(self) -> sp.csr_matrix:
        """n x n integer matrix with D[target, source]."""
        rows, cols, data = [], [], []
        for k, img in self.diff.items():
            j = self.index[k]
            for t, c in img.items():
                rows.append(self.index[t])
                cols.append(j)
                data.append(c)
        n = len(self.basis)
        return sp.csr_matrix((np.array(data, dtype=np.int64), (rows, cols)), shape=(n, n))

    # ---- blocks and cohomology

    def block_key(self, key):
        return (self.weight[key], self.bideg[key][1]) if self.bigraded else self.weight[key]

    def blocks(self) -> dict:
        out: dict = defaultdict(list)
        for k in self.basis:
            out[self.block_key(k)].append(k)
        return dict(out)

    def block_complex(self, keys: list) -> tuple[FiniteCochainComplex, list[list]]:
        by_deg: dict = defaultdict(list)
        for k in keys:
            by_deg[self.total(k)].append(k)
        lo, hi = min(by_deg), max(by_deg)
        layers = [by_deg.get(t, []) for t in range(lo, hi + 1)]
        ranks = [len(L) for L in layers]
        diffs = []
        for t in range(len(layers)):
            tgt = {k: i for i, k in enumerate(layers[t + 1])} if t + 1 < len(layers) else {}
            if t + 1 == len(layers):
                for k in layers[t]:
                    if self.diff.get(k):
                        raise StructureError(f"d({self.label(k)}) leaves its block or degree")
                break
            D = [[0] * ranks[t] for _ in range(ranks[t + 1])]
            for j, k in enumerate(layers[t]):
                for u, c in self.diff.get(k, {}).items():
                    if u not in tgt:
                        raise StructureError(f"d({self.label(k)}) leaves its block or degree")
                    D[tgt[u]][j] = c
            diffs.append(D)
        return FiniteCochainComplex(ranks, diffs, start=lo), layers

    def cohomology(self, coeff: Coeff = ZZ, by: str = "total", check: bool = True) -> CohomologyResult:
        """Cohomology graded by total degree (``by="total"``), bidegree
        (``"bidegree"``, bigraded complexes only) or ``"block"`` (dict of
        block key -> result by total degree)."""
        if by == "bidegree" and not self.bigraded:
            raise StructureError(f"{self.name} is not bigraded")
        res = CohomologyResult(coeff=str(coeff))
        per_block = {}
        for bk, keys in self.blocks().items():
            C, _ = self.block_complex(keys)
            H = cohomology(C, coeff, check=check)
            if by == "block":
                per_block[bk] = H
                continue
            for t, g in H.groups.items():
                if by == "bidegree":
                    deg2 = bk[1]
                    res.add((t - deg2, deg2), g.rank, g.torsion)
                else:
                    res.add(t, g.rank, g.torsion)
        return per_block if by == "block" else res

    def subcomplex(self, keys, name: str = "") -> "MonomialComplex":
        ks = [k for k in self.basis if k in set(keys)]
        kset = set(ks)
        diff = {}
        for k in ks:
            img = self.diff.get(k, {})
            if any(t not in kset for t in img):
                raise StructureError(f"d does not restrict to {name or 'the subcomplex'}")
            diff[k] = dict(img)
        return MonomialComplex(name or self.name, ks, {k: self.bideg[k] for k in ks},
                               {k: self.support[k] for k in ks}, diff,
                               {k: self.weight[k] for k in ks}, self.bigraded, self._label)

    def with_diff(self, diff: dict, name: str = "") -> "MonomialComplex":
        return MonomialComplex(name or self.name, self.basis, self.bideg, self.support, diff,
                               self.weight, self.bigraded, self._label)

    def with_flipped_sign(self, source, target) -> "MonomialComplex":
        """Copy with the coefficient of ``target`` in d(source) negated."""
        diff = {k: dict(v) for k, v in self.diff.items()}
        diff[source][target] = -diff[source][target]
        return self.with_diff(diff, self.name + "[fault]")


# ------------------------------------------------------------------ checks

def check_d_squared(C: MonomialComplex) -> CheckResult:
    """d o d = 0, exactly, on every basis element."""
    for k in C.basis:
        dd = C.d(C.d_basis(k))
        if dd:
            return failed(f"d_squared[{C.name}]", {"monomial": C.label(k),
                          "dd": {C.label(t): c for t, c in sorted(dd.items(), key=lambda x: C.index[x[0]])}})
    return passed(f"d_squared[{C.name}]", f"{len(C)} basis elements")


def check_contract(C: MonomialComplex) -> CheckResult:
    """Bidegree (deg1 + 1, deg2 unchanged), support and weight preserved by d;
    every target is a basis monomial."""
    for k in C.basis:
        d1, d2 = C.bideg[k]
        for t in C.d_basis(k):
            if t not in C.index:
                return failed(f"contract[{C.name}]", C.label(k), "target outside the basis")
            if C.support[t] != C.support[k]:
                return failed(f"contract[{C.name}]", C.label(k), "support changed")
            if C.weight[t] != C.weight[k]:
                return failed(f"contract[{C.name}]", C.label(k), "weight changed")
            if C.total(t) != C.total(k) + 1:
                return failed(f"contract[{C.name}]", C.label(k), "total degree not raised by 1")
            if C.bigraded and C.bideg[t] != (d1 + 1, d2):
                return failed(f"contract[{C.name}]", C.label(k), "bidegree contract")
    return passed(f"contract[{C.name}]")


class ProductTable:
    """Structure constants of a product on the basis of a complex.

    ``mul(a, b)`` returns a dict key -> integer coefficient.  Results are
    cached; :meth:`arrays` exposes the dense form when every product is a
    single signed monomial.
    """

    def __init__(self, C: MonomialComplex, mul: Callable, unit=None, name: str = "",
                 array_builder: Optional[Callable] = None):
        self.C = C
        self.basis = C.basis
        self.index = C.index
        self._mul = mul
        self.unit = unit
        self.name = name or C.name
        self._cache: dict = {}
        self._arrays = None
        self._builder = array_builder

    def __call__(self, a, b) -> dict:
        key = (a, b)
        r = self._cache.get(key)
        if r is None:
            r = {k: v for k, v in self._mul(a, b).items() if v}
            self._cache[key] = r
        return r

    def multiply(self, x: Vector, y: Vector) -> Vector:
        out: dict = {}
        for a, ca in x.items():
            for b, cb in y.items():
                add_into(out, self(a, b), ca * cb)
        return out

    def items(self):
        for a in self.basis:
            for b in self.basis:
                yield (a, b), self(a, b)

    def arrays(self):
        """(T, V): T[i, j] = index of the product monomial (-1 for zero),
        V[i, j] its coefficient; None if some product has several terms."""
        if self._arrays is None and self._builder is not None:
            self._arrays = self._builder() or False
        if self._arrays is None:
            n = len(self.basis)
            T = np.full((n, n), -1, dtype=np.int64)
            V = np.zeros((n, n), dtype=np.int64)
            idx = self.index
            for i, a in enumerate(self.basis):
                Ti, Vi = T[i], V[i]
                for j, b in enumerate(self.basis):
                    r = self._mul(a, b)
                    if not r:
                        continue
                    if len(r) > 1:
                        self._arrays = False
                        return None
                    (k, c), = r.items()
                    if k not in idx:
                        raise StructureError(f"product lands outside the basis: {k}")
                    Ti[j] = idx[k]
                    Vi[j] = c
            self._arrays = (T, V)
        return self._arrays or None

    def on(self, C: MonomialComplex, name: str = "") -> "ProductTable":
        """The same product on a complex with the same basis but another
        differential; cached tables are shared."""
        if C.basis != self.basis:
            raise StructureError("product tables can only move between equal bases")
        P = ProductTable(C, self._mul, self.unit, name or C.name, self._builder)
        P._cache = self._cache
        P._arrays = self._arrays
        return P


def _leibniz_sign(C: MonomialComplex, key, sign_mode: str) -> int:
    d1, d2 = C.bideg[key]
    e = d1 if sign_mode == "first_degree" else d1 + d2
    return -1 if e % 2 else 1


def check_leibniz(C: MonomialComplex, P: ProductTable, sign_mode: str = "total_degree",
                  pairs=None) -> CheckResult:
    """d(ab) = d(a) b + (-1)^e(a) a d(b) on basis pairs, with e(a) = deg1(a)
    (``first_degree``) or the total degree (``total_degree``)."""
    name = f"leibniz[{C.name},{sign_mode}]"
    if sign_mode not in ("first_degree", "total_degree"):
        raise ValueError(sign_mode)
    arrs = P.arrays() if pairs is None else None
    if arrs is None:
        it = pairs if pairs is not None else itertools.product(C.basis, C.basis)
        count = 0
        for a, b in it:
            lhs = C.d(P(a, b))
            rhs = P.multiply(C.d_basis(a), {b: 1})
            add_into(rhs, P.multiply({a: 1}, C.d_basis(b)), _leibniz_sign(C, a, sign_mode))
            count += 1
            if lhs != rhs:
                return failed(name, {"a": C.label(a), "b": C.label(b)})
        return passed(name, f"{count} pairs")
    T, V = arrs
    n = len(C.basis)
    D = C.sparse_matrix()
    Dc = D.tocsc()
    cols = np.arange(n)
    Ls = []
    for i in range(n):
        m = T[i] >= 0
        Ls.append(sp.csr_matrix((V[i][m], (T[i][m], cols[m])), shape=(n, n)))
    for i, a in enumerate(C.basis):
        lhs = D @ Ls[i]
        rhs = Ls[i] @ D
        if _leibniz_sign(C, a, sign_mode) < 0:
            rhs = -rhs
        lo, hi = Dc.indptr[i], Dc.indptr[i + 1]
        for k, c in zip(Dc.indices[lo:hi], Dc.data[lo:hi]):
            rhs = rhs + int(c) * Ls[k]
        diff = (lhs - rhs).tocoo()
        bad = diff.data != 0
        if bad.any():
            j = int(diff.col[bad][0])
            return failed(name, {"a": C.label(a), "b": C.label(C.basis[j])})
    return passed(name, f"{n * n} pairs")


def check_associativity(P: ProductTable) -> CheckResult:
    """(ab)c = a(bc) on all basis triples."""
    name = f"associativity[{P.name}]"
    C = P.C
    arrs = P.arrays()
    if arrs is None:
        for a, b, c in itertools.product(C.basis, repeat=3):
            if P.multiply(P(a, b), {c: 1}) != P.multiply({a: 1}, P(b, c)):
                return failed(name, [C.label(a), C.label(b), C.label(c)])
        return passed(name)
    T, V = arrs
    n = len(C.basis)
    if n == 0:
        return passed(name)
    if np.abs(V).max(initial=0) <= 1 and n < 2 ** 29:
        bad_at = _assoc_signed(T, V)
    else:
        bad_at = _assoc_general(T, V)
    if bad_at is not None:
        i, j, k = bad_at
        return failed(name, [C.label(C.basis[i]), C.label(C.basis[j]), C.label(C.basis[k])])
    return passed(name, f"{n ** 3} triples")


def _assoc_signed(T, V):
    """Associativity for tables whose products are 0 or +-monomials.  Each
    product is packed as 2 * index + (1 if negative), -1 for zero."""
    code = np.where(T >= 0, 2 * T + (V < 0), -1).astype(np.int32)
    nz_bc = code >= 0
    idx_bc = np.where(nz_bc, code >> 1, 0)
    sgn_bc = code & 1
    for i in range(code.shape[0]):
        row = code[i]
        left = row[idx_bc]
        left = np.where(nz_bc & (left >= 0), left ^ sgn_bc, -1)
        ab = row
        nz_ab = ab >= 0
        right = code[np.where(nz_ab, ab >> 1, 0)]
        right = np.where(nz_ab[:, None] & (right >= 0), right ^ (ab & 1)[:, None], -1)
        bad = left != right
        if bad.any():
            j, k = map(int, np.argwhere(bad)[0])
            return i, j, k
    return None


def _assoc_general(T, V):
    n = T.shape[0]
    valid_bc = T >= 0
    safe_bc = np.where(valid_bc, T, 0)
    for i in range(n):
        left_val = np.where(valid_bc, V[i][safe_bc], 0) * V
        left_idx = np.where(left_val != 0, T[i][safe_bc], -1)
        Tab, Vab = T[i], V[i]
        valid_ab = Tab >= 0
        safe_ab = np.where(valid_ab, Tab, 0)
        right_val = np.where(valid_ab[:, None], V[safe_ab], 0) * Vab[:, None]
        right_idx = np.where(right_val != 0, T[safe_ab], -1)
        left_val = np.where(left_idx >= 0, left_val, 0)
        right_val = np.where(right_idx >= 0, right_val, 0)
        bad = (left_idx != right_idx) | (left_val != right_val)
        if bad.any():
            j, k = map(int, np.argwhere(bad)[0])
            return i, j, k
    return None


def check_unit(P: ProductTable) -> CheckResult:
    name = f"unit[{P.name}]"
    u = P.unit
    if u is None:
        return skipped(name, "no unit declared")
    for b in P.basis:
        if P(u, b) != {b: 1} or P(b, u) != {b: 1}:
            return failed(name, P.C.label(b))
    return passed(name)


def check_product_grading(P: ProductTable, bidegree: bool = True) -> CheckResult:
    """Degrees (or bidegrees) add and supports union under nonzero products."""
    name = f"product_grading[{P.name}]"
    C = P.C
    arrs = P.arrays()
    if arrs is not None:
        T, _ = arrs
        nz = T >= 0
        Ts = np.where(nz, T, 0)
        sup = np.array([C.support[k] for k in C.basis], dtype=np.int64)
        checks = [(sup[Ts] != (sup[:, None] | sup[None, :]), "support not additive")]
        grades = ([np.array([C.bideg[k][i] for k in C.basis], dtype=np.int64) for i in (0, 1)] if bidegree
                  else [np.array([C.total(k) for k in C.basis], dtype=np.int64)])
        what = "bidegree not additive" if bidegree else "degree not additive"
        checks += [(g[Ts] != g[:, None] + g[None, :], what) for g in grades]
        for bad, why in checks:
            bad = bad & nz
            if bad.any():
                i, j = map(int, np.argwhere(bad)[0])
                return failed(name, [C.label(C.basis[i]), C.label(C.basis[j])], why)
        return passed(name)
    for (a, b), r in P.items():
        for k in r:
            if C.support[k] != C.support[a] | C.support[b]:
                return failed(name, [C.label(a), C.label(b)], "support not additive")
            if bidegree:
                if C.bideg[k] != tuple(x + y for x, y in zip(C.bideg[a], C.bideg[b])):
                    return failed(name, [C.label(a), C.label(b)], "bidegree not additive")
            elif C.total(k) != C.total(a) + C.total(b):
                return failed(name, [C.label(a), C.label(b)], "degree not additive")
    return passed(name)


# ------------------------------------------------------------ cohomology ring

@dataclass
class CohomologyRing:
    coeff: Coeff
    result: CohomologyResult
    degrees: list[int]                  # degree of each class
    representatives: list[Vector]       # cocycle per class (field values)
    structure: dict = field(default_factory=dict)   # (i, j) -> {k: coef}
    labels: Callable = str

    def product(self, i: int, j: int) -> dict:
        return self.structure.get((i, j), {})

    def classes_in(self, deg: int) -> list[int]:
        return [i for i, d in enumerate(self.degrees) if d == deg]

    def unit_index(self) -> Optional[int]:
        for i in self.classes_in(0):
            if all(self.product(i, j) == {j: 1} and self.product(j, i) == {j: 1}
                   for j in range(len(self.degrees))):
                return i
        return None

    def to_json(self) -> dict:
        return {"coeff": str(self.coeff),
                "classes": [{"index": i, "degree": d,
                             "representative": {self.labels(k): str(v) for k, v in rep.items()}}
                            for i, (d, rep) in enumerate(zip(self.degrees, self.representatives))],
                "products": [{"left": i, "right": j, "value": {str(k): str(v) for k, v in val.items()}}
                             for (i, j), val in sorted(self.structure.items()) if val]}


class _Echelon:
    """Incremental echelon form over a field.  Each stored row remembers its
    coordinates in terms of the inserted vectors, so membership tests also
    return coordinates."""

    def __init__(self, coeff: Coeff):
        self.coeff = coeff
        self.rows: list[tuple[int, dict, dict]] = []   # (pivot, vector, coordinates)

    def _reduce(self, vec: dict, coords: dict):
        f = self.coeff
        for piv, row, rc in self.rows:
            a = vec.get(piv)
            if not a:
                continue
            c = a * f.inv(row[piv])
            for k, v in row.items():
                x = f.norm(vec.get(k, 0) - c * v)
                if x:
                    vec[k] = x
                else:
                    vec.pop(k, None)
            for k, v in rc.items():
                x = f.norm(coords.get(k, 0) - c * v)
                if x:
                    coords[k] = x
                else:
                    coords.pop(k, None)
        return vec, coords

    def insert(self, vec: dict, tag) -> bool:
        """Add vec (tagged) if it is independent; returns whether it was."""
        vec = {k: v for k, v in vec.items() if v}
        vec, coords = self._reduce(vec, {tag: self.coeff.convert(1)})
        if not vec:
            return False
        self.rows.append((min(vec), vec, coords))
        return True

    def coordinates(self, vec: dict) -> Optional[dict]:
        """Coordinates of vec in the inserted vectors, or None if outside
        their span."""
        rest, coords = self._reduce({k: v for k, v in vec.items() if v}, {})
        if rest:
            return None
        return {k: self.coeff.norm(-v) for k, v in coords.items() if self.coeff.norm(-v)}


class _Degree:
    """Linear algebra for one total degree over a field: a basis of
    cohomology classes chosen greedily from a kernel basis, modulo the
    image of the incoming differential."""

    def __init__(self, C: MonomialComplex, coeff: Coeff, keys: list, prev: list, nxt: list):
        self.keys = keys
        self.pos = {k: i for i, k in enumerate(keys)}
        self.coeff = coeff
        n = len(keys)
        tgt = {k: i for i, k in enumerate(nxt)}
        d_out = [[0] * n for _ in nxt]
        for j, k in enumerate(keys):
            for t, c in C.d_basis(k).items():
                d_out[tgt[t]][j] = c
        self.ech = _Echelon(coeff)
        for m, k in enumerate(prev):
            img = C.d_basis(k)
            if img:
                self.ech.insert({self.pos[t]: coeff.convert(c) for t, c in img.items()}, ("im", m))
        self.reps: list[list] = []
        for v in kernel_basis(d_out, coeff, n):
            if self.ech.insert({i: x for i, x in enumerate(v) if x}, ("rep", len(self.reps))):
                self.reps.append(v)

    def reduce(self, vec: Vector) -> Optional[dict]:
        """Coordinates of a cocycle's class in the chosen basis."""
        b = {self.pos[k]: self.coeff.norm(self.coeff.convert(c)) for k, c in vec.items()}
        coords = self.ech.coordinates(b)
        if coords is None:
            return None
        return {t[1]: v for t, v in coords.items() if t[0] == "rep"}


def cohomology_ring(C: MonomialComplex, P: ProductTable, coeff: Coeff) -> CohomologyRing:
    """Cohomology classes with cocycle representatives and the induced
    product, over a field."""
    if not coeff.is_field:
        raise ValueError("ring structure is computed over fields only; use Q or Z/p")
    by_deg: dict = defaultdict(list)
    for k in C.basis:
        by_deg[C.total(k)].append(k)
    degs = sorted(by_deg)
    info = {}
    for t in degs:
        info[t] = _Degree(C, coeff, by_deg[t], by_deg.get(t - 1, []), by_deg.get(t + 1, []))
    degrees, reps = [], []
    offset = {}
    for t in degs:
        offset[t] = len(degrees)
        for v in info[t].reps:
            degrees.append(t)
            reps.append({info[t].keys[i]: x for i, x in enumerate(v) if x})
    ring = CohomologyRing(coeff, C.cohomology(coeff), degrees, reps, labels=C.label)
    for i, j in itertools.product(range(len(reps)), repeat=2):
        prod = {k: coeff.norm(coeff.convert(v)) for k, v in P.multiply(reps[i], reps[j]).items()}
        prod = {k: v for k, v in prod.items() if v}
        t = degrees[i] + degrees[j]
        if not prod:
            continue
        if t not in info:
            raise StructureError("product of classes lands outside the complex")
        coords = info[t].reduce(prod)
        if coords is None:
            raise StructureError(f"product of classes {i}, {j} is not a cocycle")
        if coords:
            ring.structure[(i, j)] = {offset[t] + k: v for k, v in coords.items()}
    ring._info = info
    ring._offset = offset
    ring._P = P
    ring._C = C
    return ring


def check_ring_well_defined(ring: CohomologyRing, samples: int = 3) -> CheckResult:
    """Moving a representative by a coboundary leaves product classes fixed."""
    C, P, coeff = ring._C, ring._P, ring.coeff
    n = len(ring.degrees)
    for i in range(n):
        t = ring.degrees[i]
        sources = [k for k in C.basis if C.total(k) == t - 1 and C.d_basis(k)][:samples]
        for src in sources:
            moved = add_into(dict(ring.representatives[i]), C.d_basis(src))
            for j in range(n):
                for left, right, pair in ((moved, ring.representatives[j], (i, j)),
                                          (ring.representatives[j], moved, (j, i))):
                    prod = {k: coeff.norm(coeff.convert(v)) for k, v in P.multiply(left, right).items()}
                    prod = {k: v for k, v in prod.items() if v}
                    tt = ring.degrees[i] + ring.degrees[j]
                    coords = ring._info[tt].reduce(prod) if prod else {}
                    off = ring._offset.get(tt, 0)
                    want = {k - off: v for k, v in ring.product(*pair).items()}
                    if coords != want:
                        return failed("ring_well_defined", {"classes": list(pair), "coboundary_of": C.label(src)})
    return passed("ring_well_defined")


def check_graded_commutative(ring: CohomologyRing) -> CheckResult:
    """x y = (-1)^{|x||y|} y x on all pairs of classes."""
    coeff = ring.coeff
    n = len(ring.degrees)
    for i in range(n):
        for j in range(n):
            s = -1 if (ring.degrees[i] * ring.degrees[j]) % 2 else 1
            a = ring.product(i, j)
            b = {k: coeff.norm(s * v) for k, v in ring.product(j, i).items()}
            b = {k: v for k, v in b.items() if v}
            if a != b:
                return failed("graded_commutative", [i, j])
    return passed("graded_commutative")
