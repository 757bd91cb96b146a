"""The verification suite: every structural and comparison check, per
complex and coefficient ring, collected into a :class:`Report`."""

from __future__ import annotations

import time
from typing import Iterable

from .coeffs import Coeff, QQ
from .dga import (ProductTable, check_associativity, check_contract, check_d_squared,
                  check_graded_commutative, check_leibniz, check_product_grading,
                  check_ring_well_defined, check_unit, cohomology_ring)
from .koszul import (build_E, e_leibniz_pairs, e_product, quotient_quasi_iso_check,
                     verify_homotopy_E, verify_ideal_homotopy)
from .polyhedral import (Space, build_b_dga, build_bxk, build_cxk, build_rxk, oracle_compare_cxx,
                         preset_spaces, summand_check, suspension_coincidence_check, verify_f_X,
                         verify_h_g)
from .realmac import build_bk, build_rbar, rbar_product, verify_f
from .report import CheckResult, Report, failed, passed
from .simplicial import SimplicialComplex, splitting_oracle

GROUPS = ("structure", "oracle", "fddf", "homotopy", "quotient", "polyhedral", "relabel", "fault", "ring")

def _timed(fn, *args, **kw) -> list[CheckResult]:
    t0 = time.perf_counter()
    out = fn(*args, **kw)
    out = out if isinstance(out, list) else [out]
    dt = time.perf_counter() - t0
    for r in out:
        if r.timing is None:
            r.timing = dt / len(out)
    return out


def _rename(r: CheckResult, name: str) -> CheckResult:
    r.check = name
    return r


def structure_checks(K: SimplicialComplex) -> list[CheckResult]:
    R = build_rbar(K)
    B, PB = build_bk(K)
    PR = rbar_product(K, R)
    out = []
    for C in (R, B):
        out += _timed(check_d_squared, C) + _timed(check_contract, C)
    out += _timed(check_leibniz, R, PR, "first_degree")
    out += _timed(check_leibniz, B, PB, "total_degree")
    for P, bigraded in ((PR, True), (PB, False)):
        out += _timed(check_associativity, P) + _timed(check_unit, P)
        out += _timed(check_product_grading, P, bigraded)
    return out


def oracle_checks(K: SimplicialComplex, coeff: Coeff) -> list[CheckResult]:
    want = splitting_oracle(K, coeff, "real")
    out = []
    for C in (build_rbar(K), build_bk(K)[0]):
        t0 = time.perf_counter()
        got = C.cohomology(coeff)
        name = f"oracle[{C.name};{coeff}]"
        if got == want:
            r = passed(name, repr(got))
        else:
            t = next(t for t in sorted(set(got.groups) | set(want.groups)) if got[t] != want[t])
            r = failed(name, {"degree": t, "model": str(got[t]), "oracle": str(want[t])})
        r.timing = time.perf_counter() - t0
        out.append(r)
    return out


def homotopy_checks(K: SimplicialComplex, cap: int) -> list[CheckResult]:
    return _timed(verify_ideal_homotopy, K, cap, "ds+sd")


def resolution_checks(max_m: int = 4, cap: int = 6) -> list[CheckResult]:
    """Homotopy identity, d^2 and first-degree Leibniz on the truncated E."""
    out = []
    for m in range(1, max_m + 1):
        out += _timed(verify_homotopy_E, m, cap)
        E = build_E(m, cap)
        out += _timed(check_d_squared, E)
        if m <= 2:
            out += _timed(check_leibniz, E, e_product(E), "first_degree", e_leibniz_pairs(E, cap))
    return out


def polyhedral_checks(K: SimplicialComplex, spaces: list[Space], label: str,
                      expect_strict: bool | None = None) -> list[CheckResult]:
    C = build_cxk(K, spaces)
    B, PB = build_bxk(K, spaces)
    R = build_rxk(K, spaces)
    out = []
    for X in (C, B, R):
        out += _timed(check_d_squared, X)
    out += _timed(verify_f_X, K, spaces, C, B)
    out += _timed(verify_h_g, K, spaces, C, R)
    out += _timed(summand_check, K, spaces, strict=expect_strict, C=C, R=R)
    out += _timed(oracle_compare_cxx, K, spaces)
    out += _timed(check_leibniz, B, PB, "total_degree")
    out += _timed(check_unit, PB) + _timed(check_associativity, PB)
    if all(s.is_suspension for s in spaces):
        out += _timed(suspension_coincidence_check, K, spaces, B, PB)
    return out


def b_dga_checks(K: SimplicialComplex) -> list[CheckResult]:
    """The non-minimal model of S^1 at vertex 1 gives the same cohomology,
    and zero differentials reproduce B(X,K) exactly."""
    X = preset_spaces("s1dga", K.m)
    D, P = build_b_dga(K, X)
    out = _timed(check_d_squared, D) + _timed(check_leibniz, D, P, "total_degree")
    spheres = preset_spaces("spheres", K.m)
    B, PB = build_bxk(K, spheres)
    name = f"b_dga_quasi_iso[{K.name}]"
    out.append(passed(name) if D.cohomology() == B.cohomology() else failed(name))
    D0, P0 = build_b_dga(K, spheres)
    T0, TB = P0.arrays(), PB.arrays()
    same = (D0.basis == B.basis and D0.diff == B.diff and T0 is not None and TB is not None
            and all((x == y).all() for x, y in zip(T0, TB)))
    name = f"b_dga_reduces_to_bxk[{K.name}]"
    out.append(passed(name) if same else failed(name))
    return out


def relabel_checks(K: SimplicialComplex, coeff: Coeff) -> list[CheckResult]:
    perm = list(range(K.m, 0, -1))
    K2 = K.relabel(perm)
    name = f"relabel[{K.name};{coeff}]"
    h1 = build_bk(K)[0].cohomology(coeff)
    h2 = build_bk(K2)[0].cohomology(coeff)
    out = [passed(name) if h1 == h2 else failed(name, {"before": repr(h1), "after": repr(h2)})]
    out += [_rename(r, f"relabel_fddf[{K.name}]") for r in _timed(verify_f, K2)]
    out += [_rename(r, f"relabel_d_squared[{K.name}]") for r in _timed(check_d_squared, build_bk(K2)[0])]
    return out


def fault_checks(K: SimplicialComplex, sites: int = 3) -> list[CheckResult]:
    """Flip single signs in the differential and in the product of B(K);
    each fault must make at least one check fail."""
    R = build_rbar(K)
    B, PB = build_bk(K)
    out = []
    d_sites = [(k, t) for k in B.basis for t in B.d_basis(k)][:sites]
    for n, (k, t) in enumerate(d_sites):
        bad = B.with_flipped_sign(k, t)
        caught = [r.check for r in (verify_f(K, R, bad), check_d_squared(bad),
                                    check_leibniz(bad, PB.on(bad), "total_degree"))
                  if not r.ok]
        name = f"fault_d[{K.name}#{n}]"
        out.append(passed(name, f"caught by {caught}") if caught else failed(name, B.label(k)))
    p_sites = [(a, b) for a in B.basis if a != PB.unit for b in B.basis if b != PB.unit and PB(a, b)][:sites]
    for n, site in enumerate(p_sites):
        bad = ProductTable(B, _flip(PB._mul, site), PB.unit, B.name + "[fault]",
                           array_builder=_flip_arrays(PB, site))
        caught = [r.check for r in (check_associativity(bad), check_leibniz(B, bad, "total_degree"),
                                    check_unit(bad)) if not r.ok]
        name = f"fault_product[{K.name}#{n}]"
        out.append(passed(name, f"caught by {caught}") if caught else
                   failed(name, [B.label(site[0]), B.label(site[1])]))
    return out


def fault_scan(K: SimplicialComplex) -> list[CheckResult]:
    """Exhaustive variant of :func:`fault_checks`: every single coefficient
    of d and of the product table, in both Rbar(K) and B(K), is negated in
    turn and must be caught.  Meant for small complexes."""
    R = build_rbar(K)
    B, PB = build_bk(K)
    PR = rbar_product(K, R)
    out = []
    for C, P, mode in ((R, PR, "first_degree"), (B, PB, "total_degree")):
        missed, n = [], 0
        for k in C.basis:
            for t in C.d_basis(k):
                bad = C.with_flipped_sign(k, t)
                n += 1
                fd = verify_f(K, bad, B) if C is R else verify_f(K, R, bad)
                if fd.ok and check_d_squared(bad).ok and check_leibniz(bad, P.on(bad), mode).ok:
                    missed.append([C.label(k), C.label(t)])
        name = f"fault_scan_d[{C.name}]"
        out.append(failed(name, missed[:5], f"{len(missed)} of {n} faults missed") if missed
                   else passed(name, f"{n} faults caught"))
        missed, n = [], 0
        for a in C.basis:
            for b in C.basis:
                if not P(a, b):
                    continue
                n += 1
                bad = ProductTable(C, _flip(P._mul, (a, b)), P.unit, C.name + "[fault]",
                                   array_builder=_flip_arrays(P, (a, b)))
                if check_associativity(bad).ok and check_leibniz(C, bad, mode).ok and check_unit(bad).ok:
                    missed.append([C.label(a), C.label(b)])
        name = f"fault_scan_product[{C.name}]"
        out.append(failed(name, missed[:5], f"{len(missed)} of {n} faults missed") if missed
                   else passed(name, f"{n} faults caught"))
    return out


def _flip(mul, site):
    def f(a, b):
        r = mul(a, b)
        return {k: -v for k, v in r.items()} if (a, b) == site else r
    return f


def _flip_arrays(P: ProductTable, site):
    def build():
        arrs = P.arrays()
        if arrs is None:
            return None
        T, V = arrs[0], arrs[1].copy()
        V[P.index[site[0]], P.index[site[1]]] *= -1
        return T, V
    return build


def ring_checks(K: SimplicialComplex, coeff: Coeff) -> list[CheckResult]:
    B, PB = build_bk(K)
    ring = cohomology_ring(B, PB, coeff)
    tag = f"[{B.name};{coeff}]"
    out = [_rename(check_graded_commutative(ring), "graded_commutative" + tag),
           _rename(check_ring_well_defined(ring), "ring_well_defined" + tag)]
    name = "ring_unit" + tag
    out.append(passed(name) if ring.unit_index() is not None else failed(name))
    return out


def run_suite(complexes: Iterable[SimplicialComplex], coeffs: Iterable[Coeff],
              groups: Iterable[str] = GROUPS, cap: int | None = None,
              spaces: list[str] | None = None, report: Report | None = None) -> Report:
    """Run the selected check groups; ``cap`` defaults to m + 2 per complex,
    ``spaces`` to the all-circles and the wedge presets."""
    groups = set(groups)
    unknown = groups - set(GROUPS)
    if unknown:
        raise ValueError(f"unknown check groups {sorted(unknown)}")
    coeffs = list(coeffs)
    report = report or Report("verify")
    add = lambda rs: [report.add(r) for r in rs]  # noqa: E731
    if "homotopy" in groups:
        add(resolution_checks())
    for K in complexes:
        N = K.m + 2 if cap is None else cap
        if "structure" in groups:
            add(structure_checks(K))
        if "fddf" in groups:
            add(_timed(verify_f, K))
        if "homotopy" in groups:
            add(homotopy_checks(K, N))
        for coeff in coeffs:
            if "oracle" in groups:
                add(oracle_checks(K, coeff))
            if "quotient" in groups:
                add(_timed(quotient_quasi_iso_check, K, N, coeff))
            if "relabel" in groups:
                add(relabel_checks(K, coeff))
            if "ring" in groups and coeff.is_field:
                add(ring_checks(K, coeff))
        if "polyhedral" in groups:
            for preset in spaces or ["spheres", "wedge"]:
                X = preset_spaces(preset, K.m)
                strict = None
                if preset == "wedge":
                    # a full simplex gives a contractible polyhedral product
                    strict = len(K.simplices) != 1 << K.m
                elif all(s.k == 1 for s in X):
                    strict = False
                add(polyhedral_checks(K, X, preset, strict))
            add(b_dga_checks(K))
        if "fault" in groups:
            add(fault_checks(K))
    return report


def default_coeffs() -> list[Coeff]:
    return [Coeff.parse("Z"), QQ, Coeff.parse("Z2")]
