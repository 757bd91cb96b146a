"""Acceptance criteria, evaluated exactly.  Each test prints one line
``PASS criterion N: ...`` or ``FAIL criterion N: ...`` and then asserts."""

from __future__ import annotations

import time

import pytest

from dgpoly.coeffs import GF, QQ, ZZ
from dgpoly.dga import (check_associativity, check_contract, check_d_squared, check_leibniz,
                        check_product_grading, check_unit, cohomology_ring)
from dgpoly.koszul import quotient_quasi_iso_check, verify_homotopy_E, verify_ideal_homotopy
from dgpoly.polyhedral import (build_bxk, preset_spaces, summand_check, suspension_coincidence_check,
                               verify_f_X, verify_h_g)
from dgpoly.realmac import build_bk, build_rbar, verify_f
from dgpoly.results import Group
from dgpoly.simplicial import CATALOG_NAMES, catalog, splitting_oracle
from dgpoly.verify import fault_scan, run_suite

COEFFS = (ZZ, QQ, GF(2))
SMALL = ("simplex3", "boundary3", "boundary4", "gon4", "gon5", "points2", "points3", "points4")


@pytest.fixture
def verdict(capsys):
    t0 = time.perf_counter()

    def emit(n: int, title: str, failures: list):
        ok = not failures
        dt = time.perf_counter() - t0
        with capsys.disabled():
            line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {title} [{dt:.1f} s]"
            if failures:
                line += f" -- {len(failures)} failing: " + "; ".join(map(str, failures[:4]))
            print("\n" + line)
        assert ok, failures
    return emit


def bad_checks(results) -> list:
    return [(r.check, r.witness) for r in results if not r.ok]


def test_criterion_1_splitting_oracle(verdict):
    failures = []
    for name in CATALOG_NAMES:
        K = catalog(name)
        for coeff in COEFFS:
            want = splitting_oracle(K, coeff, "real")
            for C in (build_bk(K)[0], build_rbar(K)):
                got = C.cohomology(coeff)
                if got != want:
                    failures.append((C.name, str(coeff), repr(got), repr(want)))
    h3 = build_bk(catalog("rp2_6"))[0].cohomology(ZZ)[3]
    if h3 != Group(0, (2,)):
        failures.append(("rp2_6 degree 3", str(h3)))
    verdict(1, "H(B(K)) = H(Rbar(K)) = oracle on the catalog over Z, Q, Z/2; rp2_6 has Z/2 in degree 3",
            failures)


def test_criterion_2_tor_equality(verdict):
    failures = []
    for name in CATALOG_NAMES:
        K = catalog(name)
        for coeff in (ZZ, GF(2)):
            checks = quotient_quasi_iso_check(K, K.m + 2, coeff)
            failures += [(r.check, r.status, r.witness) for r in checks if r.status != "pass"]
    verdict(2, "Tor = H(Rbar(K)) for deg2 <= m and Tor = 0 for m < deg2 <= m + 2", failures)


def test_criterion_3_homotopy_identities(verdict):
    failures = []
    for m in range(1, 5):
        failures += bad_checks([verify_homotopy_E(m, 6)])
    # the ideal identity exactly as stated: ds - sd = id
    for name in CATALOG_NAMES:
        K = catalog(name)
        failures += bad_checks([verify_ideal_homotopy(K, K.m + 2, "ds-sd")])
    verdict(3, "ds + sd = id - eta eps on E (m <= 4, N = 6) and ds - sd = id on the ideal", failures)


def test_criterion_4_sign_chain_maps(verdict):
    failures = []
    for name in CATALOG_NAMES:
        K = catalog(name)
        failures += bad_checks([verify_f(K)])
        for preset in ("spheres", "wedge"):
            failures += bad_checks([verify_f_X(K, preset_spaces(preset, K.m))])
    verdict(4, "f d_R = (-1)^p d_B f and the same for f_X (spheres, wedge) on every basis element",
            failures)


def test_criterion_5_tor_splitting(verdict):
    failures = []
    for name in CATALOG_NAMES:
        K = catalog(name)
        for preset, strict in (("spheres", False), ("wedge", True)):
            X = preset_spaces(preset, K.m)
            failures += bad_checks(verify_h_g(K, X))
            failures += bad_checks([summand_check(K, X, ZZ, strict=strict)])
    verdict(5, "g h = id, h and g chain maps; wedge strictly larger in some degree, spheres equal",
            failures)


def test_criterion_6_moment_angle(verdict):
    failures = []
    for name in CATALOG_NAMES:
        K = catalog(name)
        got = build_bxk(K, preset_spaces("spheres", K.m))[0].cohomology(ZZ)
        want = splitting_oracle(K, ZZ, "sphere", [1] * K.m)
        if got != want:
            failures.append((name, repr(got), repr(want)))
        if name == "points2" and got.groups != {0: Group(1), 3: Group(1)}:
            failures.append(("points2 is not S^3", repr(got)))
        if name == "boundary3" and got.groups != {0: Group(1), 5: Group(1)}:
            failures.append(("boundary3 is not S^5", repr(got)))
    verdict(6, "B(X,K) with circles = sum over J of H^{*-|J|-1}(K_J); points2 -> S^3, boundary3 -> S^5",
            failures)


def test_criterion_7_suspension_coincidence(verdict):
    failures = []
    for name in CATALOG_NAMES:
        K = catalog(name)
        failures += bad_checks(suspension_coincidence_check(K, preset_spaces("spheres", K.m)))
    K = catalog("gon4")
    failures += bad_checks(suspension_coincidence_check(K, preset_spaces("spheres:1,2,3,2", 4)))
    for name in ("points2", "gon4"):
        K = catalog(name)
        (r,) = suspension_coincidence_check(K, preset_spaces("cp2", K.m))
        if r.status != "skipped" or not r.witness:
            failures.append((r.check, "expected a nonzero overlapping product", r.witness))
    verdict(7, "spheres: overlapping products vanish, disjoint ones match C(X,K) up to sign; "
               "CP^2 gives a nonzero overlapping product", failures)


def test_criterion_8_ring_sanity(verdict):
    failures = []
    B, P = build_bk(catalog("gon4"))
    ring = cohomology_ring(B, P, QQ)
    gens = ring.classes_in(1)
    top = ring.classes_in(2)
    if len(gens) != 2 or len(top) != 1 or ring.degrees != [0, 1, 1, 2]:
        failures.append(("gon4 class degrees", ring.degrees))
    else:
        a, b = gens
        if ring.product(a, a) or ring.product(b, b):
            failures.append(("gon4 squares", ring.product(a, a), ring.product(b, b)))
        if not ring.product(a, b) or list(ring.product(a, b)) != top:
            failures.append(("gon4 a*b", ring.product(a, b)))
    B, P = build_bk(catalog("points2"))
    ring = cohomology_ring(B, P, QQ)
    if ring.degrees != [0, 1] or ring.product(1, 1) or ring.unit_index() != 0:
        failures.append(("points2", ring.degrees, ring.structure))
    verdict(8, "over Q: H(B(gon4)) is the torus ring, H(B(points2)) the ring of S^1", failures)


def test_criterion_9_structural_suite(verdict):
    rep = run_suite([catalog(n) for n in CATALOG_NAMES], COEFFS, ["structure", "relabel", "fault"])
    failures = bad_checks(rep.checks)
    for name in CATALOG_NAMES:
        K = catalog(name)
        for preset in ("spheres", "wedge"):
            B, P = build_bxk(K, preset_spaces(preset, K.m))
            failures += bad_checks([check_d_squared(B), check_contract(B),
                                    check_leibniz(B, P, "total_degree"), check_associativity(P),
                                    check_unit(P), check_product_grading(P, False)])
    for name in SMALL:
        failures += bad_checks(fault_scan(catalog(name)))
    verdict(9, "d^2, Leibniz, associativity, unit, support and relabelling on the catalog; "
               "every single-sign fault detected", failures)
