"""Command-line front end: ``dgpoly cohomology|tor|ring|verify|polyhedral``.

Exit status is 0 when every check passes, 1 when some check fails and 2 on
bad input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .coeffs import Coeff, ZZ
from .dga import check_graded_commutative, check_ring_well_defined, cohomology_ring
from .koszul import build_koszul, quotient_quasi_iso_check
from .polyhedral import (PRESETS, build_b_dga, build_bxk, build_cxk, build_rxk, cxk_product,
                         load_spaces, oracle_compare_cxx, preset_spaces)
from .realmac import build_bk, build_rbar, rbar_product
from .report import Report, failed, passed
from .results import CohomologyResult
from .simplicial import CATALOG_NAMES, InputError, catalog, load_complex, splitting_oracle
from .verify import GROUPS, run_suite

MODELS = ("rbar", "bk", "koszul", "cxk", "bxk", "rxk", "bdga")
SPACE_MODELS = ("cxk", "bxk", "rxk", "bdga")


def _complexes(args) -> list:
    out = []
    for path in args.complex or []:
        try:
            text = Path(path).read_text()
        except OSError as e:
            raise InputError(f"cannot read {path}: {e.strerror}") from None
        try:
            out.append(load_complex(text, Path(path).stem))
        except InputError as e:
            raise InputError(f"{path}: {e}") from None
    for name in args.catalog or []:
        out.append(catalog(name))
    return out


def _one_complex(args):
    Ks = _complexes(args)
    if len(Ks) != 1:
        raise InputError("give exactly one of --complex PATH or --catalog NAME")
    return Ks[0]


def _spaces(args, K):
    spec = args.spaces or "spheres"
    p = Path(spec)
    if p.suffix == ".json" or p.exists():
        try:
            spaces = load_spaces(p.read_text())
        except OSError as e:
            raise InputError(f"cannot read {spec}: {e.strerror}") from None
        except InputError as e:
            raise InputError(f"{spec}: {e}") from None
        if len(spaces) != K.m:
            raise InputError(f"{spec} lists {len(spaces)} spaces, {K.name} has {K.m} vertices")
        return spaces
    return preset_spaces(spec, K.m)


def _coeffs(text: str) -> list[Coeff]:
    return [_coeff(t.strip()) for t in text.split(",") if t.strip()]


def _coeff(text: str) -> Coeff:
    try:
        return Coeff.parse(text)
    except ValueError as e:
        raise InputError(str(e)) from None


def _build(model: str, K, args):
    """(complex, product table or None)."""
    if model == "rbar":
        C = build_rbar(K)
        return C, rbar_product(K, C)
    if model == "bk":
        return build_bk(K)
    if model == "koszul":
        return build_koszul(K, _cap(args, K)), None
    X = _spaces(args, K)
    if model == "cxk":
        C = build_cxk(K, X)
        return C, cxk_product(K, C, X)
    if model == "bxk":
        return build_bxk(K, X)
    if model == "rxk":
        return build_rxk(K, X), None
    return build_b_dga(K, X)


def _cap(args, K) -> int:
    N = K.m + 2 if args.cap is None else args.cap
    if N < 0:
        raise InputError("--cap must be >= 0")
    return N


def _table(H: CohomologyResult) -> list:
    return H.to_json()


def _torsion_lines(H: CohomologyResult) -> list[str]:
    return [f"  degree {k}: " + " + ".join(f"Z/{t}" for t in H[k].torsion)
            for k in H.degrees() if H[k].torsion]


def _text_table(H: CohomologyResult, ring: str, head: str = "degree") -> list[str]:
    lines = [f"{head:>10}  group"]
    for k in H.degrees():
        key = k if isinstance(k, int) else f"({k[0]},{k[1]})"
        lines.append(f"{str(key):>10}  {H[k].format(ring)}")
    return lines


def _ring_symbol(coeff: Coeff) -> str:
    return {"Z": "Z", "Q": "Q"}.get(coeff.kind, f"F{coeff.p}")


# ---------------------------------------------------------------- commands

def cmd_cohomology(args, rep: Report) -> list[str]:
    K = _one_complex(args)
    coeff = _coeff(args.coeff)
    C, _ = _build(args.model, K, args)
    H = C.cohomology(coeff)
    rep.config.update(complex=K.name, model=args.model, coeff=str(coeff), basis=len(C))
    rep.tables["cohomology"] = _table(H)
    rep.tables["poincare"] = H.poincare()
    lines = [f"{C.name} over {coeff}: {len(C)} basis monomials"] + _text_table(H, _ring_symbol(coeff))
    lines.append(f"Poincare(t) = {H.poincare()}")
    if C.bigraded:
        Hb = C.cohomology(coeff, by="bidegree")
        rep.tables["bigraded"] = _table(Hb)
        rep.tables["poincare_bigraded"] = Hb.poincare(bigraded=True)
        lines.append(f"Poincare(s,t) = {Hb.poincare(bigraded=True)}")
    tors = _torsion_lines(H)
    if tors:
        lines += ["torsion:"] + tors
    # oracle cross-check where one exists
    if args.model in ("rbar", "bk"):
        want = splitting_oracle(K, coeff, "real")
        name = f"oracle[{C.name};{coeff}]"
        rep.add(passed(name) if want == H else failed(name, {"oracle": want.to_json()}))
    elif args.model in ("cxk", "bxk", "bdga"):
        X = _spaces(args, K)
        want = splitting_oracle(K, coeff, "tensor", [s.degs for s in X])
        name = f"oracle[{C.name};{coeff}]"
        rep.add(passed(name) if want == H else failed(name, {"oracle": want.to_json()}))
    return lines


def cmd_tor(args, rep: Report) -> list[str]:
    K = _one_complex(args)
    coeff = _coeff(args.coeff)
    N = _cap(args, K)
    C = build_koszul(K, N)
    H = C.cohomology(coeff, by="bidegree")
    rep.config.update(complex=K.name, coeff=str(coeff), cap=N, basis=len(C))
    rep.tables["tor"] = _table(H)
    rep.tables["poincare_bigraded"] = H.poincare(bigraded=True)
    for r in quotient_quasi_iso_check(K, N, coeff):
        rep.add(r)
    lines = [f"Tor of SR<{K.name}> over {coeff}, truncated verification at deg2 <= {N}"]
    lines += _text_table(H, _ring_symbol(coeff), "bidegree")
    lines.append(f"Poincare(s,t) = {H.poincare(bigraded=True)}")
    tors = _torsion_lines(H)
    if tors:
        lines += ["torsion:"] + tors
    return lines


def cmd_ring(args, rep: Report) -> list[str]:
    K = _one_complex(args)
    coeff = _coeff(args.coeff)
    if not coeff.is_field:
        raise InputError("ring structure is computed over a field; use --coeff Q or --coeff Zp:<p> (e.g. Z2)")
    if args.model not in ("rbar", "bk", "cxk", "bxk", "bdga"):
        raise InputError(f"model {args.model!r} has no product; use rbar, bk, cxk, bxk or bdga")
    C, P = _build(args.model, K, args)
    ring = cohomology_ring(C, P, coeff)
    rep.config.update(complex=K.name, model=args.model, coeff=str(coeff))
    rep.tables["ring"] = ring.to_json()
    rep.add(check_graded_commutative(ring))
    rep.add(check_ring_well_defined(ring))
    ring_sym = _ring_symbol(coeff)
    lines = [f"H*({C.name}; {ring_sym}): {len(ring.degrees)} classes"]
    for i, (d, v) in enumerate(zip(ring.degrees, ring.representatives)):
        rep_s = " + ".join(f"{c}*{C.label(k)}" for k, c in v.items())
        lines.append(f"  e{i}  degree {d}  = [{rep_s}]")
    lines.append("products (unit products omitted):")
    u = ring.unit_index()
    for (i, j), val in sorted(ring.structure.items()):
        if u in (i, j):
            continue
        lines.append(f"  e{i} * e{j} = " + " + ".join(f"{c}*e{k}" for k, c in sorted(val.items())))
    return lines


def cmd_verify(args, rep: Report) -> list[str]:
    Ks = _complexes(args) or [catalog(n) for n in CATALOG_NAMES]
    coeffs = _coeffs(args.coeff) if args.coeff else [ZZ, Coeff.parse("Q"), Coeff.parse("Z2")]
    groups = [g.strip() for g in args.checks.split(",")] if args.checks else list(GROUPS)
    bad = [g for g in groups if g not in GROUPS]
    if bad:
        raise InputError(f"unknown check group(s) {bad}; choose from {', '.join(GROUPS)}")
    spaces = [s.strip() for s in args.spaces.split(",")] if args.spaces else None
    rep.config.update(complexes=[K.name for K in Ks], coeffs=[str(c) for c in coeffs],
                      checks=groups, cap=args.cap, spaces=spaces or ["spheres", "wedge"])
    run_suite(Ks, coeffs, groups, args.cap, spaces, rep)
    return []


def cmd_polyhedral(args, rep: Report) -> list[str]:
    K = _one_complex(args)
    coeff = _coeff(args.coeff)
    X = _spaces(args, K)
    rep.config.update(complex=K.name, spaces=[s.to_json() for s in X], coeff=str(coeff))
    C = build_cxk(K, X)
    B = build_bxk(K, X)[0]
    R = build_rxk(K, X)
    lines = [f"polyhedral product on {K.name} with spaces {', '.join(s.name for s in X)} over {coeff}"]
    for tag, M in (("C", C), ("B", B), ("R", R)):
        H = M.cohomology(coeff)
        rep.tables[tag] = _table(H)
        rep.tables[f"poincare_{tag}"] = H.poincare()
        lines.append(f"{tag}: {len(M)} basis monomials, Poincare(t) = {H.poincare()}")
        lines += ["  " + s for s in _text_table(H, _ring_symbol(coeff))]
    for r in oracle_compare_cxx(K, X, coeff):
        rep.add(r)
    return lines


COMMANDS = {"cohomology": cmd_cohomology, "tor": cmd_tor, "ring": cmd_ring,
            "verify": cmd_verify, "polyhedral": cmd_polyhedral}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dgpoly", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--complex", action="append", metavar="PATH",
                       help='JSON complex {"m": int, "facets": [[...]]}')
        p.add_argument("--catalog", action="append", metavar="NAME",
                       help=f"built-in complex: {', '.join(CATALOG_NAMES)} (also simplexN, boundaryN, gonN, pointsN)")
        p.add_argument("--spaces", metavar="PRESET|PATH",
                       help=f"spaces JSON file or preset ({', '.join(PRESETS)})")
        p.add_argument("--coeff", default=None if name == "verify" else ("Q" if name == "ring" else "Z"),
                       help="Z, Q or Zp:<p> / Z<p>" + (" (comma list)" if name == "verify" else ""))
        p.add_argument("--cap", type=int, default=None, help="truncation N for Koszul complexes (default m+2)")
        p.add_argument("--model", choices=MODELS, default="bk")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--checks", default=None, help=f"comma list of check groups ({', '.join(GROUPS)})")
        p.add_argument("--timing", action="store_true", help="include timings (JSON output is then not reproducible)")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    rep = Report(args.command)
    try:
        lines = COMMANDS[args.command](args, rep)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if args.format == "json":
        print(rep.dumps(timing=args.timing))
    else:
        for line in lines:
            print(line)
        for c in sorted(rep.checks, key=lambda c: c.check):
            t = f" ({c.timing:.3f}s)" if args.timing and c.timing is not None else ""
            extra = f"  {c.detail}" if c.detail else ""
            wit = f"  witness={c.witness}" if c.witness is not None else ""
            print(f"{c.status.upper():7} {c.check}{t}{extra}{wit}")
        if rep.checks:
            nfail = sum(not c.ok for c in rep.checks)
            print(f"{len(rep.checks)} checks, {nfail} failed")
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
