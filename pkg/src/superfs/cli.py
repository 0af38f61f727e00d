"""Command-line front end: classification, theorem verification, and
partition-function crosschecks."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from .catalog import CATALOG_NAMES, catalog_group
from .errors import (
    BudgetExceededError,
    DecompositionError,
    SnapError,
    ValidationError,
)
from .gauge import FAMILIES, TheoryData, crosscheck, report_to_dict
from .groups import Group, load_group
from .superalg import (
    TwistedGroupAlgebra,
    classification_to_dict,
    classify,
    snapped_string,
)
from .surfaces import parse_surface, refinement
from .twists import (
    Twist,
    clifford_twist,
    h2_representatives,
    validate_twist,
    z2_homomorphisms,
)

__all__ = ["main", "build_parser"]


def _resolve_group(value: str) -> Group:
    if value in CATALOG_NAMES:
        return catalog_group(value)
    return load_group(value)


def _read_json(path: str):
    with open(path, "r", encoding="utf-8") as f:
        try:
            return json.load(f)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: invalid JSON ({exc})") from exc


def _resolve_phi(value: str, group: Group) -> np.ndarray:
    n = group.order
    if value == "zero":
        return np.zeros(n, dtype=np.int64)
    if value == "id":
        if n != 2:
            raise ValidationError(
                "--phi id means the isomorphism to Z2 and needs a group of order 2")
        return np.array([0, 1], dtype=np.int64)
    record = _read_json(value)
    phi = record.get("phi") if isinstance(record, dict) else record
    if phi is None:
        raise ValidationError(f"{value}: no 'phi' field")
    phi = np.asarray(phi, dtype=np.int64)
    if phi.shape != (n,):
        raise ValidationError(f"phi must have length {n}, got {phi.shape}")
    return phi


def _resolve_alpha(value: str, group: Group) -> list[list[Fraction]]:
    n = group.order
    if value == "zero":
        return [[Fraction(0)] * n for _ in range(n)]
    record = _read_json(value)
    alpha = record.get("alpha") if isinstance(record, dict) else record
    if alpha is None:
        raise ValidationError(f"{value}: no 'alpha' field")
    try:
        rows = [[Fraction(str(x)) for x in row] for row in alpha]
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"bad rational in alpha: {exc}") from exc
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ValidationError(f"alpha must be {n}x{n}")
    for row in rows:
        for x in row:
            if not 0 <= x < 1:
                raise ValidationError(f"alpha value {x} outside [0, 1)")
    return rows


def _make_twist(group: Group, phi_arg: str, alpha_arg: str) -> Twist:
    phi = _resolve_phi(phi_arg, group)
    alpha = _resolve_alpha(alpha_arg, group)
    twist = Twist.from_fractions(phi, alpha)
    return validate_twist(group, twist)


def _fmt_complex(z: complex) -> str:
    return f"{z.real:+.10g}{z.imag:+.10g}i"


def _emit(payload, as_json: bool, lines) -> None:
    if as_json:
        print(json.dumps(payload, sort_keys=True, indent=1))
    else:
        for line in lines:
            print(line)


# ---------------------------------------------------------------- classify

def _classification_lines(data: dict) -> list[str]:
    lines = [
        f"order={data['order']} alpha_ring={data['alpha_ring']} seed={data['seed']}",
        f"{'dims':>9}  {'q':>1}  {'reality':>7}  {'S0':>2}  {'eta':>3}  "
        f"{'u':>2}  {'S_super':>16}  {'bw':>7}  checks",
    ]
    for sup in data["supermodules"]:
        checks = "ok" if all(v == "pass" for v in sup["checks"].values()) else ",".join(
            k for k, v in sup["checks"].items() if v == "fail")
        u = "-" if sup["u_sign"] is None else f"{sup['u_sign']:+d}"
        eta = "-" if sup["eta_gow"] is None else str(sup["eta_gow"])
        lines.append(
            f"({sup['dims'][0]},{sup['dims'][1]})".rjust(9)
            + f"  {sup['q']}  {sup['reality']:>7}  {sup['S_ordinary']:>2}  {eta:>3}  "
            + f"{u:>2}  {sup['S_super']['snapped']:>16}  {str(sup['bw_class']):>7}  "
            + checks)
    ok = "ok" if data["dim_check"]["ok"] else "FAIL"
    lines.append(f"dim check: {data['dim_check']['sum']:g} {ok}")
    lines.append("PASS" if data["all_pass"] else "FAIL")
    return lines


def cmd_classify(args) -> int:
    if args.clifford is not None:
        if args.group is not None:
            raise ValidationError("--clifford already fixes the group; drop --group")
        group, twist = clifford_twist(args.clifford)
        cap = max(args.cap, group.order)
    else:
        if args.group is None:
            raise ValidationError("classify needs --group or --clifford")
        group = _resolve_group(args.group)
        twist = _make_twist(group, args.phi, args.alpha)
        cap = args.cap
    algebra = TwistedGroupAlgebra(group, twist)
    report = classify(algebra, seed=args.seed, cap=cap)
    data = classification_to_dict(report)
    _emit(data, args.json, _classification_lines(data))
    return 0 if report.all_pass else 1


# ------------------------------------------------------------------ verify

def _clifford_ladder(args) -> int:
    rows = []
    for n in range(1, args.clifford + 1):
        group, twist = clifford_twist(n)
        algebra = TwistedGroupAlgebra(group, twist)
        report = classify(algebra, seed=args.seed, cap=max(args.cap, group.order))
        sups = report.supermodules
        expected = n % 8
        ok = (report.all_pass and len(sups) == 1 and sups[0].fs_k == expected)
        rows.append({"n": n, "order": group.order,
                     "S_super": snapped_string(sups[0].fs_k if sups else None),
                     "expected": snapped_string(expected),
                     "bw_class": sups[0].bw if sups else None,
                     "verdict": "PASS" if ok else "FAIL"})
    all_ok = all(r["verdict"] == "PASS" for r in rows)
    lines = [f"n={r['n']} order={r['order']} S_super={r['S_super']} "
             f"expected={r['expected']} bw={r['bw_class']} {r['verdict']}"
             for r in rows]
    lines.append("PASS" if all_ok else "FAIL")
    _emit({"ladder": rows, "all_pass": all_ok}, args.json, lines)
    return 0 if all_ok else 1


def _sweep_cases(group: Group, args) -> tuple[list, list]:
    if args.sweep_phi:
        phis = z2_homomorphisms(group)
    else:
        phis = [_resolve_phi(args.phi, group)]
    if args.sweep_h2:
        alphas = h2_representatives(group)
    else:
        alphas = [Twist.from_fractions(np.zeros(group.order, dtype=np.int64),
                                       _resolve_alpha(args.alpha, group))]
    return phis, alphas


def _run_sweep(named_groups: list, args) -> int:
    jobs = []
    for name, group in named_groups:
        phis, alphas = _sweep_cases(group, args)
        jobs.append((name, group, phis, alphas))
    total = sum(len(p) * len(a) for _, _, p, a in jobs)
    if total > args.max_cases:
        raise ValidationError(
            f"sweep has {total} cases, over the --max-cases limit {args.max_cases}")
    rows = []
    for name, group, phis, alphas in jobs:
        for pi, phi in enumerate(phis):
            for ai, base in enumerate(alphas):
                twist = validate_twist(group, base.with_phi(phi))
                algebra = TwistedGroupAlgebra(group, twist, validate=False)
                report = classify(algebra, seed=args.seed, cap=args.cap)
                rows.append({
                    "group": name, "order": group.order,
                    "phi_index": pi, "alpha_index": ai,
                    "phi_trivial": bool(np.all(phi == 0)),
                    "supermodules": len(report.supermodules),
                    "bw_classes": [s.bw for s in report.supermodules],
                    "verdict": "PASS" if report.all_pass else "FAIL",
                })
    all_ok = all(r["verdict"] == "PASS" for r in rows)
    lines = [f"group={r['group']} phi={r['phi_index']} alpha={r['alpha_index']} "
             f"supermodules={r['supermodules']} "
             f"bw={','.join(str(b) for b in r['bw_classes'])} {r['verdict']}"
             for r in rows]
    lines.append(f"{len(rows)} cases; " + ("PASS" if all_ok else "FAIL"))
    _emit({"cases": rows, "all_pass": all_ok}, args.json, lines)
    return 0 if all_ok else 1


def cmd_verify(args) -> int:
    if args.clifford is not None:
        return _clifford_ladder(args)
    if args.group is None:
        raise ValidationError("verify needs --group or --clifford")
    group = _resolve_group(args.group)
    name = args.group if args.group in CATALOG_NAMES else "group"
    return _run_sweep([(name, group)], args)


def cmd_sweep(args) -> int:
    names = args.groups.split(",") if args.groups else list(CATALOG_NAMES)
    named = []
    for name in names:
        name = name.strip()
        if not name:
            continue
        named.append((name, _resolve_group(name)))
    if not named:
        raise ValidationError("no groups to sweep")
    return _run_sweep(named, args)


# --------------------------------------------------------------- partition

def _parse_structure(args, surface, family):
    if family in ("oriented", "unoriented"):
        if args.spin or args.pin or args.all_structures:
            raise ValidationError(f"the {family} family takes no structure flags")
        return None
    flag, text = ("--spin", args.spin) if family == "spin" else ("--pin", args.pin)
    other = args.pin if family == "spin" else args.spin
    if other:
        raise ValidationError(f"wrong structure flag for the {family} family")
    if args.all_structures and text:
        raise ValidationError(f"give {flag} or --all-structures, not both")
    if text:
        try:
            values = [int(x) for x in text.split(",")] if text != "-" else []
        except ValueError as exc:
            raise ValidationError(f"bad structure values {text!r}") from exc
        ring = 2 if family == "spin" else 4
        return [refinement(surface, values, ring=ring)]
    return None  # crosscheck enumerates all structures


def cmd_partition(args) -> int:
    group = _resolve_group(args.group)
    twist = _make_twist(group, args.phi, args.alpha)
    theory = TheoryData(group=group, twist=twist, family=args.family)
    surface = parse_surface(args.surface)
    structures = _parse_structure(args, surface, args.family)
    reports = crosscheck(theory, surface, structures=structures,
                         seed=args.seed, cap=args.cap)
    payload = [report_to_dict(r) for r in reports]
    lines = []
    for r in payload:
        bits = [f"family={r['family']}", f"surface={r['surface']}"]
        if r["structure"] is not None:
            bits.append("structure=" + ",".join(str(v) for v in r["structure"]))
        if r["invariant"]:
            bits.append(f"{r['invariant']['name']}={r['invariant']['value']}")
        bits.append(f"lhs={_fmt_complex(complex(*r['lhs']))}")
        bits.append(f"rhs={_fmt_complex(complex(*r['rhs']))}")
        bits.append(f"diff={r['abs_diff']:.3g}")
        bits.append(f"homs={r['hom_count']}")
        bits.append(r["verdict"])
        lines.append(" ".join(bits))
    all_ok = all(r["verdict"] == "PASS" for r in payload)
    lines.append("PASS" if all_ok else "FAIL")
    _emit({"reports": payload, "all_pass": all_ok}, args.json, lines)
    return 0 if all_ok else 1


# ------------------------------------------------------------------ parser

def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0, help="PRNG seed")
    p.add_argument("--cap", type=int, default=96,
                   help="largest group order to decompose (default 96)")
    p.add_argument("--json", action="store_true", help="machine-readable output")


def _add_theory(p: argparse.ArgumentParser) -> None:
    p.add_argument("--group", help="group JSON file or catalog name "
                   f"({', '.join(CATALOG_NAMES)})")
    p.add_argument("--phi", default="zero",
                   help="parity grading: 'zero', 'id' (order-2 groups), or a JSON file")
    p.add_argument("--alpha", default="zero",
                   help="cocycle: 'zero' or a JSON file with exact rationals")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="superfs",
        description="Supermodules of twisted finite-group algebras, their Z8 "
                    "classes, and surface partition-function crosschecks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="decompose one twisted algebra and "
                       "classify its supermodules")
    _add_theory(p)
    p.add_argument("--clifford", type=int, metavar="N",
                   help="use the rank-N Clifford twist on (Z2)^N")
    _add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="verify the classification theorem over "
                       "a ladder or a (phi, alpha) sweep")
    _add_theory(p)
    p.add_argument("--clifford", type=int, metavar="N",
                   help="check the Clifford ladder for n = 1..N")
    p.add_argument("--sweep-phi", action="store_true",
                   help="sweep every homomorphism G -> Z2")
    p.add_argument("--sweep-h2", action="store_true",
                   help="sweep every class in H^2(G, Z2)")
    p.add_argument("--max-cases", type=int, default=4096,
                   help="refuse sweeps larger than this (default 4096)")
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("partition", help="compare both sides of a "
                       "partition-function identity")
    _add_theory(p)
    p.add_argument("--family", choices=FAMILIES, default="oriented")
    p.add_argument("--surface", required=True,
                   help="'orientable:<genus>' or 'nonorientable:<crosscaps>'")
    p.add_argument("--spin", metavar="BITS",
                   help="comma-separated Z2 refinement values, e.g. 0,1")
    p.add_argument("--pin", metavar="VALS",
                   help="comma-separated Z4 refinement values in {1,3}")
    p.add_argument("--all-structures", action="store_true",
                   help="iterate every structure (default for spin/pin-)")
    _add_common(p)
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("sweep", help="run the verify sweep across the whole "
                       "catalog of built-in groups")
    p.add_argument("--groups", help="comma-separated catalog names (default all)")
    p.add_argument("--max-cases", type=int, default=4096,
                   help="refuse sweeps larger than this (default 4096)")
    _add_common(p)
    p.set_defaults(func=cmd_sweep, sweep_phi=True, sweep_h2=True,
                   phi="zero", alpha="zero")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValidationError, BudgetExceededError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (SnapError, DecompositionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
