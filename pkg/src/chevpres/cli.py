"""Command-line interface: ``chevpres present | verify | table1 | cover``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .cover import check_cover, cover_ok, standard_cover
from .ffield import make_field, prime_power
from .formats import dumps, loads
from .presentations import (count_bounds, present_abelian_rootgroup, present_affine_uplus,
                            present_sl3_sylow, present_sp4_sylow, present_sp4_sylow_even)
from .rootsys import Rank2Type, build_affine_diagram, count_pairs_by_type, normalize_type

FAMILIES = ("abelian-rootgroup", "sl3-sylow", "sp4-sylow", "sp4-sylow-even", "affine-uplus")
TABLE1_TYPES = {"A": range(3, 9), "B": range(3, 9), "C": range(3, 9), "D": range(4, 9),
                "E": (6, 7, 8), "F": (4,)}
# the table records B, C and F4 for p odd only
TABLE1_PARITIES = {"A": ("odd", "even"), "B": ("odd",), "C": ("odd",), "D": ("odd", "even"),
                   "E": ("odd", "even"), "F": ("odd",)}


class UsageError(Exception):
    pass


def _json_default(x):
    if isinstance(x, Fraction):
        return str(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _dump(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True, default=_json_default) + "\n"


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _field_args(args):
    if args.q is not None:
        if args.p is not None or args.a is not None:
            raise UsageError("give either --q or --p/--a, not both")
        try:
            p, a = prime_power(args.q)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        if args.p is None:
            raise UsageError("a field is required: --q Q or --p P [--a A]")
        p, a = args.p, args.a if args.a is not None else 1
        if a < 1:
            raise UsageError("--a must be positive")
    try:
        return make_field(p, a)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _add_field_args(sp):
    sp.add_argument("--q", type=int, help="field size (a prime power)")
    sp.add_argument("--p", type=int, help="characteristic")
    sp.add_argument("--a", type=int, help="degree over F_p (default 1)")


def _positive(s: str) -> int:
    v = int(s)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


# -- present ---------------------------------------------------------------------

def build_presentation(family: str, F, type_: str | None = None, rank: int | None = None):
    if family == "abelian-rootgroup":
        return present_abelian_rootgroup(F)
    if family == "sl3-sylow":
        return present_sl3_sylow(F)
    if family == "sp4-sylow":
        if F.p == 2:
            raise UsageError("sp4-sylow needs p odd; use sp4-sylow-even for p = 2")
        return present_sp4_sylow(F)
    if family == "sp4-sylow-even":
        return present_sp4_sylow_even(F)
    if family == "affine-uplus":
        if type_ is None:
            raise UsageError("affine-uplus needs --type (and --rank)")
        return present_affine_uplus(build_affine_diagram(type_, rank), F)
    raise UsageError(f"unknown family {family!r}")


def cmd_present(args) -> int:
    F = _field_args(args)
    try:
        pres = build_presentation(args.family, F, args.type, args.rank)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(dumps(pres, args.format), args.output)
    summary = {"family": pres.family, "q": F.q, "d_count": pres.d_count, "r_count": pres.r_count}
    if pres.diagram is not None:
        cb = count_bounds(pres.diagram.base, pres.diagram.rank, F.a, F.p)
        summary["count_bounds"] = {k: cb[k] for k in ("upper", "pair_formula", "gs_lower", "d")}
    (sys.stdout if args.output else sys.stderr).write(_dump(summary))
    return 0


# -- verify ----------------------------------------------------------------------

def cmd_verify(args) -> int:
    from .verify import commutator_identity_suite, verification_report
    from .verify.models import build_model
    from .verify.report import FAMILIES as MODEL_FAMILIES

    try:
        pres = loads(Path(args.input).read_text(encoding="utf-8"))
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"cannot read presentation: {exc}") from None
    try:
        report = verification_report(pres, run_tc=not args.no_tc, run_closure=not args.no_closure,
                                     max_cosets=args.max_cosets, closure_cap=args.closure_cap)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.identities and pres.family in MODEL_FAMILIES:
        kind = MODEL_FAMILIES[pres.family][0]
        suite = commutator_identity_suite(build_model(kind, pres.field),
                                          samples=args.samples, seed=args.seed)
        report["identities"] = {"samples": suite["samples"], "seed": suite["seed"], "ok": suite["ok"]}
        report["ok"] = report["ok"] and suite["ok"]
    _emit(_dump(report), args.output)
    return 0 if report["ok"] else 1


# -- table1 ----------------------------------------------------------------------

def table1_row(letter: str, l: int, a: int, parity: str, build: bool = True) -> dict:
    """Pair counts, closed-form bound, pair-count formula, builder count (when a
    field with q >= 16 of the right parity exists for this a) and the
    Golod-Shafarevich lower bound."""
    p = 2 if parity == "even" else _odd_prime_for(a)
    cb = count_bounds(letter, l, a, p)
    pairs = count_pairs_by_type(build_affine_diagram(letter, l))
    row = {
        "type": letter, "l": l, "a": a, "parity": parity, "p": p,
        "pairs": {t.value: pairs[t] for t in Rank2Type if t != Rank2Type.G2},
        "upper": cb["upper"], "pair_formula": cb["pair_formula"],
        "gs_lower": cb["gs_lower"], "d": cb["d"],
    }
    builder = None
    if build and p ** a >= 16:
        builder = present_affine_uplus(build_affine_diagram(letter, l), make_field(p, a)).r_count
    row["builder"] = builder
    row["agree"] = cb["agrees"] and builder in (None, cb["upper"])
    row["gs_ok"] = cb["upper"] >= cb["gs_lower"]
    return row


def _odd_prime_for(a: int) -> int:
    """Smallest odd prime p with p^a >= 16."""
    for p in (3, 5, 7, 11, 13, 17):
        if p ** a >= 16:
            return p
    raise AssertionError


def cmd_table1(args) -> int:
    if args.type:
        letter, l = normalize_type(args.type, args.rank)
        if letter not in TABLE1_TYPES or l not in TABLE1_TYPES[letter]:
            raise UsageError(f"{letter}{l} is not a row of the relation-count table (A, B, C: l >= 3; D: l >= 4; "
                             "E6-E8; F4)")
        grid = [(letter, l)]
    else:
        grid = [(L, l) for L, ls in TABLE1_TYPES.items() for l in ls if l <= args.max_rank]
    avals = [args.a] if args.a else list(range(1, args.max_a + 1))
    rows = [table1_row(L, l, a, par, build=not args.no_build)
            for L, l in grid for a in avals
            for par in ([args.parity] if args.parity else TABLE1_PARITIES[L])]
    if args.format == "json":
        text = _dump(rows)
    else:
        head = "type l a parity A1xA1 A2 C2 upper pair_formula builder gs_lower agree"
        lines = [head] + [
            f"{r['type']} {r['l']} {r['a']} {r['parity']} {r['pairs']['A1xA1']} {r['pairs']['A2']} "
            f"{r['pairs']['C2']} {r['upper']} {r['pair_formula']} "
            f"{'-' if r['builder'] is None else r['builder']} {r['gs_lower']} {r['agree']}"
            for r in rows]
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return 0 if all(r["agree"] and r["gs_ok"] for r in rows) else 1


# -- cover -----------------------------------------------------------------------

def cmd_cover(args) -> int:
    try:
        spec = standard_cover(args.type, args.rank)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = check_cover(spec)
    out = spec.to_json(report)
    out["witness"] = report["witness"]
    out["a1_components"] = report["a1_components"]
    _emit(_dump(out), args.output)
    return 0 if cover_ok(report) else 1


# -- entry point -----------------------------------------------------------------

def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="chevpres", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("present", help="build a presentation and write it out")
    sp.add_argument("--family", required=True, choices=FAMILIES)
    sp.add_argument("--type", help="affine type letter, e.g. A, B, E")
    sp.add_argument("--rank", type=int, help="rank l of the affine type")
    _add_field_args(sp)
    sp.add_argument("--format", choices=("json", "text"), default="json")
    sp.add_argument("--output", "-o")
    sp.set_defaults(func=cmd_present)

    sp = sub.add_parser("verify", help="check a presentation file against its matrix group")
    sp.add_argument("input")
    sp.add_argument("--no-tc", action="store_true", help="skip coset enumeration")
    sp.add_argument("--no-closure", action="store_true", help="skip matrix-group closure")
    sp.add_argument("--max-cosets", type=_positive, help="coset cap (default: $CHEV_MAX_COSETS)")
    sp.add_argument("--closure-cap", type=_positive, help="closure cap (default 2 q^4)")
    sp.add_argument("--identities", action="store_true", help="also run the commutator-law suite")
    sp.add_argument("--samples", type=_positive, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--output", "-o")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("table1", help="relation counts and bounds per affine type")
    sp.add_argument("--type")
    sp.add_argument("--rank", type=int)
    sp.add_argument("--a", type=_positive)
    sp.add_argument("--parity", choices=("odd", "even"))
    sp.add_argument("--max-rank", type=_positive, default=8)
    sp.add_argument("--max-a", type=_positive, default=4)
    sp.add_argument("--no-build", action="store_true", help="skip building presentations")
    sp.add_argument("--format", choices=("json", "text"), default="json")
    sp.add_argument("--output", "-o")
    sp.set_defaults(func=cmd_table1)

    sp = sub.add_parser("cover", help="three-part cover of a rank >= 6 diagram")
    sp.add_argument("--type", required=True)
    sp.add_argument("--rank", type=int)
    sp.add_argument("--output", "-o")
    sp.set_defaults(func=cmd_cover)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"chevpres {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
