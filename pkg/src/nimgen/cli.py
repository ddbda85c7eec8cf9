"""Command-line interface: solve games, draw diagrams, verify, tabulate.

Solve and table results are cached in a single JSON file keyed by canonical
spec string, game variant, and tool version.  The NIMGEN_CACHE environment
variable overrides the --cache flag.  All output is UTF-8 with LF line
endings; wall-time fields are the only nondeterministic part.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from pathlib import Path
from typing import Sequence

from . import __version__
from .diagram import (
    build_digraph,
    digraph_to_dict,
    simplified_to_dict,
    simplify,
    to_dot,
)
from .errors import NimgenError, OutOfScopeError, UnsupportedVariantError
from .groups import build_group, canonical_spec, parse_group_spec
from .lattice import DEFAULT_ORDER_CAP, class_edges, intersection_subgroups
from .solver import DEFAULT_BRUTE_CAP, DNG, GEN, brute_nim, structure_nim
from .theory import (
    ABELIAN_CATALOG,
    DNG_FAMILY,
    SMALL_CATALOG,
    AbelianSpec,
    CheckReport,
    check_deficiency_oracle,
    check_even_type_table,
    check_odd_case_lemmas,
    check_option_deficiency,
    deficiency_table,
    verify_family,
)

_VARIANTS = {"gen": GEN, "dng": DNG}

# Dihedralized odd abelian parts needing at most two generators: the only
# groups whose odd classes the odd-case pattern covers.
_ODD_SUITE = ("Dih(Z3)", "Dih(Z5)", "Dih(Z7)", "Dih(Z9)", "Dih(Z11)",
              "Dih(Z3xZ3)")

_SUITES = ("theorem", "dng", "even-types", "odd-lemmas", "deficiency", "all")


class _Cache:
    """Single-file JSON result cache, written once at end of run."""

    def __init__(self, path: str) -> None:
        self.path = Path(path)
        self.dirty = False
        try:
            loaded = json.loads(self.path.read_text(encoding="utf-8"))
        except (OSError, ValueError):
            loaded = {}
        self.data: dict = loaded if isinstance(loaded, dict) else {}

    def get(self, key: str):
        return self.data.get(key)

    def put(self, key: str, value: dict) -> None:
        if self.data.get(key) != value:
            self.data[key] = value
            self.dirty = True

    def save(self) -> None:
        if not self.dirty:
            return
        if self.path.parent != Path("."):
            self.path.parent.mkdir(parents=True, exist_ok=True)
        text = json.dumps(self.data, indent=2, sort_keys=True) + "\n"
        self.path.write_text(text, encoding="utf-8")


def _open_cache(flag_value: str | None) -> _Cache | None:
    path = os.environ.get("NIMGEN_CACHE") or flag_value
    return _Cache(path) if path else None


def _solve_record(spec_str: str, variant: str, mode: str, *, brute_cap: int,
                  order_cap: int, cache: _Cache | None) -> dict:
    started = time.perf_counter()
    record: dict = {"spec": spec_str, "variant": variant,
                    "tool_version": __version__}
    try:
        parsed = parse_group_spec(spec_str)
        key = f"{canonical_spec(parsed)}|{variant}|{__version__}"
        hit = cache.get(key) if cache is not None else None
        if isinstance(hit, dict):
            record.update(hit)
        else:
            g = build_group(parsed)
            if g.order < 2:
                raise OutOfScopeError(
                    "generation games need a group of order at least 2")
            lat = intersection_subgroups(g, order_cap=order_cap)
            d_g = deficiency_table(g, lat, class_edges(lat, g)).d_g
            used = mode
            if mode == "auto":
                used = "brute" if (variant == DNG or g.order <= brute_cap) \
                    else "structure"
            if used == "structure":
                if variant == DNG:
                    raise UnsupportedVariantError(
                        "the structure solver handles the achievement game only")
                nim = structure_nim(g, lat).game_nim
            else:
                nim = brute_nim(g, variant, brute_cap=brute_cap)
            fields = {"order": g.order, "nim": nim, "mode": used,
                      "intersections": len(lat.intersections), "d_g": d_g}
            record.update(fields)
            if cache is not None:
                cache.put(key, fields)
    except (NimgenError, ValueError) as exc:
        record["error"] = str(exc)
    record["millis"] = int((time.perf_counter() - started) * 1000)
    return record


def _print_solve_text(records: Sequence[dict]) -> None:
    for r in records:
        if "error" in r:
            print(f"{r['spec']}  {r['variant']}  ERROR  {r['error']}")
        else:
            print(f"{r['spec']}  {r['variant']}  *{r['nim']}  "
                  f"order={r['order']} mode={r['mode']} "
                  f"intersections={r['intersections']} d={r['d_g']}  "
                  f"{r['millis']}ms")


def _print_solve_csv(records: Sequence[dict]) -> None:
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["spec", "order", "variant", "nim", "mode", "intersections",
                "d(G)", "millis", "tool_version", "note"])
    for r in records:
        w.writerow([r["spec"], r.get("order", ""), r["variant"],
                    r.get("nim", ""), r.get("mode", ""),
                    r.get("intersections", ""), r.get("d_g", ""),
                    r["millis"], r["tool_version"], r.get("error", "")])


def cmd_solve(args: argparse.Namespace) -> int:
    cache = _open_cache(args.cache)
    variant = _VARIANTS[args.game]
    records = [
        _solve_record(s, variant, args.mode, brute_cap=args.brute_cap,
                      order_cap=args.order_cap, cache=cache)
        for s in args.specs
    ]
    if cache is not None:
        cache.save()
    if args.fmt == "json":
        print(json.dumps(records, indent=2, sort_keys=True))
    elif args.fmt == "csv":
        _print_solve_csv(records)
    else:
        _print_solve_text(records)
    return 2 if any("error" in r for r in records) else 0


def cmd_diagram(args: argparse.Namespace) -> int:
    if args.game == "dng":
        print("error: diagrams are defined for the achievement game only",
              file=sys.stderr)
        return 2
    try:
        g = build_group(args.spec)
        if g.order < 2:
            raise OutOfScopeError(
                "generation games need a group of order at least 2")
        lat = intersection_subgroups(g, order_cap=args.order_cap)
        nims = structure_nim(g, lat)
        digraph = build_digraph(g, lat, nims)
        drawing = simplify(digraph) if args.simplified else digraph
    except (NimgenError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.fmt == "json":
        payload = (simplified_to_dict(drawing) if args.simplified
                   else digraph_to_dict(drawing))
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        sys.stdout.write(to_dot(drawing, style=args.style))
    return 0


def _verify_workspace(spec_str: str, order_cap: int):
    g = build_group(spec_str)
    lat = intersection_subgroups(g, order_cap=order_cap)
    nims = structure_nim(g, lat)
    digraph = build_digraph(g, lat, nims)
    dt = deficiency_table(g, lat, digraph.edges)
    return g, lat, nims, digraph, dt


def _suite_checks(suite: str, order_cap: int) -> tuple[list[CheckReport], list[str]]:
    checks: list[CheckReport] = []
    notes: list[str] = []
    if suite in ("even-types", "all"):
        for s in SMALL_CATALOG:
            try:
                g, lat, nims, _, dt = _verify_workspace(s, order_cap)
                if g.order % 2 == 0:
                    checks.append(check_even_type_table(g, lat, dt, nims))
            except NimgenError as exc:
                notes.append(f"{s}: {exc}")
    if suite in ("odd-lemmas", "all"):
        for s in _ODD_SUITE:
            try:
                g, lat, nims, digraph, dt = _verify_workspace(s, order_cap)
                checks.append(check_option_deficiency(digraph, dt, subject=s))
                checks.append(check_odd_case_lemmas(digraph, dt, subject=s))
            except NimgenError as exc:
                notes.append(f"{s}: {exc}")
    if suite in ("deficiency", "all"):
        for s in SMALL_CATALOG:
            try:
                g, lat, _, _, dt = _verify_workspace(s, order_cap)
                if g.order <= 12:
                    checks.append(check_deficiency_oracle(g, lat, dt))
            except NimgenError as exc:
                notes.append(f"{s}: {exc}")
    return checks, notes


def cmd_verify(args: argparse.Namespace) -> int:
    order_cap = args.order_cap
    family_records = []
    checks: list[CheckReport] = []
    notes: list[str] = []
    try:
        if args.specs:
            parts = [AbelianSpec.from_spec(s) for s in args.specs]
            report = verify_family(parts, _VARIANTS[args.game],
                                   brute_cap=args.brute_cap,
                                   order_cap=order_cap)
            family_records = list(report.records)
        else:
            suite = args.suite or "theorem"
            if suite in ("theorem", "all"):
                parts = [AbelianSpec.from_spec(s) for s in ABELIAN_CATALOG]
                family_records += list(verify_family(
                    parts, GEN, brute_cap=args.brute_cap,
                    order_cap=order_cap).records)
            if suite in ("dng", "all"):
                parts = [AbelianSpec.from_spec(s) for s in DNG_FAMILY]
                family_records += list(verify_family(
                    parts, DNG, brute_cap=args.brute_cap,
                    order_cap=order_cap).records)
            suite_checks, suite_notes = _suite_checks(suite, order_cap)
            checks += suite_checks
            notes += suite_notes
    except (NimgenError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    failed = sum(1 for r in family_records if r.failed) \
        + sum(1 for c in checks if not c.ok)
    skipped = sum(1 for r in family_records if r.skipped) + len(notes)
    ok = len(family_records) + len(checks) - failed \
        - sum(1 for r in family_records if r.skipped)
    code = 1 if failed else (2 if skipped else 0)

    if args.fmt == "json":
        payload = {
            "records": [r.to_dict() for r in family_records],
            "checks": [
                {"name": c.name, "subject": c.subject, "checked": c.checked,
                 "violations": list(c.violations)}
                for c in checks
            ],
            "notes": notes,
            "exitCode": code,
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
        return code

    for r in family_records:
        if r.skipped:
            print(f"skip {r.spec}  {r.variant}  ({r.note})")
        elif r.failed:
            print(f"FAIL {r.spec}  {r.variant}  computed=*{r.computed} "
                  f"predicted=*{r.predicted} d(Dih)={r.d_dih} d(A)={r.d_a} "
                  f"frattini={'ok' if r.frattini_match else 'MISMATCH'}")
        else:
            print(f"ok   {r.spec}  {r.variant}  *{r.computed} "
                  f"(predicted *{r.predicted}, d(Dih)={r.d_dih}, d(A)={r.d_a})")
    for c in checks:
        if c.ok:
            print(f"ok   {c.name}  {c.subject}  checked={c.checked}")
        else:
            print(f"FAIL {c.name}  {c.subject}  {len(c.violations)} violations")
            for v in c.violations:
                print(f"     - {v}")
    for n in notes:
        print(f"skip {n}")
    print(f"verify: {ok} ok, {failed} failed, {skipped} skipped")
    return code


def _parse_range(text: str) -> tuple[int, int]:
    if ".." in text:
        lo, _, hi = text.partition("..")
        return int(lo), int(hi)
    n = int(text)
    return n, n


def cmd_table(args: argparse.Namespace) -> int:
    if "Zn" not in args.family:
        print("error: the family expression must contain 'Zn'",
              file=sys.stderr)
        return 2
    try:
        lo, hi = _parse_range(args.n)
    except ValueError:
        print(f"error: bad range {args.n!r}; expected A..B", file=sys.stderr)
        return 2
    cache = _open_cache(args.cache)
    variant = _VARIANTS[args.game]
    records = [
        _solve_record(args.family.replace("Zn", f"Z{k}"), variant, args.mode,
                      brute_cap=args.brute_cap, order_cap=args.order_cap,
                      cache=cache)
        for k in range(lo, hi + 1)
    ]
    if cache is not None:
        cache.save()
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["spec", "order", "variant", "nim", "mode", "d(G)", "millis",
                "note"])
    for r in records:
        w.writerow([r["spec"], r.get("order", ""), r["variant"],
                    r.get("nim", ""), r.get("mode", ""), r.get("d_g", ""),
                    r["millis"], r.get("error", "")])
    return 2 if any("error" in r for r in records) else 0


def _add_caps(p: argparse.ArgumentParser) -> None:
    p.add_argument("--brute-cap", type=int, default=DEFAULT_BRUTE_CAP,
                   help="largest order solved by exhaustive search "
                        f"(default {DEFAULT_BRUTE_CAP})")
    p.add_argument("--order-cap", type=int, default=DEFAULT_ORDER_CAP,
                   help="largest order whose subgroups are enumerated "
                        f"(default {DEFAULT_ORDER_CAP})")


def _add_game(p: argparse.ArgumentParser) -> None:
    p.add_argument("--game", choices=["gen", "dng"], default="gen",
                   help="achievement (gen) or avoidance (dng) game")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nimgen",
        description="Nim values of group generation games.")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="compute nim values of group specs")
    p.add_argument("specs", nargs="+", metavar="SPEC")
    _add_game(p)
    p.add_argument("--mode", choices=["auto", "brute", "structure"],
                   default="auto")
    p.add_argument("--format", dest="fmt", choices=["text", "json", "csv"],
                   default="text")
    p.add_argument("--cache", metavar="PATH",
                   help="JSON result cache (NIMGEN_CACHE overrides)")
    _add_caps(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("diagram", help="emit the structure digraph")
    p.add_argument("spec", metavar="SPEC")
    _add_game(p)
    p.add_argument("--format", dest="fmt", choices=["dot", "json"],
                   default="dot")
    p.add_argument("--style", choices=["full", "plain"], default="full")
    p.add_argument("--simplified", action="store_true",
                   help="merge vertices with equal types and option profiles")
    _add_caps(p)
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("verify", help="check computed values against the "
                                      "published classification")
    p.add_argument("specs", nargs="*", metavar="ABELIAN_SPEC",
                   help="abelian parts to dihedralize and verify")
    _add_game(p)
    p.add_argument("--suite", choices=_SUITES,
                   help="built-in suite to run (default: theorem)")
    p.add_argument("--format", dest="fmt", choices=["text", "json"],
                   default="text")
    _add_caps(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", help="CSV nim-number table over a family")
    p.add_argument("family", metavar="FAMILY",
                   help="spec template containing 'Zn', e.g. Dih(Zn)")
    p.add_argument("--n", required=True, metavar="A..B",
                   help="inclusive range substituted for n")
    _add_game(p)
    p.add_argument("--mode", choices=["auto", "brute", "structure"],
                   default="auto")
    p.add_argument("--cache", metavar="PATH",
                   help="JSON result cache (NIMGEN_CACHE overrides)")
    _add_caps(p)
    p.set_defaults(func=cmd_table)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "verify" and args.specs and args.suite:
        print("error: pass specs or --suite, not both", file=sys.stderr)
        return 2
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
