"""Command line entry point."""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from .algebra import AlgebraCtx, format_element
from .belements import b_tuple, enumerate_tuples
from .report import to_json, to_text
from .simples import claimed_radical_basis
from .verify import SUITES, fault_sensitivity, main_generators, nu_combinations, run_suites


def _parse_nu(text: Optional[str]) -> Optional[List[int]]:
    if not text:
        return None
    return [int(x) for x in text.split(",")]


def _dump(ctx: AlgebraCtx, nu, path: str) -> None:
    lines = ["# idempotents"]
    for tup in enumerate_tuples(ctx.p, ctx.r):
        lines.append(format_element(b_tuple((0,) * ctx.r, tup)))
    combos = [tuple(nu)] if nu and ctx.p > 2 else nu_combinations(ctx)
    for combo in combos:
        lines.append("# generators" + (" nu=" + ",".join(map(str, combo)) if combo else ""))
        lines += [format_element(g) for g in main_generators(ctx, combo)]
    lines.append("# radical basis")
    lines += [format_element(e) for e in claimed_radical_basis(ctx)]
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hyperalg", description="Radical and idempotent checks for U_r(SL2) over F_p.")
    ap.add_argument("command", choices=["verify", "report", "fault"],
                    help="verify: run suites; report: run suites and render figures; "
                         "fault: run suites with one perturbed structure constant")
    ap.add_argument("--p", type=int, required=True)
    ap.add_argument("--r", type=int, required=True)
    ap.add_argument("--nu", help="comma separated nu values, one per level (odd p)")
    ap.add_argument("--suite", default="all", choices=("all",) + SUITES)
    ap.add_argument("--format", default="text", choices=("text", "json"))
    ap.add_argument("--dump", metavar="PATH", help="write idempotents, generators and radical basis as text")
    ap.add_argument("--allow-large", action="store_true", help="lift the p^(3r) <= 1000 budget")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--figures", metavar="DIR", help="directory for PNG figures (report command)")
    ap.add_argument("--output", metavar="PATH", help="write the report here instead of stdout")
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.r < 1:
        print("r must be at least 1", file=sys.stderr)
        return 2
    try:
        ctx = AlgebraCtx(args.p, args.r)
    except ValueError as exc:
        print(exc, file=sys.stderr)
        return 2
    nu = _parse_nu(args.nu)
    suites = SUITES if args.suite == "all" else (args.suite,)

    if args.command == "fault":
        reports = fault_sensitivity(ctx, seed=args.seed, suites=suites)
    else:
        reports = run_suites(ctx, suites, nu=nu, seed=args.seed, allow_large=args.allow_large)

    text = to_json(ctx, reports, args.seed) if args.format == "json" else to_text(ctx, reports, args.seed)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")

    if args.dump:
        _dump(ctx, nu, args.dump)
    if args.command == "report" or args.figures:
        from .plotting import render_figures
        for path in render_figures(ctx, reports, args.figures or "figures", args.allow_large):
            print(f"figure: {path}", file=sys.stderr)

    if args.command == "fault":
        failing = sum(r.status == "fail" for r in reports)
        print(f"suites failing under the fault: {failing}", file=sys.stderr)
        return 0 if failing >= 3 else 1
    return 0 if all(r.status != "fail" for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
