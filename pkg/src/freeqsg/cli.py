"""Command line interface: verification suites, the character solver,
and presentation-file utilities.

Exit codes: 0 when every check passes, 1 on a check failure, 2 on usage
or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import AlgebraError
from .parser import ParseError, parse_presentation, print_presentation
from .suites import SUITES, Options, run_suite
from . import solver

SUITE_NAMES = sorted(SUITES) + ["all"]


def _load_group_table(path: str) -> list:
    """Cayley table file: one row of whitespace-separated indices per
    line, 0-based."""
    rows = []
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if line:
                rows.append([int(v) for v in line.split()])
    if not rows:
        raise AlgebraError(f"empty group table file {path!r}")
    return rows


def _options_from_args(args) -> Options:
    options = Options(
        seed=args.seed,
        samples=args.samples,
        step=args.step,
        tol=args.tol,
        copies=args.copies,
    )
    if args.group is not None:
        name = args.group
        if name.upper().startswith("Z") and name[1:].isdigit():
            options.group = name
        else:
            options.group = "table"
            options.group_table = _load_group_table(name)
    return options


def _print_report(report, as_json: bool) -> None:
    if as_json:
        print(json.dumps(report.to_dict(), indent=2))
        return
    for check in report.checks:
        mark = "ok  " if check.status == "ok" else "FAIL"
        print(f"[{mark}] {check.id:32s} residual={check.residual:.3g} "
              f"({check.millis:.0f} ms)  {check.anchor}")
    print(f"suite {report.suite}: {'ok' if report.ok else 'FAIL'}")


def cmd_verify(args) -> int:
    report = run_suite(args.suite, _options_from_args(args))
    _print_report(report, args.json)
    return 0 if report.ok else 1


def cmd_solve_characters(args) -> int:
    with open(args.presentation) as fh:
        pres = parse_presentation(fh.read())
    result = solver.solve_grid(
        pres, (-args.box, args.box), step=args.step, tol=args.tol
    )
    report = solver.cluster_components(
        result.cloud, merge_radius=2.5 * args.step
    ) if len(result.cloud) else None
    payload = {
        "coordinates": result.system.coord_names,
        "candidates": result.candidates,
        "dropped": result.dropped,
        "solutions": [[float(v) for v in row] for row in result.cloud],
        "components": report.to_dict() if report else None,
    }
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print("coordinates:", " ".join(result.system.coord_names))
        print(f"{len(result.cloud)} solutions "
              f"({result.candidates} grid candidates, {result.dropped} dropped)")
        for row in result.cloud:
            print("  " + "  ".join(f"{v: .6f}" for v in row))
        if report:
            print(f"{report.count} components, {report.isolated_count} isolated")
    return 0


def cmd_print_presentation(args) -> int:
    with open(args.presentation) as fh:
        pres = parse_presentation(fh.read())
    sys.stdout.write(print_presentation(pres))
    return 0


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="freeqsg",
        description="Exact verification of free-product quantum semigroup "
                    "identities.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run a named verification suite")
    verify.add_argument("suite", choices=SUITE_NAMES)
    verify.add_argument("--group", default=None,
                        help="Z2|Z3|Z4 or a Cayley table file")
    verify.add_argument("--copies", type=int, default=2)
    verify.add_argument("--step", type=float, default=0.1)
    verify.add_argument("--tol", type=float, default=1e-10)
    verify.add_argument("--samples", type=int, default=None)
    verify.add_argument("--seed", type=int, default=20100101)
    verify.add_argument("--json", action="store_true")
    verify.set_defaults(func=cmd_verify)

    solve = sub.add_parser("solve-characters",
                           help="solve the character variety of a "
                                "presentation file")
    solve.add_argument("presentation")
    solve.add_argument("--step", type=float, default=0.1)
    solve.add_argument("--tol", type=float, default=1e-10)
    solve.add_argument("--box", type=float, default=1.5)
    solve.add_argument("--json", action="store_true")
    solve.set_defaults(func=cmd_solve_characters)

    pp = sub.add_parser("print-presentation",
                        help="parse a presentation file and print its "
                             "canonical form")
    pp.add_argument("presentation")
    pp.set_defaults(func=cmd_print_presentation)
    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, AlgebraError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
