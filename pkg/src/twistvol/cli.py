"""Command-line entry point.

Exit codes: 0 success, 1 a checked invariant or bound was falsified,
2 the input could not be used.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from .diagram import DiagramError, PlatSpec
from .jones import DEFAULT_CROSSING_LIMIT, OracleError, verify_stable_coefficient
from .report import InputError, analyze, batch, gen_plat, load_corpus, read_diagram, to_json

EXIT_OK, EXIT_FALSIFIED, EXIT_INPUT = 0, 1, 2


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cmd_analyze(args: argparse.Namespace) -> int:
    if args.pd is not None:
        diagram = read_diagram(pd_text=_read(args.pd), name=Path(args.pd).stem)
    else:
        diagram = read_diagram(plat_text=_read(args.plat), name=Path(args.plat).stem)
    if args.source and args.volume is None:
        raise InputError("--source only makes sense with --volume")
    report = analyze(
        diagram,
        oracle=args.oracle,
        known_volume=args.volume,
        source=args.source,
        t_alt=args.t_alt,
        max_crossings=args.max_crossings,
        workers=args.workers,
    )
    text = report.to_json()
    _emit(text, args.json)
    if args.json:
        cen = report.analysis.census
        status = "FALSIFIED" if report.falsified else "ok"
        print(f"{diagram.name or 'diagram'}: c={diagram.crossing_count} t={cen.t} st={cen.st} "
              f"-chi={report.analysis.chi_neg} {status}")
    for item in report.falsifications:
        print(f"falsified: {item}", file=sys.stderr)
    return EXIT_FALSIFIED if report.falsified else EXIT_OK


def _cmd_gen_plat(args: argparse.Namespace) -> int:
    try:
        spec = PlatSpec.from_text(_read(args.spec))
    except DiagramError as exc:
        raise InputError(str(exc)) from exc
    result = gen_plat(spec, args.expect)
    _emit(to_json(result.to_dict()), args.json)
    return EXIT_FALSIFIED if result.falsified else EXIT_OK


def _cmd_oracle(args: argparse.Namespace) -> int:
    diagram = read_diagram(pd_text=_read(args.pd), name=Path(args.pd).stem)
    try:
        result = verify_stable_coefficient(diagram, args.max_crossings, args.workers)
    except OracleError as exc:
        raise InputError(str(exc)) from exc
    out = result.to_dict()
    out["name"] = diagram.name
    out["crossings"] = diagram.crossing_count
    sys.stdout.write(to_json(out))
    return EXIT_OK if result.match else EXIT_FALSIFIED


def _cmd_batch(args: argparse.Namespace) -> int:
    records, errors = load_corpus(_read(args.corpus), text=True)
    limit = None if args.no_oracle else args.oracle_max_crossings
    summary = batch(records, args.out, oracle_max_crossings=limit, row_errors=errors)
    sys.stdout.write(summary.table())
    return summary.exit_code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twistvol",
        description="Twist numbers, all-A states and volume bounds for A-adequate link diagrams.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full analysis of one diagram")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--pd", metavar="FILE", help="PD code file ('-' for stdin)")
    src.add_argument("--plat", metavar="FILE", help="plat spec file ('-' for stdin)")
    p.add_argument("--oracle", action="store_true", help="run the Kauffman bracket oracle")
    p.add_argument("--json", metavar="OUT", help="write the report here instead of stdout")
    p.add_argument("--volume", type=float, help="known hyperbolic volume to sandwich")
    p.add_argument("--source", help="citation for --volume")
    p.add_argument("--t-alt", type=int, dest="t_alt",
                   help="twist number of a reduced alternating diagram (two-bridge bounds)")
    p.add_argument("--max-crossings", type=int, default=DEFAULT_CROSSING_LIMIT)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("gen-plat", help="build a plat diagram and check its family's claims")
    p.add_argument("--spec", metavar="FILE", required=True)
    p.add_argument("--expect", choices=("strongly-negative", "mixed-sign"))
    p.add_argument("--json", metavar="OUT")
    p.set_defaults(func=_cmd_gen_plat)

    p = sub.add_parser("oracle", help="check the stable Jones coefficient by brute force")
    p.add_argument("--pd", metavar="FILE", required=True)
    p.add_argument("--max-crossings", type=int, default=DEFAULT_CROSSING_LIMIT)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("batch", help="analyze a corpus CSV")
    p.add_argument("--corpus", metavar="FILE", required=True)
    p.add_argument("--out", metavar="DIR", required=True)
    p.add_argument("--oracle-max-crossings", type=int, default=16,
                   help="run the oracle on records up to this many crossings")
    p.add_argument("--no-oracle", action="store_true")
    p.set_defaults(func=_cmd_batch)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (InputError, DiagramError, OracleError) as exc:
        sys.stdout.write(to_json({"error": str(exc), "command": args.command}))
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
