"""Command line front end.

Exit status: 0 when no verdict fails, 1 when some verdict fails, 2 for
configuration or input errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import jobs
from .config import FORMATS, MODES, load_config, build_algebra
from .errors import AlgebraError, ConfigError
from .galois import certify_galois, galois_data, hilbert90_solve
from .rings import format_coords, parse_coords

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _fmt(args, cfg) -> str:
    return args.format or cfg.output.get("format", "report")


def _finish(report: dict, args, cfg) -> int:
    fmt = _fmt(args, cfg)
    if fmt == "plain":
        text = jobs.plain_summary(report)
    elif fmt == "table":
        text = jobs.verdict_table(report)
    else:
        text = jobs.dumps(report)
    _emit(text, args.out)
    return EXIT_FAIL if jobs.report_failed(report) else EXIT_OK


def cmd_construct(args, cfg) -> int:
    A = build_algebra(cfg)
    info = jobs.describe_algebra(A)
    if _fmt(args, cfg) == "plain":
        t = info["tower"]
        text = (
            f"f = {info['f']}\nD = {t['D']}, sigma = {t['sigma']}\n"
            f"dim A = {info['dimension']}, dim C = {t['dim_C']}, dim S0 = {t['dim_S0']}\n"
            f"associative = {str(info['associative']).lower()}\n"
        )
    else:
        text = jobs.dumps({"schema_version": jobs.SCHEMA_VERSION, "job": cfg.echo(), "algebra": info})
    _emit(text, args.out)
    return EXIT_OK


def cmd_mul_table(args, cfg) -> int:
    A = build_algebra(cfg)
    _emit(jobs.mul_table(A, cfg.print_bound), args.out)
    return EXIT_OK


def cmd_structure(args, cfg) -> int:
    return _finish(jobs.run_job(cfg, ["structure"]), args, cfg)


def cmd_automorphisms(args, cfg) -> int:
    if args.mode:
        cfg.mode = args.mode
    if args.budget is not None:
        cfg.budget = args.budget
    report = jobs.run_job(cfg, ["automorphisms"])
    if args.report:
        Path(args.report).write_text(jobs.dumps(report))
    return _finish(report, args, cfg)


def cmd_hilbert90(args, cfg) -> int:
    A = build_algebra(cfg)
    k = A.D.elem(parse_coords(args.k))
    c = hilbert90_solve(k, galois_data(A.tower))
    _emit(("NONE" if c is None else format_coords(c.coords)) + "\n", args.out)
    return EXIT_OK


def cmd_certify_galois(args, cfg) -> int:
    A = build_algebra(cfg)
    data = certify_galois(galois_data(A.tower))
    witness = {
        f"sigma^{g}": {"x": [format_coords(x.coords) for x in xs], "y": [format_coords(y.coords) for y in ys]}
        for g, (xs, ys) in sorted(data.witness.items())
    }
    _emit(jobs.dumps({"schema_version": jobs.SCHEMA_VERSION, "job": cfg.echo(), "witness": witness}), args.out)
    return EXIT_OK


def cmd_check_all(args, cfg) -> int:
    return _finish(jobs.run_job(cfg), args, cfg)


COMMANDS = {
    "construct": (cmd_construct, "build the algebra and describe it"),
    "mul-table": (cmd_mul_table, "print the product table over the prime basis"),
    "structure": (cmd_structure, "nuclei, center, commutant and their verdicts"),
    "automorphisms": (cmd_automorphisms, "enumerate and classify automorphisms"),
    "hilbert90": (cmd_hilbert90, "solve k = c^-1 sigma(c) for c"),
    "certify-galois": (cmd_certify_galois, "find a Galois witness for C / S0"),
    "check-all": (cmd_check_all, "run every configured check"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="azumaya", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="TOML job file")
        p.add_argument("--out", help="write output here instead of stdout")
        p.add_argument("--format", choices=FORMATS, help="report (JSON), table or plain")
        if name == "automorphisms":
            p.add_argument("--mode", choices=MODES)
            p.add_argument("--budget", type=int, help="cap on brute-force candidate images")
            p.add_argument("--report", help="also write the JSON report here")
        if name == "hilbert90":
            p.add_argument("--k", required=True, help="coordinate tuple, e.g. (0,1)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        handler = COMMANDS[args.command][0]
        return handler(args, cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AlgebraError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
