"""Command line entry point: ``toda-kdv run`` and ``toda-kdv golden check|update``."""
from __future__ import annotations

import argparse
import sys
import tempfile

import yaml

from . import __version__
from .runner import all_passed, golden_check, golden_update, load_config, run

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="toda-kdv", description="Toda lattice / Hill operator verification runs.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run verification suites from a config file")
    r.add_argument("--config", required=True, help="YAML or JSON run configuration")
    r.add_argument("--suites", help="comma separated subset of suites (overrides the config)")
    r.add_argument("--out", help="output directory (overrides the config)")

    g = sub.add_parser("golden", help="compare or refresh golden CSV files")
    g.add_argument("action", choices=("check", "update"))
    g.add_argument("--dir", required=True, help="golden directory")
    src = g.add_mutually_exclusive_group()
    src.add_argument("--from", dest="source", help="existing run output directory (default: toda_kdv_out)")
    src.add_argument("--config", help="run this config into a scratch directory and use its output")
    g.add_argument("--suites", help="suite override when --config is given")
    return p


def _print_summary(summary: dict) -> None:
    for r in summary["results"]:
        print(f"{'PASS' if r['pass'] else 'FAIL'}  {r['suite']:<13} {r['profile_id']}")


def _cmd_run(args) -> int:
    cfg = load_config(args.config, args.suites, args.out)
    summary = run(cfg)
    _print_summary(summary)
    print(f"artifacts written to {cfg.output_dir}")
    return EXIT_OK if all_passed(summary) else EXIT_FAIL


def _cmd_golden(args) -> int:
    if args.config:
        with tempfile.TemporaryDirectory() as tmp:
            cfg = load_config(args.config, args.suites, tmp)
            run(cfg)
            return _golden_action(args, tmp)
    return _golden_action(args, args.source or "toda_kdv_out")


def _golden_action(args, source: str) -> int:
    if args.action == "update":
        names = golden_update(args.dir, source)
        print(f"updated {len(names)} golden files in {args.dir}")
        return EXIT_OK
    problems = golden_check(args.dir, source)
    for line in problems:
        print(f"MISMATCH {line}")
    if problems:
        return EXIT_FAIL
    print("golden files match")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        return _cmd_golden(args)
    except (ValueError, FileNotFoundError, yaml.YAMLError) as exc:
        print(f"toda-kdv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
