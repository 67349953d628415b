"""Command-line front end.

Three subcommands: ``chern`` and ``odd`` evaluate classes of a cycle
described by a config file; ``verify`` runs a named property suite over
seeded cases.  Every number in every report is exact and the same seed
produces byte-identical output.

Exit codes: 0 success, 1 suite failure, 2 parse/usage error,
3 precondition violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .config import parse_config
from .diffchar import chern_class, odd_chern_class
from .errors import ConfigError, PreconditionError
from .verify import DEFAULT_DEGREE, SUITES, run_suite

ENV_DEGREE = "CHERNFORGE_DEGREE"


def _resolve_degree(flag_value, config_value=None) -> int:
    if flag_value is not None:
        return flag_value
    if config_value is not None:
        return config_value
    env = os.environ.get(ENV_DEGREE)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ConfigError(f"{ENV_DEGREE} must be an integer, got {env!r}") from None
    return DEFAULT_DEGREE


def _subset_key(subset) -> str:
    return ",".join(str(j) for j in subset)


def _class_entry(index: int, char) -> dict:
    periods = {_subset_key(subset): value
               for subset, value in sorted(char.period_table().items())}
    holonomies = {_subset_key(subset): str(value)
                  for subset, value in sorted(char.holonomy_table().items())}
    return {
        "index": index,
        "degree": char.degree,
        "curvature": char.curvature().to_text().splitlines(),
        "periods": periods,
        "holonomies": holonomies,
    }


def _render_text(report: dict) -> str:
    out = io.StringIO()
    command = report["command"]
    if command in ("chern", "odd"):
        out.write(f"# {command} classes on T^{report['dim']}\n")
        for entry in report["classes"]:
            out.write(f"class index {entry['index']} (degree {entry['degree']})\n")
            out.write("  curvature:\n")
            for line in entry["curvature"]:
                out.write(f"    {line}\n")
            out.write("  periods:\n")
            for key, value in entry["periods"].items():
                out.write(f"    [{key}] {value}\n")
            if not entry["periods"]:
                out.write("    (all zero)\n")
            out.write("  holonomies:\n")
            for key, value in entry["holonomies"].items():
                out.write(f"    [{key}] {value}\n")
            if not entry["holonomies"]:
                out.write("    (none)\n")
    else:
        suite = report["suite"]
        out.write(f"# verify suite {suite['suite']} (seed {suite['seed']})\n")
        out.write(f"checks: {suite['checks']}\n")
        out.write(f"passes: {suite['passes']}\n")
        out.write(f"failures: {suite['failures']}\n")
        verdict = "PASS" if suite["ok"] else "FAIL"
        out.write(f"verdict: {verdict}\n")
        if suite["first_counterexample"] is not None:
            out.write("first counterexample: "
                      + json.dumps(suite["first_counterexample"], sort_keys=True)
                      + "\n")
    return out.getvalue()


def _render_csv(report: dict) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    command = report["command"]
    if command in ("chern", "odd"):
        writer.writerow(["index", "kind", "key", "value"])
        for entry in report["classes"]:
            for line in entry["curvature"]:
                writer.writerow([entry["index"], "curvature", "", line])
            for key, value in entry["periods"].items():
                writer.writerow([entry["index"], "period", key, value])
            for key, value in entry["holonomies"].items():
                writer.writerow([entry["index"], "holonomy", key, value])
    else:
        writer.writerow(["field", "value"])
        suite = report["suite"]
        for key in ("suite", "seed", "checks", "passes", "failures", "ok"):
            writer.writerow([key, suite[key]])
        if suite["first_counterexample"] is not None:
            writer.writerow(["first_counterexample",
                             json.dumps(suite["first_counterexample"], sort_keys=True)])
    return out.getvalue()


def _emit(report: dict, fmt: str, out_path) -> None:
    if fmt == "json":
        rendered = json.dumps(report, indent=2, sort_keys=True) + "\n"
    elif fmt == "csv":
        rendered = _render_csv(report)
    else:
        rendered = _render_text(report)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(rendered)
    else:
        sys.stdout.write(rendered)


def _cmd_chern(args) -> int:
    with open(args.config, encoding="utf-8") as handle:
        config = parse_config(handle.read())
    cycle = config.build_cycle()
    indices = config.indices or list(range(1, cycle.n // 2 + 1))
    if not indices:
        raise PreconditionError(f"T^{cycle.n} carries no even classes")
    classes = [_class_entry(i, chern_class(cycle, i)) for i in indices]
    report = {"command": "chern", "dim": cycle.n, "classes": classes}
    _emit(report, args.format or config.fmt or "text", args.out)
    return 0


def _cmd_odd(args) -> int:
    with open(args.config, encoding="utf-8") as handle:
        config = parse_config(handle.read())
    cycle = config.build_odd_cycle()
    indices = config.indices or [i for i in range(1, cycle.n + 1, 2)]
    classes = [_class_entry(i, odd_chern_class(cycle, i)) for i in indices]
    report = {"command": "odd", "dim": cycle.n, "classes": classes}
    _emit(report, args.format or config.fmt or "text", args.out)
    return 0


def _cmd_verify(args) -> int:
    if args.suite not in SUITES:
        print(f"unknown suite {args.suite!r}; known: {', '.join(sorted(SUITES))}",
              file=sys.stderr)
        return 2
    degree = _resolve_degree(args.degree)
    suite = run_suite(args.suite, seed=args.seed, cases=args.cases, degree=degree)
    report = {"command": "verify", "suite": suite}
    _emit(report, args.format or "text", args.out)
    return 0 if suite["ok"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chernforge",
        description="Exact differential Chern class computations on flat tori.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default=None)
    common.add_argument("--out", metavar="PATH", default=None,
                        help="write the report to a file instead of stdout")
    common.add_argument("--degree", type=int, default=None,
                        help=f"truncation degree (default 8, or ${ENV_DEGREE})")

    chern = sub.add_parser("chern", parents=[common],
                           help="evaluate even classes of a configured cycle")
    chern.add_argument("--config", required=True, metavar="PATH")
    chern.set_defaults(func=_cmd_chern)

    odd = sub.add_parser("odd", parents=[common],
                         help="evaluate odd classes of a configured cycle")
    odd.add_argument("--config", required=True, metavar="PATH")
    odd.set_defaults(func=_cmd_odd)

    verify = sub.add_parser("verify", parents=[common],
                            help="run a named verification suite")
    verify.add_argument("--suite", required=True, metavar="NAME")
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--cases", type=int, default=None)
    verify.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
