"""Command line: ``wsnlife run|sweep|validate <config.toml>``.

Exit codes: 0 success, 2 config error, 3 closed form inapplicable (or
closed form and LP disagree), 4 infeasible LP, 5 internal error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .config import SWEEP_PARAMS, load_config
from .errors import ClosedFormInapplicableError, ConfigError, InfeasibleError
from .report import build_report, write_report, write_sweep
from .runner import GAP_TOL, execute, sweep

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INAPPLICABLE = 3
EXIT_INFEASIBLE = 4
EXIT_INTERNAL = 5

log = logging.getLogger("wsnlife")


def _default_output(cfg, suffix):
    stem = cfg.source_path.with_suffix("") if cfg.source_path else Path("wsnlife")
    return stem.parent / f"{stem.name}.{suffix}"


def _parse_values(text: str) -> list:
    text = text.strip()
    if not text:
        return []
    try:
        values = json.loads(text if text.startswith("[") else f"[{text}]")
    except json.JSONDecodeError:
        raise ConfigError(f"--values: cannot parse {text!r}; use a comma-separated list") from None
    if not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in values):
        raise ConfigError("--values: every value must be a number")
    return values


def cmd_run(args) -> int:
    cfg = load_config(args.config)
    if args.format:
        cfg.output_format = args.format
    result = execute(cfg)
    report = build_report(result)
    if args.output:
        out = Path(args.output)
    elif cfg.output_path is not None and cfg.sweep_param is None:
        out = cfg.output_path
    else:
        # in a sweep config [output].path names the sweep table
        out = _default_output(cfg, f"report.{cfg.output_format}")
    write_report(report, out, cfg.output_format)
    for name, sol in result.solutions.items():
        print(f"{name}: max energy {float(sol.report.max_energy):.10g} J at node {sol.report.argmax_node}")
    print(f"report written to {out}")
    gap = result.gap
    if gap is not None and gap > GAP_TOL:
        print(f"error: closed form and LP differ by {float(gap):.3g} (relative); "
              "the closed form does not apply here, use solver.method = \"lp\"", file=sys.stderr)
        return EXIT_INAPPLICABLE
    return EXIT_OK


def cmd_sweep(args) -> int:
    cfg = load_config(args.config)
    param = args.param or cfg.sweep_param
    if param is None:
        raise ConfigError("sweep: give --param or a [sweep] table")
    if param not in SWEEP_PARAMS:
        raise ConfigError(f"--param: expected one of {', '.join(SWEEP_PARAMS)}, got {param!r}")
    values = _parse_values(args.values) if args.values is not None else cfg.sweep_values
    rows = sweep(cfg, param, values)
    if args.output:
        out = Path(args.output)
    elif cfg.output_path is not None:
        out = cfg.output_path
    else:
        out = _default_output(cfg, "sweep.csv")
    write_sweep(rows, out)
    print(f"{len(rows)} rows written to {out}")
    return EXIT_OK


def cmd_validate(args) -> int:
    load_config(args.config)
    print(f"{args.config}: ok")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wsnlife", description="Maximum-lifetime schedules for sensor networks")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="solve one configuration and write a report")
    p.add_argument("config")
    p.add_argument("-o", "--output", help="report path (overrides [output].path)")
    p.add_argument("--format", choices=("json", "csv"))
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("sweep", help="solve once per parameter value and write a CSV table")
    p.add_argument("config")
    p.add_argument("--param", help=f"one of {', '.join(SWEEP_PARAMS)}")
    p.add_argument("--values", help="comma-separated values, e.g. 1,2,3")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("validate", help="check a configuration without solving")
    p.add_argument("config")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ClosedFormInapplicableError as exc:
        print(f"error: {exc} (set solver.method = \"lp\")", file=sys.stderr)
        return EXIT_INAPPLICABLE
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except Exception as exc:  # noqa: BLE001 - mapped to the internal-error exit code
        log.debug("internal error", exc_info=True)
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
