"""Command-line entry point.

Two subcommands:

  chernoff-lab run --config <path> [--preset <name>] [key=value ...] --out <dir>
  chernoff-lab list-presets

`run` assembles its config from, in order of increasing precedence: the
named preset, the config file, positional key=value overrides, and --out.
Exit codes: 0 success, 2 invalid configuration, 3 atom budget exhausted,
4 I/O failure.
"""
from __future__ import annotations

import argparse
import sys

from .experiments import (
    ConfigError,
    list_presets,
    parse_config,
    preset_text,
    run_experiment,
)
from .measures import AtomBudgetError

__all__ = ["main"]

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RESOURCE = 3
EXIT_IO = 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chernoff-lab",
        description="Measure how fast composed shift-measure approximations "
                    "converge to transport and heat flows.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run one experiment and write its outputs")
    run_p.add_argument("--config", help="path to a key=value config file")
    run_p.add_argument("--preset", help="start from a named preset "
                                        "(see list-presets)")
    run_p.add_argument("--out", help="output directory for csv/json/svg")
    run_p.add_argument("overrides", nargs="*", metavar="key=value",
                       help="config overrides, highest precedence")

    sub.add_parser("list-presets", help="show the built-in experiment catalog")
    return parser


def _cmd_list_presets() -> int:
    for name, description in sorted(list_presets().items()):
        print(f"{name:26s} {description}")
    return EXIT_OK


def _cmd_run(args) -> int:
    try:
        parts = []
        if args.preset:
            parts.append(preset_text(args.preset))
        if args.config:
            with open(args.config, "r", encoding="utf-8") as fh:
                parts.append(fh.read())
        if not parts:
            raise ConfigError("config", "need --config and/or --preset")
        overrides = list(args.overrides)
        if args.out:
            overrides.append(f"out={args.out}")
        cfg = parse_config("\n".join(parts), overrides)
        report = run_experiment(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except AtomBudgetError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO

    print(f"{cfg.equation}/{cfg.initial}, scheme {cfg.scheme}, t={cfg.t:g}: "
          f"{len(report.records)} degrees, n={cfg.n_values[0]}..{cfg.n_values[-1]}")
    if report.fit is not None:
        f = report.fit
        print(f"empirical order: slope {f.slope:+.4f} over n in "
              f"{f.window[0]}..{f.window[1]} (r^2 {f.r_squared:.6f})")
    if report.leading is not None:
        lead = report.leading
        print(f"leading coefficient at order {lead.order:g}: "
              f"{lead.at_largest_n:.6g} at n={lead.largest_n}, "
              f"richardson {lead.richardson:.6g}")
    if report.probe is not None:
        print(f"n*error bound probe: sup {report.probe.sup_value:.6g} at "
              f"n={report.probe.attained_at_n}, trend {report.probe.trend}")
    for note in report.notes:
        print(f"note: {note}")
    if cfg.outputs:
        print(f"outputs ({', '.join(cfg.outputs)}) written to {cfg.output_dir}")
    print(f"wall time: {report.wall_time_seconds:.3f} s")
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "list-presets":
        return _cmd_list_presets()
    return _cmd_run(args)


if __name__ == "__main__":
    sys.exit(main())
