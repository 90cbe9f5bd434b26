"""Command-line entry point.

Every subcommand reads an optional TOML config, writes its data files plus
``resolved_config.toml`` to the output directory, and exits with 0 on
success, 2 on a configuration error, 3 on a numerical or geometry error.
"""
from __future__ import annotations

import argparse
import dataclasses
import logging
import sys
import warnings

from .config import ExperimentConfig, load_config, validate_config
from .errors import ConfigError, InvalidArgumentError
from .experiments import (dumps_json, output_dir, run_optimize, run_position, run_sweep,
                          write_optimize, write_resolved, write_sweep, _write)

log = logging.getLogger("hapseh")

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3


def _load(args) -> ExperimentConfig:
    cfg = load_config(args.config) if args.config else ExperimentConfig()
    if getattr(args, "seed", None) is not None:
        cfg.method = dataclasses.replace(cfg.method, seed=args.seed)
    if getattr(args, "model", None) is not None:
        cfg.method = dataclasses.replace(cfg.method, model=args.model)
    if getattr(args, "baseline_da_km", None) is not None:
        cfg.sweep = dataclasses.replace(cfg.sweep, positioning=True,
                                        baseline_d_a_km=args.baseline_da_km)
    if getattr(args, "draws", None) is not None:
        cfg.method = dataclasses.replace(cfg.method, random_draws=args.draws)
    validate_config(cfg)
    return cfg


def _cmd_sweep(args, stem="sweep"):
    cfg = _load(args)
    if stem == "budget" and cfg.power.p_req_dbm is None:
        raise ConfigError("the budget run needs a required transmit power", "power.p_req_dbm")
    if stem == "mission" and not cfg.power.flight_times_h:
        raise ConfigError("the mission run needs at least one flight time",
                          "power.flight_times_h")
    out = output_dir(cfg, args.out)
    rows = run_sweep(cfg, workers=args.workers)
    path = write_sweep(cfg, rows, out, stem)
    write_resolved(cfg, out)
    log.info("wrote %d rows to %s", len(rows), path)


def _cmd_position(args):
    cfg = _load(args)
    out = output_dir(cfg, args.out)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        result = run_position(cfg)
    result["warnings"] = [str(w.message) for w in caught]
    path = _write(out / "position.json", dumps_json(result))
    write_resolved(cfg, out)
    log.info("wrote %s", path)


def _cmd_optimize(args):
    cfg = _load(args)
    out = output_dir(cfg, args.out)
    summary, trace = run_optimize(cfg, args.command)
    paths = write_optimize(summary, trace, out, cfg.output.format)
    write_resolved(cfg, out)
    log.info("wrote %s and %s", *paths)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hapseh", description="Two-tier HAPS energy-harvesting link experiments.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("-c", "--config", help="TOML experiment file (defaults if omitted)")
        p.add_argument("-o", "--out", help="output directory (overrides [output].dir)")
        return p

    for name, help_ in (("sweep", "link budget over one swept parameter"),
                        ("budget", "sweep with inventory-borrowing columns"),
                        ("mission", "sweep with flight-mission energy columns")):
        p = common(sub.add_parser(name, help=help_))
        p.add_argument("-j", "--workers", type=int, default=None,
                       help="worker processes (default: all cores)")
        if name == "sweep":
            p.add_argument("--baseline-da-km", type=float, default=None,
                           help="fixed offset compared against the optimal positioning")
        p.set_defaults(func=lambda a, stem=name: _cmd_sweep(a, stem))

    p = common(sub.add_parser("position", help="optimal offset for both EH models"))
    p.set_defaults(func=_cmd_position)

    for name in ("idfa", "qlearn", "exhaustive"):
        p = common(sub.add_parser(name, help=f"joint offset/factor optimisation ({name})"))
        p.add_argument("--model", choices=("linear", "nonlinear"), default=None)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--draws", type=int, default=None,
                       help="random factor draws per offset for the random-selection reference")
        p.set_defaults(func=_cmd_optimize)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (InvalidArgumentError, ArithmeticError) as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
