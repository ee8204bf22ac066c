"""Command-line front end.

    dephnet run --preset fig3-separable-boson --out results/
    dephnet run --config experiment.json --set oracle.M=8000
    dephnet presets

Exit codes: 0 success, 2 configuration error, 3 numeric/invariant failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import load_config, set_dot_path
from .errors import ConfigError, DephnetError
from .presets import list_presets, preset_runs
from .runner import run


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dephnet",
                                     description="dephasing quantum-network simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one experiment or preset")
    p_run.add_argument("--config", type=Path, help="experiment config JSON")
    p_run.add_argument("--preset", help="built-in preset name (see 'dephnet presets')")
    p_run.add_argument("--set", dest="overrides", action="append", default=[],
                       metavar="PATH=VALUE", help="override a config field, e.g. oracle.M=8000")
    p_run.add_argument("--out", type=Path, help="output directory")
    p_run.add_argument("--seed", type=int, help="oracle master seed")
    p_run.add_argument("--threads", type=int, help="oracle worker threads")

    sub.add_parser("presets", help="list built-in presets")
    return parser


def _apply_flags(cfg: dict, args) -> dict:
    for item in args.overrides:
        if "=" not in item:
            raise ConfigError("--set", f"expected PATH=VALUE, got {item!r}")
        path, raw = item.split("=", 1)
        set_dot_path(cfg, path, raw)
    if args.seed is not None:
        set_dot_path(cfg, "oracle.seed", str(args.seed))
    if args.threads is not None:
        set_dot_path(cfg, "oracle.threads", str(args.threads))
    return cfg


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)

    if args.command == "presets":
        for name, description in list_presets():
            print(f"{name:32s} {description}")
        return 0

    try:
        if (args.config is None) == (args.preset is None):
            raise ConfigError("config", "pass exactly one of --config or --preset")
        if args.preset is not None:
            try:
                runs = preset_runs(args.preset)
            except KeyError as exc:
                raise ConfigError("preset", str(exc)) from None
        else:
            runs = {Path(args.config).stem: dict()}

        base_out = args.out
        for run_name, raw in runs.items():
            if args.preset is None:
                raw = args.config
            cfg = load_config(raw)
            cfg = load_config(_apply_flags(cfg, args))  # re-validate after overrides
            if base_out is not None:
                out_dir = base_out if len(runs) == 1 else Path(base_out) / run_name
            else:
                out_dir = Path(cfg["output_dir"]) if len(runs) == 1 \
                    else Path(cfg["output_dir"]) / run_name
            summary = run(cfg, out_dir)
            print(f"{run_name}: ok -> {summary['output_dir']}")
        return 0
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DephnetError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
