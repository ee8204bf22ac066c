"""Render figures from spec files: figrender --spec spec.json [--spec ...]"""

from __future__ import annotations

import argparse
import sys

from .errors import FigrenderError
from .render import render
from .spec import load_spec


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="figrender",
                                     description="render simulator outputs to images")
    parser.add_argument("--spec", action="append", required=True, metavar="PATH",
                        help="figure spec JSON (repeatable)")
    args = parser.parse_args(argv)
    try:
        for path in args.spec:
            out = render(load_spec(path))
            print(f"{path} -> {out}")
    except FigrenderError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
