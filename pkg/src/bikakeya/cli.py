"""Command-line runner for the experiment registry.

Subcommands: ``run <name>``, ``list``, ``describe <name>``.  Configuration
is a flat ``key = value`` text file plus command-line overrides; unknown
keys are rejected.  Exit codes: 0 pass, 1 criterion failed, 2 config
error, 3 runtime error.
"""

from __future__ import annotations

import argparse
import sys

from .experiments import REGISTRY, run_experiment


def parse_config_file(path: str) -> dict:
    """Flat ``key = value`` lines; '#' starts a comment; blank lines ok."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, val = (s.strip() for s in line.split("=", 1))
            if not key:
                raise ValueError(f"{path}:{lineno}: empty key")
            out[key] = val
    return out


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="bikakeya",
        description="Run reproducible bilinear maximal-operator experiments.")
    sub = ap.add_subparsers(dest="command", required=True)

    runp = sub.add_parser("run", help="run one experiment")
    runp.add_argument("name", help="registry entry name")
    runp.add_argument("--config", help="flat key=value config file")
    runp.add_argument("--out", help="output directory for CSV/SVG artifacts")
    runp.add_argument("--seed", type=int, help="override the seed")
    runp.add_argument("--threads", type=int,
                      help="cap the numba worker count")
    runp.add_argument("--grid-n", type=int, dest="grid_n",
                      help="override the grid resolution (where used)")
    runp.add_argument("--set", action="append", default=[], metavar="K=V",
                      help="override a single config key")

    sub.add_parser("list", help="list registry entries")

    desc = sub.add_parser("describe", help="describe one experiment")
    desc.add_argument("name")
    return ap


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)

    if args.command == "list":
        for name in sorted(REGISTRY):
            print(f"{name:16s} {REGISTRY[name].description}")
        return 0

    if args.command == "describe":
        if args.name not in REGISTRY:
            print(f"error: unknown experiment {args.name!r}")
            return 2
        exp = REGISTRY[args.name]
        print(exp.name)
        print(f"  {exp.description}")
        print("  defaults:")
        for k in sorted(exp.defaults):
            print(f"    {k} = {exp.defaults[k]}")
        return 0

    # run
    overrides = {}
    if args.config:
        try:
            overrides.update(parse_config_file(args.config))
        except (OSError, ValueError) as exc:
            print(f"error: {exc}")
            return 2
    for item in args.set:
        if "=" not in item:
            print(f"error: --set expects K=V, got {item!r}")
            return 2
        k, v = item.split("=", 1)
        overrides[k.strip()] = v.strip()
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.grid_n is not None:
        overrides["grid_n"] = args.grid_n
    if args.threads is not None:
        if args.threads < 1:
            print("error: --threads must be >= 1")
            return 2
        import numba
        numba.set_num_threads(args.threads)
    return run_experiment(args.name, overrides, args.out)


if __name__ == "__main__":
    sys.exit(main())
