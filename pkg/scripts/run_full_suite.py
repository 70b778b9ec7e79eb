#!/usr/bin/env python3
"""Drive every subcommand end to end into one output directory.

Usage: python3 scripts/run_full_suite.py [--out DIR] [--seed N] [--svg]
"""
import argparse
import sys

from darbouxkit.cli import main
from darbouxkit.frames import CURVE_FIXTURE_NAMES
from darbouxkit.isometry import PAIR_NAMES


def run(argv: list[str]) -> int:
    print(f"$ darbouxkit {' '.join(argv)}")
    return main(argv)


def cli() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="suite_output")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--svg", action="store_true",
                    help="also emit SVG charts for every command")
    ns = ap.parse_args()

    base = ["--out", ns.out, "--seed", str(ns.seed)]
    if ns.svg:
        base += ["--format", "csv", "--format", "json", "--format", "svg"]

    worst = 0
    # line-plane is excluded: a straight line has no Frenet frame and the
    # frame command reports it as degenerate by design
    for name in CURVE_FIXTURE_NAMES:
        if name == "line-plane":
            continue
        worst = max(worst, run([*base, "frame", name]))
    worst = max(worst, run([*base, "frame", "dilated-spherical"]))

    worst = max(worst, run([*base, "rectify", "dilated-spherical"]))
    run([*base, "rectify", "helix-cylinder"])  # reported, expected non-rectifying

    for pair in PAIR_NAMES:
        worst = max(worst, run([*base, "isometry", pair]))

    worst = max(worst, run([*base, "theorem"]))
    worst = max(worst, run([*base, "catalog"]))

    print(f"full suite done, worst exit code {worst}, outputs in {ns.out}/")
    return worst


if __name__ == "__main__":
    sys.exit(cli())
