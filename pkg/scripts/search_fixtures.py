#!/usr/bin/env python3
"""Survey canonical isometric pairs for rectifying transfer curves.

Prints one row per (pair, probe curve) and optionally writes the survey as
JSON. The survey documents why the transfer checkers ship with bespoke ruled
fixtures: no probe curve on the textbook pairs is simultaneously rectifying
and curvature-regular on both sides.

Usage: python3 scripts/search_fixtures.py [--grid N] [--json PATH]
"""
import argparse
import json
import sys

from darbouxkit.theorems import fixture_search


def cli() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--grid", type=int, default=9)
    ap.add_argument("--json", default=None, help="also write the survey here")
    ns = ap.parse_args()

    survey = fixture_search(grid=ns.grid)
    n_rect = 0
    print(f"{'pair':20s} {'curve':16s} {'residual':>12s} {'rectifying':>10s} "
          f"{'src class':>10s} {'tgt class':>10s}")
    for row in survey:
        if "disposition" in row:
            print(f"{row['pair']:20s} {row['curve']:16s} {row['disposition']}")
            continue
        n_rect += row["rectifying"]
        print(f"{row['pair']:20s} {row['curve']:16s} "
              f"{row['max_abs_residual']:12.3e} {str(row['rectifying']):>10s} "
              f"{row['source_class']:>10s} {row['target_class']:>10s}")
    print(f"\n{len(survey)} probes, {n_rect} rectifying")

    if ns.json:
        with open(ns.json, "w", encoding="utf-8") as fh:
            json.dump({"survey": survey}, fh, indent=2, sort_keys=True)
            fh.write("\n")
        print(f"survey written to {ns.json}")
    return 0


if __name__ == "__main__":
    sys.exit(cli())
