"""Tabulate structural statistics of G0 levels."""

from __future__ import annotations

import argparse
import json
import time

from qolab.g0 import g0_level, level_stats


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-level", type=int, default=16)
    parser.add_argument("--json", action="store_true", help="one JSON object per line")
    args = parser.parse_args()

    if not args.json:
        print(f"{'N':>3} {'vertices':>9} {'edges':>9} {'comps':>6} {'tree':>5} {'chi':>4} {'dense':>6} {'ms':>7}")
    for N in range(args.max_level + 1):
        start = time.perf_counter()
        stats = level_stats(g0_level(N))
        ms = (time.perf_counter() - start) * 1000
        if args.json:
            print(json.dumps({**stats, "ms": round(ms, 2)}))
        else:
            print(f"{N:>3} {stats['vertices']:>9} {stats['edges']:>9} {stats['components']:>6} "
                  f"{str(stats['tree']):>5} {str(stats['chi']):>4} {str(stats['dense']):>6} {ms:>7.1f}")


if __name__ == "__main__":
    main()
