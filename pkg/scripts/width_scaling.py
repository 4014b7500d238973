"""Time the matching oracle and the layer-peeling cover as n grows."""

from __future__ import annotations

import argparse
import statistics
import time

from qolab.dilworth import min_chain_cover, width_and_antichain
from qolab.procedures import paper_chain_cover
from qolab.relation import random_quasi_order


def timed(fn, *args):
    start = time.perf_counter()
    value = fn(*args)
    return value, (time.perf_counter() - start) * 1000


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", type=int, nargs="+", default=[4, 8, 12, 16, 24, 32, 40])
    parser.add_argument("--trials", type=int, default=20)
    parser.add_argument("--density", type=float, default=0.3)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--paper-max", type=int, default=14, help="largest n for the peeling cover")
    args = parser.parse_args()

    print(f"{'n':>4} {'width':>6} {'oracle ms':>10} {'peel ms':>9} {'agree':>6}")
    for n in args.sizes:
        widths, oracle_ms, peel_ms, agree = [], [], [], True
        for t in range(args.trials):
            q = random_quasi_order(n, args.density, args.seed * 100_003 + n * 1009 + t)
            (w, _), ms = timed(width_and_antichain, q)
            cover, ms2 = timed(min_chain_cover, q)
            widths.append(w)
            oracle_ms.append(ms + ms2)
            agree &= len(cover) == w
            if n <= args.paper_max:
                pc, ms3 = timed(paper_chain_cover, q)
                peel_ms.append(ms3)
                agree &= len(pc.cover) == w
        peel = f"{statistics.mean(peel_ms):9.2f}" if peel_ms else f"{'-':>9}"
        print(f"{n:>4} {statistics.mean(widths):6.2f} {statistics.mean(oracle_ms):10.2f} {peel} {str(agree):>6}")


if __name__ == "__main__":
    main()
