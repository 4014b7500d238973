"""How many pairs the auxiliary graph adds to incomparability graphs of random quasi-orders."""

from __future__ import annotations

import argparse
import random
from collections import defaultdict

from qolab.auxgraph import aux_graph
from qolab.relation import incomparability_graph, random_quasi_order


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=300)
    parser.add_argument("--n-max", type=int, default=12)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    rows = defaultdict(lambda: [0, 0, 0])
    for i in range(args.count):
        n = rng.randint(2, args.n_max)
        q = random_quasi_order(n, (0.2, 0.4, 0.6)[i % 3], rng.getrandbits(63))
        g = incomparability_graph(q)
        ag = aux_graph(g)
        r = rows[n]
        r[0] += 1
        r[1] += len(g.edges())
        r[2] += len(ag.added_edges())
    print(f"{'n':>3} {'instances':>9} {'mean |perp|':>12} {'mean added':>11}")
    for n in sorted(rows):
        k, base, added = rows[n]
        print(f"{n:>3} {k:>9} {base / k:>12.2f} {added / k:>11.2f}")


if __name__ == "__main__":
    main()
