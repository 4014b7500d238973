"""Exact colouring and the auxiliary graph of pairs separated by every optimal colouring.

On a finite ground set the finite chromatic number is just the chromatic
number, and forcing witnesses are monotone under supersets, so the whole
vertex set is always a valid witness.  Membership of a non-adjacent pair
``(x, y)`` therefore reduces to one question: is the graph with ``x`` and
``y`` identified still colourable with ``chi`` colours?
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import Budget, NotInAuxGraph, PropositionViolated, as_budget
from .relation import Graph, iter_bits, set_to_bits


@dataclass(frozen=True)
class ColoringCertificate:
    k: int
    colors: tuple[int, ...]

    def is_proper(self, g: Graph) -> bool:
        return is_proper_coloring(g, self.colors, self.k)


@dataclass(frozen=True)
class AuxGraph:
    base: Graph
    chi: int
    aux: Graph

    def added_edges(self) -> list[tuple[int, int]]:
        return [e for e in self.aux.edges() if not self.base.related(*e)]


def is_proper_coloring(g: Graph, colors: Sequence[int], k: int | None = None) -> bool:
    if len(colors) != g.n:
        return False
    if k is not None and any(not 0 <= c < k for c in colors):
        return False
    return all(colors[u] != colors[v] for u, v in g.edges())


# k-colourability


def _find_coloring(rows: Sequence[int], k: int, budget: Budget) -> list[int] | None:
    """DSATUR-ordered backtracking; new colours are only opened in increasing order."""
    n = len(rows)
    if n == 0:
        return []
    if k <= 0:
        return None
    colors = [-1] * n
    degrees = [bin(r).count("1") for r in rows]

    def forbidden(v: int) -> int:
        mask = 0
        for u in iter_bits(rows[v]):
            if colors[u] >= 0:
                mask |= 1 << colors[u]
        return mask

    def solve(done: int, used: int) -> bool:
        budget.tick()
        if done == n:
            return True
        best = -1
        best_key = None
        best_forb = 0
        for v in range(n):
            if colors[v] >= 0:
                continue
            forb = forbidden(v)
            key = (bin(forb).count("1"), degrees[v])
            if best_key is None or key > best_key:
                best, best_key, best_forb = v, key, forb
        for c in range(min(used + 1, k)):
            if best_forb >> c & 1:
                continue
            colors[best] = c
            if solve(done + 1, max(used, c + 1)):
                return True
        colors[best] = -1
        return False

    return colors if solve(0, 0) else None


def find_coloring(g: Graph, k: int, budget: Budget | int | None = None) -> list[int] | None:
    return _find_coloring(g.rows, k, as_budget(budget))


def max_clique(g: Graph, budget: Budget | int | None = None) -> frozenset[int]:
    """Exact maximum clique by branch and bound; ties go to the first one found."""
    budget = as_budget(budget)
    rows = g.rows
    best = [0]

    def expand(current: int, candidates: int) -> None:
        budget.tick()
        size = bin(current).count("1")
        if candidates == 0:
            if size > bin(best[0]).count("1"):
                best[0] = current
            return
        for v in iter_bits(candidates):
            if size + bin(candidates).count("1") <= bin(best[0]).count("1"):
                return
            expand(current | 1 << v, candidates & rows[v])
            candidates &= ~(1 << v)

    expand(0, (1 << g.n) - 1)
    return frozenset(iter_bits(best[0]))


def chromatic_number(g: Graph, budget: Budget | int | None = None) -> ColoringCertificate:
    budget = as_budget(budget)
    n = g.n
    if n == 0:
        return ColoringCertificate(0, ())
    lower = max(1, len(max_clique(g, budget)))
    k = lower
    while True:
        colors = _find_coloring(g.rows, k, budget)
        if colors is not None:
            return ColoringCertificate(k, tuple(colors))
        k += 1


def enumerate_colorings(g: Graph, k: int, budget: Budget | int | None = None) -> Iterator[tuple[int, ...]]:
    """Every proper colouring into ``range(k)``, lexicographic in the colour vector."""
    budget = as_budget(budget)
    n = g.n
    rows = g.rows
    colors = [0] * n

    def extend(v: int) -> Iterator[tuple[int, ...]]:
        budget.tick()
        if v == n:
            yield tuple(colors)
            return
        earlier = rows[v] & ((1 << v) - 1)
        taken = {colors[u] for u in iter_bits(earlier)}
        for c in range(k):
            if c in taken:
                continue
            colors[v] = c
            yield from extend(v + 1)

    yield from extend(0)


def contract(g: Graph, x: int, y: int) -> Graph:
    """Identify non-adjacent ``x`` and ``y``: ``y`` is dropped and its neighbours move to ``x``.

    Vertices above ``y`` shift down by one.
    """
    if x == y or g.related(x, y):
        raise ValueError(f"cannot merge {x} and {y}")
    keep = [v for v in range(g.n) if v != y]
    index = {v: i for i, v in enumerate(keep)}
    rows = []
    for v in keep:
        r = g.rows[v] | (g.rows[y] if v == x else 0)
        if g.rows[v] >> y & 1:
            r |= 1 << x
        r &= ~(1 << y)
        rows.append(set_to_bits(index[u] for u in iter_bits(r) if u != v))
    return Graph(len(keep), rows)


def _separated(g: Graph, x: int, y: int, chi: int, budget: Budget) -> bool:
    """True iff every ``chi``-colouring of ``g`` gives ``x`` and ``y`` different colours."""
    if g.related(x, y):
        return True
    return _find_coloring(contract(g, x, y).rows, chi, budget) is None


def aux_graph(g: Graph, budget: Budget | int | None = None) -> AuxGraph:
    budget = as_budget(budget)
    chi = chromatic_number(g, budget).k
    rows = list(g.rows)
    for x, y in itertools.combinations(range(g.n), 2):
        if not g.related(x, y) and _separated(g, x, y, chi, budget):
            rows[x] |= 1 << y
            rows[y] |= 1 << x
    return AuxGraph(g, chi, Graph(g.n, rows))


def chromatic_number_by_enumeration(g: Graph, budget: Budget | int | None = None) -> int:
    budget = as_budget(budget)
    for k in range(g.n + 1):
        if next(enumerate_colorings(g, k, budget), None) is not None:
            return k
    raise AssertionError("unreachable: n colours always suffice")


def aux_graph_bruteforce(g: Graph, budget: Budget | int | None = None) -> AuxGraph:
    """Same graph as :func:`aux_graph`, by listing every optimal colouring."""
    budget = as_budget(budget)
    n = g.n
    chi = chromatic_number_by_enumeration(g, budget)
    can_share = [1 << v for v in range(n)]
    for colors in enumerate_colorings(g, chi, budget):
        classes: dict[int, int] = {}
        for v, c in enumerate(colors):
            classes[c] = classes.get(c, 0) | 1 << v
        for v, c in enumerate(colors):
            can_share[v] |= classes[c]
    full = (1 << n) - 1
    return AuxGraph(g, chi, Graph(n, [full & ~can_share[v] for v in range(n)]))


def in_aux(g: Graph, x: int, y: int, chi: int | None = None, budget: Budget | int | None = None) -> bool:
    budget = as_budget(budget)
    if x == y:
        return False
    if chi is None:
        chi = chromatic_number(g, budget).k
    return _separated(g, x, y, chi, budget)


def _forced_on(g: Graph, subset: Sequence[int], x: int, y: int, chi: int, budget: Budget) -> bool:
    sub, labels = g.induced(subset)
    return _separated(sub, labels.index(x), labels.index(y), chi, budget)


def minimal_witness(g: Graph, x: int, y: int, chi: int, budget: Budget | int | None = None) -> frozenset[int]:
    """Smallest F containing x, y on which every chi-colouring separates them; lexicographic ties."""
    budget = as_budget(budget)
    others = [v for v in range(g.n) if v not in (x, y)]
    for extra in range(len(others) + 1):
        for comb in itertools.combinations(others, extra):
            subset = sorted((x, y) + comb)
            if _forced_on(g, subset, x, y, chi, budget):
                return frozenset(subset)
    raise NotInAuxGraph(f"({x}, {y}) is not an edge of the auxiliary graph")


def witness_set(g: Graph, pairs: Iterable[tuple[int, int]], budget: Budget | int | None = None) -> frozenset[int]:
    """A finite set forcing every listed aux pair apart.

    One pair: a minimum-cardinality witness.  Several pairs: the union of the
    per-pair minimum witnesses, checked by enumerating colourings before return.
    """
    budget = as_budget(budget)
    pairs = [tuple(p) for p in pairs]
    chi = chromatic_number(g, budget).k
    for x, y in pairs:
        if not in_aux(g, x, y, chi, budget):
            raise NotInAuxGraph(f"({x}, {y}) is not an edge of the auxiliary graph")
    result: frozenset[int] = frozenset()
    for x, y in pairs:
        result |= minimal_witness(g, x, y, chi, budget)
    if len(pairs) > 1:
        sub, labels = g.induced(result)
        index = {v: i for i, v in enumerate(labels)}
        for colors in enumerate_colorings(sub, chi, budget):
            for x, y in pairs:
                if colors[index[x]] == colors[index[y]]:
                    raise PropositionViolated(
                        "union of witnesses admits a colouring identifying a pair",
                        {"pair": (x, y), "coloring": colors, "witness": sorted(result)},
                    )
    return result


def iter_cliques(g: Graph, size: int | None = None, budget: Budget | int | None = None) -> Iterator[frozenset[int]]:
    """Cliques in lexicographic order (all sizes, or exactly ``size``), including the empty one."""
    budget = as_budget(budget)
    rows = g.rows
    n = g.n
    chosen: list[int] = []

    def extend(start: int, candidates: int) -> Iterator[frozenset[int]]:
        budget.tick()
        if size is None or len(chosen) == size:
            yield frozenset(chosen)
            if size is not None:
                return
        if size is not None and bin(candidates >> start << start).count("1") < size - len(chosen):
            return
        for v in range(start, n):
            if candidates >> v & 1:
                chosen.append(v)
                yield from extend(v + 1, candidates & rows[v])
                chosen.pop()

    yield from extend(0, (1 << n) - 1)
