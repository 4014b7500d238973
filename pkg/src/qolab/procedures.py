"""Constructive finite versions of the chain-cover argument, plus brute-force checkers.

The chain cover here peels off one independent set of the auxiliary graph
of the incomparability graph at a time.  Each peeled set meets every
maximum antichain of what is left, so the width drops by exactly one per
layer and the number of chains equals the width.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .auxgraph import (
    aux_graph,
    enumerate_colorings,
    iter_cliques,
    max_clique,
    minimal_witness,
    _separated,
)
from .dilworth import ChainCover, iter_antichains, width
from .errors import (
    Budget,
    HypothesisViolated,
    MalformedInput,
    NotAntichain,
    NotIndependent,
    PropositionViolated,
    WrongCardinality,
    as_budget,
)
from .relation import (
    FiniteRelation,
    Graph,
    QuasiOrder,
    incomparability_graph,
    is_antichain,
    iter_bits,
    set_to_bits,
)

PROPOSITIONS = ("union", "clique", "antichain", "transitive", "independence", "maximal")
EXHAUSTIVE_LIMIT = 8
UNION_EXHAUSTIVE_EDGES = 10
SAMPLES = 64


@dataclass(frozen=True)
class SetFamily:
    sets: tuple[frozenset[int], ...] = ()

    @classmethod
    def of(cls, sets: Iterable[Iterable[int]]) -> SetFamily:
        seen: dict[frozenset[int], None] = {}
        for s in sets:
            seen.setdefault(frozenset(s), None)
        return cls(tuple(seen))

    def __iter__(self):
        return iter(self.sets)

    def __len__(self):
        return len(self.sets)

    def is_punctured_by(self, vertices: Iterable[int]) -> bool:
        y = set(vertices)
        return all(s & y for s in self.sets)


def parse_family(text: str) -> SetFamily:
    sets = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            sets.append([int(tok) for tok in line.split()])
        except ValueError:
            raise MalformedInput(f"expected vertex indices, got {line!r}", lineno) from None
        if any(v < 0 for v in sets[-1]):
            raise MalformedInput("vertex indices must be non-negative", lineno)
    return SetFamily.of(sets)


def format_family(fam: SetFamily) -> str:
    return "".join(" ".join(map(str, sorted(s))) + "\n" for s in fam.sets)


def aux_family(g: Graph, fam: SetFamily, k: int, y: Iterable[int]) -> SetFamily:
    """Members F with at least ``|F| - k`` points that cannot join ``y`` independently."""
    ymask = set_to_bits(y)
    kept = []
    for f in fam.sets:
        blocked = sum(1 for x in f if g.rows[x] & ymask)
        if blocked >= len(f) - k:
            kept.append(f)
    return SetFamily(tuple(kept))


@dataclass(frozen=True)
class PaperCover:
    cover: ChainCover
    layers: tuple[frozenset[int], ...]

    def to_json(self) -> dict:
        return {
            "chains": [sorted(c) for c in self.cover.chains],
            "layers": [sorted(b) for b in self.layers],
        }


def reduced_relation(q: QuasiOrder, budget: Budget | int | None = None) -> FiniteRelation:
    """``R`` minus the auxiliary graph of its incomparability graph; must be transitive."""
    aux = aux_graph(incomparability_graph(q), budget).aux
    rows = [q.rows[i] & ~aux.rows[i] for i in range(q.n)]
    for i in range(q.n):
        for j in iter_bits(rows[i]):
            missing = rows[j] & ~rows[i]
            if missing:
                k = (missing & -missing).bit_length() - 1
                raise PropositionViolated(f"reduced relation is not transitive at {(i, j, k)}", (i, j, k))
    return FiniteRelation(q.n, rows)


def independence_extend(q: QuasiOrder, a: Iterable[int], y: Iterable[int], budget: Budget | int | None = None) -> int:
    """Least ``x`` in the maximum antichain ``a`` that keeps ``y`` independent in the aux graph."""
    a = sorted(set(a))
    y = set(y)
    if not is_antichain(q, a):
        raise NotAntichain(f"{a} is not an antichain")
    w = width(q)
    if len(a) != w:
        raise WrongCardinality(f"antichain has {len(a)} points, width is {w}")
    aux = aux_graph(incomparability_graph(q), budget).aux
    if not aux.is_independent(y):
        raise NotIndependent(f"{sorted(y)} is not independent in the auxiliary graph")
    ymask = set_to_bits(y)
    for x in a:
        if not aux.rows[x] & ymask:
            return x
    raise PropositionViolated("no antichain point extends the independent set", {"A": a, "Y": sorted(y)})


def puncture_extend(g: Graph, fam: SetFamily, b: Iterable[int]) -> frozenset[int]:
    """Greedily grow the independent set ``b`` until it meets every member of ``fam``.

    The first member still missed is handled first, by adding its least
    vertex that keeps the set independent.
    """
    b = frozenset(b)
    if not g.is_independent(b):
        raise NotIndependent(f"{sorted(b)} is not independent")
    c = set_to_bits(b)
    masks = [set_to_bits(f) for f in fam.sets]
    while True:
        missed = next((i for i, m in enumerate(masks) if not m & c), None)
        if missed is None:
            return frozenset(iter_bits(c))
        for x in iter_bits(masks[missed]):
            if not g.rows[x] & c:
                c |= 1 << x
                break
        else:
            raise HypothesisViolated(
                "a family member cannot be met independently",
                frozenset(iter_bits(c)),
                fam.sets[missed],
            )


def paper_chain_cover(q: QuasiOrder, budget: Budget | int | None = None) -> PaperCover:
    budget = as_budget(budget)
    remaining = list(range(q.n))
    chains: list[frozenset[int]] = []
    layers: list[frozenset[int]] = []
    while remaining:
        sub, labels = q.induced(remaining)
        w = width(sub)
        if w <= 1:
            chains.append(frozenset(remaining))
            break
        aux = aux_graph(incomparability_graph(sub), budget).aux
        fam = SetFamily.of(iter_antichains(sub, w, budget))
        local = puncture_extend(aux, fam, ())
        layer = frozenset(labels[i] for i in local)
        chains.append(layer)
        layers.append(layer)
        remaining = [v for v in remaining if v not in layer]
        left = width(q.induced(remaining)[0])
        if left != w - 1:
            raise PropositionViolated(
                f"peeling {sorted(layer)} left width {left}, expected {w - 1}",
                {"layer": sorted(layer), "width_before": w, "width_after": left},
            )
    return PaperCover(ChainCover(tuple(chains)), tuple(layers))


# proposition checkers


@dataclass
class PropositionReport:
    name: str
    passed: bool
    checks: int
    mode: str
    counterexample: dict | None = None
    notes: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checks": self.checks,
            "mode": self.mode,
            "counterexample": self.counterexample,
        }


class _Counter:
    def __init__(self):
        self.n = 0

    def __call__(self, k: int = 1):
        self.n += k


def _as_graph_instance(instance) -> Graph:
    if isinstance(instance, Graph):
        return instance
    if isinstance(instance, QuasiOrder):
        return incomparability_graph(instance)
    raise TypeError(f"expected a Graph or QuasiOrder, got {type(instance).__name__}")


def _require_quasi_order(instance) -> QuasiOrder:
    if not isinstance(instance, QuasiOrder):
        raise TypeError(f"expected a QuasiOrder, got {type(instance).__name__}")
    return instance


def _bits(mask: int) -> list[int]:
    return list(iter_bits(mask))


def _independent_sets(g: Graph) -> Iterator[int]:
    """All independent sets as bitmasks, in increasing mask order."""
    for mask in range(1 << g.n):
        if all(not g.rows[v] & mask for v in iter_bits(mask)):
            yield mask


def _random_maximal_independent(g: Graph, rng: random.Random) -> int:
    order = list(range(g.n))
    rng.shuffle(order)
    mask = 0
    for v in order:
        if not g.rows[v] & mask:
            mask |= 1 << v
    return mask


def _sampled_independent_sets(g: Graph, rng: random.Random, count: int) -> list[int]:
    seen = {0: None}
    for _ in range(count):
        full = _random_maximal_independent(g, rng)
        seen.setdefault(full, None)
        members = _bits(full)
        if members:
            sub = set_to_bits(rng.sample(members, rng.randint(0, len(members))))
            seen.setdefault(sub, None)
    return list(seen)


def _share_masks(g: Graph, subset: frozenset[int], chi: int, budget: Budget) -> dict[int, int]:
    """For each v in ``subset``: the vertices that share v's colour in some chi-colouring of g|subset."""
    sub, labels = g.induced(subset)
    share = [1 << i for i in range(sub.n)]
    for colors in enumerate_colorings(sub, chi, budget):
        by_color: dict[int, int] = {}
        for i, c in enumerate(colors):
            by_color[c] = by_color.get(c, 0) | 1 << i
        for i, c in enumerate(colors):
            share[i] |= by_color[c]
    return {labels[i]: set_to_bits(labels[j] for j in iter_bits(share[i])) for i in range(sub.n)}


def _shrunk_witness(g: Graph, x: int, y: int, chi: int, budget: Budget) -> frozenset[int]:
    """Inclusion-minimal witness obtained by deleting vertices from the whole set."""
    current = list(range(g.n))
    for v in range(g.n):
        if v in (x, y):
            continue
        trial = [u for u in current if u != v]
        sub, labels = g.induced(trial)
        if _separated(sub, labels.index(x), labels.index(y), chi, budget):
            current = trial
    return frozenset(current)


def _check_union(g: Graph, rng: random.Random, exhaustive: bool, budget: Budget, tick: _Counter):
    ag = aux_graph(g, budget)
    chi = ag.chi
    edges = ag.aux.edges()
    if not edges:
        return None
    if exhaustive and len(edges) <= UNION_EXHAUSTIVE_EDGES:
        subsets = [
            list(c) for r in range(1, len(edges) + 1) for c in itertools.combinations(edges, r)
        ]
        sample_edges = edges
    else:
        sample_edges = edges if exhaustive else rng.sample(edges, min(len(edges), 8))
        subsets = [[e] for e in sample_edges] + [sample_edges]
        for _ in range(SAMPLES):
            subsets.append(rng.sample(sample_edges, rng.randint(1, len(sample_edges))))
    witnesses = {}
    for x, y in sample_edges:
        if exhaustive:
            witnesses[(x, y)] = minimal_witness(g, x, y, chi, budget)
        else:
            witnesses[(x, y)] = _shrunk_witness(g, x, y, chi, budget)
    share_cache: dict[frozenset[int], dict[int, int]] = {}
    for pairs in subsets:
        f = frozenset().union(*(witnesses[p] for p in pairs))
        tick()
        endpoints = {v for p in pairs for v in p}
        if not endpoints <= f:
            return {"pairs": pairs, "F": sorted(f), "reason": "witness misses an endpoint"}
        if exhaustive:
            if f not in share_cache:
                share_cache[f] = _share_masks(g, f, chi, budget)
            share = share_cache[f]
            bad = [p for p in pairs if share[p[0]] >> p[1] & 1]
        else:
            sub, labels = g.induced(f)
            bad = [
                p for p in pairs
                if not _separated(sub, labels.index(p[0]), labels.index(p[1]), chi, budget)
            ]
        if bad:
            return {"pairs": [list(p) for p in pairs], "F": sorted(f), "identified": list(bad[0])}
    return None


def _check_clique(g: Graph, rng, exhaustive: bool, budget: Budget, tick: _Counter):
    ag = aux_graph(g, budget)
    if exhaustive:
        for c in iter_cliques(ag.aux, budget=budget):
            tick()
            if len(c) > ag.chi:
                return {"clique": sorted(c), "chi": ag.chi}
        return None
    tick()
    c = max_clique(ag.aux, budget)
    if len(c) > ag.chi:
        return {"clique": sorted(c), "chi": ag.chi}
    return None


def _check_antichain(g: Graph, rng, exhaustive: bool, budget: Budget, tick: _Counter):
    ag = aux_graph(g, budget)
    chi, aux = ag.chi, ag.aux
    if chi == 0:
        return None
    cliques = iter_cliques(aux, chi, budget)
    if not exhaustive:
        cliques = itertools.islice(cliques, SAMPLES)
    for c in cliques:
        cmask = set_to_bits(c)
        for x in range(g.n):
            for y in range(x, g.n):
                tick()
                if cmask & ~(aux.rows[x] | aux.rows[y]):
                    continue
                if not aux.related(x, y):
                    return {"clique": sorted(c), "x": x, "y": y, "chi": chi}
    return None


def _check_transitive(q: QuasiOrder, rng, exhaustive: bool, budget: Budget, tick: _Counter):
    aux = aux_graph(incomparability_graph(q), budget).aux
    n = q.n
    rel = [[q.related(i, j) and not aux.related(i, j) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if not rel[i][j]:
                continue
            for k in range(n):
                tick()
                if rel[j][k] and not rel[i][k]:
                    return {"triple": [i, j, k]}
    return None


def _check_independence(q: QuasiOrder, rng, exhaustive: bool, budget: Budget, tick: _Counter):
    ag = aux_graph(incomparability_graph(q), budget)
    aux = ag.aux
    chi = ag.chi
    if chi == 0:
        return None
    w = width(q)
    if w != chi:
        return {"reason": "chromatic number of incomparability graph differs from width", "chi": chi, "width": w}
    antichains = iter_antichains(q, chi, budget)
    if exhaustive:
        ys = list(_independent_sets(aux))
    else:
        antichains = itertools.islice(antichains, SAMPLES)
        ys = _sampled_independent_sets(aux, rng, SAMPLES)
    for a in antichains:
        for ymask in ys:
            tick()
            if all(aux.rows[x] & ymask for x in a):
                return {"A": sorted(a), "Y": _bits(ymask)}
    return None


def _admissible(g: Graph, fmask: int, ys: list[int]) -> bool:
    for ymask in ys:
        allowed = set_to_bits(x for x in iter_bits(fmask) if not g.rows[x] & ymask)
        if not allowed:
            return False
    return True


def _check_maximal(instance, rng: random.Random, exhaustive: bool, budget: Budget, tick: _Counter):
    families: list[SetFamily] = []
    if isinstance(instance, QuasiOrder):
        g = aux_graph(incomparability_graph(instance), budget).aux
        w = width(instance)
        if w >= 1:
            families.append(SetFamily.of(iter_antichains(instance, w, budget)))
    else:
        g = _as_graph_instance(instance)
    n = g.n
    if n == 0:
        return None
    if exhaustive:
        ys = list(_independent_sets(g))
        starts = ys
    else:
        # A set meets every {x : {x} u Y independent} iff it meets every maximal Y.
        ys = _sampled_independent_sets(g, rng, SAMPLES)
        starts = ys[:16]
    pool = [frozenset(iter_bits(g.rows[v] | 1 << v)) for v in range(n)]
    for _ in range(4 * n):
        cand = set_to_bits(rng.sample(range(n), rng.randint(1, min(4, n))))
        if _admissible(g, cand, ys):
            pool.append(frozenset(iter_bits(cand)))
    for _ in range(4):
        families.append(SetFamily.of(rng.sample(pool, rng.randint(1, min(5, len(pool))))))
    for fam in families:
        for f in fam.sets:
            if not _admissible(g, set_to_bits(f), ys):
                return {"reason": "family member fails the hypothesis", "F": sorted(f)}
        kmax = max((len(f) for f in fam.sets), default=0)
        for ymask in ys:
            y = _bits(ymask)
            tick()
            if aux_family(g, fam, 0, y).sets:
                return {"reason": "level-0 family is not empty", "Y": y, "family": _fam_json(fam)}
            for k in range(kmax + 1):
                small = {f for f in fam.sets if len(f) <= k}
                if not small <= set(aux_family(g, fam, k, y).sets):
                    return {"reason": "small members missing from level-k family", "k": k, "Y": y,
                            "family": _fam_json(fam)}
        for bmask in starts:
            tick()
            b = _bits(bmask)
            try:
                c = puncture_extend(g, fam, b)
            except HypothesisViolated as exc:
                return {"reason": "greedy extension got stuck", "B": b, "C": sorted(exc.independent),
                        "F": sorted(exc.family_member), "family": _fam_json(fam)}
            if not (set(b) <= c and g.is_independent(c) and fam.is_punctured_by(c)):
                return {"reason": "extension is not an independent puncturing superset", "B": b,
                        "C": sorted(c), "family": _fam_json(fam)}
            for k in range(kmax + 1):
                if not aux_family(g, fam, k, c).is_punctured_by(c):
                    return {"reason": "extension misses a level-k family member", "k": k, "B": b,
                            "C": sorted(c), "family": _fam_json(fam)}
    return None


def _fam_json(fam: SetFamily) -> list[list[int]]:
    return [sorted(f) for f in fam.sets]


_CHECKERS = {
    "union": (_check_union, _as_graph_instance),
    "clique": (_check_clique, _as_graph_instance),
    "antichain": (_check_antichain, _as_graph_instance),
    "transitive": (_check_transitive, _require_quasi_order),
    "independence": (_check_independence, _require_quasi_order),
    "maximal": (_check_maximal, lambda inst: inst if isinstance(inst, (Graph, QuasiOrder)) else _as_graph_instance(inst)),
}


def verify_proposition(
    name: str,
    instance,
    seed: int = 0,
    budget: Budget | int | None = None,
    exhaustive_limit: int = EXHAUSTIVE_LIMIT,
) -> PropositionReport:
    """Brute-force the named statement on one instance.

    Instances with ``n <= exhaustive_limit`` get exhaustive inner
    quantifiers; larger ones are sampled with a generator seeded by
    ``(name, seed)``.
    """
    if name not in _CHECKERS:
        raise ValueError(f"unknown proposition {name!r}; expected one of {PROPOSITIONS}")
    checker, convert = _CHECKERS[name]
    inst = convert(instance)
    exhaustive = inst.n <= exhaustive_limit
    rng = random.Random(f"{name}:{seed}")
    tick = _Counter()
    counterexample = checker(inst, rng, exhaustive, as_budget(budget), tick)
    return PropositionReport(
        name=name,
        passed=counterexample is None,
        checks=tick.n,
        mode="exhaustive" if exhaustive else "sampled",
        counterexample=counterexample,
    )
