"""Width, maximum antichains and minimum chain covers of finite quasi-orders.

Everything here goes through the quotient poset: a maximum matching on the
split bipartite graph of the strict order gives a minimum chain cover
(chains = classes - matching size), and the König vertex cover read off the
same matching gives a maximum antichain.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import Budget, as_budget
from .relation import QuasiOrder, is_antichain, is_chain, iter_bits, quotient


@dataclass(frozen=True)
class ChainCover:
    chains: tuple[frozenset[int], ...]

    def __len__(self) -> int:
        return len(self.chains)

    def as_lists(self) -> list[list[int]]:
        return [sorted(c) for c in self.chains]


@dataclass(frozen=True)
class DichotomyResult:
    """Exactly one of ``cover`` (k chains) and ``antichain`` (k+1 points) is set."""

    k: int
    cover: ChainCover | None = None
    antichain: frozenset[int] | None = None

    def __post_init__(self):
        if (self.cover is None) == (self.antichain is None):
            raise ValueError("a dichotomy result carries exactly one alternative")

    @property
    def kind(self) -> str:
        return "cover" if self.cover is not None else "antichain"


def is_chain_cover(q: QuasiOrder, chains) -> bool:
    seen: set[int] = set()
    for c in chains:
        if seen & set(c) or not is_chain(q, c):
            return False
        seen |= set(c)
    return seen == set(range(q.n))


# matching core


def _strict_adjacency(rows, reps: list[int]) -> list[int]:
    """Bitmask adjacency ``a -> b`` between representative indices when rep a < rep b strictly."""
    adj = []
    for ra in reps:
        mask = 0
        for b, rb in enumerate(reps):
            if rows[ra] >> rb & 1 and not rows[rb] >> ra & 1:
                mask |= 1 << b
        adj.append(mask)
    return adj


def _max_matching(adj: list[int]) -> list[int]:
    """Kuhn's augmenting paths; returns ``match_right[v] = u`` or -1."""
    m = len(adj)
    match_right = [-1] * m

    def augment(u: int, seen: list[int]) -> bool:
        free = adj[u] & ~seen[0]
        for v in iter_bits(free):
            if seen[0] >> v & 1:
                continue
            seen[0] |= 1 << v
            if match_right[v] < 0 or augment(match_right[v], seen):
                match_right[v] = u
                return True
        return False

    for u in range(m):
        augment(u, [0])
    return match_right


def _konig_antichain(adj: list[int], match_right: list[int]) -> list[int]:
    """Indices ``x`` with left copy reachable by alternating paths and right copy not."""
    m = len(adj)
    matched_left = {u for u in match_right if u >= 0}
    z_left = 0
    z_right = 0
    stack = [u for u in range(m) if u not in matched_left]
    for u in stack:
        z_left |= 1 << u
    while stack:
        u = stack.pop()
        for v in iter_bits(adj[u] & ~z_right):
            z_right |= 1 << v
            w = match_right[v]
            if w >= 0 and not z_left >> w & 1:
                z_left |= 1 << w
                stack.append(w)
    return [x for x in range(m) if z_left >> x & 1 and not z_right >> x & 1]


def _reps_in(q: QuasiOrder, mask: int) -> list[int]:
    """One representative (the least member) per equivalence class meeting ``mask``."""
    rows = q.rows
    reps = []
    covered = 0
    for v in iter_bits(mask):
        if covered >> v & 1:
            continue
        cls = 0
        for u in iter_bits(mask & rows[v]):
            if rows[u] >> v & 1:
                cls |= 1 << u
        covered |= cls
        reps.append(v)
    return reps


def _width_on(q: QuasiOrder, mask: int) -> int:
    reps = _reps_in(q, mask)
    adj = _strict_adjacency(q.rows, reps)
    matched = sum(1 for u in _max_matching(adj) if u >= 0)
    return len(reps) - matched


def width(q: QuasiOrder) -> int:
    return _width_on(q, (1 << q.n) - 1)


def konig_antichain(q: QuasiOrder) -> frozenset[int]:
    """A maximum antichain read off the matching's dual vertex cover (not canonicalised)."""
    quo = quotient(q)
    reps = [min(c) for c in quo.classes]
    adj = _strict_adjacency(q.rows, reps)
    return frozenset(reps[x] for x in _konig_antichain(adj, _max_matching(adj)))


def least_antichain(q: QuasiOrder, size: int) -> frozenset[int] | None:
    """Lexicographically least antichain with ``size`` members, or None.

    Greedy: commit to the smallest vertex that still admits a completion among
    larger, incomparable vertices; each test is a width computation.
    """
    if size == 0:
        return frozenset()
    n = q.n
    comp = [q.rows[v] | q.column(v) for v in range(n)]
    chosen: list[int] = []
    allowed = (1 << n) - 1
    start = 0
    while len(chosen) < size:
        need = size - len(chosen) - 1
        for v in range(start, n):
            if not allowed >> v & 1:
                continue
            rest = allowed & ~comp[v] & ~((1 << (v + 1)) - 1)
            if need == 0 or (bin(rest).count("1") >= need and _width_on(q, rest) >= need):
                chosen.append(v)
                allowed = rest
                start = v + 1
                break
        else:
            return None
    return frozenset(chosen)


def width_and_antichain(q: QuasiOrder) -> tuple[int, frozenset[int]]:
    """Width together with the lexicographically least maximum antichain."""
    w_cover = len(min_chain_cover(q))
    witness = konig_antichain(q)
    assert len(witness) == w_cover and is_antichain(q, witness)
    least = least_antichain(q, w_cover)
    assert least is not None
    return w_cover, least


def min_chain_cover(q: QuasiOrder) -> ChainCover:
    """Minimum path cover of the quotient's transitive DAG, classes expanded back."""
    quo = quotient(q)
    reps = [min(c) for c in quo.classes]
    adj = _strict_adjacency(q.rows, reps)
    match_right = _max_matching(adj)
    succ = [-1] * len(reps)
    for v, u in enumerate(match_right):
        if u >= 0:
            succ[u] = v
    chains = []
    for start in range(len(reps)):
        if match_right[start] >= 0:
            continue
        members: set[int] = set()
        c = start
        while c >= 0:
            members |= quo.classes[c]
            c = succ[c]
        chains.append(frozenset(members))
    chains.sort(key=min)
    return ChainCover(tuple(chains))


def iter_antichains(q: QuasiOrder, k: int, budget: Budget | int | None = None) -> Iterator[frozenset[int]]:
    """Antichains of size ``k`` in lexicographic order."""
    budget = as_budget(budget)
    n = q.n
    comp = [q.rows[v] | q.column(v) for v in range(n)]
    chosen: list[int] = []

    def extend(start: int, allowed: int) -> Iterator[frozenset[int]]:
        budget.tick()
        if len(chosen) == k:
            yield frozenset(chosen)
            return
        need = k - len(chosen)
        for v in range(start, n):
            if n - v < need:
                break
            if not allowed >> v & 1:
                continue
            chosen.append(v)
            yield from extend(v + 1, allowed & ~comp[v])
            chosen.pop()

    if k < 0:
        return
    yield from extend(0, (1 << n) - 1)


def enumerate_antichains(q: QuasiOrder, k: int, budget: Budget | int | None = None) -> list[frozenset[int]]:
    return list(iter_antichains(q, k, budget))


def has_antichain(q: QuasiOrder, k: int, budget: Budget | int | None = None) -> bool:
    return next(iter_antichains(q, k, budget), None) is not None


def dichotomy(q: QuasiOrder, k: int) -> DichotomyResult:
    """Either k chains covering the ground set or an antichain of k+1 points."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    if width(q) <= k:
        from .procedures import paper_chain_cover

        chains = list(paper_chain_cover(q).cover.chains)
        chains += [frozenset()] * (k - len(chains))
        return DichotomyResult(k, cover=ChainCover(tuple(chains)))
    return DichotomyResult(k, antichain=least_antichain(q, k + 1))

