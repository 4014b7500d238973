"""Finite truncations of the G0 graph and a generic graph-homomorphism search.

Level ``N`` lives on binary words of length ``N``; the word ``b_0 ... b_{N-1}``
is vertex ``int(word, 2)`` (most significant bit first).  For each ``n < N``
the word ``s[n]`` is extended by a flipped bit and an arbitrary tail ``c``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Protocol, Sequence

from .errors import Budget, BudgetExceeded, MalformedInput, as_budget
from .relation import Graph, iter_bits

MAX_LEVEL = 20
MATRIX_LEVEL = 12


def length_lex(index: int) -> str:
    """The ``index``-th binary word in length-then-lexicographic order (0 -> '')."""
    length = (index + 1).bit_length() - 1
    value = index - ((1 << length) - 1)
    return format(value, f"0{length}b") if length else ""


def length_lex_index(word: str) -> int:
    return (1 << len(word)) - 1 + (int(word, 2) if word else 0)


@dataclass(frozen=True)
class DenseSequences:
    N: int
    s: tuple[str, ...]

    def __post_init__(self):
        if len(self.s) != self.N:
            raise ValueError(f"expected {self.N} words, got {len(self.s)}")
        for n, word in enumerate(self.s):
            if len(word) != n or set(word) - {"0", "1"}:
                raise ValueError(f"word {n} must be a binary string of length {n}, got {word!r}")

    def first_gap(self) -> str | None:
        """First word (length-lex index below N) that is not a prefix of any ``s[n]``."""
        for index in range(self.N):
            t = length_lex(index)
            if not any(word.startswith(t) for word in self.s):
                return t
        return None

    def is_dense(self) -> bool:
        return self.first_gap() is None

    def to_text(self) -> str:
        return "".join((w or "-") + "\n" for w in self.s)


def dense_sequences(N: int) -> DenseSequences:
    """Word ``n`` is the ``n``-th length-lex word padded with zeros to length ``n``."""
    if N < 0:
        raise ValueError("N must be non-negative")
    return DenseSequences(N, tuple(length_lex(n).ljust(n, "0") for n in range(N)))


def parse_sequences(text: str) -> DenseSequences:
    words = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        word = "" if line == "-" else line
        if set(word) - {"0", "1"}:
            raise MalformedInput(f"not a binary word: {line!r}", lineno)
        if len(word) != len(words):
            raise MalformedInput(f"word {len(words)} must have length {len(words)}", lineno)
        words.append(word)
    return DenseSequences(len(words), tuple(words))


class AdjacencyGraph(Protocol):
    n: int

    def neighbors(self, v: int) -> Sequence[int]: ...


@dataclass(frozen=True)
class G0Level:
    N: int
    sequences: DenseSequences
    edges: tuple[tuple[int, int], ...]

    @property
    def n(self) -> int:
        return 1 << self.N

    @cached_property
    def _adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for row in adj:
            row.sort()
        return adj

    def neighbors(self, v: int) -> list[int]:
        return self._adjacency[v]

    def word(self, v: int) -> str:
        return format(v, f"0{self.N}b") if self.N else ""

    def to_graph(self) -> Graph:
        if self.N > MATRIX_LEVEL:
            raise BudgetExceeded(f"dense matrix only built for N <= {MATRIX_LEVEL}")
        return Graph.from_edges(self.n, self.edges)


def g0_level(N: int, sequences: DenseSequences | None = None) -> G0Level:
    if N < 0:
        raise ValueError("N must be non-negative")
    if N > MAX_LEVEL:
        raise BudgetExceeded(f"level {N} has 2^{N} vertices; the limit is N <= {MAX_LEVEL}")
    seqs = sequences if sequences is not None else dense_sequences(N)
    if seqs.N < N:
        raise ValueError(f"need {N} words, got {seqs.N}")
    edges = []
    for n in range(N):
        prefix = int(seqs.s[n], 2) if n else 0
        tail = N - n - 1
        base = prefix << (N - n)
        for c in range(1 << tail):
            u = base | c
            edges.append((u, u | 1 << tail))
    edges.sort()
    return G0Level(N, DenseSequences(N, seqs.s[:N]), tuple(edges))


def components(g: AdjacencyGraph) -> list[int]:
    """Component label of every vertex (labels are the least vertex of each component)."""
    label = [-1] * g.n
    for root in range(g.n):
        if label[root] >= 0:
            continue
        label[root] = root
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for u in g.neighbors(v):
                if label[u] < 0:
                    label[u] = root
                    queue.append(u)
    return label


def two_coloring(g: AdjacencyGraph) -> list[int] | None:
    side = [-1] * g.n
    for root in range(g.n):
        if side[root] >= 0:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for u in g.neighbors(v):
                if side[u] < 0:
                    side[u] = 1 - side[v]
                    queue.append(u)
                elif side[u] == side[v]:
                    return None
    return side


def level_stats(level: G0Level) -> dict:
    comps = len(set(components(level)))
    bipartite = two_coloring(level) is not None
    edges = len(level.edges)
    if not bipartite:
        chi = None
    else:
        chi = 2 if edges else (1 if level.n else 0)
    return {
        "N": level.N,
        "vertices": level.n,
        "edges": edges,
        "components": comps,
        "connected": comps == 1,
        "tree": comps == 1 and edges == level.n - 1,
        "bipartite": bipartite,
        "chi": chi,
        "dense": level.sequences.is_dense(),
    }


def hom_search(g: AdjacencyGraph, h: Graph, budget: Budget | int | None = None) -> list[int] | None:
    """Lexicographically least edge-preserving map from ``g`` to ``h``, or None.

    Vertices of ``g`` are assigned in order with values tried in increasing
    order; arc consistency is maintained after every assignment, which only
    removes values that no completion can use, so the first solution found
    is still the least one.
    """
    budget = as_budget(budget)
    n = g.n
    if h.n > 64:
        raise ValueError("target graph is limited to 64 vertices")
    if n == 0:
        return []
    if h.n == 0:
        return None
    hrows = h.rows
    adj = [list(g.neighbors(v)) for v in range(n)]
    doms = [(1 << h.n) - 1] * n
    trail: list[tuple[int, int]] = []

    def support(mask: int) -> int:
        s = 0
        for a in iter_bits(mask):
            s |= hrows[a]
        return s

    def propagate(queue: deque) -> bool:
        while queue:
            v = queue.popleft()
            sup = support(doms[v])
            for u in adj[v]:
                nd = doms[u] & sup
                if nd != doms[u]:
                    if not nd:
                        return False
                    trail.append((u, doms[u]))
                    doms[u] = nd
                    queue.append(u)
        return True

    def undo(mark: int) -> None:
        while len(trail) > mark:
            u, old = trail.pop()
            doms[u] = old

    if not propagate(deque(range(n))):
        return None

    # frame: [vertex, trail mark, untried values]
    frames: list[list[int]] = []

    def try_next(frame: list[int]) -> bool:
        v, mark, remaining = frame
        while remaining:
            budget.tick()
            a = (remaining & -remaining).bit_length() - 1
            remaining &= remaining - 1
            undo(mark)
            trail.append((v, doms[v]))
            doms[v] = 1 << a
            if propagate(deque([v])):
                frame[2] = remaining
                return True
        undo(mark)
        frame[2] = 0
        return False

    v = 0
    while True:
        while v < n and doms[v] & (doms[v] - 1) == 0:
            v += 1
        if v == n:
            result = [d.bit_length() - 1 for d in doms]
            assert all(hrows[result[a]] >> result[b] & 1 for a in range(n) for b in adj[a])
            return result
        frame = [v, len(trail), doms[v]]
        frames.append(frame)
        while not try_next(frames[-1]):
            frames.pop()
            if not frames:
                return None
        v = frames[-1][0] + 1
