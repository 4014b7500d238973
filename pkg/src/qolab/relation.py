"""Finite binary relations, quasi-orders and graphs on {0, ..., n-1}.

Rows are stored as Python ints used as bitsets: bit ``j`` of ``rows[i]`` is
set iff ``i R j``.  That is the boolean adjacency matrix, packed.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import IndexOutOfRange, InvalidRelation, MalformedInput

DERIVED_KINDS = ("comparable", "equivalence", "incomparable", "strict")

MERGE_PROBABILITY = 0.1
MAX_CLASS_SIZE = 3


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_to_set(mask: int) -> frozenset[int]:
    return frozenset(iter_bits(mask))


def set_to_bits(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


class FiniteRelation:
    """An arbitrary binary relation on ``range(n)``; immutable."""

    __slots__ = ("_n", "_rows")

    def __init__(self, n: int, rows: Sequence[int] = ()):
        if n < 0:
            raise ValueError("n must be non-negative")
        rows = tuple(rows) if rows else (0,) * n
        if len(rows) != n:
            raise InvalidRelation(f"expected {n} rows, got {len(rows)}")
        full = (1 << n) - 1
        for i, r in enumerate(rows):
            if r < 0 or r & ~full:
                raise InvalidRelation(f"row {i} has columns outside range({n})")
        self._n = n
        self._rows = rows
        self._validate()

    def _validate(self) -> None:
        pass

    # construction helpers

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[object]]):
        n = len(matrix)
        rows = []
        for i, row in enumerate(matrix):
            if len(row) != n:
                raise InvalidRelation(f"row {i} has length {len(row)}, expected {n}")
            rows.append(set_to_bits(j for j, x in enumerate(row) if x))
        return cls(n, rows)

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]):
        rows = [0] * n
        for i, j in pairs:
            if not (0 <= i < n and 0 <= j < n):
                raise IndexOutOfRange(f"pair ({i}, {j}) outside range({n})")
            rows[i] |= 1 << j
        return cls(n, rows)

    # accessors

    @property
    def n(self) -> int:
        return self._n

    @property
    def rows(self) -> tuple[int, ...]:
        return self._rows

    @property
    def adj(self) -> tuple[tuple[bool, ...], ...]:
        return tuple(
            tuple(bool(r >> j & 1) for j in range(self._n)) for r in self._rows
        )

    def related(self, i: int, j: int) -> bool:
        return bool(self._rows[i] >> j & 1)

    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, r in enumerate(self._rows) for j in iter_bits(r)]

    def column(self, j: int) -> int:
        return set_to_bits(i for i, r in enumerate(self._rows) if r >> j & 1)

    def converse(self) -> FiniteRelation:
        return FiniteRelation(self._n, [self.column(j) for j in range(self._n)])

    def induced(self, vertices: Iterable[int]):
        """Restriction to ``vertices``, relabelled in increasing order.

        Returns ``(relation, labels)`` where ``labels[new] = old``.
        """
        labels = sorted(set(vertices))
        for v in labels:
            _check_vertex(self, v)
        rows = []
        for old in labels:
            r = self._rows[old]
            rows.append(set_to_bits(k for k, o in enumerate(labels) if r >> o & 1))
        return type(self)(len(labels), rows), labels

    def to_text(self, comment: str | None = None) -> str:
        lines = []
        if comment:
            lines.extend(f"# {c}" for c in comment.splitlines())
        lines.append(str(self._n))
        for r in self._rows:
            lines.append("".join("1" if r >> j & 1 else "0" for j in range(self._n)))
        return "\n".join(lines) + "\n"

    def __eq__(self, other):
        if not isinstance(other, FiniteRelation):
            return NotImplemented
        return self._n == other._n and self._rows == other._rows

    def __hash__(self):
        return hash((self._n, self._rows))

    def __repr__(self):
        body = "/".join(
            "".join("1" if r >> j & 1 else "0" for j in range(self._n)) for r in self._rows
        )
        return f"{type(self).__name__}({self._n}, {body or '-'})"


class QuasiOrder(FiniteRelation):
    """Reflexive, transitive relation."""

    __slots__ = ()

    def _validate(self) -> None:
        verdict = is_quasi_order(self)
        if not verdict:
            raise InvalidRelation(f"not a quasi-order: {verdict.reason}", verdict.witness)

    def comparable(self, i: int, j: int) -> bool:
        return bool((self._rows[i] >> j | self._rows[j] >> i) & 1)


class Graph(FiniteRelation):
    """Irreflexive, symmetric relation."""

    __slots__ = ()

    def _validate(self) -> None:
        for i, r in enumerate(self._rows):
            if r >> i & 1:
                raise InvalidRelation(f"graph has a loop at {i}", (i,))
            for j in iter_bits(r):
                if not self._rows[j] >> i & 1:
                    raise InvalidRelation(f"graph is not symmetric at ({i}, {j})", (i, j))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise IndexOutOfRange(f"edge ({u}, {v}) outside range({n})")
            if u == v:
                raise InvalidRelation(f"graph has a loop at {u}", (u,))
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows)

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, r in enumerate(self._rows) for j in iter_bits(r >> i + 1 << i + 1)]

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self._rows[v]))

    def degree(self, v: int) -> int:
        return bin(self._rows[v]).count("1")

    def is_independent(self, vertices: Iterable[int]) -> bool:
        mask = set_to_bits(vertices)
        return all(not (self._rows[v] & mask) for v in iter_bits(mask))

    def is_clique(self, vertices: Iterable[int]) -> bool:
        mask = set_to_bits(vertices)
        return all((self._rows[v] | 1 << v) & mask == mask for v in iter_bits(mask))


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, [full & ~(1 << i) for i in range(n)])


def _check_vertex(rel: FiniteRelation, v: int) -> None:
    if not 0 <= v < rel.n:
        raise IndexOutOfRange(f"vertex {v} outside range({rel.n})")


# validation


@dataclass(frozen=True)
class Verdict:
    ok: bool
    witness: tuple[int, ...] = ()
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def is_quasi_order(rel: FiniteRelation) -> Verdict:
    """Return an ``ok`` verdict, or the first witness against reflexivity or transitivity.

    A reflexivity witness is ``(i,)``; a transitivity witness is ``(i, j, k)``
    with ``i R j``, ``j R k`` and not ``i R k``.
    """
    rows = rel.rows
    for i in range(rel.n):
        if not rows[i] >> i & 1:
            return Verdict(False, (i,), f"{i} is not related to itself")
    for i in range(rel.n):
        for j in iter_bits(rows[i]):
            missing = rows[j] & ~rows[i]
            if missing:
                k = (missing & -missing).bit_length() - 1
                return Verdict(False, (i, j, k), f"{i}R{j} and {j}R{k} but not {i}R{k}")
    return Verdict(True)


def as_quasi_order(rel: FiniteRelation) -> QuasiOrder:
    if isinstance(rel, QuasiOrder):
        return rel
    return QuasiOrder(rel.n, rel.rows)


def as_graph(rel: FiniteRelation) -> Graph:
    if isinstance(rel, Graph):
        return rel
    return Graph(rel.n, rel.rows)


# the .qo / .gr text format


def parse_relation(text: str) -> FiniteRelation:
    """Parse ``.qo``/``.gr`` text into a plain relation.

    Lines starting with ``#`` and blank lines are skipped; the first
    remaining line is ``n`` followed by exactly ``n`` rows of ``n`` 0/1 chars.
    """
    n = None
    rows: list[int] = []
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if n is None:
            try:
                n = int(line)
            except ValueError:
                raise MalformedInput(f"expected the size n, got {line!r}", lineno) from None
            if n < 0:
                raise MalformedInput("size must be non-negative", lineno)
            continue
        if len(rows) == n:
            raise MalformedInput(f"more than {n} rows", lineno)
        if len(line) != n:
            raise MalformedInput(f"row has {len(line)} characters, expected {n}", lineno)
        bad = set(line) - {"0", "1"}
        if bad:
            raise MalformedInput(f"unexpected character {sorted(bad)[0]!r}", lineno)
        rows.append(set_to_bits(j for j, ch in enumerate(line) if ch == "1"))
    if n is None:
        raise MalformedInput("missing size line", last_line or 1)
    if len(rows) != n:
        raise MalformedInput(f"expected {n} rows, found {len(rows)}", last_line or 1)
    return FiniteRelation(n, rows)


def format_relation(rel: FiniteRelation, comment: str | None = None) -> str:
    return rel.to_text(comment)


def parse_quasi_order(text: str) -> QuasiOrder:
    return as_quasi_order(parse_relation(text))


def parse_graph(text: str) -> Graph:
    return as_graph(parse_relation(text))


# derived relations


def derive(q: QuasiOrder, kind: str) -> FiniteRelation:
    n = q.n
    rows = q.rows
    cols = [q.column(j) for j in range(n)]
    if kind == "comparable":
        return FiniteRelation(n, [rows[i] | cols[i] for i in range(n)])
    if kind == "equivalence":
        return FiniteRelation(n, [rows[i] & cols[i] for i in range(n)])
    if kind == "strict":
        return FiniteRelation(n, [rows[i] & ~cols[i] for i in range(n)])
    if kind == "incomparable":
        full = (1 << n) - 1
        return Graph(n, [full & ~(rows[i] | cols[i]) for i in range(n)])
    raise ValueError(f"unknown derived relation {kind!r}; expected one of {DERIVED_KINDS}")


def incomparability_graph(q: QuasiOrder) -> Graph:
    return derive(q, "incomparable")


@dataclass(frozen=True)
class QuotientPoset:
    classes: tuple[frozenset[int], ...]
    order: QuasiOrder
    class_of: tuple[int, ...]


def quotient(q: QuasiOrder) -> QuotientPoset:
    """Collapse the equivalence classes of ``q``; classes are numbered by least member."""
    n = q.n
    rows = q.rows
    class_of = [-1] * n
    classes: list[frozenset[int]] = []
    for v in range(n):
        if class_of[v] >= 0:
            continue
        members = rows[v] & q.column(v)
        for u in iter_bits(members):
            class_of[u] = len(classes)
        classes.append(bits_to_set(members))
    reps = [min(c) for c in classes]
    order_rows = [
        set_to_bits(b for b, rb in enumerate(reps) if rows[ra] >> rb & 1) for ra in reps
    ]
    order = QuasiOrder(len(classes), order_rows)
    return QuotientPoset(tuple(classes), order, tuple(class_of))


def is_antisymmetric(rel: FiniteRelation) -> bool:
    rows = rel.rows
    return all(not (rows[j] >> i & 1) for i in range(rel.n) for j in iter_bits(rows[i]) if i != j)


def interval(q: QuasiOrder, x: int, y: int, kind: str = "closed") -> frozenset[int]:
    _check_vertex(q, x)
    _check_vertex(q, y)
    closed = q.rows[x] & q.column(y)
    if kind == "closed":
        return bits_to_set(closed)
    if kind == "open_closed":
        cls = q.rows[x] & q.column(x)
        return bits_to_set(closed & ~cls)
    raise ValueError(f"unknown interval kind {kind!r}")


def section(r: FiniteRelation, v: int, side: str) -> frozenset[int]:
    """``vertical`` gives ``{y : v R y}``; ``horizontal`` gives ``{x : x R v}``."""
    _check_vertex(r, v)
    if side == "vertical":
        return bits_to_set(r.rows[v])
    if side == "horizontal":
        return bits_to_set(r.column(v))
    raise ValueError(f"unknown section side {side!r}")


def is_chain(q: QuasiOrder, vertices: Iterable[int]) -> bool:
    vs = list(vertices)
    return all(q.comparable(a, b) for a, b in itertools.combinations(vs, 2))


def is_antichain(q: QuasiOrder, vertices: Iterable[int]) -> bool:
    vs = list(vertices)
    if len(set(vs)) != len(vs):
        return False
    return all(not q.comparable(a, b) for a, b in itertools.combinations(vs, 2))


# generators


def transitive_closure(rows: Sequence[int]) -> list[int]:
    rows = list(rows)
    n = len(rows)
    for k in range(n):
        bit = 1 << k
        rk = rows[k]
        for i in range(n):
            if rows[i] & bit:
                rows[i] |= rk
    return rows


def _class_sizes_ok(rows: Sequence[int]) -> bool:
    n = len(rows)
    cols = [set_to_bits(i for i in range(n) if rows[i] >> j & 1) for j in range(n)]
    return all(bin(rows[v] & cols[v]).count("1") <= MAX_CLASS_SIZE for v in range(n))


def random_quasi_order(n: int, density: float, seed: int) -> QuasiOrder:
    """Deterministic random quasi-order.

    A random strict digraph along a shuffled linear extension is closed
    transitively and made reflexive; then a few comparable pairs are merged
    into equivalence classes of size at most ``MAX_CLASS_SIZE``.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    rng = random.Random(seed & 0xFFFFFFFFFFFFFFFF)
    order = list(range(n))
    rng.shuffle(order)
    rows = [0] * n
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < density:
                rows[order[a]] |= 1 << order[b]
    rows = transitive_closure(rows)
    rows = [r | 1 << i for i, r in enumerate(rows)]
    for v in range(n):
        if rng.random() >= MERGE_PROBABILITY:
            continue
        cols_v = set_to_bits(i for i in range(n) if rows[i] >> v & 1)
        partners = sorted(iter_bits((rows[v] | cols_v) & ~(rows[v] & cols_v)))
        if not partners:
            continue
        u = rng.choice(partners)
        trial = list(rows)
        trial[u] |= 1 << v
        trial[v] |= 1 << u
        trial = transitive_closure(trial)
        if _class_sizes_ok(trial):
            rows = trial
    return QuasiOrder(n, rows)


def random_graph(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed & 0xFFFFFFFFFFFFFFFF)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def all_quasi_orders(n: int) -> Iterator[QuasiOrder]:
    """Every labelled quasi-order on ``range(n)`` (355 of them for n = 4)."""
    if n > 5:
        raise ValueError("exhaustive enumeration is limited to n <= 5")
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    for bits in range(1 << len(off)):
        rows = [1 << i for i in range(n)]
        for t, (i, j) in enumerate(off):
            if bits >> t & 1:
                rows[i] |= 1 << j
        if all(rows[j] & ~rows[i] == 0 for i in range(n) for j in iter_bits(rows[i])):
            yield QuasiOrder(n, rows)


def all_graphs(n: int) -> Iterator[Graph]:
    pairs = list(itertools.combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        yield Graph.from_edges(n, [e for t, e in enumerate(pairs) if bits >> t & 1])


def identity_order(n: int) -> QuasiOrder:
    return QuasiOrder(n, [1 << i for i in range(n)])


def chain_order(n: int) -> QuasiOrder:
    full = (1 << n) - 1
    return QuasiOrder(n, [full & ~((1 << i) - 1) for i in range(n)])


FENCE_TEXT = "4\n1010\n0111\n0010\n0001\n"


def fence() -> QuasiOrder:
    """The four-point fence: 0 < 2, 1 < 2, 1 < 3."""
    return parse_quasi_order(FENCE_TEXT)
