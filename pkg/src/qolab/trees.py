"""Finite trees, the pruning derivative and rank, and finite Borel codes.

A Borel code pairs a finite tree on ``alpha x alpha`` (the pair ``(g, d)`` is
the index ``g * alpha + d``) with subsets of ``range(m)`` attached to the
off-tree frontier.  An internal node evaluates to the union over ``g`` of
the intersection over ``d`` of its children.  On a finite discrete space
every subset is clopen, so leaf sets are arbitrary.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import MalformedInput, MissingLeaf

Node = tuple[int, ...]


def node_to_text(node: Node) -> str:
    return ",".join(map(str, node)) if node else "-"


def node_from_text(text: str, lineno: int | None = None) -> Node:
    text = text.strip()
    if text == "-":
        return ()
    try:
        node = tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise MalformedInput(f"bad tree node {text!r}", lineno) from None
    if any(i < 0 for i in node):
        raise MalformedInput(f"negative index in {text!r}", lineno)
    return node


@dataclass(frozen=True)
class FiniteTree:
    index_size: int
    nodes: frozenset[Node]

    def __post_init__(self):
        for t in self.nodes:
            if any(not 0 <= i < self.index_size for i in t):
                raise ValueError(f"node {t} uses an index outside range({self.index_size})")
            if t and t[:-1] not in self.nodes:
                raise ValueError(f"node {t} is in the tree but its parent {t[:-1]} is not")

    @classmethod
    def of(cls, index_size: int, nodes: Iterable[Iterable[int]]) -> FiniteTree:
        return cls(index_size, frozenset(tuple(t) for t in nodes))

    def __contains__(self, t) -> bool:
        return tuple(t) in self.nodes

    def __len__(self) -> int:
        return len(self.nodes)

    def children(self, t: Node) -> list[Node]:
        return [t + (i,) for i in range(self.index_size) if t + (i,) in self.nodes]

    def to_text(self) -> str:
        return "".join(node_to_text(t) + "\n" for t in sorted(self.nodes, key=lambda t: (len(t), t)))


def parse_tree(text: str, index_size: int | None = None) -> FiniteTree:
    nodes = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        nodes.append(node_from_text(line, lineno))
    if index_size is None:
        index_size = 1 + max((i for t in nodes for i in t), default=-1)
    try:
        return FiniteTree.of(index_size, nodes)
    except ValueError as exc:
        raise MalformedInput(str(exc)) from None


def pruning_derivative(t: FiniteTree) -> FiniteTree:
    """Nodes with at least one child."""
    return FiniteTree(t.index_size, frozenset(s[:-1] for s in t.nodes if s))


@dataclass(frozen=True)
class TreeRank:
    rho: int
    node_ranks: Mapping[Node, int]
    wf: bool


def derivative_iterates(t: FiniteTree) -> list[FiniteTree]:
    """``[T, dT, d^2 T, ...]`` up to and including the first repeat."""
    iterates = [t]
    while True:
        nxt = pruning_derivative(iterates[-1])
        iterates.append(nxt)
        if nxt.nodes == iterates[-2].nodes:
            return iterates


def pruning_rank(t: FiniteTree) -> TreeRank:
    iterates = derivative_iterates(t)
    rho = len(iterates) - 2
    ranks = {}
    for beta, tree in enumerate(iterates[: rho + 1]):
        for node in tree.nodes:
            ranks[node] = beta
    fixed = iterates[rho]
    if fixed.nodes:
        # nodes in the perfect kernel lie in every iterate; no largest stage exists
        for node in fixed.nodes:
            ranks.pop(node, None)
    return TreeRank(rho, ranks, not fixed.nodes)


# Borel codes


def frontier(tree: FiniteTree) -> list[Node]:
    """Off-tree sequences whose parent is in the tree (just the empty sequence if the tree is empty)."""
    if not tree.nodes:
        return [()]
    out = []
    for t in sorted(tree.nodes, key=lambda t: (len(t), t)):
        for i in range(tree.index_size):
            child = t + (i,)
            if child not in tree.nodes:
                out.append(child)
    return out


@dataclass(frozen=True)
class BorelCode:
    alpha: int
    tree: FiniteTree
    leaves: Mapping[Node, frozenset[int]]
    m: int
    dual: bool = field(default=False)

    def __post_init__(self):
        if self.alpha < 1:
            raise ValueError("alpha must be positive")
        if self.tree.index_size != self.alpha * self.alpha:
            raise ValueError(f"tree must be on {self.alpha}x{self.alpha} = {self.alpha ** 2} indices")
        for node, members in self.leaves.items():
            if node in self.tree.nodes:
                raise ValueError(f"leaf set given for tree node {node}")
            if any(not 0 <= x < self.m for x in members):
                raise ValueError(f"leaf {node} has members outside range({self.m})")

    def pair(self, index: int) -> tuple[int, int]:
        return divmod(index, self.alpha)

    def missing_leaves(self) -> list[Node]:
        return [t for t in frontier(self.tree) if t not in self.leaves]

    def to_json(self) -> dict:
        out = {
            "alpha": self.alpha,
            "m": self.m,
            "tree": [node_to_text(t) for t in sorted(self.tree.nodes, key=lambda t: (len(t), t))],
            "leaves": {
                node_to_text(t): sorted(self.leaves[t])
                for t in sorted(self.leaves, key=lambda t: (len(t), t))
            },
        }
        if self.dual:
            out["dual"] = True
        return out


def _node_from_json(item) -> Node:
    if isinstance(item, str):
        return node_from_text(item)
    return tuple(int(i) for i in item)


def code_from_json(data: dict) -> BorelCode:
    try:
        alpha = int(data["alpha"])
        m = int(data["m"])
        tree = FiniteTree.of(alpha * alpha, (_node_from_json(t) for t in data["tree"]))
        leaves = {_node_from_json(k): frozenset(int(x) for x in v) for k, v in data["leaves"].items()}
        return BorelCode(alpha, tree, leaves, m, bool(data.get("dual", False)))
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInput(f"bad Borel code: {exc}") from None


def parse_code(text: str) -> BorelCode:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(data, dict):
        raise MalformedInput("Borel code must be a JSON object")
    return code_from_json(data)


def _combine(code: BorelCode, values: list[frozenset[int]]) -> frozenset[int]:
    a = code.alpha
    rows = [values[g * a:(g + 1) * a] for g in range(a)]
    if code.dual:
        inner = [frozenset().union(*row) for row in rows]
        return frozenset.intersection(*inner)
    inner = [frozenset.intersection(*row) for row in rows]
    return frozenset().union(*inner)


def eval_borel_code(code: BorelCode) -> frozenset[int]:
    memo: dict[Node, frozenset[int]] = {}
    tree = code.tree.nodes
    k = code.alpha * code.alpha

    def ev(t: Node) -> frozenset[int]:
        if t in memo:
            return memo[t]
        if t not in tree:
            if t not in code.leaves:
                raise MissingLeaf(t)
            value = code.leaves[t]
        else:
            value = _combine(code, [ev(t + (i,)) for i in range(k)])
        memo[t] = value
        return value

    return ev(())


def eval_staged(code: BorelCode) -> frozenset[int]:
    """Materialise ``f^(0), f^(1), ..., f^(rho)`` stage by stage and read off the root."""
    rank = pruning_rank(code.tree)
    k = code.alpha * code.alpha
    stage: dict[Node, frozenset[int]] = {}
    for t in frontier(code.tree):
        if t not in code.leaves:
            raise MissingLeaf(t)
        stage[t] = code.leaves[t]
    by_rank: dict[int, list[Node]] = {}
    for node, r in rank.node_ranks.items():
        by_rank.setdefault(r, []).append(node)
    for beta in range(rank.rho):
        nxt = dict(stage)
        for t in by_rank.get(beta, []):
            nxt[t] = _combine(code, [stage[t + (i,)] for i in range(k)])
        stage = nxt
    return stage[()]


def complement_code(code: BorelCode) -> BorelCode:
    """Complement every leaf and swap the union/intersection roles."""
    full = frozenset(range(code.m))
    leaves = {t: full - s for t, s in code.leaves.items()}
    return BorelCode(code.alpha, code.tree, leaves, code.m, not code.dual)


def random_tree(rng: random.Random, index_size: int, depth: int, p: float = 0.3) -> FiniteTree:
    if rng.random() < 0.1:
        return FiniteTree(index_size, frozenset())
    nodes = {()}
    layer = [()]
    for _ in range(depth):
        nxt = [t + (i,) for t in layer for i in range(index_size) if rng.random() < p]
        nodes.update(nxt)
        layer = nxt
    return FiniteTree(index_size, frozenset(nodes))


def random_code(rng: random.Random, max_alpha: int = 3, max_depth: int = 3, max_m: int = 6) -> BorelCode:
    alpha = rng.randint(1, max_alpha)
    m = rng.randint(1, max_m)
    tree = random_tree(rng, alpha * alpha, rng.randint(0, max_depth))
    leaves = {t: frozenset(x for x in range(m) if rng.random() < 0.5) for t in frontier(tree)}
    return BorelCode(alpha, tree, leaves, m)
