import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qolab.errors import MalformedInput, MissingLeaf
from qolab.trees import (
    BorelCode,
    FiniteTree,
    code_from_json,
    complement_code,
    derivative_iterates,
    eval_borel_code,
    eval_staged,
    frontier,
    parse_code,
    parse_tree,
    pruning_derivative,
    pruning_rank,
    random_code,
    random_tree,
)

PATH = FiniteTree.of(1, [(), (0,), (0, 0)])


def test_derivative_examples():
    assert pruning_derivative(PATH) == FiniteTree.of(1, [(), (0,)])
    assert pruning_derivative(FiniteTree.of(2, [])).nodes == frozenset()
    assert pruning_derivative(FiniteTree.of(2, [(), (0,), (1,)])).nodes == {()}


def test_rank_examples():
    r = pruning_rank(PATH)
    assert r.rho == 3 and r.wf
    assert dict(r.node_ranks) == {(0, 0): 0, (0,): 1, (): 2}
    empty = pruning_rank(FiniteTree.of(1, []))
    assert empty.rho == 0 and empty.wf
    root = pruning_rank(FiniteTree.of(1, [()]))
    assert root.rho == 1 and dict(root.node_ranks) == {(): 0}


def test_tree_must_be_prefix_closed():
    with pytest.raises(ValueError):
        FiniteTree.of(2, [(), (0, 1)])
    with pytest.raises(ValueError):
        FiniteTree.of(2, [(), (2,)])


def test_parse_tree():
    t = parse_tree("# tree\n-\n0\n0,0\n")
    assert t == PATH
    assert parse_tree(t.to_text(), 1) == t
    with pytest.raises(MalformedInput):
        parse_tree("-\n0,x\n")
    with pytest.raises(MalformedInput):
        parse_tree("0\n")


def test_eval_examples():
    empty = BorelCode(1, FiniteTree.of(1, []), {(): frozenset({0, 2})}, 3)
    assert eval_borel_code(empty) == {0, 2}
    leaves = {(0,): {0, 1}, (1,): {1, 2}, (2,): {0}, (3,): set()}
    code = BorelCode(2, FiniteTree.of(4, [()]), {k: frozenset(v) for k, v in leaves.items()}, 3)
    assert eval_borel_code(code) == {1}
    assert eval_staged(code) == {1}
    for s in [set(), {0}, {1, 3}]:
        single = BorelCode(1, FiniteTree.of(1, [()]), {(0,): frozenset(s)}, 4)
        assert eval_borel_code(single) == s


def test_missing_leaf():
    code = BorelCode(2, FiniteTree.of(4, [()]), {(0,): frozenset()}, 2)
    assert code.missing_leaves() == [(1,), (2,), (3,)]
    with pytest.raises(MissingLeaf) as info:
        eval_borel_code(code)
    assert info.value.node == (1,)
    with pytest.raises(MissingLeaf):
        eval_staged(code)


def test_code_validation():
    with pytest.raises(ValueError):
        BorelCode(2, FiniteTree.of(3, []), {}, 1)
    with pytest.raises(ValueError):
        BorelCode(1, FiniteTree.of(1, [()]), {(): frozenset()}, 1)
    with pytest.raises(ValueError):
        BorelCode(1, FiniteTree.of(1, []), {(): frozenset({5})}, 2)
    with pytest.raises(MalformedInput):
        parse_code("[1, 2]")
    with pytest.raises(MalformedInput):
        parse_code("{not json")
    with pytest.raises(MalformedInput):
        parse_code('{"alpha": 1}')


def reference_eval(data):
    """Direct recursion over the JSON form, independent of the library evaluators."""
    alpha = data["alpha"]
    tree = set(data["tree"])
    leaves = {k: set(v) for k, v in data["leaves"].items()}

    def key(node):
        return ",".join(map(str, node)) if node else "-"

    def ev(node):
        if key(node) not in tree:
            return leaves[key(node)]
        out = set()
        for g in range(alpha):
            inner = None
            for d in range(alpha):
                val = ev(node + (g * alpha + d,))
                inner = val if inner is None else inner & val
            out |= inner
        return out

    return ev(())


seeds = st.integers(0, 2**32)


@given(seeds)
def test_evaluators_agree(seed):
    code = random_code(random.Random(seed))
    memo = eval_borel_code(code)
    assert memo == eval_staged(code)
    assert memo == reference_eval(code.to_json())


@given(seeds)
def test_complement_code(seed):
    code = random_code(random.Random(seed))
    dual = complement_code(code)
    assert eval_borel_code(dual) == frozenset(range(code.m)) - eval_borel_code(code)
    assert eval_staged(dual) == eval_borel_code(dual)
    assert complement_code(dual) == code


@given(seeds)
def test_json_round_trip(seed):
    code = random_code(random.Random(seed))
    assert code_from_json(code.to_json()) == code
    assert parse_code(json.dumps(code.to_json())) == code


@given(seeds, st.integers(1, 4), st.integers(0, 4))
def test_rank_properties(seed, k, depth):
    t = random_tree(random.Random(seed), k, depth)
    d = pruning_derivative(t)
    assert d.nodes <= t.nodes
    FiniteTree(k, d.nodes)  # prefix-closed
    r = pruning_rank(t)
    assert r.wf and len(derivative_iterates(t)) == r.rho + 2
    assert set(r.node_ranks) == set(t.nodes)
    for node, rank in r.node_ranks.items():
        for child in t.children(node):
            assert r.node_ranks[child] < rank
        if not t.children(node):
            assert rank == 0


@given(seeds, st.integers(1, 3), st.integers(0, 3))
def test_frontier_is_off_tree_children(seed, k, depth):
    t = random_tree(random.Random(seed), k, depth)
    front = frontier(t)
    if not t.nodes:
        assert front == [()]
        return
    for node in front:
        assert node not in t and node[:-1] in t
    assert len(front) == len(t) * k - (len(t) - 1)
