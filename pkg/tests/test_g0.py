import itertools

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qolab.errors import BudgetExceeded, MalformedInput
from qolab.g0 import (
    DenseSequences,
    components,
    dense_sequences,
    g0_level,
    hom_search,
    length_lex,
    length_lex_index,
    level_stats,
    parse_sequences,
    two_coloring,
)
from qolab.relation import complete_graph

from .conftest import graphs

K2 = complete_graph(2)


def string_edges(N, seqs):
    """Edges straight from the word formula, as pairs of binary strings."""
    out = set()
    for n in range(N):
        for i in "01":
            for tail in itertools.product("01", repeat=N - n - 1):
                c = "".join(tail)
                u = seqs[n] + i + c
                v = seqs[n] + ("1" if i == "0" else "0") + c
                out.add(frozenset((int(u, 2), int(v, 2))))
    return out


def test_dense_sequence_examples():
    assert dense_sequences(1).s == ("",)
    assert dense_sequences(2).s == ("", "0")
    assert dense_sequences(3).s == ("", "0", "10")
    assert dense_sequences(0).s == ()


def test_level_examples():
    assert g0_level(1).edges == ((0, 1),)
    assert sorted(g0_level(2).edges) == [(0, 1), (0, 2), (1, 3)]
    zero = g0_level(0)
    assert zero.n == 1 and zero.edges == ()


def test_hom_examples():
    assert hom_search(g0_level(2), K2) == [0, 1, 1, 0]
    assert hom_search(complete_graph(3), K2) is None


def test_hom_identity_on_complete_graphs():
    for n in range(1, 6):
        assert hom_search(complete_graph(n), complete_graph(n)) == list(range(n))


def test_length_lex_order():
    words = [length_lex(i) for i in range(15)]
    assert words[:7] == ["", "0", "1", "00", "01", "10", "11"]
    assert [length_lex_index(w) for w in words] == list(range(15))


def test_sequence_validation():
    with pytest.raises(ValueError):
        DenseSequences(2, ("", "01"))
    with pytest.raises(MalformedInput) as info:
        parse_sequences("-\n0\n1\n")
    assert info.value.line == 3
    assert parse_sequences(dense_sequences(5).to_text()) == dense_sequences(5)


def test_non_dense_sequences_detected():
    seqs = DenseSequences(3, ("", "0", "00"))
    assert seqs.first_gap() == "1" and not seqs.is_dense()


def test_level_limit():
    with pytest.raises(BudgetExceeded):
        g0_level(21)
    with pytest.raises(BudgetExceeded):
        g0_level(13).to_graph()


@pytest.mark.parametrize("N", range(0, 11))
def test_edges_match_word_formula(N):
    level = g0_level(N)
    assert {frozenset(e) for e in level.edges} == string_edges(N, dense_sequences(N).s)
    assert len(level.edges) == 2**N - 1


@pytest.mark.parametrize("N", range(1, 13))
def test_connected_tree_matches_networkx(N):
    level = g0_level(N)
    nxg = nx.Graph()
    nxg.add_nodes_from(range(level.n))
    nxg.add_edges_from(level.edges)
    stats = level_stats(level)
    assert stats["connected"] == nx.is_connected(nxg) is True
    assert stats["tree"] == nx.is_tree(nxg)
    assert stats["chi"] == 2 and nx.is_bipartite(nxg)
    assert len(set(components(level))) == 1


@pytest.mark.parametrize("N", range(0, 17))
def test_density(N):
    seqs = dense_sequences(N)
    assert seqs.is_dense()
    for t in (length_lex(i) for i in range(N)):
        assert any(w.startswith(t) for w in seqs.s)


def test_level_two_coloring_is_proper():
    level = g0_level(8)
    side = two_coloring(level)
    assert all(side[u] != side[v] for u, v in level.edges)


def brute_hom(g, h):
    for f in itertools.product(range(h.n), repeat=g.n):
        if all(h.related(f[u], f[v]) for u, v in g.edges()):
            return list(f)
    return None


@given(graphs(max_n=5), graphs(max_n=4))
def test_hom_search_matches_brute_force(g, h):
    assert hom_search(g, h) == brute_hom(g, h)


@given(graphs(max_n=7))
def test_hom_to_k2_iff_bipartite(g):
    nxg = nx.Graph()
    nxg.add_nodes_from(range(g.n))
    nxg.add_edges_from(g.edges())
    found = hom_search(g, K2)
    assert (found is not None) == nx.is_bipartite(nxg)
    if found is not None:
        assert all(found[u] != found[v] for u, v in g.edges())


@given(st.integers(1, 10))
def test_levels_map_to_k2(N):
    level = g0_level(N)
    f = hom_search(level, K2)
    assert f is not None and f[0] == 0
    assert all(f[u] != f[v] for u, v in level.edges)
