import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qolab.errors import IndexOutOfRange, InvalidRelation, MalformedInput
from qolab.relation import (
    FiniteRelation,
    Graph,
    QuasiOrder,
    all_graphs,
    all_quasi_orders,
    chain_order,
    derive,
    identity_order,
    interval,
    is_antisymmetric,
    is_quasi_order,
    parse_relation,
    quotient,
    random_quasi_order,
    section,
)

from .conftest import numpy_closure, quasi_orders


def test_parse_singleton():
    r = parse_relation("1\n1\n")
    assert r.n == 1 and r.adj == ((True,),)


def test_parse_identity():
    assert parse_relation("2\n10\n01\n") == identity_order(2)


def test_parse_fence(q4):
    assert q4.pairs() == [(0, 0), (0, 2), (1, 1), (1, 2), (1, 3), (2, 2), (3, 3)]


def test_parse_skips_comments_and_blank_lines():
    r = parse_relation("# a comment\n\n2\n# inside\n11\n01\n")
    assert r.pairs() == [(0, 0), (0, 1), (1, 1)]


def test_parse_empty_ground_set():
    assert parse_relation("0\n").n == 0


@pytest.mark.parametrize(
    "text, line",
    [
        ("2\n10\n0\n", 3),
        ("2\n10\n0a\n", 3),
        ("x\n", 1),
        ("2\n10\n", 2),
        ("1\n1\n1\n", 3),
        ("", 1),
    ],
)
def test_parse_errors_carry_line(text, line):
    with pytest.raises(MalformedInput) as info:
        parse_relation(text)
    assert info.value.line == line


@given(quasi_orders())
def test_serializer_round_trip(q):
    assert parse_relation(q.to_text(comment="x\ny")) == q


def test_is_quasi_order_examples(q4):
    assert is_quasi_order(q4)
    assert is_quasi_order(identity_order(2))
    verdict = is_quasi_order(parse_relation("2\n01\n01\n"))
    assert not verdict and verdict.witness == (0,)


def test_transitivity_witness():
    verdict = is_quasi_order(FiniteRelation.from_pairs(3, [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)]))
    assert verdict.witness == (0, 1, 2)


def test_quasi_order_constructor_rejects():
    with pytest.raises(InvalidRelation):
        QuasiOrder(2, [0b01, 0b00])


def test_graph_validation():
    with pytest.raises(InvalidRelation):
        Graph(2, [0b10, 0b00])
    with pytest.raises(InvalidRelation):
        Graph(1, [0b1])


def test_derive_fence(q4):
    perp = derive(q4, "incomparable")
    assert isinstance(perp, Graph)
    assert perp.edges() == [(0, 1), (0, 3), (2, 3)]
    assert derive(q4, "strict").pairs() == [(0, 2), (1, 2), (1, 3)]


def test_derive_identity_equivalence():
    assert derive(identity_order(3), "equivalence") == identity_order(3)


def test_derive_unknown_kind(q4):
    with pytest.raises(ValueError):
        derive(q4, "cover")


@given(quasi_orders())
def test_derived_relations_decompose(q):
    comp = set(derive(q, "comparable").pairs())
    eq = set(derive(q, "equivalence").pairs())
    strict = set(derive(q, "strict").pairs())
    assert comp == eq | strict | {(j, i) for i, j in strict}
    perp = set(derive(q, "incomparable").pairs())
    off = {(i, j) for i in range(q.n) for j in range(q.n) if i != j}
    assert perp == off - comp


def test_quotient_examples(q4):
    quo = quotient(q4)
    assert quo.classes == tuple(frozenset({v}) for v in range(4))
    assert quo.order == q4
    both = QuasiOrder(2, [0b11, 0b11])
    assert len(quotient(both).classes) == 1
    ident = quotient(identity_order(3))
    assert len(ident.classes) == 3 and ident.order == identity_order(3)


@given(quasi_orders())
def test_quotient_invariants(q):
    quo = quotient(q)
    for u, v in itertools.product(range(q.n), repeat=2):
        same = q.related(u, v) and q.related(v, u)
        assert same == (quo.class_of[u] == quo.class_of[v])
        assert q.related(u, v) == quo.order.related(quo.class_of[u], quo.class_of[v])
    assert is_antisymmetric(quo.order)
    assert sorted(v for c in quo.classes for v in c) == list(range(q.n))


def test_interval_examples(q4):
    assert interval(q4, 1, 2) == {1, 2}
    assert interval(q4, 1, 2, "open_closed") == {2}
    assert interval(q4, 2, 1) == set()
    with pytest.raises(IndexOutOfRange):
        interval(q4, 0, 4)


def test_section_examples(q4):
    assert section(q4, 1, "vertical") == {1, 2, 3}
    assert section(q4, 2, "horizontal") == {0, 1, 2}
    assert section(identity_order(2), 0, "vertical") == {0}
    with pytest.raises(IndexOutOfRange):
        section(q4, -1, "vertical")


@given(quasi_orders(), st.data())
def test_interval_is_intersection_of_sections(q, data):
    if q.n == 0:
        return
    x = data.draw(st.integers(0, q.n - 1))
    y = data.draw(st.integers(0, q.n - 1))
    assert interval(q, x, y) == section(q, x, "vertical") & section(q, y, "horizontal")


def test_random_quasi_order_examples():
    assert random_quasi_order(0, 0.5, 1).n == 0
    assert random_quasi_order(5, 0.0, 7) == identity_order(5)
    assert is_quasi_order(random_quasi_order(6, 0.4, 42))
    assert random_quasi_order(1, 1.0, 3) == chain_order(1)


@given(st.integers(0, 30), st.sampled_from([0.0, 0.2, 0.5, 1.0]), st.integers(0, 2**64 - 1))
def test_random_quasi_order_is_valid_and_deterministic(n, density, seed):
    q = random_quasi_order(n, density, seed)
    assert is_quasi_order(q)
    assert q == random_quasi_order(n, density, seed)
    assert all(len(c) <= 3 for c in quotient(q).classes)
    closed = numpy_closure(q.adj) if n else []
    assert n == 0 or QuasiOrder.from_matrix(closed) == q


def test_random_corpus_has_nontrivial_classes():
    merged = sum(
        1 for seed in range(200) if len(quotient(random_quasi_order(10, 0.4, seed)).classes) < 10
    )
    assert merged > 10


def test_labelled_quasi_order_counts():
    # labelled preorders on n points: 1, 1, 4, 29, 355
    assert [sum(1 for _ in all_quasi_orders(n)) for n in range(5)] == [1, 1, 4, 29, 355]


def test_labelled_graph_counts():
    assert [sum(1 for _ in all_graphs(n)) for n in range(5)] == [1, 1, 2, 8, 64]


def test_induced_relabels(q4):
    sub, labels = q4.induced([1, 3])
    assert labels == [1, 3] and sub == chain_order(2)
    assert isinstance(sub, QuasiOrder)
