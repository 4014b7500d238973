import itertools
import os

import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from qolab.relation import Graph, QuasiOrder, derive, fence

settings.register_profile("ci", settings(max_examples=300, deadline=None))
settings.register_profile("dev", settings(max_examples=60, deadline=None))
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "dev"))


@pytest.fixture
def q4():
    return fence()


@pytest.fixture
def q4_perp(q4):
    return derive(q4, "incomparable")


# independent oracles


def numpy_closure(matrix):
    """Reflexive-transitive closure by repeated boolean squaring."""
    r = np.array(matrix, dtype=bool) | np.eye(len(matrix), dtype=bool)
    while True:
        nxt = r | ((r.astype(np.int64) @ r.astype(np.int64)) > 0)
        if (nxt == r).all():
            return nxt
        r = nxt


def brute_antichains(q, k):
    return [
        set(c) for c in itertools.combinations(range(q.n), k)
        if all(not (q.related(a, b) or q.related(b, a)) for a, b in itertools.combinations(c, 2))
    ]


def brute_width(q):
    w = 0
    for k in range(q.n + 1):
        if brute_antichains(q, k):
            w = k
    return w


def brute_colorings(g, k):
    edges = g.edges()
    return [
        c for c in itertools.product(range(k), repeat=g.n)
        if all(c[u] != c[v] for u, v in edges)
    ]


def brute_chi(g):
    return next(k for k in range(g.n + 1) if brute_colorings(g, k))


@st.composite
def quasi_orders(draw, max_n=7):
    n = draw(st.integers(0, max_n))
    level = draw(st.integers(1, 6))
    cells = draw(st.lists(st.integers(0, 19), min_size=n * n, max_size=n * n))
    matrix = [[cells[i * n + j] < level for j in range(n)] for i in range(n)]
    closed = numpy_closure(matrix) if n else []
    return QuasiOrder.from_matrix(closed) if n else QuasiOrder(0)


@st.composite
def graphs(draw, max_n=7):
    n = draw(st.integers(0, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)
