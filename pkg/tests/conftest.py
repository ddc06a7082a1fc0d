from itertools import combinations

import pytest
from hypothesis import strategies as st

from spgkit.core import build_spg, restrict
from spgkit.generators import from_incidence, gen_hypercube, gen_simplex
from spgkit.properties import dimension_reduction_witness

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def square_cycle():
    return build_spg(2, 4, {0: [(1, 2)], 1: [(2, 3)], 2: [(3, 4)], 3: [(1, 4)]}, [(0, 1), (1, 2), (2, 3), (0, 3)])


@pytest.fixture
def triangle():
    return build_spg(2, 3, {0: [(1, 2)], 1: [(1, 3)], 2: [(2, 3)]}, [(0, 1), (0, 2), (1, 2)])


@pytest.fixture
def cube3():
    return gen_hypercube(3)


def prism(m):
    """Prism over an m-gon: a simple 3-polytope with m + 2 facets (top m+1, bottom m+2)."""
    rows = []
    for i in range(m):
        for cap in (m + 1, m + 2):
            row = [False] * (m + 2)
            row[i] = row[(i + 1) % m] = row[cap - 1] = True
            rows.append(row)
    return from_incidence(3, rows)


def merge_classes(g, a, b):
    classes = {c.id: list(c.dsets) for c in g.classes}
    classes[a] += classes.pop(b)
    edges = set()
    for x, y in g.edges:
        x, y = (a if x == b else x), (a if y == b else y)
        if x != y:
            edges.add((min(x, y), max(x, y)))
    return build_spg(g.d, g.n, classes, edges)


def add_edges(g, pairs):
    edges = set(g.edges) | {(min(a, b), max(a, b)) for a, b in pairs if a != b}
    return build_spg(g.d, g.n, {c.id: c.dsets for c in g.classes}, edges)


def make_dr(g):
    """Add edges until every restriction is connected (edge addition never breaks the property)."""
    while True:
        found = dimension_reduction_witness(g)
        if found is None:
            return g
        comps = restrict(g, found[0]).components()
        a = min(comps[0])
        b = min(min(c) for c in comps[1:])
        g = add_edges(g, [(a, b)])


@st.composite
def spgs(draw, max_d=3, max_n=6, max_family=10):
    d = draw(st.integers(1, max_d))
    n = draw(st.integers(d, max_n))
    universe = list(combinations(range(1, n + 1), d))
    family = draw(st.lists(st.sampled_from(universe), min_size=1, max_size=min(len(universe), max_family), unique=True))
    labels = draw(st.lists(st.integers(0, len(family) - 1), min_size=len(family), max_size=len(family)))
    classes: dict[int, list] = {}
    for a, lab in zip(family, labels):
        classes.setdefault(lab, []).append(a)
    ids = sorted(classes)
    edges = set()
    for i in range(1, len(ids)):
        j = draw(st.integers(0, i - 1))
        edges.add((ids[j], ids[i]))
    pairs = list(combinations(ids, 2))
    if pairs:
        edges |= set(draw(st.lists(st.sampled_from(pairs), max_size=len(pairs))))
    return build_spg(d, n, classes, edges)


@st.composite
def dr_spgs(draw, **kw):
    return make_dr(draw(spgs(**kw)))


__all__ = ["prism", "merge_classes", "add_edges", "make_dr", "spgs", "dr_spgs", "gen_simplex"]
