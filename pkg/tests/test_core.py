from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import dr_spgs, spgs
from spgkit.core import (
    RestrictedGraph,
    Spg,
    VertexClass,
    build_spg,
    canonical_form,
    dset,
    normalize,
    reduce_dimension,
    relabel_symbols,
    restrict,
)
from spgkit.errors import (
    DimensionUnderflow,
    DisconnectedRestriction,
    EmptyRestriction,
    InvalidParams,
    InvalidSpg,
)
from spgkit.generators import gen_hypercube, gen_simplex


def kinds(exc):
    return [v.kind for v in exc.value.violations]


def test_triangle_is_valid(triangle):
    assert isinstance(triangle, Spg)
    assert triangle.family == {(1, 2), (1, 3), (2, 3)}
    assert triangle.is_connected()


def test_classes_accept_vertex_class_objects():
    g = build_spg(2, 3, [VertexClass(5, frozenset({(1, 2)})), VertexClass(9, frozenset({(2, 3)}))], [(9, 5)])
    assert g.ids == (5, 9)
    assert g.edges == {(5, 9)}


def test_overlapping_classes_reported_with_witness():
    with pytest.raises(InvalidSpg) as exc:
        build_spg(2, 4, {0: [(1, 2)], 1: [(1, 2), (3, 4)]}, [(0, 1)])
    (v,) = exc.value.violations
    assert v.kind == "OverlappingClasses"
    assert v.detail == ((1, 2), 0, 1)


def test_disconnected_reports_components():
    with pytest.raises(InvalidSpg) as exc:
        build_spg(2, 4, {0: [(1, 2)], 1: [(3, 4)]}, [])
    (v,) = exc.value.violations
    assert v.kind == "Disconnected"
    assert v.detail == (frozenset({0}), frozenset({1}))


def test_all_violations_listed_together():
    with pytest.raises(InvalidSpg) as exc:
        build_spg(2, 3, {0: [(1, 2, 3)], 1: [(1, 5)], 2: [], 3: [(2, 3)]}, [(3, 3), (3, 7)])
    assert sorted(kinds(exc)) == sorted(
        ["WrongArity", "SymbolOutOfRange", "EmptyClass", "BadEdge", "BadEdge", "Disconnected"]
    )


def test_repeated_symbol_is_wrong_arity():
    with pytest.raises(InvalidSpg) as exc:
        build_spg(2, 3, {0: [(1, 1)]})
    assert kinds(exc) == ["WrongArity"]


@pytest.mark.parametrize("d,n", [(0, 3), (3, 2)])
def test_bad_params(d, n):
    with pytest.raises(InvalidParams):
        build_spg(d, n, {0: []})


@settings(max_examples=150, deadline=None)
@given(
    d=st.integers(1, 3),
    n=st.integers(3, 5),
    raw=st.dictionaries(
        st.integers(0, 4),
        st.lists(st.lists(st.integers(0, 6), min_size=1, max_size=4), max_size=3),
        max_size=4,
    ),
    edges=st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5)), max_size=6),
)
def test_build_spg_is_total(d, n, raw, edges):
    try:
        g = build_spg(d, n, raw, edges)
    except InvalidSpg as exc:
        assert exc.violations
        return
    assert g.is_connected()
    assert all(len(a) == d and 1 <= a[0] and a[-1] <= n for a in g.family)
    assert sum(len(c.dsets) for c in g.classes) == len(g.family)


def test_restrict_square_cycle(square_cycle):
    rg = restrict(square_cycle, {1})
    assert isinstance(rg, RestrictedGraph)
    assert {c.id: set(c.dsets) for c in rg.classes} == {0: {(1, 2)}, 3: {(1, 4)}}
    assert rg.edges == {(0, 3)}
    assert rg.origin == {1}


def test_restrict_empty_F_is_identity(square_cycle, cube3):
    for g in (square_cycle, cube3):
        rg = restrict(g, set())
        assert (rg.d, rg.n, rg.classes, rg.edges, rg.origin) == (g.d, g.n, g.classes, g.edges, frozenset())


def test_restrict_to_nothing(square_cycle):
    rg = restrict(square_cycle, {1, 3})
    assert rg.classes == () and rg.edges == frozenset()


def test_restrict_rejects_foreign_symbols(square_cycle):
    with pytest.raises(InvalidParams):
        restrict(square_cycle, {9})


def test_reduce_cube_facet_is_square():
    red, relabel = reduce_dimension(restrict(gen_hypercube(3), {1}))
    assert (red.d, red.n, len(red.classes), len(red.edges)) == (2, 5, 4, 4)
    # symbol 4 (opposite of 1) no longer occurs; the facet is the square
    assert canonical_form(normalize(red)[0]) == canonical_form(gen_hypercube(2))
    assert relabel == {2: 1, 3: 2, 4: 3, 5: 4, 6: 5}


def test_reduce_triangle_vertex(triangle):
    red, relabel = reduce_dimension(restrict(triangle, {1}))
    assert relabel == {2: 1, 3: 2}
    assert red.d == 1 and red.n == 2
    assert {c.id: set(c.dsets) for c in red.classes} == {0: {(1,)}, 1: {(2,)}}
    assert red.edges == {(0, 1)}


def test_reduce_with_empty_F_is_identity(cube3):
    red, relabel = reduce_dimension(restrict(cube3, ()))
    assert relabel == {s: s for s in range(1, 7)}
    assert red == cube3


def test_reduce_errors(square_cycle, triangle):
    with pytest.raises(EmptyRestriction):
        reduce_dimension(restrict(square_cycle, {1, 3}))
    path = build_spg(2, 3, {0: [(1, 2)], 1: [(1, 3)], 2: [(2, 3)]}, [(0, 1), (1, 2)])
    with pytest.raises(DisconnectedRestriction):
        reduce_dimension(restrict(path, {2}))
    g = build_spg(1, 2, {0: [(1,)], 1: [(2,)]}, [(0, 1)])
    with pytest.raises(DimensionUnderflow):
        reduce_dimension(restrict(g, {1}))


def _as_tuple(rg):
    return ({c.id: c.dsets for c in rg.classes}, rg.edges, rg.origin)


@pytest.mark.parametrize(
    "g",
    [gen_hypercube(2), gen_hypercube(3), gen_simplex(3), gen_simplex(5)],
    ids=["cube2", "cube3", "simplex3", "simplex5"],
)
def test_restriction_composes(g):
    symbols = range(1, g.n + 1)
    for k in range(g.d + 1):
        for F in combinations(symbols, k):
            for k2 in range(g.d - k + 1):
                for F2 in combinations([s for s in symbols if s not in F], k2):
                    twice = restrict(restrict(g, F), F2)
                    once = restrict(g, set(F) | set(F2))
                    assert _as_tuple(twice) == _as_tuple(once)


@settings(max_examples=80, deadline=None)
@given(g=spgs(max_n=6))
def test_restriction_composes_random(g):
    for F in combinations(range(1, g.n + 1), min(2, g.d)):
        for s in range(1, g.n + 1):
            if s in F or len(F) + 1 > g.d:
                continue
            assert _as_tuple(restrict(restrict(g, F), {s})) == _as_tuple(restrict(g, set(F) | {s}))


@settings(max_examples=80, deadline=None)
@given(g=spgs(max_n=6))
def test_restriction_keeps_nonempty_intersections(g):
    F = {1}
    rg = restrict(g, F)
    expected = {c.id: frozenset(a for a in c.dsets if 1 in a) for c in g.classes}
    assert {c.id: c.dsets for c in rg.classes} == {i: ds for i, ds in expected.items() if ds}
    assert set(rg.ids) <= set(g.ids)


@settings(max_examples=80, deadline=None)
@given(g=dr_spgs(max_n=6), data=st.data())
def test_reduce_round_trip(g, data):
    A = data.draw(st.sampled_from(sorted(g.family)))
    k = data.draw(st.integers(0, g.d - 1))
    F = set(A[:k])
    rg = restrict(g, F)
    red, relabel = reduce_dimension(rg)
    back = {new: old for old, new in relabel.items()}
    rebuilt = {c.id: frozenset(dset([back[s] for s in a] + list(F)) for a in c.dsets) for c in red.classes}
    assert rebuilt == {c.id: c.dsets for c in rg.classes}
    assert red.edges == rg.edges


def test_relabel_and_canonical_form(cube3):
    perm = {1: 4, 2: 5, 3: 6, 4: 1, 5: 2, 6: 3}
    other = relabel_symbols(cube3, perm)
    assert other != cube3
    assert canonical_form(other) == canonical_form(cube3)
    assert canonical_form(gen_simplex(3)) != canonical_form(cube3)
