from itertools import product

import pytest

from spgkit.core import canonical_form
from spgkit.errors import DuplicateVertex, InvalidParams, InvalidSpg, NotSimple
from spgkit.generators import from_incidence, gen_hypercube, gen_simplex, incidence_matrix
from spgkit.metrics import diameter
from spgkit.properties import check_all


def cube_incidence(d):
    """Vertex-facet incidence of [-1, 1]^d from coordinates; facet 2i is x_i = -1, 2i+1 is x_i = +1."""
    rows = []
    for x in product((-1, 1), repeat=d):
        row = []
        for i in range(d):
            row += [x[i] == -1, x[i] == 1]
        rows.append(row)
    return rows


def test_square_labels():
    g = gen_hypercube(2)
    assert sorted(g.family) == [(1, 2), (1, 4), (2, 3), (3, 4)]
    assert len(g.edges) == 4 and diameter(g) == 2


def test_segment_and_cube():
    g = gen_hypercube(1)
    assert len(g.classes) == 2 and g.edges == {(0, 1)}
    g = gen_hypercube(3)
    assert (len(g.classes), len(g.edges), diameter(g)) == (8, 12, 3)


@pytest.mark.parametrize("d", range(1, 9))
def test_hypercube_is_hirsch_tight(d):
    g = gen_hypercube(d)
    assert diameter(g) == d == g.n - d
    assert all(r.holds for r in check_all(g))


@pytest.mark.parametrize("d", range(1, 7))
def test_simplex(d):
    g = gen_simplex(d)
    assert len(g.classes) == d + 1
    assert len(g.edges) == (d + 1) * d // 2
    assert diameter(g) == 1
    assert all(r.holds for r in check_all(g))


@pytest.mark.parametrize("d", [2, 3, 4])
def test_cube_from_coordinates(d):
    g = from_incidence(d, cube_incidence(d))
    assert canonical_form(g) == canonical_form(gen_hypercube(d))


def test_simplex_from_incidence():
    for d in range(1, 6):
        rows = [[f != v for f in range(d + 1)] for v in range(d + 1)]
        assert canonical_form(from_incidence(d, rows)) == canonical_form(gen_simplex(d))


def test_involution():
    for d in range(1, 5):
        g = gen_hypercube(d)
        assert from_incidence(d, incidence_matrix(g)) == g


def test_pyramid_is_not_simple():
    # square pyramid: base facet 5, side facets 1..4, apex on all sides
    base = [[i == j or (i + 1) % 4 == j or j == 4 for j in range(5)] for i in range(4)]
    apex = [True, True, True, True, False]
    with pytest.raises(NotSimple):
        from_incidence(3, base + [apex])


def test_incidence_errors():
    rows = cube_incidence(2)
    with pytest.raises(DuplicateVertex):
        from_incidence(2, rows + [rows[0]])
    # two opposite vertices of a square share no facet
    with pytest.raises(InvalidSpg):
        from_incidence(2, [rows[0], rows[3]])
    with pytest.raises(InvalidParams):
        gen_hypercube(0)
    with pytest.raises(InvalidParams):
        gen_simplex(0)
