"""Canonical SPG instances: cubes, simplices, and simple polytopes given by incidences."""

from __future__ import annotations

from itertools import combinations, product

from .core import DSet, GraphLike, Spg, build_spg, dset
from .errors import DuplicateVertex, InvalidParams, NotSimple


def _ridge_edges(dsets: list[DSet], d: int) -> list[tuple[int, int]]:
    """Index pairs of d-sets sharing exactly d - 1 symbols."""
    by_ridge: dict[DSet, list[int]] = {}
    for i, a in enumerate(dsets):
        for r in combinations(a, d - 1):
            by_ridge.setdefault(r, []).append(i)
    edges = set()
    for members in by_ridge.values():
        edges.update(combinations(sorted(members), 2))
    return sorted(edges)


def _singleton_spg(d: int, n: int, dsets: list[DSet]) -> Spg:
    dsets = sorted(dsets)
    classes = {i: [a] for i, a in enumerate(dsets)}
    return build_spg(d, n, classes, _ridge_edges(dsets, d))


def gen_hypercube(d: int) -> Spg:
    """The d-cube: facets i and i + d are opposite, one class per vertex.

    Class ids follow the lexicographic order of the vertices' facet sets.
    """
    if d < 1:
        raise InvalidParams("hypercube needs d >= 1")
    dsets = [dset(i + 1 + d * bit for i, bit in enumerate(bits)) for bits in product((0, 1), repeat=d)]
    return _singleton_spg(d, 2 * d, dsets)


def gen_simplex(d: int) -> Spg:
    """The d-simplex: every d-subset of 1..d+1, pairwise adjacent."""
    if d < 1:
        raise InvalidParams("simplex needs d >= 1")
    return _singleton_spg(d, d + 1, [tuple(a) for a in combinations(range(1, d + 2), d)])


def from_incidence(d: int, incidence) -> Spg:
    """SPG of a simple polytope from its vertex-by-facet incidence matrix.

    Each polytope vertex becomes a singleton class holding its facet d-set;
    classes sharing d - 1 facets are joined.
    """
    if d < 1:
        raise InvalidParams("d must be >= 1")
    rows = [list(r) for r in incidence]
    n = len(rows[0]) if rows else 0
    seen: dict[DSet, int] = {}
    dsets = []
    for v, row in enumerate(rows):
        if len(row) != n:
            raise InvalidParams(f"incidence row {v} has {len(row)} entries, expected {n}")
        facets = tuple(f + 1 for f, on in enumerate(row) if on)
        if len(facets) != d:
            raise NotSimple(f"vertex {v} lies on {len(facets)} facets, expected {d}")
        if facets in seen:
            raise DuplicateVertex(f"vertices {seen[facets]} and {v} have the same facets {facets}")
        seen[facets] = v
        dsets.append(facets)
    return _singleton_spg(d, n, dsets)


def incidence_matrix(g: GraphLike) -> list[list[bool]]:
    """Inverse of :func:`from_incidence` for SPGs whose classes are singletons."""
    rows = []
    for c in g.classes:
        if len(c.dsets) != 1:
            raise InvalidParams(f"class {c.id} is not a singleton")
        (a,) = c.dsets
        rows.append([s in a for s in range(1, g.n + 1)])
    return rows
