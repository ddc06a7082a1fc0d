"""The four classical SPG properties, each reported with a minimal witness.

Witnesses are the lexicographically smallest failure (symbol sets and d-sets
compare as sorted tuples), so repeated checks return identical reports.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations

from .core import DSet, GraphLike


class Property(enum.Enum):
    DIMENSION_REDUCTION = "DimensionReduction"
    ADJACENCY = "Adjacency"
    STRONG_ADJACENCY = "StrongAdjacency"
    ENDPOINT_COUNT = "EndpointCount"


@dataclass(frozen=True)
class Witness:
    symbols: tuple[int, ...] | None = None
    dsets: tuple[DSet, DSet] | None = None
    classes: tuple[int, ...] | None = None

    def __str__(self) -> str:
        parts = []
        if self.symbols is not None:
            parts.append("F={" + ",".join(map(str, self.symbols)) + "}")
        if self.dsets is not None:
            parts.append("dsets=" + " ".join("{" + ",".join(map(str, a)) + "}" for a in self.dsets))
        if self.classes is not None:
            parts.append("classes=" + ",".join(map(str, self.classes)))
        return " ".join(parts)


@dataclass(frozen=True)
class PropertyReport:
    property: Property
    holds: bool
    witness: Witness | None = None

    def __post_init__(self):
        if self.holds != (self.witness is None):
            raise ValueError("a report holds exactly when it has no witness")

    def __bool__(self) -> bool:
        return self.holds


def _subset_groups(g: GraphLike, sizes) -> dict[tuple[int, ...], set[int]]:
    """Map each F (a subset of some member d-set, |F| in ``sizes``) to the classes that contain it."""
    groups: dict[tuple[int, ...], set[int]] = defaultdict(set)
    for c in g.classes:
        for a in c.dsets:
            for r in sizes:
                for F in combinations(a, r):
                    groups[F].add(c.id)
    return groups


def _induced_connected(g: GraphLike, ids: frozenset[int]) -> bool:
    start = min(ids)
    seen = {start}
    stack = [start]
    adj = g.neighbors
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y in ids and y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(ids)


def dimension_reduction_witness(g: GraphLike) -> tuple[tuple[int, ...], frozenset[int]] | None:
    """Smallest F (with its surviving classes) whose restriction is disconnected, else None."""
    groups = _subset_groups(g, range(g.d + 1))
    if not g.classes:
        return None
    groups[()] = set(g.ids)
    verdict: dict[frozenset[int], bool] = {}
    for F in sorted(groups):
        ids = frozenset(groups[F])
        if len(ids) < 2:
            continue
        ok = verdict.get(ids)
        if ok is None:
            ok = verdict[ids] = _induced_connected(g, ids)
        if not ok:
            return F, ids
    return None


def check_dimension_reduction(g: GraphLike) -> PropertyReport:
    """Every restriction to F with |F| <= d and a nonempty family must be connected.

    Only F that are subsets of member d-sets are examined; any other F has
    an empty family and holds vacuously.  F = {} covers connectivity of g.
    """
    found = dimension_reduction_witness(g)
    if found is None:
        return PropertyReport(Property.DIMENSION_REDUCTION, True)
    F, ids = found
    return PropertyReport(Property.DIMENSION_REDUCTION, False, Witness(symbols=F, classes=tuple(sorted(ids))))


def _ridge_groups(g: GraphLike) -> dict[tuple[int, ...], list[DSet]]:
    groups: dict[tuple[int, ...], list[DSet]] = defaultdict(list)
    for a in g.family:
        for R in combinations(a, g.d - 1):
            groups[R].append(a)
    return groups


def _adjacency_witness(g: GraphLike) -> Witness | None:
    owner = g.class_of
    worst = None
    for members in _ridge_groups(g).values():
        for a, b in combinations(sorted(members), 2):
            ca, cb = owner[a], owner[b]
            if ca != cb and not g.has_edge(ca, cb):
                if worst is None or (a, b) < worst:
                    worst = (a, b)
    if worst is None:
        return None
    a, b = worst
    return Witness(dsets=worst, classes=(owner[a], owner[b]))


def check_adjacency(g: GraphLike) -> PropertyReport:
    """d-sets sharing d-1 symbols must sit in the same or adjacent classes."""
    w = _adjacency_witness(g)
    return PropertyReport(Property.ADJACENCY, w is None, w)


def check_strong_adjacency(g: GraphLike, strict: bool = False) -> PropertyReport:
    """Adjacency, plus every edge is justified by two d-sets sharing d-1 symbols.

    With ``strict=True`` the justification is demanded for every pair of
    distinct classes, not only for edges.
    """
    w = _adjacency_witness(g)
    if w is not None:
        return PropertyReport(Property.STRONG_ADJACENCY, False, w)
    owner = g.class_of
    justified: set[tuple[int, int]] = set()
    for members in _ridge_groups(g).values():
        cids = sorted({owner[a] for a in members})
        justified.update(combinations(cids, 2))
    pairs = combinations(g.ids, 2) if strict else sorted(g.edges)
    for pair in pairs:
        if pair not in justified:
            return PropertyReport(Property.STRONG_ADJACENCY, False, Witness(classes=pair))
    return PropertyReport(Property.STRONG_ADJACENCY, True)


def check_endpoint_count(g: GraphLike) -> PropertyReport:
    """At most two classes may contain a d-set through any (d-1)-set F.

    For d = 1 the only F is the empty set, which every class contains.
    """
    groups = _subset_groups(g, (g.d - 1,))
    for F in sorted(groups):
        if len(groups[F]) > 2:
            return PropertyReport(
                Property.ENDPOINT_COUNT, False, Witness(symbols=F, classes=tuple(sorted(groups[F])))
            )
    return PropertyReport(Property.ENDPOINT_COUNT, True)


def check_all(g: GraphLike, strict: bool = False) -> list[PropertyReport]:
    return [
        check_dimension_reduction(g),
        check_adjacency(g),
        check_strong_adjacency(g, strict=strict),
        check_endpoint_count(g),
    ]
