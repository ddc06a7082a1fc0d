"""Subset partition graphs: construction, validation, restriction and reduction.

Symbols are the integers ``1..n``.  A d-set is a sorted tuple of ``d``
distinct symbols.  A subset partition graph (SPG) groups a family of d-sets
into disjoint nonempty classes and connects the classes by an undirected
simple graph.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import cached_property
from typing import Union

from .errors import (
    DimensionUnderflow,
    DisconnectedRestriction,
    EmptyRestriction,
    InvalidParams,
    InvalidSpg,
    UnknownId,
    Violation,
)

DSet = tuple[int, ...]
Edge = tuple[int, int]


def dset(symbols: Iterable[int]) -> DSet:
    """Canonical (sorted, deduplicated) form of a set of symbols."""
    return tuple(sorted(set(symbols)))


@dataclass(frozen=True)
class VertexClass:
    id: int
    dsets: frozenset[DSet]

    def symbols(self) -> frozenset[int]:
        return frozenset(s for a in self.dsets for s in a)


@dataclass(frozen=True)
class _Graph:
    d: int
    n: int
    classes: tuple[VertexClass, ...]
    edges: frozenset[Edge]

    @cached_property
    def ids(self) -> tuple[int, ...]:
        return tuple(c.id for c in self.classes)

    @cached_property
    def by_id(self) -> dict[int, VertexClass]:
        return {c.id: c for c in self.classes}

    @cached_property
    def neighbors(self) -> dict[int, tuple[int, ...]]:
        adj: dict[int, list[int]] = {i: [] for i in self.ids}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return {i: tuple(sorted(v)) for i, v in adj.items()}

    @cached_property
    def family(self) -> frozenset[DSet]:
        return frozenset(a for c in self.classes for a in c.dsets)

    @cached_property
    def class_of(self) -> dict[DSet, int]:
        return {a: c.id for c in self.classes for a in c.dsets}

    @cached_property
    def support(self) -> frozenset[int]:
        """Symbols that occur in at least one d-set of the family."""
        return frozenset(s for a in self.family for s in a)

    def dsets(self, cid: int) -> frozenset[DSet]:
        return self.cls(cid).dsets

    def cls(self, cid: int) -> VertexClass:
        try:
            return self.by_id[cid]
        except KeyError:
            raise UnknownId(cid) from None

    def has_edge(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.edges

    def components(self) -> list[frozenset[int]]:
        return _components(self.ids, self.neighbors)

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def __len__(self) -> int:
        return len(self.classes)


@dataclass(frozen=True)
class Spg(_Graph):
    """A validated, connected d-dimensional subset partition graph."""

    @property
    def origin(self) -> frozenset[int]:
        return frozenset()


@dataclass(frozen=True)
class RestrictedGraph(_Graph):
    """Result of restricting to the d-sets that contain ``origin``.

    Partition invariants still hold, but the graph may be empty or
    disconnected.
    """

    origin: frozenset[int] = field(default=frozenset())


GraphLike = Union[Spg, RestrictedGraph]


def _components(ids: Iterable[int], adj: Mapping[int, Iterable[int]]) -> list[frozenset[int]]:
    seen: set[int] = set()
    comps = []
    for start in sorted(ids):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def _norm_edge(e) -> Edge:
    a, b = e
    return (a, b) if a <= b else (b, a)


def build_spg(d: int, n: int, classes, edges=()) -> Spg:
    """Validate the pieces of an SPG and assemble it.

    ``classes`` is either an iterable of :class:`VertexClass` or a mapping
    from class id to an iterable of d-sets.  Every violation is collected
    before raising :class:`InvalidSpg`; nothing is partially accepted.
    """
    if d < 1 or n < d:
        raise InvalidParams(f"need n >= d >= 1, got d={d}, n={n}")

    if isinstance(classes, Mapping):
        raw = [(cid, list(ds)) for cid, ds in classes.items()]
    else:
        raw = [(c.id, list(c.dsets)) for c in classes]

    violations: list[Violation] = []
    built: dict[int, VertexClass] = {}
    owner: dict[DSet, int] = {}
    for cid, ds in raw:
        if cid in built:
            violations.append(Violation("DuplicateId", (cid,)))
            continue
        normed = []
        for a in ds:
            a = tuple(a)
            canon = dset(a)
            if len(canon) != d or len(a) != d:
                violations.append(Violation("WrongArity", (a,)))
                continue
            if canon[0] < 1 or canon[-1] > n:
                violations.append(Violation("SymbolOutOfRange", (canon,)))
                continue
            normed.append(canon)
        if not ds:
            violations.append(Violation("EmptyClass", (cid,)))
        for a in sorted(set(normed)):
            if a in owner:
                violations.append(Violation("OverlappingClasses", (a, owner[a], cid)))
            else:
                owner[a] = cid
        built[cid] = VertexClass(cid, frozenset(normed))
    if not raw:
        violations.append(Violation("EmptyClass", ("no classes",)))

    norm_edges = set()
    for e in edges:
        a, b = _norm_edge(e)
        if a == b or a not in built or b not in built:
            violations.append(Violation("BadEdge", (a, b)))
        else:
            norm_edges.add((a, b))

    if built:
        adj: dict[int, list[int]] = {i: [] for i in built}
        for a, b in norm_edges:
            adj[a].append(b)
            adj[b].append(a)
        comps = _components(built, adj)
        if len(comps) > 1:
            first = comps[0]
            rest = frozenset().union(*comps[1:])
            violations.append(Violation("Disconnected", (first, rest)))

    if violations:
        raise InvalidSpg(violations)
    ordered = tuple(built[i] for i in sorted(built))
    return Spg(d, n, ordered, frozenset(norm_edges))


def restrict(g: GraphLike, F=()) -> RestrictedGraph:
    """Keep the d-sets containing every symbol of ``F`` and the classes that still own one.

    Class ids are preserved; edges survive when both endpoints do.  The
    result records the accumulated restriction set in ``origin``.
    """
    F = frozenset(F)
    bad = [s for s in F if not 1 <= s <= g.n]
    if bad:
        raise InvalidParams(f"symbols {sorted(bad)} outside [1, {g.n}]")
    keep = []
    for c in g.classes:
        ds = frozenset(a for a in c.dsets if F.issubset(a))
        if ds:
            keep.append(VertexClass(c.id, ds))
    alive = {c.id for c in keep}
    edges = frozenset(e for e in g.edges if e[0] in alive and e[1] in alive)
    return RestrictedGraph(g.d, g.n, tuple(keep), edges, g.origin | F)


def reduce_dimension(rg: GraphLike) -> tuple[Spg, dict[int, int]]:
    """Drop the restriction symbols from every d-set and relabel the rest.

    Returns the reduced SPG of dimension ``d - |origin|`` on ``n - |origin|``
    symbols and the order-preserving map from old to new symbols.
    """
    F = rg.origin
    k = len(F)
    if not rg.classes:
        raise EmptyRestriction(f"restriction to {sorted(F)} has no classes")
    if rg.d - k < 1:
        raise DimensionUnderflow(f"cannot reduce dimension {rg.d} by {k}")
    comps = rg.components()
    if len(comps) > 1:
        raise DisconnectedRestriction(
            f"restriction to {sorted(F)} splits into {[sorted(c) for c in comps]}"
        )
    kept = [s for s in range(1, rg.n + 1) if s not in F]
    relabel = {s: i + 1 for i, s in enumerate(kept)}
    classes = tuple(
        VertexClass(c.id, frozenset(tuple(relabel[s] for s in a if s not in F) for a in c.dsets))
        for c in rg.classes
    )
    return Spg(rg.d - k, rg.n - k, classes, rg.edges), relabel


def relabel_symbols(g: GraphLike, mapping: Mapping[int, int], n: int | None = None) -> Spg:
    """Apply an injective symbol map; returns a validated SPG on ``n`` symbols."""
    n = g.n if n is None else n
    classes = {c.id: [dset(mapping[s] for s in a) for a in c.dsets] for c in g.classes}
    return build_spg(g.d, n, classes, g.edges)


def normalize(g: GraphLike) -> tuple[Spg, dict[int, int]]:
    """Relabel the support order-preservingly onto ``1..n_eff``."""
    relabel = {s: i + 1 for i, s in enumerate(sorted(g.support))}
    if len(relabel) == g.n and isinstance(g, Spg):
        return g, relabel
    classes = tuple(
        VertexClass(c.id, frozenset(tuple(relabel[s] for s in a) for a in c.dsets))
        for c in g.classes
    )
    return Spg(g.d, len(relabel), classes, g.edges), relabel


def canonical_form(g: GraphLike) -> tuple:
    """Invariant of ``g`` under symbol permutations and class renumbering.

    Brute force over all permutations of the support, so only meant for
    small instances (support of at most nine symbols).
    """
    support = sorted(g.support)
    if len(support) > 9:
        raise InvalidParams("canonical_form is brute force; support too large")
    best = None
    for perm in itertools.permutations(range(1, len(support) + 1)):
        m = dict(zip(support, perm))
        content = {c.id: tuple(sorted(dset(m[s] for s in a) for a in c.dsets)) for c in g.classes}
        key = (
            g.d,
            tuple(sorted(content.values())),
            tuple(sorted(tuple(sorted((content[a], content[b]))) for a, b in g.edges)),
        )
        if best is None or key < best:
            best = key
    return best
