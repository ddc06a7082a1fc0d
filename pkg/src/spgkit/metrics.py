"""Exact breadth-first metrics on the class graph of an SPG."""

from __future__ import annotations

from collections import deque

from .core import GraphLike
from .errors import UnknownId


def _check(g: GraphLike, *ids: int) -> None:
    for i in ids:
        if i not in g.by_id:
            raise UnknownId(i)


def distances_from(g: GraphLike, u: int) -> dict[int, int]:
    """Edge distances from ``u`` to every reachable class."""
    _check(g, u)
    dist = {u: 0}
    queue = deque([u])
    adj = g.neighbors
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def distance(g: GraphLike, u: int, v: int) -> int:
    _check(g, u, v)
    dist = distances_from(g, u)
    if v not in dist:
        raise ValueError(f"classes {u} and {v} are not connected")
    return dist[v]


def shortest_path(g: GraphLike, u: int, v: int) -> list[int]:
    """A shortest path from ``u`` to ``v``.

    Ties are broken toward the smallest predecessor id, so the result is
    deterministic.
    """
    _check(g, u, v)
    dist = distances_from(g, v)
    if u not in dist:
        raise ValueError(f"classes {u} and {v} are not connected")
    path = [u]
    x = u
    while x != v:
        x = min(y for y in g.neighbors[x] if dist.get(y, -1) == dist[x] - 1)
        path.append(x)
    return path


def eccentricity(g: GraphLike, u: int) -> int:
    return max(distances_from(g, u).values())


def diameter(g: GraphLike) -> int:
    """Maximum shortest-path distance over all class pairs; 0 for one class."""
    best = 0
    total = len(g.classes)
    for u in g.ids:
        dist = distances_from(g, u)
        if len(dist) != total:
            raise ValueError("diameter of a disconnected graph is undefined")
        best = max(best, max(dist.values()))
    return best


def symbol_ball(g: GraphLike, u: int, r: int) -> frozenset[int]:
    """Symbols used by the classes within distance ``r`` of ``u``."""
    if r < 0:
        raise ValueError("radius must be non-negative")
    dist = distances_from(g, u)
    out: set[int] = set()
    for cid, k in dist.items():
        if k <= r:
            out.update(g.by_id[cid].symbols())
    return frozenset(out)


def ball_profile(g: GraphLike, u: int) -> list[frozenset[int]]:
    """``symbol_ball(g, u, r)`` for r = 0..eccentricity(u), computed in one pass."""
    dist = distances_from(g, u)
    layers: list[set[int]] = [set() for _ in range(max(dist.values()) + 1)]
    for cid, k in dist.items():
        layers[k].update(g.by_id[cid].symbols())
    out = []
    acc: set[int] = set()
    for layer in layers:
        acc |= layer
        out.append(frozenset(acc))
    return out
