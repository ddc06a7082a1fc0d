"""Constructive short paths in dimension-reduction SPGs, with replayable certificates.

The construction follows the halving recursion behind the (n-d)^(1+log d)
bound.  At each level the family is first relabeled onto the symbols it
actually uses (``n_eff`` of them), then one of four cases applies:

``BaseTrivial``
    source equals target.
``BaseBfs``
    d <= 2 or at most ``BFS_CLASS_LIMIT`` classes: plain shortest path.
``FacetMove``
    n_eff < 2d: two d-sets must share a symbol s, so recurse inside the
    restriction to {s}, one dimension down.
``Pigeonhole``
    grow symbol balls around both endpoints until each covers more than
    half the symbols; the balls then share a symbol s.  Walk to the nearest
    class through s on each side and recurse inside the restriction to {s}.

Certificates name symbols in the labels of the input SPG, so
:func:`verify_certificate` can replay every claim from the input alone.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .bounds import spg_bound
from .core import GraphLike, RestrictedGraph, Spg, normalize, reduce_dimension, restrict
from .errors import ParseError, StuckRecursion, UnknownId
from .metrics import ball_profile, distances_from, shortest_path

BFS_CLASS_LIMIT = 8
BOUND_SLACK = 1e-9


class Case(enum.Enum):
    BASE_TRIVIAL = "BaseTrivial"
    BASE_BFS = "BaseBfs"
    FACET_MOVE = "FacetMove"
    PIGEONHOLE = "Pigeonhole"


@dataclass(frozen=True)
class CertNode:
    case: Case
    d: int
    n_eff: int
    segments: tuple[int, ...]
    symbol: int | None = None
    radii: tuple[int, int] | None = None
    child: CertNode | None = None

    @property
    def length(self) -> int:
        return sum(self.segments)

    def depth(self) -> int:
        return 1 + (self.child.depth() if self.child else 0)


def certified_path(spg: GraphLike, u: int, v: int) -> tuple[list[int], CertNode]:
    """A u-v path and the certificate explaining its construction.

    Raises StuckRecursion with the offending F when a restriction that
    dimension reduction guarantees to be connected turns out not to be.
    """
    for i in (u, v):
        if i not in spg.by_id:
            raise UnknownId(i)
    g, relabel = normalize(spg)
    to_orig = {new: old for old, new in relabel.items()}
    return _solve(g, u, v, to_orig, ())


def _descend(g: Spg, s: int, to_orig: dict[int, int], fixed: tuple[int, ...]):
    """Restrict to {s}, reduce, renormalize; returns the child graph and its label map."""
    F = fixed + (to_orig[s],)
    sub = restrict(g, {s})
    if not sub.is_connected():
        raise StuckRecursion(F)
    reduced, relabel = reduce_dimension(sub)
    reduced, relabel2 = normalize(reduced)
    back = {relabel2[relabel[x]]: to_orig[x] for x in relabel if relabel[x] in relabel2}
    return reduced, back, F


def _solve(g: Spg, u: int, v: int, to_orig, fixed) -> tuple[list[int], CertNode]:
    d, n_eff = g.d, g.n
    if u == v:
        return [u], CertNode(Case.BASE_TRIVIAL, d, n_eff, (0,))
    if d <= 2 or len(g.classes) <= BFS_CLASS_LIMIT:
        try:
            path = shortest_path(g, u, v)
        except ValueError:
            raise StuckRecursion(fixed) from None
        return path, CertNode(Case.BASE_BFS, d, n_eff, (len(path) - 1,))

    if n_eff < 2 * d:
        a, b = min(g.dsets(u)), min(g.dsets(v))
        s = min(set(a) & set(b))
        child_g, back, F = _descend(g, s, to_orig, fixed)
        path, child = _solve(child_g, u, v, back, F)
        return path, CertNode(Case.FACET_MOVE, d, n_eff, (child.length,), to_orig[s], None, child)

    half = n_eff // 2
    r_u, ball_u = _grow(g, u, half)
    r_v, ball_v = _grow(g, v, half)
    s = min(ball_u & ball_v)
    w_u = _nearest_with(g, u, s)
    w_v = _nearest_with(g, v, s)
    head = shortest_path(g, u, w_u)
    tail = shortest_path(g, w_v, v)
    child_g, back, F = _descend(g, s, to_orig, fixed)
    mid, child = _solve(child_g, w_u, w_v, back, F)
    path = head + mid[1:] + tail[1:]
    node = CertNode(
        Case.PIGEONHOLE, d, n_eff, (len(head) - 1, child.length, len(tail) - 1), to_orig[s], (r_u, r_v), child
    )
    return path, node


def _grow(g: GraphLike, u: int, half: int) -> tuple[int, frozenset[int]]:
    """Largest r with |ball(u, r)| <= half (-1 if none) and the ball at r + 1."""
    profile = ball_profile(g, u)
    r = -1
    while r + 1 < len(profile) and len(profile[r + 1]) <= half:
        r += 1
    return r, profile[r + 1]


def _nearest_with(g: GraphLike, u: int, s: int) -> int:
    dist = distances_from(g, u)
    hits = [(k, cid) for cid, k in dist.items() if any(s in a for a in g.by_id[cid].dsets)]
    return min(hits)[1]


# -- verification ---------------------------------------------------------


def _level_graph(spg: GraphLike, F: frozenset[int]) -> RestrictedGraph:
    return restrict(spg, F)


def _n_eff(rg: RestrictedGraph) -> int:
    return len(rg.support - rg.origin)


def _ball_sizes(rg: RestrictedGraph, u: int) -> list[frozenset[int]]:
    F = rg.origin
    return [b - F for b in ball_profile(rg, u)]


def check_certificate(spg: GraphLike, path, cert: CertNode) -> str | None:
    """Replay a certificate against ``spg``; returns the first failure or None."""
    path = list(path)
    if not path:
        return "empty path"
    for x in path:
        if x not in spg.by_id:
            return f"path visits unknown class {x}"
    for a, b in zip(path, path[1:]):
        if not spg.has_edge(a, b):
            return f"path step {a}-{b} is not an edge"
    if cert.length != len(path) - 1:
        return f"certificate length {cert.length} != path length {len(path) - 1}"

    root_rg = _level_graph(spg, frozenset())
    root_n = _n_eff(root_rg)
    err = _check_node(spg, path, 0, cert, frozenset(), spg.d)
    if err:
        return err
    if cert.n_eff != root_n:
        return f"root n_eff {cert.n_eff} != {root_n}"
    bound = spg_bound(spg.d, root_n)
    if len(path) - 1 > bound + BOUND_SLACK:
        return f"path length {len(path) - 1} exceeds bound {bound:.6g}"
    return None


def _segment_ok(rg: RestrictedGraph, seg) -> bool:
    return all(x in rg.by_id for x in seg)


def _check_node(spg, path, start: int, node: CertNode, F: frozenset[int], d0: int) -> str | None:
    rg = _level_graph(spg, F)
    d = d0 - len(F)
    where = f"{node.case.value} node at depth {len(F)}"
    if node.d != d:
        return f"{where}: dimension {node.d} != {d}"
    n_eff = _n_eff(rg)
    if node.n_eff != n_eff:
        return f"{where}: n_eff {node.n_eff} != {n_eff}"
    end = start + node.length
    seg = path[start : end + 1]
    if not _segment_ok(rg, seg):
        return f"{where}: path leaves the restriction to {sorted(F)}"
    u, v = seg[0], seg[-1]

    if node.case is Case.BASE_TRIVIAL:
        if node.segments != (0,) or u != v or node.child:
            return f"{where}: trivial node must have u == v and length 0"
        return None

    if node.case is Case.BASE_BFS:
        if not (d <= 2 or len(rg.classes) <= BFS_CLASS_LIMIT):
            return f"{where}: BFS base used with d={d} and {len(rg.classes)} classes"
        if node.child or len(node.segments) != 1:
            return f"{where}: malformed BFS node"
        dist = distances_from(rg, u).get(v)
        if dist != node.length:
            return f"{where}: BFS segment length {node.length} != distance {dist}"
        return None

    s = node.symbol
    if s is None or s in F or node.child is None:
        return f"{where}: needs a fresh symbol and a child"
    if u == v:
        return f"{where}: recursive case with u == v"
    if not (d > 2 and len(rg.classes) > BFS_CLASS_LIMIT):
        return f"{where}: recursion where the BFS base applies"
    F2 = F | {s}

    if node.case is Case.FACET_MOVE:
        if n_eff >= 2 * d:
            return f"{where}: facet move needs n_eff < 2d, got n_eff={n_eff}, d={d}"
        if node.segments != (node.child.length,):
            return f"{where}: segment lengths do not match child"
        return _check_node(spg, path, start, node.child, F2, d0)

    if node.case is Case.PIGEONHOLE:
        if n_eff < 2 * d:
            return f"{where}: pigeonhole needs n_eff >= 2d"
        if node.radii is None or len(node.segments) != 3:
            return f"{where}: malformed pigeonhole node"
        a, m, b = node.segments
        if m != node.child.length:
            return f"{where}: middle segment {m} != child length {node.child.length}"
        half = n_eff // 2
        w_u, w_v = path[start + a], path[start + a + m]
        for label, x, r, w, k in (("u", u, node.radii[0], w_u, a), ("v", v, node.radii[1], w_v, b)):
            balls = _ball_sizes(rg, x)
            if r < -1 or r + 1 >= len(balls):
                return f"{where}: radius r_{label}={r} out of range"
            if len(balls[r + 1]) <= half:
                return f"{where}: ball around {label} at radius {r + 1} has only {len(balls[r + 1])} symbols"
            if r >= 0 and len(balls[r]) > half:
                return f"{where}: radius r_{label}={r} is not maximal"
            if s not in balls[r + 1]:
                return f"{where}: symbol {s} not in the ball around {label}"
            if k > r + 1:
                return f"{where}: walk from {label} has length {k} > {r + 1}"
            if not any(s in t for t in rg.by_id[w].dsets):
                return f"{where}: class {w} does not contain symbol {s}"
        return _check_node(spg, path, start + a, node.child, F2, d0)

    return f"{where}: unknown case"


def verify_certificate(spg: GraphLike, path, cert: CertNode) -> bool:
    return check_certificate(spg, path, cert) is None


# -- serialization --------------------------------------------------------


def dump_certificate(cert: CertNode) -> str:
    """One node per line: ``case d n_eff symbol r_u r_v seg_lens``; children indented."""
    lines = []
    node, depth = cert, 0
    while node is not None:
        sym = "-" if node.symbol is None else str(node.symbol)
        ru, rv = ("-", "-") if node.radii is None else map(str, node.radii)
        segs = ",".join(map(str, node.segments))
        lines.append(f"{'  ' * depth}{node.case.value} {node.d} {node.n_eff} {sym} {ru} {rv} {segs}")
        node, depth = node.child, depth + 1
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> CertNode:
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip(" "))
        if indent != 2 * len(rows):
            raise ParseError(lineno, "certificate nodes must be indented two spaces per level")
        toks = line.split()
        if len(toks) != 7:
            raise ParseError(lineno, f"expected 7 fields, got {len(toks)}")
        try:
            case = Case(toks[0])
            d, n_eff = int(toks[1]), int(toks[2])
            sym = None if toks[3] == "-" else int(toks[3])
            radii = None if toks[4] == "-" else (int(toks[4]), int(toks[5]))
            segs = tuple(int(x) for x in toks[6].split(","))
        except ValueError as exc:
            raise ParseError(lineno, str(exc)) from None
        rows.append((case, d, n_eff, segs, sym, radii))
    if not rows:
        raise ParseError(1, "empty certificate")
    node = None
    for case, d, n_eff, segs, sym, radii in reversed(rows):
        node = CertNode(case, d, n_eff, segs, sym, radii, node)
    return node
