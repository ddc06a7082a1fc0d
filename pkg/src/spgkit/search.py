"""Extremal diameters of dimension-reduction SPGs: exhaustive oracle and local search.

The exhaustive oracle walks every nonempty family of d-sets (as a bitmask
over the lexicographically ordered d-sets), every set partition of the
family (restricted growth strings), and every connected graph on the
partition cells (edge bitmasks).  For a fixed cell count ``k`` all
``2**(k*(k-1)/2)`` graphs are handled at once with numpy: their diameters,
and whether the subgraph induced by a cell subset is connected, are
tabulated once per ``k``.  A (family, partition) pair then needs only the
cell subsets ``M_F`` that survive each restriction F.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations

import numpy as np

from .bounds import bound_values
from .core import Spg, build_spg
from .errors import InvalidParams, ResourceLimit
from .metrics import diameter
from .properties import check_dimension_reduction

MAX_CELLS = 7


@dataclass
class SigmaResult:
    d: int
    n: int
    value: int
    witness: Spg
    exhaustive: bool
    explored: int
    valid: int = 0
    bound_violations: int = 0
    seed: int | None = None

    @property
    def n_eff(self) -> int:
        return len(self.witness.support)

    def summary(self) -> str:
        return f"sigma {self.d} {self.n} {self.value} {'true' if self.exhaustive else 'false'} {self.explored}"


# -- exhaustive oracle ----------------------------------------------------


class GraphTable:
    """Every labeled simple graph on ``k`` vertices, indexed by edge bitmask.

    Bit ``e`` of an index selects ``pairs[e]`` (pairs in lexicographic
    order).  ``diam`` holds the diameter, or -1 when disconnected.
    """

    def __init__(self, k: int):
        self.k = k
        self.pairs = list(combinations(range(k), 2))
        size = 1 << len(self.pairs)
        masks = np.arange(size, dtype=np.int64)
        self.adj = [np.zeros(size, dtype=np.uint8) for _ in range(k)]
        for e, (a, b) in enumerate(self.pairs):
            bit = ((masks >> e) & 1).astype(np.uint8)
            self.adj[a] |= bit << b
            self.adj[b] |= bit << a
        self.full = (1 << k) - 1
        self._conn: dict[int, np.ndarray] = {}
        self.diam = self._diameters()
        self._conn[self.full] = self.diam >= 0
        self.connected_count = int(np.count_nonzero(self.diam >= 0))

    def _expand(self, reach: np.ndarray, within: int) -> np.ndarray:
        new = reach.copy()
        for v in range(self.k):
            if within >> v & 1:
                new |= ((reach >> v) & 1) * (self.adj[v] & within)
        return new

    def _diameters(self) -> np.ndarray:
        size = len(self.adj[0]) if self.k else 1
        diam = np.zeros(size, dtype=np.int8)
        conn = np.ones(size, dtype=bool)
        for s in range(self.k):
            reach = np.full(size, 1 << s, dtype=np.uint8)
            for step in range(1, self.k):
                new = self._expand(reach, self.full)
                diam[(new != reach) & (diam < step)] = step
                reach = new
            conn &= reach == self.full
        diam[~conn] = -1
        return diam

    def connected(self, within: int) -> np.ndarray:
        """Whether the subgraph induced on the vertex set ``within`` is connected."""
        got = self._conn.get(within)
        if got is None:
            low = within & -within
            reach = np.full(len(self.diam), low, dtype=np.uint8)
            for _ in range(bin(within).count("1") - 1):
                reach = self._expand(reach, within)
            got = self._conn[within] = reach == within
        return got


@lru_cache(maxsize=None)
def graph_table(k: int) -> GraphTable:
    return GraphTable(k)


def restricted_growth_strings(m: int):
    """All set partitions of ``range(m)`` as restricted growth strings, in lexicographic order."""
    if m == 0:
        yield ()
        return
    a = [0] * m

    def rec(i, top):
        if i == m:
            yield tuple(a)
            return
        for b in range(top + 2):
            a[i] = b
            yield from rec(i + 1, max(top, b))

    yield from rec(1, 0)


def _universe(d: int, n: int) -> list[tuple[int, ...]]:
    return list(combinations(range(1, n + 1), d))


def canonical_families(d: int, n: int) -> list[int]:
    """Family bitmasks that are minimal in their orbit under symbol permutations."""
    uni = _universe(d, n)
    index = {a: i for i, a in enumerate(uni)}
    images = np.array(
        [[index[tuple(sorted(p[s - 1] for s in a))] for a in uni] for p in permutations(range(1, n + 1))],
        dtype=np.int64,
    )
    weights = np.left_shift(np.int64(1), images)
    out = []
    for mask in range(1, 1 << len(uni)):
        members = [i for i in range(len(uni)) if mask >> i & 1]
        if int(weights[:, members].sum(axis=1).min()) == mask:
            out.append(mask)
    return out


@dataclass
class _Partial:
    value: int = -1
    key: tuple | None = None
    explored: int = 0
    valid: int = 0
    violations: int = 0


def _scan(d: int, n: int, masks: list[int], limit: int) -> _Partial:
    uni = _universe(d, n)
    subsets = [[F for r in range(d + 1) for F in combinations(a, r)] for a in uni]
    memo: dict[tuple, tuple[int, int, int, int, int]] = {}
    out = _Partial()
    for mask in masks:
        members = [i for i in range(len(uni)) if mask >> i & 1]
        for rgs in restricted_growth_strings(len(members)):
            k = max(rgs) + 1
            cells: dict[tuple, int] = {}
            for i, c in zip(members, rgs):
                for F in subsets[i]:
                    cells[F] = cells.get(F, 0) | (1 << c)
            need = frozenset(M for M in cells.values() if M & (M - 1))
            key = (k, need)
            summary = memo.get(key)
            if summary is None:
                table = graph_table(k)
                ok = table.connected(table.full).copy()
                for M in need:
                    ok &= table.connected(M)
                vals = np.where(ok, table.diam, -1)
                best = int(vals.max())
                summary = memo[key] = (
                    table.connected_count,
                    int(np.count_nonzero(ok)),
                    best,
                    int(np.argmax(vals)),
                    int(np.count_nonzero(vals > limit)),
                )
            explored, valid, best, idx, bad = summary
            out.explored += explored
            out.valid += valid
            out.violations += bad
            if valid and best > out.value:
                out.value, out.key = best, (mask, rgs, idx)
    return out


def _merge(parts: list[_Partial]) -> _Partial:
    out = _Partial()
    for p in parts:
        out.explored += p.explored
        out.valid += p.valid
        out.violations += p.violations
        if p.key is not None and (p.value > out.value or (p.value == out.value and p.key < out.key)):
            out.value, out.key = p.value, p.key
    return out


def _witness(d: int, n: int, key: tuple) -> Spg:
    mask, rgs, idx = key
    uni = _universe(d, n)
    members = [uni[i] for i in range(len(uni)) if mask >> i & 1]
    k = max(rgs) + 1
    classes: dict[int, list] = {c: [] for c in range(k)}
    for a, c in zip(members, rgs):
        classes[c].append(a)
    pairs = graph_table(k).pairs
    edges = [pairs[e] for e in range(len(pairs)) if idx >> e & 1]
    return build_spg(d, n, classes, edges)


def sigma_exact(d: int, n: int, symmetry: bool = True, workers: int = 1) -> SigmaResult:
    """Exact maximum diameter over all dimension-reduction SPGs on at most n symbols.

    Feasible while C(n, d) <= MAX_CELLS (d = 1 with n <= 7, d = 2 with
    n <= 4, ...); beyond that ResourceLimit is raised rather than
    truncating.  ``symmetry`` skips families that are not minimal under
    symbol permutations, which leaves the value unchanged.  The result also
    counts how many valid SPGs exceed the (n-d)^(1+log d) bound.
    """
    if d < 1 or n < d:
        raise InvalidParams(f"need n >= d >= 1, got d={d}, n={n}")
    cells = math.comb(n, d)
    if cells > MAX_CELLS:
        raise ResourceLimit(
            f"C({n},{d}) = {cells} d-sets exceeds the exhaustive envelope of {MAX_CELLS} "
            f"(graph tables would need 2^{cells * (cells - 1) // 2} entries)"
        )
    masks = canonical_families(d, n) if symmetry else list(range(1, 1 << cells))
    limit = math.floor(bound_values(d, n).spg + 1e-9)
    if workers > 1:
        chunks = [masks[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_scan, [d] * workers, [n] * workers, chunks, [limit] * workers))
    else:
        parts = [_scan(d, n, masks, limit)]
    res = _merge(parts)
    return SigmaResult(d, n, res.value, _witness(d, n, res.key), True, res.explored, res.valid, res.violations)


def iter_dr_spgs(d: int, n: int, symmetry: bool = True):
    """Yield every dimension-reduction SPG the oracle counts (small envelopes only)."""
    uni = _universe(d, n)
    subsets = [[F for r in range(d + 1) for F in combinations(a, r)] for a in uni]
    if math.comb(n, d) > MAX_CELLS:
        raise ResourceLimit("outside the exhaustive envelope")
    masks = canonical_families(d, n) if symmetry else range(1, 1 << len(uni))
    for mask in masks:
        members = [i for i in range(len(uni)) if mask >> i & 1]
        for rgs in restricted_growth_strings(len(members)):
            k = max(rgs) + 1
            cells: dict[tuple, int] = {}
            for i, c in zip(members, rgs):
                for F in subsets[i]:
                    cells[F] = cells.get(F, 0) | (1 << c)
            table = graph_table(k)
            ok = table.connected(table.full).copy()
            for M in set(cells.values()):
                if M & (M - 1):
                    ok &= table.connected(M)
            for idx in np.flatnonzero(ok):
                yield _witness(d, n, (mask, rgs, int(idx)))


# -- local search ---------------------------------------------------------


class _State:
    """Mutable SPG used by the local search: d-set indices grouped into classes."""

    __slots__ = ("owner", "members", "adj", "next_id")

    def __init__(self):
        self.owner: dict[int, int] = {}
        self.members: dict[int, set[int]] = {}
        self.adj: dict[int, set[int]] = {}
        self.next_id = 0

    def copy(self) -> _State:
        s = _State()
        s.owner = dict(self.owner)
        s.members = {c: set(m) for c, m in self.members.items()}
        s.adj = {c: set(a) for c, a in self.adj.items()}
        s.next_id = self.next_id
        return s

    def new_class(self) -> int:
        c = self.next_id
        self.next_id += 1
        self.members[c] = set()
        self.adj[c] = set()
        return c

    def drop_class(self, c: int) -> None:
        for x in self.adj.pop(c):
            self.adj[x].discard(c)
        del self.members[c]

    def link(self, a: int, b: int) -> None:
        self.adj[a].add(b)
        self.adj[b].add(a)

    def unlink(self, a: int, b: int) -> None:
        self.adj[a].discard(b)
        self.adj[b].discard(a)

    def put(self, i: int, c: int) -> None:
        self.owner[i] = c
        self.members[c].add(i)

    def take(self, i: int) -> int:
        c = self.owner.pop(i)
        self.members[c].discard(i)
        if not self.members[c]:
            self.drop_class(c)
        return c


class _LocalSearch:
    def __init__(self, d: int, n: int, rng: random.Random):
        self.d, self.n, self.rng = d, n, rng
        self.uni = _universe(d, n)
        self.subsets = [[F for r in range(d + 1) for F in combinations(a, r)] for a in self.uni]
        self.containing: dict[tuple, list[int]] = {}
        for i, subs in enumerate(self.subsets):
            for F in subs:
                self.containing.setdefault(F, []).append(i)

    # dimension reduction, checked only on the restrictions a move can affect

    def _survivors(self, st: _State, F) -> set[int]:
        owner = st.owner
        return {owner[i] for i in self.containing[F] if i in owner}

    @staticmethod
    def _components(st: _State, ids: set[int]) -> list[set[int]]:
        comps, seen = [], set()
        for s in sorted(ids):
            if s in seen:
                continue
            comp, stack = {s}, [s]
            while stack:
                x = stack.pop()
                for y in st.adj[x]:
                    if y in ids and y not in comp:
                        comp.add(y)
                        stack.append(y)
            seen |= comp
            comps.append(comp)
        return comps

    def _first_failure(self, st: _State, Fs) -> list[set[int]] | None:
        for F in sorted(Fs):
            ids = self._survivors(st, F)
            if len(ids) > 1:
                comps = self._components(st, ids)
                if len(comps) > 1:
                    return comps
        return None

    def _valid_or_repaired(self, st: _State, Fs) -> bool:
        comps = self._first_failure(st, Fs)
        if comps is None:
            return True
        a_side = comps[0]
        others = set().union(*comps[1:])
        a, b = min((x, y) if x < y else (y, x) for x in a_side for y in others)
        st.link(a, b)
        return self._first_failure(st, Fs) is None

    def _class_subsets(self, st: _State, c: int) -> set:
        return {F for i in st.members[c] for F in self.subsets[i]}

    # moves: each returns (new_state, affected restrictions) or None

    def propose(self, st: _State):
        rng = self.rng
        kind = rng.choices(
            ("add", "remove", "move", "split", "merge", "link", "unlink"),
            weights=(20, 12, 15, 10, 5, 8, 30),
        )[0]
        new = st.copy()
        classes = sorted(new.members)
        if kind == "add":
            free = [i for i in range(len(self.uni)) if i not in new.owner]
            if not free:
                return None
            i = rng.choice(free)
            if rng.random() < 0.5:
                c = new.new_class()
                new.link(c, rng.choice(classes))
            else:
                c = rng.choice(classes)
            new.put(i, c)
            return new, self.subsets[i]
        if kind == "remove":
            if len(new.owner) < 2:
                return None
            i = rng.choice(sorted(new.owner))
            new.take(i)
            return new, self.subsets[i]
        if kind == "move":
            if len(classes) < 2:
                return None
            i = rng.choice(sorted(new.owner))
            src = new.owner[i]
            dst = rng.choice([c for c in classes if c != src])
            new.take(i)
            new.put(i, dst)
            return new, self.subsets[i]
        if kind == "split":
            big = [c for c in classes if len(new.members[c]) > 1]
            if not big:
                return None
            c = rng.choice(big)
            mem = sorted(new.members[c])
            part = rng.sample(mem, rng.randint(1, len(mem) - 1))
            c2 = new.new_class()
            for x in sorted(new.adj[c]):
                new.link(c2, x)
            new.link(c, c2)
            for i in part:
                new.take(i)
                new.put(i, c2)
            return new, self._class_subsets(new, c) | self._class_subsets(new, c2)
        if kind == "merge":
            edges = sorted((a, b) for a in classes for b in new.adj[a] if a < b)
            if not edges:
                return None
            a, b = rng.choice(edges)
            for x in sorted(new.adj[b] - {a}):
                new.link(a, x)
            for i in sorted(new.members[b]):
                new.take(i)
                new.put(i, a)
            return new, ()
        if kind == "link":
            gaps = [(a, b) for a, b in combinations(classes, 2) if b not in new.adj[a]]
            if not gaps:
                return None
            new.link(*rng.choice(gaps))
            return new, ()
        edges = sorted((a, b) for a in classes for b in new.adj[a] if a < b)
        if not edges:
            return None
        a, b = rng.choice(edges)
        new.unlink(a, b)
        return new, self._class_subsets(new, a) & self._class_subsets(new, b)

    def step(self, st: _State):
        got = self.propose(st)
        if got is None:
            return None
        new, Fs = got
        if Fs and not self._valid_or_repaired(new, set(Fs)):
            return None
        return new

    @staticmethod
    def eccentricity_profile(st: _State) -> tuple[int, float]:
        ids = sorted(st.members)
        index = {c: j for j, c in enumerate(ids)}
        adj = [0] * len(ids)
        for c in ids:
            for x in st.adj[c]:
                adj[index[c]] |= 1 << index[x]
        full = (1 << len(ids)) - 1
        diam, total = 0, 0
        for s in range(len(ids)):
            seen = frontier = 1 << s
            ecc = 0
            while seen != full:
                nxt = 0
                f = frontier
                while f:
                    low = f & -f
                    nxt |= adj[low.bit_length() - 1]
                    f ^= low
                frontier = nxt & ~seen
                if not frontier:
                    raise AssertionError("local search state became disconnected")
                seen |= frontier
                ecc += 1
            diam = max(diam, ecc)
            total += ecc
        return diam, total / len(ids)

    def to_spg(self, st: _State) -> Spg:
        ids = sorted(st.members, key=lambda c: min(st.members[c]))
        relabel = {c: j for j, c in enumerate(ids)}
        classes = {relabel[c]: [self.uni[i] for i in sorted(st.members[c])] for c in ids}
        edges = [(relabel[a], relabel[b]) for a in ids for b in st.adj[a] if a < b]
        return build_spg(self.d, self.n, classes, edges)


TEMPERATURE = 0.25


def _search_one(d: int, n: int, budget: int, seed: int) -> SigmaResult:
    rng = random.Random(seed)
    ls = _LocalSearch(d, n, rng)
    st = _State()
    st.put(0, st.new_class())
    diam, mean = ls.eccentricity_profile(st)
    score = diam + 0.1 * mean
    best_state, best = st, diam
    for _ in range(budget):
        new = ls.step(st)
        if new is None:
            continue
        nd, nm = ls.eccentricity_profile(new)
        nscore = nd + 0.1 * nm
        if nscore >= score or rng.random() < math.exp((nscore - score) / TEMPERATURE):
            st, score = new, nscore
            if nd > best:
                best_state, best = new, nd
    witness = ls.to_spg(best_state)
    if not check_dimension_reduction(witness).holds or diameter(witness) != best:
        raise AssertionError("local search produced an invalid witness")
    return SigmaResult(d, n, best, witness, False, budget, seed=seed)


def sigma_search(d: int, n: int, budget: int, seed: int = 0, workers: int = 1) -> SigmaResult:
    """Best diameter found by a seeded local search over dimension-reduction SPGs.

    Randomness comes only from ``random.Random(seed)``.  Moves add, remove
    or move a d-set, split or merge classes, and add or remove an edge.  A
    move that disconnects some restriction gets one repair attempt (the
    smallest edge joining the first failing restriction) before it is
    rejected.  With ``workers > 1`` seeds ``seed .. seed + workers - 1`` run
    independently and the best (smallest seed on ties) is returned.
    """
    if d < 1 or n < d:
        raise InvalidParams(f"need n >= d >= 1, got d={d}, n={n}")
    if budget < 1:
        raise InvalidParams("budget must be >= 1")
    if workers <= 1:
        return _search_one(d, n, budget, seed)
    seeds = [seed + i for i in range(workers)]
    with ProcessPoolExecutor(workers) as pool:
        results = list(pool.map(_search_one, [d] * workers, [n] * workers, [budget] * workers, seeds))
    best = max(results, key=lambda r: (r.value, -r.seed))
    best.explored = sum(r.explored for r in results)
    return best
