"""Diameter bound formulas, the Kalai-Kleitman style recursion, and numeric verifiers.

All logarithms are base 2.  Powers follow ``0**p == 0`` for ``p > 0`` and
``x**0 == 1`` for ``x > 0``.

Comparisons use double precision first.  When the two sides are within a
relative margin of 1e-6 they are recomputed with mpmath at 50 digits; an
exact tie at that precision counts as satisfying ``<=``, and a nonzero gap
still below 1e-12 (relative) is reported as ``inconclusive``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import mpmath
import numpy as np

from .errors import ChainStepFailure, InvalidParams, VerificationFailure

C = math.log2(3)

DECISIVE_MARGIN = 1e-6
INCONCLUSIVE_MARGIN = 1e-12
EQUAL_RTOL = 1e-9
MP_DPS = 50


class _FloatArith:
    extended = False

    @staticmethod
    def num(x):
        return float(x)

    @staticmethod
    def log2(x):
        return math.log2(x)

    @staticmethod
    def pw(x, p):
        if x == 0:
            return 0.0 if p > 0 else 1.0
        return math.pow(x, p)


class _MpArith:
    extended = True

    @staticmethod
    def num(x):
        return mpmath.mpf(x)

    @staticmethod
    def log2(x):
        return mpmath.log(x, 2)

    @staticmethod
    def pw(x, p):
        if x == 0:
            return mpmath.mpf(0) if p > 0 else mpmath.mpf(1)
        return mpmath.power(x, p)


FLOAT = _FloatArith()
EXTENDED = _MpArith()


@dataclass(frozen=True)
class Comparison:
    """Outcome of checking ``lhs <relation> rhs``."""

    label: str
    relation: str
    lhs: float
    rhs: float
    status: str
    extended: bool = False

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def compare(label: str, relation: str, sides: Callable) -> Comparison:
    """Decide ``lhs <= rhs`` or ``lhs == rhs`` where ``sides(arith)`` returns both sides."""
    lhs, rhs = sides(FLOAT)
    scale = max(abs(lhs), abs(rhs))
    if relation == "==":
        if abs(lhs - rhs) <= EQUAL_RTOL * max(scale, 1.0):
            return Comparison(label, relation, lhs, rhs, "pass")
    elif relation == "<=":
        if scale == 0 or (rhs - lhs) / scale >= DECISIVE_MARGIN:
            return Comparison(label, relation, lhs, rhs, "pass")
        if (lhs - rhs) / scale >= DECISIVE_MARGIN:
            return Comparison(label, relation, lhs, rhs, "fail")
    else:
        raise ValueError(f"unknown relation {relation!r}")

    with mpmath.workdps(MP_DPS):
        xl, xr = sides(EXTENDED)
        gap = xr - xl
        xscale = max(abs(xl), abs(xr))
        if relation == "==":
            ok = abs(gap) <= EQUAL_RTOL * max(xscale, 1)
            status = "pass" if ok else "fail"
        elif xscale == 0 or abs(gap) <= mpmath.mpf(10) ** (-(MP_DPS - 10)) * xscale:
            status = "pass"
        elif abs(gap) / xscale < INCONCLUSIVE_MARGIN:
            status = "inconclusive"
        else:
            status = "pass" if gap > 0 else "fail"
    return Comparison(label, relation, float(xl), float(xr), status, extended=True)


@dataclass(frozen=True)
class BoundValues:
    d: int
    n: int
    kk: float
    todd: float
    spg: float
    hirsch: int
    haehnle: int


def _check_dn(d: int, n: int) -> None:
    if d < 1 or n < d:
        raise InvalidParams(f"need n >= d >= 1, got d={d}, n={n}")


def spg_bound(d: int, n: int, arith=FLOAT):
    """(n - d)^(1 + log d): the dimension-reduction SPG diameter bound."""
    _check_dn(d, n)
    return arith.pw(arith.num(n - d), 1 + arith.log2(arith.num(d)))


def bound_values(d: int, n: int) -> BoundValues:
    """Every bound from the diameter landscape at (d, n).

    ``todd`` at n = d is reported as 0 (a single vertex has diameter 0),
    including the d = 1 case where the exponent is also 0.
    """
    _check_dn(d, n)
    ld = math.log2(d)
    todd = 0.0 if n == d else FLOAT.pw(float(n - d), ld)
    return BoundValues(
        d=d,
        n=n,
        kk=FLOAT.pw(float(n), 1 + ld),
        todd=todd,
        spg=spg_bound(d, n),
        hirsch=n - d,
        haehnle=d * (n - 1),
    )


def lemma1_f(d: int, arith=FLOAT):
    """((d-1)/d)^c + 1/d + 2/(d * d^(log d)) with c = log 3."""
    if d < 2:
        raise InvalidParams(f"lemma1_f needs d >= 2, got {d}")
    D = arith.num(d)
    c = arith.log2(arith.num(3))
    return arith.pw((D - 1) / D, c) + 1 / D + 2 / (D * arith.pw(D, arith.log2(D)))


def _lemma1_f_array(ds: np.ndarray) -> np.ndarray:
    ds = ds.astype(float)
    return ((ds - 1) / ds) ** C + 1 / ds + 2 / (ds * ds ** np.log2(ds))


@dataclass
class Lemma1Report:
    d_max: int
    checked: int
    exhaustive: bool
    max_f: float
    argmax: int
    tail_max: float | None
    tail_argmax: int | None
    monotone_pairs: int
    inconclusive: list[Comparison] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.inconclusive


def _log_uniform(d_lo: int, d_hi: int, samples: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    draws = np.floor(np.exp(rng.uniform(math.log(d_lo), math.log(d_hi + 1), samples))).astype(np.int64)
    draws = np.clip(draws, d_lo, d_hi)
    fixed = np.array([d for d in (3, 4, 5, d_hi) if d_lo <= d <= d_hi], dtype=np.int64)
    return np.unique(np.concatenate([draws, fixed]))


EXHAUSTIVE_LIMIT = 200_000


def verify_lemma1(d_max: int, samples: int | None = None, seed: int = 0) -> Lemma1Report:
    """Check f(d) <= 1 for 3 <= d <= d_max and that f is non-decreasing from d = 5.

    Every d is checked when ``samples`` is None and ``d_max`` is at most
    ``EXHAUSTIVE_LIMIT``; otherwise ``samples`` (default 4096) log-uniform
    d values plus 3, 4, 5 and d_max.  Monotonicity is always checked on
    consecutive log-uniform samples.  Raises VerificationFailure on a
    definite violation.
    """
    if d_max < 3:
        raise InvalidParams("the f(d) check needs d_max >= 3")
    exhaustive = samples is None and d_max <= EXHAUSTIVE_LIMIT
    sample = _log_uniform(3, d_max, samples or 4096, seed)
    ds = np.arange(3, d_max + 1, dtype=np.int64) if exhaustive else sample
    fs = _lemma1_f_array(ds)

    inconclusive = []
    for i in np.flatnonzero(1 - fs < DECISIVE_MARGIN):
        d = int(ds[i])
        cmp = compare(f"f({d}) <= 1", "<=", lambda ar, d=d: (lemma1_f(d, ar), ar.num(1)))
        if cmp.status == "fail":
            raise VerificationFailure(f"f({d}) = {cmp.lhs!r} exceeds 1", d=d)
        if cmp.status == "inconclusive":
            inconclusive.append(cmp)
    if np.any(fs > 1 + DECISIVE_MARGIN):
        d = int(ds[np.argmax(fs)])
        raise VerificationFailure(f"f({d}) exceeds 1", d=d)

    tail = sample[sample >= 5]
    tail_f = _lemma1_f_array(tail)
    pairs = 0
    for i in range(len(tail) - 1):
        a, b = int(tail[i]), int(tail[i + 1])
        pairs += 1
        if (tail_f[i + 1] - tail_f[i]) >= DECISIVE_MARGIN * tail_f[i + 1]:
            continue
        cmp = compare(f"f({a}) <= f({b})", "<=", lambda ar, a=a, b=b: (lemma1_f(a, ar), lemma1_f(b, ar)))
        if cmp.status == "fail":
            raise VerificationFailure(f"f decreases between d={a} and d={b}", d=b)
        if cmp.status == "inconclusive":
            inconclusive.append(cmp)

    k = int(np.argmax(fs))
    if len(tail):
        # f is increasing on the tail, so its max sits at the largest sampled d
        tmax, targ = float(tail_f[-1]), int(tail[-1])
    else:
        tmax = targ = None
    return Lemma1Report(d_max, len(ds), exhaustive, float(fs[k]), int(ds[k]), tmax, targ, pairs, inconclusive)


@dataclass(frozen=True)
class Lemma2Report:
    n_max: int
    equalities: tuple[int, ...]
    small_cases: tuple[tuple[int, int, int], ...]

    passed: bool = True


def verify_lemma2(n_max: int) -> Lemma2Report:
    """Check (n-2)^2 >= C(n,2) - 1 for 5 <= n <= n_max in exact integers.

    ``small_cases`` lists (n, (n-2)^2, C(n,2)-1) for n in 2..4, where the
    counting argument alone does not suffice for n = 3, 4.
    """
    if n_max < 5:
        raise InvalidParams("the (n-2)^2 comparison starts at n = 5")
    equalities = []
    for n in range(5, n_max + 1):
        quad, edges = (n - 2) ** 2, n * (n - 1) // 2 - 1
        if quad < edges:
            raise VerificationFailure(f"(n-2)^2 < C(n,2)-1 at n={n}")
        if quad == edges:
            equalities.append(n)
    small = tuple((n, (n - 2) ** 2, n * (n - 1) // 2 - 1) for n in (2, 3, 4))
    return Lemma2Report(n_max, tuple(equalities), small)


class RecursionTable:
    """T(d, n) from the base cases and the halving recursion.

    T(1, n) = n - 1, T(2, n) = (n - 2)^2, and for d >= 3 either
    T(d-1, n-1) when n < 2d, or T(d-1, n-1) + 2 T(d, n // 2) + 2.
    """

    def __init__(self, d_max: int, n_max: int):
        if d_max < 1 or n_max < d_max:
            raise InvalidParams(f"need n_max >= d_max >= 1, got {d_max}, {n_max}")
        self.d_max, self.n_max = d_max, n_max
        T: dict[tuple[int, int], int] = {}
        for d in range(1, d_max + 1):
            for n in range(d, n_max + 1):
                if d == 1:
                    T[d, n] = n - 1
                elif d == 2:
                    T[d, n] = (n - 2) ** 2
                elif n < 2 * d:
                    T[d, n] = T[d - 1, n - 1]
                else:
                    T[d, n] = T[d - 1, n - 1] + 2 * T[d, n // 2] + 2
        self.T = T

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.T[key]

    def __iter__(self):
        return iter(sorted(self.T))


def recursion_table(d_max: int, n_max: int) -> RecursionTable:
    return RecursionTable(d_max, n_max)


def log_swap_gap(y: float, z: float) -> float:
    """Relative gap between y^(log z) and z^(log y); zero in exact arithmetic."""
    a = y ** math.log2(z)
    b = z ** math.log2(y)
    return abs(a - b) / max(1.0, a)


CHAIN_RELATIONS = ("<=", "==", "==", "==", "<=", "==", "<=", "==", "<=", "<=", "==")


def _chain_lines(d: int, n: int, half, t_facet: int, t_half: int, ar) -> list:
    D, N = ar.num(d), ar.num(n)
    nd = N - D
    md = half - D
    lg, pw = ar.log2, ar.pw
    c = lg(ar.num(3))
    q = (D - 1) / D

    def lp(base, x):
        # base^(log x), with the x = 0 limit for base > 1
        return ar.num(0) if x == 0 else pw(base, lg(x))

    return [
        t_facet + 2 * t_half + 2,
        pw(nd, 1 + lg(D - 1)) + 2 * pw(md, 1 + lg(D)) + 2,
        nd * pw(nd, lg(D - 1)) + 2 * md * pw(md, lg(D)) + 2,
        nd * lp(D - 1, nd) + 2 * md * lp(D, md) + 2,
        nd * lp(q, nd) * lp(D, nd) + 2 * md * lp(D, md) + 2,
        nd * lp(q, nd) * lp(D, nd) + nd * lp(D, nd / 2) + 2,
        nd * lp(q, nd) * lp(D, nd) + nd * lp(D, nd) / D + 2,
        nd * pw(q, c) * lp(D, nd) + nd * lp(D, nd) / D + 2,
        nd * lp(D, nd) * (pw(q, c) + 1 / D + 2 / (nd * lp(D, nd))),
        nd * lp(D, nd) * (pw(q, c) + 1 / D + 2 / (D * lp(D, D))),
        nd * lp(D, nd),
        pw(nd, 1 + lg(D)),
    ]


@dataclass
class ChainReport:
    d: int
    n: int
    steps: dict[str, list[Comparison]]
    log_check: Comparison

    @property
    def passed(self) -> bool:
        return self.log_check.passed and all(c.passed for cs in self.steps.values() for c in cs)


def verify_theorem_chain(d: int, n: int, table: RecursionTable | None = None) -> ChainReport:
    """Evaluate each step of the induction chain for the bound at (d, n).

    Line 0 uses recursion-table values T(d-1, n-1) and T(d, n // 2).  The
    halved symbol count is taken both as the real n/2 and as n // 2.
    Raises ChainStepFailure on the first definite failure.
    """
    if d < 3 or n < 2 * d:
        raise InvalidParams(f"the chain needs d >= 3 and n >= 2d, got d={d}, n={n}")
    if table is None or table.d_max < d or table.n_max < n:
        table = RecursionTable(d, n)
    t_facet, t_half = table[d - 1, n - 1], table[d, n // 2]

    steps: dict[str, list[Comparison]] = {}
    for variant in ("real", "floor"):
        cache: dict[bool, list] = {}

        def lines(ar, variant=variant, cache=cache):
            if ar.extended not in cache:
                half = ar.num(n) / 2 if variant == "real" else ar.num(n // 2)
                cache[ar.extended] = _chain_lines(d, n, half, t_facet, t_half, ar)
            return cache[ar.extended]

        out = []
        for i, rel in enumerate(CHAIN_RELATIONS):
            cmp = compare(f"line {i} {rel} line {i + 1}", rel, lambda ar, i=i: (lines(ar)[i], lines(ar)[i + 1]))
            if cmp.status == "fail":
                raise ChainStepFailure(i, cmp.lhs, cmp.rhs, variant)
            out.append(cmp)
        steps[variant] = out

    log_check = compare("log 3 <= log(n-d)", "<=", lambda ar: (ar.log2(ar.num(3)), ar.log2(ar.num(n - d))))
    if log_check.status == "fail":
        raise ChainStepFailure(-1, log_check.lhs, log_check.rhs, "log")
    return ChainReport(d, n, steps, log_check)


TABLE_COLUMNS = ("d", "n", "hirsch", "haehnle", "todd", "spg", "kk", "T")


def table_rows(d_max: int, n_max: int, d_min: int = 1, n_min: int | None = None) -> list[dict]:
    table = RecursionTable(d_max, n_max)
    rows = []
    for d in range(d_min, d_max + 1):
        for n in range(max(d, n_min or d), n_max + 1):
            b = bound_values(d, n)
            rows.append(
                dict(d=d, n=n, hirsch=b.hirsch, haehnle=b.haehnle, todd=b.todd, spg=b.spg, kk=b.kk, T=table[d, n])
            )
    return rows


def format_machine_row(row: dict) -> str:
    return " ".join(f"{row[k]:.12g}" if isinstance(row[k], float) else str(row[k]) for k in TABLE_COLUMNS)


def format_table(rows: list[dict], floor: bool = False) -> str:
    def cell(v):
        if isinstance(v, float):
            return str(math.floor(v)) if floor else f"{v:.4f}"
        return str(v)

    cells = [list(TABLE_COLUMNS)] + [[cell(r[k]) for k in TABLE_COLUMNS] for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(TABLE_COLUMNS))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in cells) + "\n"
