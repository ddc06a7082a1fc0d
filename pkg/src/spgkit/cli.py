"""``spg`` command line.

Exit status: 0 on success (and when every checked property holds), 1 when a
property or verification fails, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys

from . import bounds, generators, metrics, pathfinder, properties, search
from .core import reduce_dimension, restrict
from .errors import (
    DimensionUnderflow,
    DisconnectedRestriction,
    EmptyRestriction,
    InvalidParams,
    InvalidSpg,
    DuplicateVertex,
    NotSimple,
    ParseError,
    ResourceLimit,
    SpgError,
    StuckRecursion,
    UnknownId,
)
from .formats import dump_spg, load_spg, parse_incidence


class UsageError(Exception):
    pass


def _tok(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.12g}"
    if isinstance(v, (list, tuple)):
        return ",".join(_tok(x) for x in v) if v else "-"
    return str(v)


class _Out:
    def __init__(self, mode: str, stream):
        self.mode, self.stream = mode, stream

    def _print(self, text: str) -> None:
        self.stream.write(text if text.endswith("\n") else text + "\n")

    def record(self, kind: str | None, fields: dict, human: str | None = None) -> None:
        if self.mode == "json":
            payload = {"record": kind or "row"}
            payload.update({k: (list(v) if isinstance(v, tuple) else v) for k, v in fields.items()})
            self._print(json.dumps(payload))
        elif self.mode == "machine" or human is None:
            toks = [_tok(v) for v in fields.values()]
            self._print(" ".join(([kind] if kind else []) + toks))
        else:
            self._print(human)

    def spg(self, g, comment: str | None = None) -> None:
        if self.mode == "json":
            self._print(
                json.dumps(
                    {
                        "record": "spg",
                        "d": g.d,
                        "n": g.n,
                        "classes": {str(c.id): [list(a) for a in sorted(c.dsets)] for c in g.classes},
                        "edges": [list(e) for e in sorted(g.edges)],
                    }
                )
            )
        else:
            if comment:
                self._print(f"# {comment}")
            self._print(dump_spg(g).rstrip("\n"))


def _symbols(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"bad symbol list {text!r}") from None


def _witness_text(w) -> str:
    return "-" if w is None else str(w).replace(" ", ";")


def _report_lines(out: _Out, reports) -> bool:
    ok = True
    for r in reports:
        ok &= r.holds
        status = "holds" if r.holds else f"fails ({r.witness})"
        out.record("property", {"name": r.property.value, "holds": r.holds, "witness": _witness_text(r.witness)},
                   f"{r.property.value}: {status}")
    return ok


def cmd_validate(args, out: _Out) -> int:
    g = load_spg(args.file)
    out.record("structure", {"d": g.d, "n": g.n, "classes": len(g.classes), "edges": len(g.edges)},
               f"valid SPG: d={g.d} n={g.n} classes={len(g.classes)} edges={len(g.edges)}")
    return 0 if _report_lines(out, properties.check_all(g, strict=args.strict)) else 1


def cmd_properties(args, out: _Out) -> int:
    g = load_spg(args.file)
    return 0 if _report_lines(out, properties.check_all(g, strict=args.strict)) else 1


def cmd_diameter(args, out: _Out) -> int:
    g = load_spg(args.file)
    d = metrics.diameter(g)
    out.record("diameter", {"value": d}, f"diameter: {d}")
    return 0


def cmd_restrict(args, out: _Out) -> int:
    g = load_spg(args.file)
    F = _symbols(args.symbols)
    rg = restrict(g, F)
    label = "{" + ",".join(map(str, sorted(F))) + "}"
    if not args.reduce:
        out.record("restriction", {"symbols": tuple(sorted(F)), "classes": len(rg.classes),
                                   "edges": len(rg.edges), "connected": rg.is_connected()},
                   f"restriction to F={label}: {len(rg.classes)} classes, {len(rg.edges)} edges, "
                   f"{'connected' if rg.is_connected() else 'disconnected'}")
        if rg.classes:
            out.spg(rg)
        return 0
    try:
        red, relabel = reduce_dimension(rg)
    except DimensionUnderflow as exc:
        raise UsageError(str(exc)) from None
    except (EmptyRestriction, DisconnectedRestriction) as exc:
        out.record("error", {"message": str(exc)}, f"cannot reduce: {exc}")
        return 1
    pairs = tuple(f"{a}:{b}" for a, b in sorted(relabel.items()))
    out.record("relabel", {"map": pairs}, "relabel " + " ".join(pairs))
    out.spg(red)
    return 0


def cmd_path(args, out: _Out) -> int:
    g = load_spg(args.file)
    for i in (args.src, args.dst):
        if i not in g.by_id:
            raise UsageError(f"unknown class id {i}")
    if not args.certified:
        p = metrics.shortest_path(g, args.src, args.dst)
        out.record("path", {"length": len(p) - 1, "ids": tuple(p)}, f"path ({len(p) - 1}): {' '.join(map(str, p))}")
        return 0
    try:
        p, cert = pathfinder.certified_path(g, args.src, args.dst)
    except StuckRecursion as exc:
        out.record("stuck", {"symbols": exc.symbols},
                   f"dimension reduction violated: restriction to F={set(exc.symbols)} is disconnected")
        return 1
    out.record("path", {"length": len(p) - 1, "ids": tuple(p)}, f"path ({len(p) - 1}): {' '.join(map(str, p))}")
    if out.mode == "json":
        out.record("certificate", {"text": pathfinder.dump_certificate(cert)})
    else:
        out._print(pathfinder.dump_certificate(cert))
    err = pathfinder.check_certificate(g, p, cert)
    bound = bounds.spg_bound(g.d, len(g.support))
    out.record("verified", {"ok": err is None, "bound": bound, "diagnostic": err},
               f"verified: {'yes' if err is None else 'NO - ' + err} (bound {bound:.6g})")
    return 0 if err is None else 1


def _row_human(rows, floor) -> str:
    return bounds.format_table(rows, floor=floor)


def _emit_rows(out: _Out, rows, floor=False) -> None:
    if out.mode == "human":
        out._print(_row_human(rows, floor))
        return
    for row in rows:
        out.record(None, {k: row[k] for k in bounds.TABLE_COLUMNS})


def cmd_bounds(args, out: _Out) -> int:
    rows = bounds.table_rows(args.d, args.n, d_min=args.d, n_min=args.n)
    rows = [r for r in rows if r["n"] == args.n]
    _emit_rows(out, rows, args.floor)
    return 0


def cmd_table(args, out: _Out) -> int:
    _emit_rows(out, bounds.table_rows(args.max_d, args.max_n), args.floor)
    return 0


def cmd_lemmas(args, out: _Out) -> int:
    r1 = bounds.verify_lemma1(args.max_d, samples=args.samples, seed=args.seed)
    out.record("lemma1", {"d_max": r1.d_max, "checked": r1.checked, "exhaustive": r1.exhaustive,
                          "max_f": r1.max_f, "argmax": r1.argmax, "tail_max": r1.tail_max,
                          "tail_argmax": r1.tail_argmax, "pass": r1.passed},
               f"f(d) <= 1 for {r1.checked} values of d in [3, {r1.d_max}] "
               f"({'all' if r1.exhaustive else 'sampled'}); max f = {r1.max_f:.6f} at d={r1.argmax}; "
               f"f non-decreasing on {r1.monotone_pairs} sampled pairs from d=5: "
               f"{'pass' if r1.passed else 'INCONCLUSIVE'}")
    r2 = bounds.verify_lemma2(args.max_n)
    out.record("lemma2", {"n_max": r2.n_max, "equalities": r2.equalities, "pass": r2.passed},
               f"(n-2)^2 >= C(n,2)-1 for 5 <= n <= {r2.n_max}, equality at n={list(r2.equalities)}")
    return 0 if r1.passed and r2.passed else 1


def cmd_chain(args, out: _Out) -> int:
    try:
        rep = bounds.verify_theorem_chain(args.d, args.n)
    except bounds.ChainStepFailure as exc:
        out.record("fail", {"step": exc.step, "variant": exc.variant, "lhs": exc.lhs, "rhs": exc.rhs}, str(exc))
        return 1
    for variant, steps in rep.steps.items():
        for i, c in enumerate(steps):
            out.record("step", {"variant": variant, "index": i, "lhs": c.lhs, "relation": c.relation,
                                "rhs": c.rhs, "status": c.status, "extended": c.extended},
                       f"[{variant:5}] {i:2}: {c.lhs:.10g} {c.relation} {c.rhs:.10g}  {c.status}"
                       + (" (extended precision)" if c.extended else ""))
    c = rep.log_check
    out.record("logcheck", {"lhs": c.lhs, "rhs": c.rhs, "status": c.status},
               f"log 3 <= log(n-d): {c.lhs:.10g} <= {c.rhs:.10g}  {c.status}")
    out.record("chain", {"d": rep.d, "n": rep.n, "pass": rep.passed},
               f"chain d={rep.d} n={rep.n}: {'pass' if rep.passed else 'INCONCLUSIVE'}")
    return 0 if rep.passed else 1


def cmd_search(args, out: _Out) -> int:
    if args.mode == "exact":
        res = search.sigma_exact(args.d, args.n, symmetry=not args.no_symmetry, workers=args.workers)
    else:
        res = search.sigma_search(args.d, args.n, args.budget, args.seed, workers=args.workers)
    out.record("sigma", {"d": res.d, "n": res.n, "value": res.value, "exhaustive": res.exhaustive,
                         "explored": res.explored}, res.summary())
    out.spg(res.witness)
    return 0


def cmd_gen(args, out: _Out) -> int:
    if args.family == "incidence":
        if not args.file:
            raise UsageError("gen incidence needs a file")
        with open(args.file) as fh:
            d, matrix = parse_incidence(fh.read())
        g = generators.from_incidence(d, matrix)
    else:
        if args.d is None:
            raise UsageError(f"gen {args.family} needs --d")
        g = generators.gen_hypercube(args.d) if args.family == "hypercube" else generators.gen_simplex(args.d)
    out.spg(g)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--machine", action="store_true", help="line-record output")
    fmt.add_argument("--json", action="store_true", help="one JSON object per record")

    p = argparse.ArgumentParser(prog="spg", description="Subset partition graph workbench")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    for name, func, help_ in (
        ("validate", cmd_validate, "validate a file and check all four properties"),
        ("properties", cmd_properties, "check the four properties"),
    ):
        sp = add(name, func, help_)
        sp.add_argument("file")
        sp.add_argument("--strict", action="store_true", help="strong adjacency over all class pairs")

    add("diameter", cmd_diameter, "exact diameter").add_argument("file")

    sp = add("restrict", cmd_restrict, "restrict to the d-sets containing given symbols")
    sp.add_argument("file")
    sp.add_argument("--symbols", required=True, help="comma-separated symbols, may be empty")
    sp.add_argument("--reduce", action="store_true", help="also drop the symbols and relabel")

    sp = add("path", cmd_path, "path between two classes")
    sp.add_argument("file")
    sp.add_argument("--from", dest="src", type=int, required=True)
    sp.add_argument("--to", dest="dst", type=int, required=True)
    sp.add_argument("--certified", action="store_true", help="recursive construction with certificate")

    sp = add("bounds", cmd_bounds, "bound values at one (d, n)")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--floor", action="store_true", help="display real bounds rounded down")

    sp = add("table", cmd_table, "bound and recursion table")
    sp.add_argument("--max-d", type=int, required=True)
    sp.add_argument("--max-n", type=int, required=True)
    sp.add_argument("--floor", action="store_true")

    sp = add("lemmas", cmd_lemmas, "numeric checks of the two lemmas")
    sp.add_argument("--max-d", type=int, required=True)
    sp.add_argument("--max-n", type=int, default=100)
    sp.add_argument("--samples", type=int, default=None)
    sp.add_argument("--seed", type=int, default=0)

    sp = add("chain", cmd_chain, "replay the induction inequality chain")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)

    sp = add("search", cmd_search, "extremal diameter search")
    sp.add_argument("mode", choices=("exact", "random"))
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--budget", type=int, default=10_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--no-symmetry", action="store_true", help="disable symbol-permutation pruning")

    sp = add("gen", cmd_gen, "generate hypercube, simplex, or incidence-based SPGs")
    sp.add_argument("family", choices=("hypercube", "simplex", "incidence"))
    sp.add_argument("file", nargs="?")
    sp.add_argument("--d", type=int)
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(stderr), contextlib.redirect_stdout(stdout):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    mode = "json" if args.json else "machine" if args.machine else "human"
    out = _Out(mode, stdout)
    try:
        return args.func(args, out)
    except InvalidSpg as exc:
        stderr.write("error: invalid SPG\n")
        for v in exc.violations:
            stderr.write(f"  {v}\n")
        return 2
    except (UsageError, ParseError, InvalidParams, UnknownId, ResourceLimit, NotSimple, DuplicateVertex, OSError) as exc:
        stderr.write(f"error: {exc}\n")
        return 2
    except SpgError as exc:
        stderr.write(f"error: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
