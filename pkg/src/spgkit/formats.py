"""Plain-text formats for SPGs and simple-polytope incidence data.

SPG file::

    spg <d> <n>
    vertex <id>: <s1,...,sd>; <s1,...,sd>; ...
    edge <id> <id>

Incidence file::

    incidence <num_vertices> <num_facets> <d>
    <facet> <facet> ...        (one line per polytope vertex, 1-based)

``#`` starts a comment anywhere on a line; blank lines are ignored.
"""

from __future__ import annotations

from pathlib import Path

from .core import GraphLike, Spg, build_spg
from .errors import ParseError


def _records(text: str):
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _int(tok: str, lineno: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(lineno, f"expected integer {what}, got {tok!r}") from None


def parse_spg(text: str) -> Spg:
    """Parse the SPG text format; structural problems raise ``InvalidSpg``."""
    records = list(_records(text))
    if not records:
        raise ParseError(1, "empty input, expected 'spg <d> <n>' header")
    lineno, header = records[0]
    parts = header.split()
    if parts[0] != "spg" or len(parts) != 3:
        raise ParseError(lineno, f"expected 'spg <d> <n>' header, got {header!r}")
    d = _int(parts[1], lineno, "d")
    n = _int(parts[2], lineno, "n")

    classes: dict[int, list[tuple[int, ...]]] = {}
    edges = []
    for lineno, line in records[1:]:
        directive, _, rest = line.partition(" ")
        if directive == "vertex":
            head, colon, body = rest.partition(":")
            if not colon:
                raise ParseError(lineno, "vertex line needs 'vertex <id>: ...'")
            cid = _int(head.strip(), lineno, "vertex id")
            if cid in classes:
                raise ParseError(lineno, f"duplicate vertex id {cid}")
            dsets = []
            for chunk in body.split(";"):
                chunk = chunk.strip()
                if not chunk:
                    continue
                syms = tuple(_int(t.strip(), lineno, "symbol") for t in chunk.split(","))
                if len(syms) != d or len(set(syms)) != d:
                    raise ParseError(lineno, f"d-set {chunk!r} does not have {d} distinct symbols")
                dsets.append(syms)
            classes[cid] = dsets
        elif directive == "edge":
            toks = rest.split()
            if len(toks) != 2:
                raise ParseError(lineno, "edge line needs exactly two ids")
            edges.append((_int(toks[0], lineno, "id"), _int(toks[1], lineno, "id")))
        elif directive == "spg":
            raise ParseError(lineno, "repeated header")
        else:
            raise ParseError(lineno, f"unknown directive {directive!r}")
    return build_spg(d, n, classes, edges)


def dump_spg(g: GraphLike) -> str:
    lines = [f"spg {g.d} {g.n}"]
    for c in g.classes:
        body = "; ".join(",".join(map(str, a)) for a in sorted(c.dsets))
        lines.append(f"vertex {c.id}: {body}")
    for a, b in sorted(g.edges):
        lines.append(f"edge {a} {b}")
    return "\n".join(lines) + "\n"


def load_spg(path) -> Spg:
    return parse_spg(Path(path).read_text())


def parse_incidence(text: str) -> tuple[int, list[list[bool]]]:
    """Return ``(d, matrix)`` where ``matrix[v][f]`` says vertex v lies on facet f+1."""
    records = list(_records(text))
    if not records:
        raise ParseError(1, "empty input, expected 'incidence <V> <F> <d>' header")
    lineno, header = records[0]
    parts = header.split()
    if parts[0] != "incidence" or len(parts) != 4:
        raise ParseError(lineno, f"expected 'incidence <V> <F> <d>' header, got {header!r}")
    nv, nf, d = (_int(t, lineno, "header field") for t in parts[1:])
    rows = records[1:]
    if len(rows) != nv:
        raise ParseError(lineno, f"header promises {nv} vertices, found {len(rows)}")
    matrix = []
    for lineno, line in rows:
        row = [False] * nf
        for tok in line.split():
            f = _int(tok, lineno, "facet index")
            if not 1 <= f <= nf:
                raise ParseError(lineno, f"facet index {f} outside [1, {nf}]")
            row[f - 1] = True
        matrix.append(row)
    return d, matrix


def dump_incidence(d: int, matrix) -> str:
    nf = len(matrix[0]) if matrix else 0
    lines = [f"incidence {len(matrix)} {nf} {d}"]
    for row in matrix:
        lines.append(" ".join(str(f + 1) for f, on in enumerate(row) if on))
    return "\n".join(lines) + "\n"
