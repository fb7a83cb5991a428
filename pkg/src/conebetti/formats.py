"""Text formats for ideals, rooted trees and hypergraphs.

Ideal::

    vars 4
    x1 x2
    x3^2        # exponent omitted when 1

Tree (``child parent`` pairs)::

    tree 3 1
    2 1
    3 1

Hypergraph (one edge per line)::

    hypergraph 3
    1 2
    2 3

Blank lines and ``#`` comments are ignored everywhere.
"""

from __future__ import annotations

import re
from typing import Iterator

from .errors import InputError, ParseError
from .hypergraph import Hypergraph
from .monomial import MonomialIdeal
from .trees import RootedTree

_VAR = re.compile(r"x(\d+)(?:\^(\d+))?\Z")


def _lines(text: str) -> Iterator[tuple[int, int, list[tuple[int, str]]]]:
    """Yield ``(line number, first column, [(column, token), ...])`` for content lines."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", line)]
        if tokens:
            yield lineno, tokens[0][0], tokens


def _int(tok: tuple[int, str], lineno: int, what: str) -> int:
    col, s = tok
    if not s.isdigit():
        raise ParseError(f"expected {what}, got {s!r}", lineno, col)
    return int(s)


def _header(lines, keyword: str, nargs: int):
    try:
        lineno, col, toks = next(lines)
    except StopIteration:
        raise ParseError(f"empty input; expected '{keyword}' header", 1) from None
    if toks[0][1] != keyword or len(toks) != nargs + 1:
        raise ParseError(f"expected header '{keyword}' with {nargs} integer(s)", lineno, col)
    return lineno, [_int(t, lineno, "an integer") for t in toks[1:]]


def parse_ideal(text: str) -> MonomialIdeal:
    lines = _lines(text)
    hl, (n,) = _header(lines, "vars", 1)
    gens = []
    for lineno, _, toks in lines:
        exps = [0] * n
        for col, tok in toks:
            if tok == "1":
                continue
            m = _VAR.match(tok)
            if not m:
                raise ParseError(f"bad variable token {tok!r}", lineno, col)
            idx, e = int(m.group(1)), int(m.group(2) or 1)
            if not 1 <= idx <= n:
                raise ParseError(f"variable x{idx} outside x1..x{n}", lineno, col)
            if e < 1:
                raise ParseError("exponent must be positive", lineno, col)
            exps[idx - 1] += e
        gens.append(tuple(exps))
    return MonomialIdeal(n, gens)


def render_ideal(I: MonomialIdeal) -> str:
    out = [f"vars {I.n}"]
    for g in I.gens:
        toks = [f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in enumerate(g) if e]
        out.append(" ".join(toks) if toks else "1")
    return "\n".join(out) + "\n"


def parse_tree(text: str) -> RootedTree:
    lines = _lines(text)
    hl, (n, root) = _header(lines, "tree", 2)
    parent: dict[int, int] = {}
    for lineno, col, toks in lines:
        if len(toks) != 2:
            raise ParseError("expected 'child parent'", lineno, col)
        child, par = (_int(t, lineno, "a vertex") for t in toks)
        for (c, _), v in zip(toks, (child, par)):
            if not 1 <= v <= n:
                raise ParseError(f"vertex {v} outside 1..{n}", lineno, c)
        if child in parent:
            raise ParseError(f"vertex {child} has two parents", lineno, col)
        if child == root:
            raise ParseError("the root cannot have a parent", lineno, col)
        parent[child] = par
    try:
        return RootedTree(n, root, parent)
    except InputError as e:
        raise ParseError(str(e), hl) from e


def render_tree(T: RootedTree) -> str:
    return "\n".join([f"tree {T.n} {T.root}"] + [f"{c} {p}" for c, p in T.parent]) + "\n"


def parse_hypergraph(text: str) -> Hypergraph:
    lines = _lines(text)
    _, (n,) = _header(lines, "hypergraph", 1)
    edges: list[tuple[frozenset[int], int]] = []
    for lineno, col, toks in lines:
        verts = []
        for t in toks:
            v = _int(t, lineno, "a vertex")
            if not 1 <= v <= n:
                raise ParseError(f"vertex {v} outside 1..{n}", lineno, t[0])
            verts.append(v)
        e = frozenset(verts)
        if len(e) < 2:
            raise ParseError("edges need at least two distinct vertices", lineno, col)
        for other, where in edges:
            if other <= e or e <= other:
                raise ParseError(f"edge is comparable with the edge on line {where}", lineno, col)
        edges.append((e, lineno))
    return Hypergraph(n, [e for e, _ in edges])


def render_hypergraph(H: Hypergraph) -> str:
    return "\n".join([f"hypergraph {H.n}"] + [" ".join(map(str, e)) for e in H.edges]) + "\n"
