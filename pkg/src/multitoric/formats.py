"""Text formats for posets and graphs.

Poset files::

    poset n=5
    # x1 < x2 < x3 and x1 < x4 < x5
    cover 1 2
    cover 2 3

Graph files use the header ``graph n=<N>`` and lines ``edge i j``.  Indices
are 1-based and ``#`` starts a comment.
"""
from __future__ import annotations

import re
from pathlib import Path

from .errors import CycleDetected, IndexOutOfRange, ParseError
from .graphs import Graph
from .posets import Poset, poset_from_covers

_HEADER = re.compile(r"^(poset|graph)\s+n\s*=\s*(\d+)$")


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _parse(text: str, kind: str, keyword: str):
    header = None
    pairs = []
    for no, line in _lines(text):
        if header is None:
            m = _HEADER.match(line)
            if not m or m.group(1) != kind:
                raise ParseError(f"expected header '{kind} n=<N>', got {line!r}", no)
            header = int(m.group(2))
            if header < 1:
                raise ParseError(f"{kind} must have at least one element", no)
            continue
        parts = line.split()
        if len(parts) != 3 or parts[0] != keyword:
            raise ParseError(f"expected '{keyword} i j', got {line!r}", no)
        try:
            i, j = int(parts[1]), int(parts[2])
        except ValueError:
            raise ParseError(f"indices must be integers in {line!r}", no) from None
        if not (1 <= i <= header and 1 <= j <= header):
            raise ParseError(f"index outside 1..{header} in {line!r}", no)
        pairs.append((no, i - 1, j - 1))
    if header is None:
        raise ParseError(f"missing '{kind} n=<N>' header", 1)
    return header, pairs


def parse_poset(text: str) -> Poset:
    n, pairs = _parse(text, "poset", "cover")
    try:
        return poset_from_covers(n, [(i, j) for _, i, j in pairs])
    except (CycleDetected, IndexOutOfRange) as exc:
        # a cycle is a property of several lines, so no single line is blamed
        raise ParseError(str(exc)) from exc


def parse_graph(text: str) -> Graph:
    n, pairs = _parse(text, "graph", "edge")
    for no, i, j in pairs:
        if i == j:
            raise ParseError("loops are not allowed", no)
    return Graph.from_edges(n, [(i, j) for _, i, j in pairs])


def read_poset(path) -> Poset:
    return parse_poset(Path(path).read_text())


def read_graph(path) -> Graph:
    return parse_graph(Path(path).read_text())


def format_poset(P: Poset) -> str:
    lines = [f"poset n={P.n}"] + [f"cover {i + 1} {j + 1}" for i, j in P.covers]
    return "\n".join(lines) + "\n"


def format_graph(G: Graph) -> str:
    lines = [f"graph n={G.n}"] + [f"edge {u + 1} {v + 1}" for u, v in G.edges]
    return "\n".join(lines) + "\n"
