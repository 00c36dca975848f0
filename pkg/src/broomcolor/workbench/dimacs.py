"""DIMACS ``.col`` reading and writing.

Files use ``p edge n m`` headers and 1-indexed ``e u v`` lines; internal ids
are 0-indexed.  Emission is canonical (sorted edges, u < v) so that
``parse(emit(G)) == G`` and ``emit(parse(text))`` is stable.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

from broomcolor.errors import ParseError
from broomcolor.graph import Graph


def parse_dimacs(text: str) -> Graph:
    n = m = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise ParseError("second 'p' header", lineno)
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise ParseError(f"expected 'p edge N M', got {line!r}", lineno)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(f"non-integer counts in {line!r}", lineno) from None
            if n < 0 or m < 0:
                raise ParseError("negative counts in header", lineno)
        elif parts[0] == "e":
            if n is None:
                raise ParseError("edge line before the 'p' header", lineno)
            if len(parts) != 3:
                raise ParseError(f"expected 'e U V', got {line!r}", lineno)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError(f"non-integer vertex in {line!r}", lineno) from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"vertex out of range 1..{n} in {line!r}", lineno)
            if u == v:
                raise ParseError(f"self-loop on vertex {u}", lineno)
            key = (min(u, v) - 1, max(u, v) - 1)
            if key in seen:
                raise ParseError(f"duplicate edge {u} {v}", lineno)
            seen.add(key)
            edges.append(key)
        else:
            raise ParseError(f"unrecognised line {line!r}", lineno)
    if n is None:
        raise ParseError("missing 'p edge N M' header")
    if len(edges) != m:
        raise ParseError(f"header announces {m} edges but {len(edges)} were given")
    return Graph(n, edges)


def emit_dimacs(G: Graph, comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p edge {G.n} {G.m}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in G.edges())
    return "\n".join(lines) + "\n"


def read_dimacs(path: str | Path) -> Graph:
    return parse_dimacs(Path(path).read_text())


def write_dimacs(G: Graph, path: str | Path, comments: Iterable[str] = ()) -> None:
    Path(path).write_text(emit_dimacs(G, comments))
