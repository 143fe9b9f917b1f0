"""Reading and writing the ``plmorse 1`` mesh text format.

Layout (whitespace-separated ASCII)::

    plmorse 1
    V F
    f_0 [x y z]        # V vertex lines
    ...
    i j k              # F face lines, 0-based vertex indices
    ...

Blank lines and lines starting with ``#`` are ignored. Coordinates are
optional but must be given for all vertices or for none. Errors carry
1-based line and column numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .errors import ParseError
from .surf import SurfaceMesh, build_surface

HEADER = "plmorse 1"


@dataclass(frozen=True)
class MeshFile:
    mesh: SurfaceMesh
    values: tuple[float, ...]


def _tokens(line: str) -> list[tuple[str, int]]:
    out, i = [], 0
    while i < len(line):
        if line[i].isspace():
            i += 1
            continue
        j = i
        while j < len(line) and not line[j].isspace():
            j += 1
        out.append((line[i:j], i + 1))
        i = j
    return out


def _int(tok: str, line: int, col: int, what: str) -> int:
    try:
        value = int(tok)
    except ValueError:
        raise ParseError(f"expected integer {what}, got {tok!r}", line, col) from None
    if value < 0:
        raise ParseError(f"{what} must be non-negative, got {value}", line, col)
    return value


def _float(tok: str, line: int, col: int, what: str) -> float:
    try:
        value = float(tok)
    except ValueError:
        raise ParseError(f"expected number for {what}, got {tok!r}", line, col) from None
    if not math.isfinite(value):
        raise ParseError(f"{what} must be finite, got {tok!r}", line, col)
    return value


def parse_mesh(text: str) -> MeshFile:
    """Parse ``plmorse 1`` text into a validated mesh plus vertex values.

    Format problems raise :class:`ParseError`; a well-formed file describing
    a bad surface raises the mesh errors of :func:`build_surface`.
    """
    lines = [
        (n, raw) for n, raw in enumerate(text.splitlines(), start=1)
        if raw.strip() and not raw.lstrip().startswith("#")
    ]
    if not lines:
        raise ParseError("empty file", 1, 1)
    n, raw = lines[0]
    if raw.split() != HEADER.split():
        raise ParseError(f"expected header {HEADER!r}", n, 1)
    if len(lines) < 2:
        raise ParseError("missing counts line", n + 1, 1)
    n, raw = lines[1]
    toks = _tokens(raw)
    if len(toks) != 2:
        raise ParseError("counts line must be 'V F'", n, toks[2][1] if len(toks) > 2 else 1)
    nv = _int(toks[0][0], n, toks[0][1], "vertex count")
    nf = _int(toks[1][0], n, toks[1][1], "face count")
    body = lines[2:]
    if len(body) < nv + nf:
        last = body[-1][0] + 1 if body else n + 1
        raise ParseError(f"expected {nv} vertex and {nf} face lines, found {len(body)} lines", last, 1)
    if len(body) > nv + nf:
        n, raw = body[nv + nf]
        raise ParseError("unexpected trailing content", n, _tokens(raw)[0][1])

    values, coords = [], []
    with_coords = None
    for n, raw in body[:nv]:
        toks = _tokens(raw)
        if len(toks) not in (1, 4):
            raise ParseError("vertex line must be 'f' or 'f x y z'", n, toks[min(len(toks) - 1, 1)][1])
        has = len(toks) == 4
        if with_coords is None:
            with_coords = has
        elif has != with_coords:
            raise ParseError("coordinates must be given for all vertices or none", n, toks[0][1])
        values.append(_float(toks[0][0], n, toks[0][1], "vertex value"))
        if has:
            coords.append(tuple(_float(t, n, c, "coordinate") for t, c in toks[1:]))

    tris = []
    for n, raw in body[nv:]:
        toks = _tokens(raw)
        if len(toks) != 3:
            raise ParseError("face line must be 'i j k'", n, toks[min(len(toks) - 1, 3)][1])
        tri = []
        for t, c in toks:
            i = _int(t, n, c, "vertex index")
            if i >= nv:
                raise ParseError(f"vertex index {i} out of range 0..{nv - 1}", n, c)
            tri.append(i)
        if len(set(tri)) != 3:
            raise ParseError(f"degenerate face {tri}", n, toks[0][1])
        tris.append(tuple(tri))
    mesh = build_surface(tris, nv, coords if with_coords else None)
    return MeshFile(mesh, tuple(values))


def read_mesh(path: str | Path) -> MeshFile:
    return parse_mesh(Path(path).read_text(encoding="ascii", errors="replace"))


def format_mesh(mesh: SurfaceMesh, values: Sequence[float]) -> str:
    """Serialize; floats use ``repr`` so a round trip is exact."""
    out = [HEADER, f"{mesh.n_vertices} {mesh.n_faces}"]
    for v in range(mesh.n_vertices):
        row = [repr(float(values[v]))]
        if mesh.coords is not None:
            row += [repr(float(x)) for x in mesh.coords[v]]
        out.append(" ".join(row))
    out += [f"{a} {b} {c}" for a, b, c in mesh.triangles]
    return "\n".join(out) + "\n"


def write_mesh(path: str | Path, mesh: SurfaceMesh, values: Sequence[float]) -> None:
    Path(path).write_text(format_mesh(mesh, values), encoding="ascii")


__all__ = ["HEADER", "MeshFile", "format_mesh", "parse_mesh", "read_mesh", "write_mesh"]
