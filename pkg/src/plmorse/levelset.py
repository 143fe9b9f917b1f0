"""Level curves and slabs of a PL field.

At a value ``c`` that no vertex takes, ``f^{-1}(c)`` meets every triangle in
at most one straight segment, so its components are closed polylines that
can be traced triangle by triangle. A slab ``f^{-1}[lo, hi]`` meets every
triangle in a convex piece, so its components come out of a union-find over
triangles glued along shared edges and vertices that the slab touches.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from typing import Sequence

from networkx.utils import UnionFind

from .errors import CurveTouchesVertex
from .surf import Edge, SurfaceMesh, edge_key


@dataclass(frozen=True)
class LevelCurve:
    value: float
    crossings: tuple[tuple[int, Edge, Edge], ...]

    @property
    def triangles(self) -> tuple[int, ...]:
        return tuple(c[0] for c in self.crossings)

    @property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(c[1] for c in self.crossings)

    def __len__(self) -> int:
        return len(self.crossings)

    def key(self) -> tuple:
        return (self.value, min(self.edges))

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "crossings": [[t, list(a), list(b)] for t, a, b in self.crossings],
        }


def crossed_edges(m: SurfaceMesh, values: Sequence[float], c: float) -> list[Edge]:
    return [(u, v) for u, v in m.edges if (values[u] - c) * (values[v] - c) < 0]


def trace_level_curves(m: SurfaceMesh, values: Sequence[float], c: float) -> list[LevelCurve]:
    """All components of ``f^{-1}(c)``, sorted by their smallest crossed edge."""
    if any(x == c for x in values):
        raise CurveTouchesVertex(f"level {c} passes through a vertex")
    crossed = set(crossed_edges(m, values, c))
    exit_of: dict[tuple[int, Edge], Edge] = {}
    for t, tri in enumerate(m.triangles):
        es = [edge_key(tri[i], tri[(i + 1) % 3]) for i in range(3)]
        hit = [e for e in es if e in crossed]
        if hit:
            a, b = hit
            exit_of[(t, a)] = b
            exit_of[(t, b)] = a
    seen: set[Edge] = set()
    curves = []
    for e0 in sorted(crossed):
        if e0 in seen:
            continue
        t = min(m.edge_faces(e0))
        e = e0
        crossings = []
        while True:
            seen.add(e)
            out = exit_of[(t, e)]
            crossings.append((t, e, out))
            faces = m.edge_faces(out)
            t = faces[0] if faces[1] == t else faces[1]
            e = out
            if e == e0:
                break
        curves.append(LevelCurve(c, tuple(crossings)))
    return curves


def regular_level(values: Sequence[float], a: float, b: float) -> float:
    """A value strictly between ``a`` and ``b`` that no vertex takes.

    The midpoint when possible; otherwise the midpoint between it and the
    next vertex value above.
    """
    mid = (a + b) / 2
    vals = sorted(set(values))
    i = bisect.bisect_left(vals, mid)
    if i < len(vals) and vals[i] == mid:
        nxt = vals[i + 1] if i + 1 < len(vals) else b
        mid = (mid + min(nxt, b)) / 2
    return mid


@dataclass(frozen=True)
class SlabComponents:
    lo: float
    hi: float
    face_comp: dict[int, int]
    vertex_comp: dict[int, int]
    n: int

    def faces(self, k: int) -> list[int]:
        return [t for t, c in self.face_comp.items() if c == k]

    def vertices(self, k: int) -> list[int]:
        return [v for v, c in self.vertex_comp.items() if c == k]


def slab_components(
    m: SurfaceMesh, values: Sequence[float], lo: float = -math.inf, hi: float = math.inf
) -> SlabComponents:
    def touches(*vs):
        return min(values[v] for v in vs) <= hi and max(values[v] for v in vs) >= lo

    faces = [t for t, tri in enumerate(m.triangles) if touches(*tri)]
    uf = UnionFind(faces)
    for e, ds in m.edge_darts.items():
        if len(ds) == 2 and touches(*e):
            uf.union(ds[0] // 3, ds[1] // 3)
    inside = [v for v in range(m.n_vertices) if lo <= values[v] <= hi]
    for v in inside:
        star = m.vertex_faces[v]
        for t in star[1:]:
            uf.union(star[0], t)
    roots: dict = {}
    face_comp = {}
    for t in faces:
        r = uf[t]
        if r not in roots:
            roots[r] = len(roots)
        face_comp[t] = roots[r]
    vertex_comp = {v: face_comp[m.vertex_faces[v][0]] for v in inside}
    return SlabComponents(lo, hi, face_comp, vertex_comp, len(roots))
