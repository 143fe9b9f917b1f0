"""Orientation double cover of a triangulated surface.

Each base vertex ``v`` has two lifts ``2v`` and ``2v + 1``, one per local
orientation of its star; each base triangle ``t`` has two lifts ``2t``
(stored orientation) and ``2t + 1`` (reversed). The deck involution swaps the
two lifts of everything.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from networkx.utils import UnionFind

from .levelset import LevelCurve
from .surf import Edge, SurfaceMesh, build_surface, edge_key


@dataclass(frozen=True)
class CoveringData:
    base: SurfaceMesh
    total: SurfaceMesh
    vertex_projection: tuple[int, ...]
    face_projection: tuple[int, ...]
    xi_vertex: tuple[int, ...]
    xi_face: tuple[int, ...]

    def project_edge(self, e: Edge) -> Edge:
        return edge_key(self.vertex_projection[e[0]], self.vertex_projection[e[1]])

    def lift_edge(self, e: Edge) -> list[Edge]:
        u, v = e
        return [
            edge_key(a, b)
            for a in (2 * u, 2 * u + 1)
            for b in (2 * v, 2 * v + 1)
            if edge_key(a, b) in self.total.edge_darts
        ]

    def xi_dart(self, d: int) -> int:
        """Dart of the swapped face lying over the same base edge."""
        t = d // 3
        a, b = self.total.dart_vertices(d)
        target = edge_key(self.xi_vertex[a], self.xi_vertex[b])
        s = self.xi_face[t]
        for i in range(3):
            if edge_key(*self.total.dart_vertices(3 * s + i)) == target:
                return 3 * s + i
        raise AssertionError("deck involution does not preserve edges")

    def lift_values(self, values: Sequence[float]) -> tuple[float, ...]:
        return tuple(values[p] for p in self.vertex_projection)

    def sidecar_lines(self) -> list[str]:
        return [
            f"{v} {self.vertex_projection[v]} {self.xi_vertex[v]}"
            for v in range(self.total.n_vertices)
        ]


def _star_orientations(m: SurfaceMesh, v: int) -> dict[int, int]:
    """Coherent +-1 orientation of the triangles around ``v``."""
    star = sorted(m.vertex_faces[v])
    rel = {star[0]: 1}
    stack = [star[0]]
    while stack:
        t = stack.pop()
        for i in range(3):
            d = 3 * t + i
            if v not in m.dart_vertices(d):
                continue
            o = m.opposite(d)
            if o is None:
                continue
            s = o // 3
            coherent = m.dart_vertices(o) == m.dart_vertices(d)[::-1]
            want = rel[t] if coherent else -rel[t]
            if s not in rel:
                rel[s] = want
                stack.append(s)
    return rel


def orientation_double_cover(m: SurfaceMesh) -> CoveringData:
    rel = [_star_orientations(m, v) for v in range(m.n_vertices)]

    def lift(x: int, t: int, o: int) -> int:
        return 2 * x + (0 if o * rel[x][t] > 0 else 1)

    tris = []
    for t, (a, b, c) in enumerate(m.triangles):
        tris.append((lift(a, t, 1), lift(b, t, 1), lift(c, t, 1)))
        tris.append((lift(c, t, -1), lift(b, t, -1), lift(a, t, -1)))
    coords = None
    if m.coords is not None:
        coords = [m.coords[v // 2] for v in range(2 * m.n_vertices)]
    total = build_surface(tris, 2 * m.n_vertices, coords)
    return CoveringData(
        base=m,
        total=total,
        vertex_projection=tuple(v // 2 for v in range(total.n_vertices)),
        face_projection=tuple(t // 2 for t in range(total.n_faces)),
        xi_vertex=tuple(v ^ 1 for v in range(total.n_vertices)),
        xi_face=tuple(t ^ 1 for t in range(total.n_faces)),
    )


@dataclass(frozen=True)
class Preimage:
    components: tuple[frozenset[int], ...]
    swapped_by_xi: bool | None  # None when the preimage is connected

    @property
    def count(self) -> int:
        return len(self.components)


def preimage_components(
    c: CoveringData,
    vertices: Iterable[int] = (),
    edges: Iterable[Edge] | None = None,
    faces: Iterable[int] = (),
) -> Preimage:
    """Components of ``p^{-1}`` of a connected base subcomplex.

    The subcomplex is given by vertices (joined by the base edges among them
    unless ``edges`` is passed) and/or faces. Components are reported as sets
    of total vertices.
    """
    vertices = set(vertices)
    faces = set(faces)
    if edges is None:
        edges = [e for e in c.base.edges if e[0] in vertices and e[1] in vertices]
    edges = [edge_key(*e) for e in edges]
    for t in faces:
        tri = c.base.triangles[t]
        vertices.update(tri)
        edges.extend(edge_key(tri[i], tri[(i + 1) % 3]) for i in range(3))
    lifted = [w for v in vertices for w in (2 * v, 2 * v + 1)]
    uf = UnionFind(lifted)
    for e in edges:
        for a, b in c.lift_edge(e):
            uf.union(a, b)
    comps = tuple(sorted((frozenset(s) for s in uf.to_sets()), key=min))
    swapped = None
    if len(comps) == 2:
        swapped = frozenset(c.xi_vertex[v] for v in comps[0]) == comps[1]
    return Preimage(comps, swapped)


def lift_curve(c: CoveringData, curve: LevelCurve) -> list[LevelCurve]:
    """Lifts of a transverse closed curve: two curves, or one of double length."""
    total = c.total
    n = len(curve.crossings)
    t = 2 * curve.crossings[0][0]
    out: list[tuple[int, Edge, Edge]] = []
    for k in range(2 * n):
        _, e_in, e_out = curve.crossings[k % n]
        tri = total.triangles[t]
        tedges = [edge_key(tri[i], tri[(i + 1) % 3]) for i in range(3)]
        lin = next(e for e in tedges if c.project_edge(e) == edge_key(*e_in))
        lout = next(e for e in tedges if c.project_edge(e) == edge_key(*e_out))
        out.append((t, lin, lout))
        faces = total.edge_faces(lout)
        t = faces[0] if faces[1] == t else faces[1]
        if k == n - 1 and t == out[0][0]:
            break
    first = LevelCurve(curve.value, tuple(out))
    if len(out) == 2 * n:
        return [first]
    xv = c.xi_vertex
    second = tuple(
        (c.xi_face[s], edge_key(xv[a[0]], xv[a[1]]), edge_key(xv[b[0]], xv[b[1]]))
        for s, a, b in out
    )
    return [first, LevelCurve(curve.value, second)]
