"""Combinatorial triangulated surfaces.

A :class:`SurfaceMesh` is an immutable list of triangles on the vertex set
``0 .. n_vertices - 1``. Triangles are stored with the vertex order they were
given in; no global orientation is assumed, so non-orientable surfaces are
fine. Darts are numbered ``3 * t + i`` and run from ``triangles[t][i]`` to
``triangles[t][(i + 1) % 3]``.

Vertex coordinates are carried along as metadata only; nothing here looks
at them.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable, Sequence

from networkx.utils import UnionFind

from .errors import (
    CurveNotSimple,
    CurveTouchesVertex,
    EmptyInput,
    MeshError,
    NonManifoldEdge,
    NonManifoldVertex,
    NotABoundaryCycle,
)

Edge = tuple[int, int]


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True, eq=False)
class SurfaceMesh:
    triangles: tuple[tuple[int, int, int], ...]
    n_vertices: int
    coords: tuple[tuple[float, ...], ...] | None = field(default=None, repr=False)

    # -- darts ---------------------------------------------------------

    @property
    def n_faces(self) -> int:
        return len(self.triangles)

    @property
    def n_darts(self) -> int:
        return 3 * len(self.triangles)

    def dart_vertices(self, d: int) -> tuple[int, int]:
        t, i = divmod(d, 3)
        tri = self.triangles[t]
        return tri[i], tri[(i + 1) % 3]

    def next_dart(self, d: int) -> int:
        t, i = divmod(d, 3)
        return 3 * t + (i + 1) % 3

    @cached_property
    def _opposite(self) -> tuple[int, ...]:
        opp = [-1] * self.n_darts
        for darts in self.edge_darts.values():
            if len(darts) == 2:
                a, b = darts
                opp[a], opp[b] = b, a
        return tuple(opp)

    def opposite(self, d: int) -> int | None:
        """Dart on the other side of the same edge, or None on the boundary."""
        o = self._opposite[d]
        return None if o < 0 else o

    @cached_property
    def edge_darts(self) -> dict[Edge, tuple[int, ...]]:
        out: dict[Edge, list[int]] = defaultdict(list)
        for t, tri in enumerate(self.triangles):
            for i in range(3):
                out[edge_key(tri[i], tri[(i + 1) % 3])].append(3 * t + i)
        return {e: tuple(ds) for e, ds in out.items()}

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edge_darts))

    def edge_faces(self, e: Edge) -> tuple[int, ...]:
        return tuple(d // 3 for d in self.edge_darts[edge_key(*e)])

    @cached_property
    def boundary_darts(self) -> tuple[int, ...]:
        return tuple(sorted(ds[0] for ds in self.edge_darts.values() if len(ds) == 1))

    @cached_property
    def boundary_edges(self) -> frozenset[Edge]:
        return frozenset(e for e, ds in self.edge_darts.items() if len(ds) == 1)

    @cached_property
    def boundary_vertices(self) -> frozenset[int]:
        return frozenset(v for e in self.boundary_edges for v in e)

    # -- vertex stars --------------------------------------------------

    @cached_property
    def vertex_faces(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.n_vertices)]
        for t, tri in enumerate(self.triangles):
            for v in tri:
                out[v].append(t)
        return tuple(tuple(x) for x in out)

    @cached_property
    def neighbors(self) -> tuple[frozenset[int], ...]:
        out: list[set[int]] = [set() for _ in range(self.n_vertices)]
        for u, v in self.edges:
            out[u].add(v)
            out[v].add(u)
        return tuple(frozenset(s) for s in out)

    @cached_property
    def _links(self) -> tuple[tuple[tuple[int, ...], bool], ...]:
        return tuple(_ordered_link(self, v) for v in range(self.n_vertices))

    def link(self, v: int) -> tuple[int, ...]:
        """Neighbors of ``v`` in cyclic (interior) or path (boundary) order."""
        return self._links[v][0]

    def link_is_cycle(self, v: int) -> bool:
        return self._links[v][1]

    def triangle_with(self, v: int, a: int, b: int) -> int:
        """Index of the triangle with vertex set {v, a, b}."""
        target = {v, a, b}
        for t in self.vertex_faces[v]:
            if set(self.triangles[t]) == target:
                return t
        raise KeyError((v, a, b))

    # -- components ----------------------------------------------------

    @cached_property
    def face_component(self) -> tuple[int, ...]:
        uf = UnionFind(range(self.n_faces))
        for ds in self.edge_darts.values():
            if len(ds) == 2:
                uf.union(ds[0] // 3, ds[1] // 3)
        roots: dict[int, int] = {}
        comp = []
        for t in range(self.n_faces):
            r = uf[t]
            if r not in roots:
                roots[r] = len(roots)
            comp.append(roots[r])
        return tuple(comp)

    @property
    def n_components(self) -> int:
        return max(self.face_component) + 1

    @cached_property
    def vertex_component(self) -> tuple[int, ...]:
        out = [-1] * self.n_vertices
        for t, tri in enumerate(self.triangles):
            for v in tri:
                out[v] = self.face_component[t]
        return tuple(out)

    def component_faces(self, c: int) -> tuple[int, ...]:
        return tuple(t for t, k in enumerate(self.face_component) if k == c)

    def component_vertices(self, c: int) -> tuple[int, ...]:
        return tuple(v for v, k in enumerate(self.vertex_component) if k == c)

    def euler_characteristic(self, c: int | None = None) -> int:
        if c is None:
            return self.n_vertices - len(self.edges) + self.n_faces
        faces = self.component_faces(c)
        verts = self.component_vertices(c)
        n_edges = sum(1 for e in self.edges if self.vertex_component[e[0]] == c)
        return len(verts) - n_edges + len(faces)

    # -- boundary cycles -----------------------------------------------

    @cached_property
    def boundary_cycles(self) -> tuple[tuple[int, ...], ...]:
        """Boundary circles, each starting at its smallest vertex."""
        adj: dict[int, list[int]] = defaultdict(list)
        for u, v in self.boundary_edges:
            adj[u].append(v)
            adj[v].append(u)
        seen: set[int] = set()
        cycles = []
        for start in sorted(adj):
            if start in seen:
                continue
            a, b = sorted(adj[start])
            cyc = [start]
            prev, cur = start, a
            while cur != start:
                cyc.append(cur)
                n1, n2 = adj[cur]
                prev, cur = cur, (n2 if n1 == prev else n1)
            seen.update(cyc)
            cycles.append(tuple(cyc))
        return tuple(cycles)

    @cached_property
    def vertex_boundary_cycle(self) -> dict[int, int]:
        return {v: i for i, cyc in enumerate(self.boundary_cycles) for v in cyc}

    def component_boundary_cycles(self, c: int) -> tuple[int, ...]:
        return tuple(
            i for i, cyc in enumerate(self.boundary_cycles) if self.vertex_component[cyc[0]] == c
        )

    # -- orientation ---------------------------------------------------

    @cached_property
    def _orientation(self) -> tuple[tuple[int, ...], tuple[bool, ...]]:
        sign = [0] * self.n_faces
        orientable = [True] * self.n_components
        for seed in range(self.n_faces):
            if sign[seed]:
                continue
            sign[seed] = 1
            stack = [seed]
            while stack:
                t = stack.pop()
                for i in range(3):
                    d = 3 * t + i
                    o = self._opposite[d]
                    if o < 0:
                        continue
                    s = o // 3
                    # coherent neighbours traverse the shared edge in opposite directions
                    coherent = self.dart_vertices(o) == self.dart_vertices(d)[::-1]
                    want = sign[t] if coherent else -sign[t]
                    if sign[s] == 0:
                        sign[s] = want
                        stack.append(s)
                    elif sign[s] != want:
                        orientable[self.face_component[t]] = False
        return tuple(sign), tuple(orientable)

    def face_orientation(self, t: int) -> int:
        """+1/-1 relative to a BFS-propagated orientation of the component."""
        return self._orientation[0][t]

    def is_orientable(self, c: int | None = None) -> bool:
        flags = self._orientation[1]
        return all(flags) if c is None else flags[c]


def _ordered_link(m: SurfaceMesh, v: int) -> tuple[tuple[int, ...], bool]:
    adj: dict[int, list[int]] = defaultdict(list)
    for t in m.vertex_faces[v]:
        a, b = (w for w in m.triangles[t] if w != v)
        adj[a].append(b)
        adj[b].append(a)
    if not adj:
        raise NonManifoldVertex(f"vertex {v} is not used by any triangle")
    if any(len(n) > 2 for n in adj.values()):
        raise NonManifoldVertex(f"link of vertex {v} is not a path or a cycle")
    ends = sorted(u for u, n in adj.items() if len(n) == 1)
    if len(ends) not in (0, 2):
        raise NonManifoldVertex(f"link of vertex {v} is not a path or a cycle")
    start = ends[0] if ends else min(adj)
    order = [start]
    prev, cur = None, start
    while len(order) <= len(adj):
        nxt = sorted(u for u in adj[cur] if u != prev)
        if not nxt or nxt[0] == start:
            break
        order.append(nxt[0])
        prev, cur = cur, nxt[0]
    if len(order) != len(adj):
        raise NonManifoldVertex(f"link of vertex {v} is disconnected")
    return tuple(order), not ends


def build_surface(
    triangles: Iterable[Sequence[int]],
    n_vertices: int | None = None,
    coords: Sequence[Sequence[float]] | None = None,
) -> SurfaceMesh:
    """Validate a triangle list and return the mesh.

    Raises EmptyInput, NonManifoldEdge or NonManifoldVertex.
    """
    tris = tuple(tuple(int(x) for x in t) for t in triangles)
    if not tris:
        raise EmptyInput("no triangles")
    seen_sets: set[frozenset[int]] = set()
    top = -1
    for tri in tris:
        if len(tri) != 3 or len(set(tri)) != 3 or min(tri) < 0:
            raise MeshError(f"degenerate triangle {tri}")
        key = frozenset(tri)
        if key in seen_sets:
            raise NonManifoldEdge(f"triangle {tri} appears twice")
        seen_sets.add(key)
        top = max(top, *tri)
    if n_vertices is None:
        n_vertices = top + 1
    if top >= n_vertices:
        raise MeshError(f"vertex index {top} out of range")
    m = SurfaceMesh(tris, n_vertices, None if coords is None else tuple(tuple(c) for c in coords))
    for e, ds in m.edge_darts.items():
        if len(ds) > 2:
            raise NonManifoldEdge(f"edge {e} is used by {len(ds)} triangles")
    for v in range(n_vertices):
        m.link(v)
    return m


# ---------------------------------------------------------------------------
# piece classification


class PieceTag(str, Enum):
    DISK = "Disk"
    ANNULUS = "Annulus"
    MOEBIUS = "Moebius"
    MOEBIUS_WITH_HOLE = "MoebiusWithHole"
    OTHER = "Other"


_TAGS = {
    (1, True, 1): PieceTag.DISK,
    (0, True, 2): PieceTag.ANNULUS,
    (0, False, 1): PieceTag.MOEBIUS,
    (-1, False, 2): PieceTag.MOEBIUS_WITH_HOLE,
}


@dataclass(frozen=True)
class PieceKind:
    tag: PieceTag
    chi: int
    orientable: bool
    boundary_count: int

    @classmethod
    def from_invariants(cls, chi: int, orientable: bool, boundary_count: int) -> "PieceKind":
        tag = _TAGS.get((chi, orientable, boundary_count), PieceTag.OTHER)
        return cls(tag, chi, orientable, boundary_count)

    def to_json(self) -> dict:
        return {
            "tag": self.tag.value,
            "chi": self.chi,
            "orientable": self.orientable,
            "boundary_count": self.boundary_count,
        }


def orientability(m: SurfaceMesh, component: int) -> bool:
    _check_component(m, component)
    return m.is_orientable(component)


def classify_piece(m: SurfaceMesh, component: int) -> PieceKind:
    _check_component(m, component)
    return PieceKind.from_invariants(
        m.euler_characteristic(component),
        m.is_orientable(component),
        len(m.component_boundary_cycles(component)),
    )


def _check_component(m: SurfaceMesh, component: int) -> None:
    if not 0 <= component < m.n_components:
        raise IndexError(f"no component {component}")


# ---------------------------------------------------------------------------
# capping


def cap_boundary(m: SurfaceMesh, cycle: Sequence[int] | int) -> SurfaceMesh:
    """Cone a boundary circle off to a new vertex (appended last)."""
    if isinstance(cycle, int):
        if not 0 <= cycle < len(m.boundary_cycles):
            raise NotABoundaryCycle(f"no boundary cycle {cycle}")
        cyc = m.boundary_cycles[cycle]
    else:
        cyc = tuple(cycle)
        if not any(_same_cycle(cyc, c) for c in m.boundary_cycles):
            raise NotABoundaryCycle(f"{cyc} is not a boundary cycle")
    apex = m.n_vertices
    new = list(m.triangles)
    for i, u in enumerate(cyc):
        v = cyc[(i + 1) % len(cyc)]
        (d,) = m.edge_darts[edge_key(u, v)]
        a, b = m.dart_vertices(d)
        new.append((b, a, apex))
    coords = None
    if m.coords is not None:
        pts = [m.coords[v] for v in cyc]
        coords = m.coords + (tuple(sum(p[k] for p in pts) / len(pts) for k in range(len(pts[0]))),)
    return build_surface(new, apex + 1, coords)


def _same_cycle(a: Sequence[int], b: Sequence[int]) -> bool:
    if len(a) != len(b) or set(a) != set(b):
        return False
    n = len(a)
    i = b.index(a[0])
    fwd = all(a[k] == b[(i + k) % n] for k in range(n))
    bwd = all(a[k] == b[(i - k) % n] for k in range(n))
    return fwd or bwd


# ---------------------------------------------------------------------------
# cutting along transverse curves


@dataclass(frozen=True)
class CutResult:
    mesh: SurfaceMesh
    values: tuple[float, ...] | None
    face_parent: tuple[int, ...]
    # new vertex id -> (crossed edge, endpoint whose side the copy sits on)
    vertex_origin: dict[int, tuple[Edge, int]]
    crossing_copy: dict[tuple[Edge, int], int]


def cut_along_curve(m: SurfaceMesh, curve) -> SurfaceMesh:
    return cut_along_curves(m, [curve]).mesh


def cut_along_curves(m: SurfaceMesh, curves, values: Sequence[float] | None = None) -> CutResult:
    """Cut along disjoint simple closed transverse curves.

    Each curve is a cyclic sequence of ``(triangle, entry_edge, exit_edge)``
    crossings. Every crossed edge is split into two half-edges; each half
    gets its own copy of the crossing point, so the surface comes apart
    along the curve. Only crossed triangles are retriangulated.
    """
    crossed: dict[int, tuple[Edge, Edge, float | None]] = {}
    for curve in curves:
        _check_curve(m, curve, values)
        level = getattr(curve, "value", None)
        for t, e_in, e_out in curve.crossings:
            if t in crossed:
                raise CurveNotSimple(f"triangle {t} crossed twice")
            crossed[t] = (edge_key(*e_in), edge_key(*e_out), level)

    copies: dict[tuple[Edge, int], int] = {}
    for e1, e2, _ in crossed.values():
        for e in (e1, e2):
            for end in e:
                copies[(e, end)] = -1
    next_id = m.n_vertices
    for key in sorted(copies):
        copies[key] = next_id
        next_id += 1

    new_tris: list[tuple[int, int, int]] = []
    parent: list[int] = []
    level_of_copy: dict[int, float | None] = {}
    for t, tri in enumerate(m.triangles):
        if t not in crossed:
            new_tris.append(tri)
            parent.append(t)
            continue
        e1, e2, level = crossed[t]
        (x,) = set(e1) & set(e2)
        # rotate so the lone vertex is first, keeping the cyclic order
        i = tri.index(x)
        x, y, z = tri[i], tri[(i + 1) % 3], tri[(i + 2) % 3]
        exy, exz = edge_key(x, y), edge_key(x, z)
        pieces = [
            (x, copies[(exy, x)], copies[(exz, x)]),
            (copies[(exy, y)], y, z),
            (copies[(exy, y)], z, copies[(exz, z)]),
        ]
        for p in pieces:
            new_tris.append(p)
            parent.append(t)
        for e in (exy, exz):
            for end in e:
                level_of_copy[copies[(e, end)]] = level

    new_values = None
    if values is not None:
        new_values = tuple(values) + tuple(level_of_copy[k] for k in range(m.n_vertices, next_id))
    cut = build_surface(new_tris, next_id)
    origin = {vid: key for key, vid in copies.items()}
    return CutResult(cut, new_values, tuple(parent), origin, dict(copies))


def _check_curve(m: SurfaceMesh, curve, values: Sequence[float] | None) -> None:
    cr = list(curve.crossings)
    if not cr:
        raise CurveNotSimple("empty curve")
    tris = [c[0] for c in cr]
    if len(set(tris)) != len(tris):
        raise CurveNotSimple("curve visits a triangle twice")
    edges_seen: set[Edge] = set()
    for k, (t, e_in, e_out) in enumerate(cr):
        e_in, e_out = edge_key(*e_in), edge_key(*e_out)
        tri = set(m.triangles[t])
        if not (set(e_in) <= tri and set(e_out) <= tri) or e_in == e_out:
            raise CurveNotSimple(f"bad crossing record at triangle {t}")
        nxt_in = edge_key(*cr[(k + 1) % len(cr)][1])
        if nxt_in != e_out:
            raise CurveNotSimple("curve is not closed")
        if e_out in edges_seen:
            raise CurveNotSimple(f"edge {e_out} crossed twice")
        edges_seen.add(e_out)
        if e_out in m.boundary_edges:
            raise CurveNotSimple("curve runs into the boundary")
    level = getattr(curve, "value", None)
    if values is not None and level is not None:
        for e in edges_seen:
            a, b = values[e[0]] - level, values[e[1]] - level
            if a == 0 or b == 0:
                raise CurveTouchesVertex(f"curve at {level} touches a vertex of {e}")
            if (a > 0) == (b > 0):
                raise CurveNotSimple(f"edge {e} is not crossed at level {level}")
