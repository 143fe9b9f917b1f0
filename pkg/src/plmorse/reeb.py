"""Kronrod-Reeb graph of a PL field by a sweep over critical levels.

Let ``c_0 < ... < c_N`` be the critical values and boundary levels and pick a
regular level ``m_i`` in each gap. The slab ``[m_{i-1}, m_i]`` holds exactly
one critical level; each of its components either contains critical
vertices or a boundary circle (a graph vertex), or is a product annulus that
just hands one level curve from below to one above. Graph edges are chains
of such curves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import networkx as nx

from .errors import TheoremViolation
from .field import MorseField, critical_values
from .levelset import LevelCurve, regular_level, slab_components, trace_level_curves

__all__ = [
    "LevelCurve",
    "ReebEdge",
    "ReebGraph",
    "ReebVertex",
    "build_reeb",
    "is_tree",
    "representative_curve",
    "to_dot",
]


@dataclass(frozen=True)
class ReebVertex:
    id: int
    level: float
    critical_vertices: tuple[int, ...]  # empty for boundary vertices
    boundary_cycle: int | None
    slab: int

    @property
    def kind(self) -> str:
        return "boundary" if self.boundary_cycle is not None else "critical"

    def label(self) -> str:
        if self.boundary_cycle is not None:
            return f"{self.level:g} boundary {self.boundary_cycle}"
        return f"{self.level:g} critical {list(self.critical_vertices)}"


@dataclass(frozen=True)
class ReebEdge:
    id: int
    lower: int
    upper: int
    interval: tuple[float, float]
    chain: tuple[LevelCurve, ...]  # one curve per regular level crossed
    representative: LevelCurve

    def other(self, v: int) -> int:
        return self.upper if v == self.lower else self.lower

    def ends(self) -> tuple[int, int]:
        return (self.lower, self.upper)


@dataclass(frozen=True)
class ReebGraph:
    field: MorseField
    levels: tuple[float, ...]
    midlevels: tuple[float, ...]
    vertices: tuple[ReebVertex, ...]
    edges: tuple[ReebEdge, ...]
    v0: int | None = None
    _incident: dict = field(default_factory=dict, repr=False, compare=False)

    def incident(self, v: int) -> list[int]:
        if not self._incident:
            for e in self.edges:
                self._incident.setdefault(e.lower, []).append(e.id)
                self._incident.setdefault(e.upper, []).append(e.id)
        return list(self._incident.get(v, []))

    def degree(self, v: int) -> int:
        return len(self.incident(v))

    def edges_below(self, v: int) -> list[int]:
        return [e for e in self.incident(v) if self.edges[e].upper == v]

    def edges_above(self, v: int) -> list[int]:
        return [e for e in self.incident(v) if self.edges[e].lower == v]

    def to_networkx(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(v.id for v in self.vertices)
        for e in self.edges:
            g.add_edge(e.lower, e.upper, key=e.id)
        return g

    def vertex_of_critical(self, mesh_vertex: int) -> int:
        for v in self.vertices:
            if mesh_vertex in v.critical_vertices:
                return v.id
        raise KeyError(mesh_vertex)

    def count_edges_at(self, c: float) -> int:
        return sum(1 for e in self.edges if e.interval[0] < c < e.interval[1])

    def summary(self) -> dict:
        return {"V": len(self.vertices), "E": len(self.edges), "is_tree": is_tree(self)}


def build_reeb(f: MorseField) -> ReebGraph:
    m, values = f.mesh, f.values
    levels = critical_values(f)
    mids = [regular_level(values, a, b) for a, b in zip(levels, levels[1:])]
    bounds = [-math.inf, *mids, math.inf]

    crit_at: dict[float, list[int]] = {}
    for v, _ in f.critical_vertices:
        crit_at.setdefault(values[v], []).append(v)
    bd_at: dict[float, list[int]] = {}
    for i, lvl in enumerate(f.boundary_levels):
        bd_at.setdefault(lvl, []).append(i)

    # node key: (slab index, slab component)
    nodes: dict[tuple[int, int], dict] = {}
    slabs = []
    for i, c in enumerate(levels):
        sc = slab_components(m, values, bounds[i], bounds[i + 1])
        slabs.append(sc)
        for v in crit_at.get(c, []):
            node = nodes.setdefault((i, sc.vertex_comp[v]), {"crit": [], "bd": None})
            node["crit"].append(v)
        for b in bd_at.get(c, []):
            v = m.boundary_cycles[b][0]
            node = nodes.setdefault((i, sc.vertex_comp[v]), {"crit": [], "bd": None})
            if node["bd"] is not None or node["crit"]:
                raise TheoremViolation(f"boundary cycle {b} shares a level component")
            node["bd"] = b

    order = sorted(
        nodes,
        key=lambda k: (
            levels[k[0]],
            min(nodes[k]["crit"]) if nodes[k]["crit"] else min(m.boundary_cycles[nodes[k]["bd"]]),
        ),
    )
    node_id = {k: j for j, k in enumerate(order)}
    vertices = tuple(
        ReebVertex(
            node_id[k],
            levels[k[0]],
            tuple(sorted(nodes[k]["crit"])),
            nodes[k]["bd"],
            k[0],
        )
        for k in order
    )

    # curves at each regular level and the slab components they touch
    below: dict[tuple[int, int], list[LevelCurve]] = {}
    above: dict[tuple[int, int], list[LevelCurve]] = {}
    ends: dict[tuple[float, tuple], tuple] = {}
    for i, c in enumerate(mids):
        for curve in trace_level_curves(m, values, c):
            t = curve.triangles[0]
            lo_key = (i, slabs[i].face_comp[t])
            hi_key = (i + 1, slabs[i + 1].face_comp[t])
            above.setdefault(lo_key, []).append(curve)
            below.setdefault(hi_key, []).append(curve)
            ends[curve.key()] = (lo_key, hi_key)

    edges_raw = []
    for key, (lo_key, hi_key) in sorted(ends.items()):
        if lo_key in nodes:
            chain = [_find(above[lo_key], key)]
            cur = hi_key
            while cur not in nodes:
                ups = above.get(cur, [])
                downs = below.get(cur, [])
                if len(ups) != 1 or len(downs) != 1:
                    raise TheoremViolation(f"regular slab piece {cur} is not a product annulus")
                chain.append(ups[0])
                cur = ends[ups[0].key()][1]
            edges_raw.append((node_id[lo_key], node_id[cur], chain))

    edges_raw.sort(key=lambda r: (r[0], r[1], min(r[2][0].edges)))
    edges = []
    for j, (lo, hi, chain) in enumerate(edges_raw):
        interval = (vertices[lo].level, vertices[hi].level)
        mid = (interval[0] + interval[1]) / 2
        rep = min(chain, key=lambda cv: (abs(cv.value - mid), cv.value))
        edges.append(ReebEdge(j, lo, hi, interval, tuple(chain), rep))

    v0 = next((v.id for v in vertices if v.boundary_cycle is not None), None)
    return ReebGraph(f, tuple(levels), tuple(mids), vertices, tuple(edges), v0)


def _find(curves: Iterable[LevelCurve], key) -> LevelCurve:
    for cv in curves:
        if cv.key() == key:
            return cv
    raise KeyError(key)


def is_tree(g: ReebGraph) -> bool:
    n = len(g.vertices)
    return n > 0 and len(g.edges) == n - 1 and nx.is_connected(g.to_networkx())


def representative_curve(g: ReebGraph, edge: int) -> LevelCurve:
    return g.edges[edge].representative


def to_dot(g: ReebGraph, edge_types: dict[int, str] | None = None, name: str = "reeb") -> str:
    """DOT digraph, edges pointing upward, nodes ranked by level."""
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for v in g.vertices:
        shape = "box" if v.boundary_cycle is not None else "ellipse"
        lines.append(f'  v{v.id} [label="v{v.id}: {v.label()}", shape={shape}];')
    by_level: dict[float, list[int]] = {}
    for v in g.vertices:
        by_level.setdefault(v.level, []).append(v.id)
    for lvl in sorted(by_level):
        ids = " ".join(f"v{i};" for i in by_level[lvl])
        lines.append(f"  {{ rank=same; {ids} }}")
    for e in g.edges:
        label = edge_types.get(e.id) if edge_types else None
        attr = f' [label="{label}"]' if label else ""
        lines.append(f"  v{e.lower} -> v{e.upper}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"
