"""Curve types on the Moebius band and the distinguished critical vertex.

Every regular level curve on a Moebius band M is two-sided, so it either
bounds a disk (type B) or is parallel to the boundary (type A). Cutting makes
the difference visible: an A-curve splits M into a collar annulus plus a
smaller Moebius band, a B-curve into a disk plus a Moebius band with a hole.

Along the A-edges of the Reeb tree there is a single path starting at the
boundary vertex; its far end is the distinguished critical component.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import networkx as nx
from networkx.utils import UnionFind

from .cover import CoveringData, lift_curve, orientation_double_cover
from .errors import LemmaViolated, NotAMoebiusBand, NotATree, UnexpectedCutPattern
from .field import MorseField
from .levelset import LevelCurve
from .reeb import ReebGraph, is_tree
from .surf import PieceTag, SurfaceMesh, classify_piece, cut_along_curves


class EdgeType(str, Enum):
    A = "A"
    B = "B"


def require_moebius(m: SurfaceMesh) -> None:
    if m.n_components != 1 or classify_piece(m, 0).tag is not PieceTag.MOEBIUS:
        raise NotAMoebiusBand("input surface is not a Moebius band")


@dataclass(frozen=True)
class CutPieces:
    """The two sides of a curve: the one holding the boundary of M first."""

    boundary_side: PieceTag
    other_side: PieceTag


def cut_pieces(m: SurfaceMesh, curve: LevelCurve) -> CutPieces:
    cut = cut_along_curves(m, [curve]).mesh
    if cut.n_components != 2:
        raise UnexpectedCutPattern(f"cut at level {curve.value} left {cut.n_components} pieces")
    bc = cut.vertex_component[m.boundary_cycles[0][0]]
    return CutPieces(classify_piece(cut, bc).tag, classify_piece(cut, 1 - bc).tag)


_PATTERNS = {
    (PieceTag.ANNULUS, PieceTag.MOEBIUS): EdgeType.A,
    (PieceTag.MOEBIUS_WITH_HOLE, PieceTag.DISK): EdgeType.B,
}


def classify_curve(m: SurfaceMesh, curve: LevelCurve) -> EdgeType:
    pieces = cut_pieces(m, curve)
    try:
        return _PATTERNS[(pieces.boundary_side, pieces.other_side)]
    except KeyError:
        raise UnexpectedCutPattern(
            f"curve at level {curve.value} cuts into "
            f"{pieces.boundary_side.value} (with boundary) and {pieces.other_side.value}"
        ) from None


def classify_edge(f: MorseField, g: ReebGraph, edge: int, all_levels: bool = True) -> EdgeType:
    """Type of a Reeb edge, from cutting along its level curves.

    With ``all_levels`` every curve of the edge's chain (one per regular level
    it spans) is cut, and they must all agree.
    """
    require_moebius(f.mesh)
    e = g.edges[edge]
    result = classify_curve(f.mesh, e.representative)
    if all_levels:
        for cv in e.chain:
            if cv is not e.representative and classify_curve(f.mesh, cv) is not result:
                raise UnexpectedCutPattern(f"edge {edge} changes type along its interval")
    return result


def classify_edges(f: MorseField, g: ReebGraph, all_levels: bool = True) -> dict[int, EdgeType]:
    return {e.id: classify_edge(f, g, e.id, all_levels) for e in g.edges}


def homology_oracle(cover: CoveringData, curve: LevelCurve) -> EdgeType:
    """Independent classifier: lift the curve to the annulus cover.

    A two-sided curve always lifts to two circles. Such a circle in the
    annulus is essential exactly when it separates the two boundary circles,
    which happens exactly when the base curve is boundary-parallel.
    """
    total = cover.total
    b0, b1 = total.boundary_cycles
    lift = lift_curve(cover, curve)[0]
    crossed = set(lift.edges)
    uf = UnionFind(range(total.n_vertices))
    for e in total.edges:
        if e not in crossed:
            uf.union(*e)
    return EdgeType.A if uf[b0[0]] != uf[b1[0]] else EdgeType.B


# --- the edge lemma ----------------------------------------------------------


@dataclass(frozen=True)
class EdgeLemmaReport:
    passed: bool
    max_a_degree: int
    max_a_vertex: int | None
    violations: tuple[dict, ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "max_a_degree": self.max_a_degree,
            "max_a_vertex": self.max_a_vertex,
            "violations": list(self.violations),
        }


def a_degree(g: ReebGraph, types: dict[int, EdgeType], v: int) -> int:
    return sum(1 for e in g.incident(v) if types[e] is EdgeType.A)


def verify_edge_lemma(g: ReebGraph, types: dict[int, EdgeType]) -> EdgeLemmaReport:
    """Check that A-degrees are at most 2 and that B-edges only lead to B-edges.

    The subtree beyond a B-edge is the component of the graph with the edge
    removed that misses v0. Each violation carries a witness path of
    graph vertices.
    """
    violations = []
    best, best_v = 0, None
    for v in g.vertices:
        d = a_degree(g, types, v.id)
        if d > best:
            best, best_v = d, v.id
        if d > 2:
            a_edges = [e for e in g.incident(v.id) if types[e] is EdgeType.A]
            violations.append({"kind": "a_degree", "vertex": v.id, "edges": a_edges})

    nxg = g.to_networkx()
    for e in g.edges:
        if types[e.id] is not EdgeType.B:
            continue
        h = nxg.copy()
        h.remove_edge(e.lower, e.upper, key=e.id)
        far = e.upper if g.v0 is None or not nx.has_path(h, e.upper, g.v0) else e.lower
        side = nx.node_connected_component(h, far)
        for other in g.edges:
            if other.lower in side and other.upper in side and types[other.id] is EdgeType.A:
                path = nx.shortest_path(h, far, other.lower)
                violations.append(
                    {"kind": "a_beyond_b", "b_edge": e.id, "a_edge": other.id, "path": path}
                )
    return EdgeLemmaReport(not violations, best, best_v, tuple(violations))


# --- the distinguished vertex ------------------------------------------------


@dataclass(frozen=True)
class DistinguishedVertex:
    vertex: int
    path: tuple[int, ...]  # graph vertices from v0 to ``vertex``
    edges: tuple[int, ...]  # the A-edges walked

    def to_json(self) -> dict:
        return {"vertex": self.vertex, "path": list(self.path), "edges": list(self.edges)}


def find_distinguished_vertex(
    g: ReebGraph, types: dict[int, EdgeType], report: EdgeLemmaReport | None = None
) -> DistinguishedVertex:
    if not is_tree(g):
        raise NotATree("Reeb graph of a Moebius band field is not a tree")
    report = report or verify_edge_lemma(g, types)
    if not report.passed:
        raise LemmaViolated(f"edge lemma fails: {report.violations[0]}")
    if g.v0 is None:
        raise NotAMoebiusBand("no boundary vertex in the Reeb graph")

    path, walked = [g.v0], []
    prev = None
    while True:
        nxt = [e for e in g.incident(path[-1]) if types[e] is EdgeType.A and e != prev]
        if not nxt:
            break
        if len(nxt) > 1:
            raise LemmaViolated(f"A-path branches at vertex {path[-1]}")
        prev = nxt[0]
        walked.append(prev)
        path.append(g.edges[prev].other(path[-1]))
    end = path[-1]

    candidates = [v.id for v in g.vertices if v.id != g.v0 and a_degree(g, types, v.id) == 1]
    if candidates != [end]:
        raise LemmaViolated(f"walk ends at {end} but A-degree-1 vertices are {candidates}")
    return DistinguishedVertex(end, tuple(path), tuple(walked))


def analyze_moebius(f: MorseField, g: ReebGraph):
    """Types, lemma report and distinguished vertex in one go."""
    require_moebius(f.mesh)
    types = classify_edges(f, g)
    report = verify_edge_lemma(g, types)
    return types, report, find_distinguished_vertex(g, types, report)


__all__ = [
    "CutPieces",
    "DistinguishedVertex",
    "EdgeLemmaReport",
    "EdgeType",
    "analyze_moebius",
    "classify_curve",
    "classify_edge",
    "classify_edges",
    "cut_pieces",
    "find_distinguished_vertex",
    "homology_oracle",
    "orientation_double_cover",
    "require_moebius",
    "verify_edge_lemma",
]
