"""Piecewise-linear scalar fields and their critical vertices.

A vertex is classified by walking its link and counting how often the sign
of ``f(neighbor) - f(vertex)`` changes: 0 changes is an extremum, 2 is a
regular point, and ``2k + 2`` changes (k >= 1) is a saddle with ``k + 1``
pairs of sectors. ``Saddle(1)`` is the ordinary non-degenerate saddle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import (
    CriticalOnBoundary,
    EqualAdjacentInteriorValues,
    FieldError,
    NonConstantBoundary,
)
from .surf import SurfaceMesh


@dataclass(frozen=True, order=True)
class CriticalKind:
    tag: str  # "Min", "Max" or "Saddle"
    k: int = 0

    @property
    def index(self) -> int:
        """Contribution to the Euler characteristic."""
        return 1 if self.tag in ("Min", "Max") else -self.k

    @property
    def is_saddle(self) -> bool:
        return self.tag == "Saddle"

    def __str__(self) -> str:
        return f"Saddle({self.k})" if self.is_saddle else self.tag


MIN = CriticalKind("Min")
MAX = CriticalKind("Max")


def saddle(k: int) -> CriticalKind:
    return CriticalKind("Saddle", k)


@dataclass(frozen=True)
class MorseField:
    mesh: SurfaceMesh
    values: tuple[float, ...]
    critical_vertices: tuple[tuple[int, CriticalKind], ...]
    boundary_levels: tuple[float, ...]  # indexed like mesh.boundary_cycles

    @property
    def critical(self) -> dict[int, CriticalKind]:
        return dict(self.critical_vertices)

    def saddles(self) -> list[int]:
        return [v for v, k in self.critical_vertices if k.is_saddle]


def sign_changes(signs: Sequence[int], cyclic: bool = True) -> int:
    n = len(signs)
    pairs = range(n) if cyclic else range(n - 1)
    return sum(1 for i in pairs if signs[i] != signs[(i + 1) % n])


def classify_vertex(m: SurfaceMesh, values: Sequence[float], v: int) -> CriticalKind | None:
    """Kind of an interior vertex, or None if it is regular."""
    fv = values[v]
    signs = [1 if values[u] > fv else -1 for u in m.link(v)]
    changes = sign_changes(signs)
    if changes == 0:
        return MIN if signs[0] > 0 else MAX
    if changes == 2:
        return None
    return saddle(changes // 2 - 1)


def validate_field(m: SurfaceMesh, values: Sequence[float]) -> MorseField:
    values = tuple(float(x) for x in values)
    if len(values) != m.n_vertices:
        raise FieldError(f"expected {m.n_vertices} values, got {len(values)}")

    levels = []
    for i, cyc in enumerate(m.boundary_cycles):
        vals = {values[v] for v in cyc}
        if len(vals) != 1:
            raise NonConstantBoundary(f"boundary component {i} takes {len(vals)} values")
        levels.append(vals.pop())

    cycle_of = m.vertex_boundary_cycle
    for u, v in m.edges:
        if values[u] == values[v]:
            cu, cv = cycle_of.get(u), cycle_of.get(v)
            if cu is None or cu != cv:
                raise EqualAdjacentInteriorValues(f"edge ({u}, {v}) has equal values {values[u]}")

    critical = []
    for v in range(m.n_vertices):
        if v in cycle_of:
            fv = values[v]
            inner = [values[u] > fv for u in m.link(v) if u not in cycle_of or cycle_of[u] != cycle_of[v]]
            if inner and any(inner) and not all(inner):
                raise CriticalOnBoundary(f"boundary vertex {v} is critical")
            continue
        kind = classify_vertex(m, values, v)
        if kind is not None:
            critical.append((v, kind))
    return MorseField(m, values, tuple(critical), tuple(levels))


def critical_values(field: MorseField) -> list[float]:
    vals = {field.values[v] for v, _ in field.critical_vertices}
    vals.update(field.boundary_levels)
    return sorted(vals)


def index_sum(field: MorseField, component: int | None = None) -> int:
    comp = field.mesh.vertex_component
    return sum(
        k.index for v, k in field.critical_vertices if component is None or comp[v] == component
    )
