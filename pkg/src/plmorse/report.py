"""End-to-end analysis producing a versioned, deterministic JSON report.

Stages run in order (parse, validate, Reeb graph, edge types, distinguished
vertex, decomposition, cell structure, symmetry, groups). A stage that
cannot run leaves its section ``null`` and records why under ``errors``.
Validation failures give exit code 2. A contradiction of one of the
structural theorems gives exit code 3 and a ``counterexample`` section
holding the full input so the failure can be reproduced.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any

from .decomp import cw_partition, decompose
from .errors import (
    FreeActionViolation,
    InvariantCellViolation,
    PLMorseError,
    TheoremViolation,
    ValidationError,
)
from .field import MorseField, validate_field
from .groupexpr import kernel_group, render
from .meshfile import format_mesh, parse_mesh
from .moebius import analyze_moebius, require_moebius
from .reeb import build_reeb
from .surf import SurfaceMesh, classify_piece
from .symmetry import analyze_symmetry

SCHEMA = 1

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_THEOREM = 3

SECTIONS = (
    "reeb",
    "edge_types",
    "edge_lemma",
    "distinguished",
    "decomposition",
    "symmetry",
    "group",
)


@dataclass
class Stages:
    """Intermediate objects, kept for callers that want more than the JSON."""

    field: Any = None
    reeb: Any = None
    edge_types: Any = None
    edge_lemma: Any = None
    distinguished: Any = None
    decomposition: Any = None
    partition: Any = None
    symmetry: Any = None


@dataclass
class Analysis:
    report: dict[str, Any]
    exit_code: int
    stages: Stages = field(default_factory=Stages, repr=False)

    def to_json(self, compact: bool = False) -> str:
        if compact:
            return json.dumps(self.report, ensure_ascii=False, separators=(",", ":")) + "\n"
        return json.dumps(self.report, ensure_ascii=False, indent=2) + "\n"


def _error(stage: str, exc: Exception) -> dict:
    out = {"stage": stage, "type": type(exc).__name__, "message": str(exc)}
    if getattr(exc, "line", None) is not None:
        out["line"] = exc.line
        out["column"] = exc.column
    return out


def _surface_json(m: SurfaceMesh) -> list[dict]:
    return [{"component": k, **classify_piece(m, k).to_json()} for k in range(m.n_components)]


def _critical_json(f: MorseField) -> list[dict]:
    return [{"vertex": v, "kind": str(k), "value": f.values[v]} for v, k in f.critical_vertices]


def _check_theorems(sym) -> None:
    if not sym.free.passed:
        raise FreeActionViolation(f"quotient does not act freely: {sym.free.witness}")
    for i, inv in enumerate(sym.invariant):
        if inv.lefschetz != 1:
            raise InvariantCellViolation(f"automorphism {i} has Lefschetz number {inv.lefschetz}")
        if not inv.dichotomy_local:
            raise InvariantCellViolation(
                f"automorphism {i} leaves {inv.count_local} of {inv.total} cells invariant"
            )


def _moebius_sections(f: MorseField, report: dict, st: Stages) -> None:
    st.field = f
    st.reeb = g = build_reeb(f)
    report["reeb"] = {**g.summary(), "v0": g.v0}
    require_moebius(f.mesh)
    types, lemma, dv = analyze_moebius(f, g)
    st.edge_types, st.edge_lemma, st.distinguished = types, lemma, dv
    report["edge_types"] = [{"edge": e, "type": types[e].value} for e in sorted(types)]
    report["edge_lemma"] = lemma.to_json()
    vert = g.vertices[dv.vertex]
    report["distinguished"] = {
        **dv.to_json(),
        "level": vert.level,
        "critical_vertices": list(vert.critical_vertices),
    }
    st.decomposition = d = decompose(f, g, dv.vertex)
    st.partition = xi = cw_partition(d)
    report["decomposition"] = {
        "n": d.n,
        "level": d.level,
        "epsilon": d.epsilon,
        "chi_N": d.chi_neighborhood,
        "pieces": [p.to_json() for p in d.pieces],
        "cw_cells": list(xi.counts),
        "euler": xi.euler,
    }
    st.symmetry = sym = analyze_symmetry(xi)
    quotient = render(sym.group)
    report["symmetry"] = {
        "automorphisms": len(sym.automorphisms),
        "kernel_order": len(sym.quotient.kernel),
        "quotient_order": sym.quotient.order,
        "quotient": quotient,
        "free_action": sym.free.passed,
        "orbits": sym.orbit_json(),
        "invariant_cells": [
            {
                "count": inv.count,
                "count_oriented": inv.count_local,
                "total": inv.total,
                "lefschetz": inv.lefschetz,
                "dichotomy": inv.dichotomy,
                "dichotomy_oriented": inv.dichotomy_local,
            }
            for inv in sym.invariant
        ],
    }
    kernel = render(kernel_group(d.n))
    report["group"] = {
        "expr": kernel if sym.quotient.order == 1 else None,
        "kernel_expr": kernel,
        "quotient": quotient,
    }
    _check_theorems(sym)


def analyze_bytes(data: bytes) -> Analysis:
    """Run the whole pipeline on the bytes of a ``plmorse 1`` file."""
    report: dict[str, Any] = {
        "schema": SCHEMA,
        "input": {"sha256": hashlib.sha256(data).hexdigest(), "bytes": len(data)},
        "validation": {"ok": False, "surface": None, "critical": None},
        **{name: None for name in SECTIONS},
        "errors": [],
        "counterexample": None,
    }
    st = Stages()
    stage = "parse"
    try:
        mf = parse_mesh(data.decode("ascii", errors="replace"))
        stage = "validate"
        report["validation"]["surface"] = _surface_json(mf.mesh)
        f = validate_field(mf.mesh, mf.values)
        report["validation"]["ok"] = True
        report["validation"]["critical"] = _critical_json(f)
        stage = "analysis"
        _moebius_sections(f, report, st)
    except ValidationError as exc:
        report["errors"].append(_error(stage, exc))
        # a valid field on some other surface still gets its Reeb summary
        return Analysis(report, EXIT_OK if report["validation"]["ok"] else EXIT_INVALID, st)
    except TheoremViolation as exc:
        report["errors"].append(_error(stage, exc))
        report["counterexample"] = {"mesh": format_mesh(mf.mesh, mf.values)}
        return Analysis(report, EXIT_THEOREM, st)
    except PLMorseError as exc:
        report["errors"].append(_error(stage, exc))
        return Analysis(report, EXIT_INVALID, st)
    return Analysis(report, EXIT_OK, st)


__all__ = ["Analysis", "Stages", "EXIT_INVALID", "EXIT_OK", "EXIT_THEOREM", "SCHEMA", "analyze_bytes"]
