import re

import networkx as nx
import pytest

from plmorse.field import validate_field
from plmorse.fixtures import FIXTURE_NAMES, fixture, random_moebius
from plmorse.reeb import build_reeb, is_tree, representative_curve, to_dot


def level_components_oracle(mesh, values, c):
    """Count components of f = c by joining triangles that share a crossed edge."""
    crossed = {
        frozenset((t[i], t[(i + 1) % 3]))
        for t in mesh.triangles
        for i in range(3)
        if (values[t[i]] - c) * (values[t[(i + 1) % 3]] - c) < 0
    }
    g = nx.Graph()
    for k, t in enumerate(mesh.triangles):
        es = [frozenset((t[i], t[(i + 1) % 3])) for i in range(3)]
        hit = [e for e in es if e in crossed]
        if hit:
            g.add_node(("t", k))
            for e in hit:
                g.add_edge(("t", k), ("e", e))
    return nx.number_connected_components(g)


def reeb_of(name):
    fx = fixture(name)
    return fx, build_reeb(validate_field(fx.mesh, fx.values))


def test_cone_disk_graph():
    _, g = reeb_of("disk-cone")
    assert (len(g.vertices), len(g.edges)) == (2, 1) and is_tree(g)


def test_regular_annulus_graph():
    _, g = reeb_of("annulus-linear")
    assert len(g.edges) == 1
    assert [v.kind for v in g.vertices] == ["boundary", "boundary"]


def test_mb_min_graph():
    fx, g = reeb_of("mb-min")
    assert is_tree(g)
    assert (len(g.vertices), len(g.edges)) == (3, 2)
    kinds = sorted(v.kind for v in g.vertices)
    assert kinds == ["boundary", "critical", "critical"]
    assert g.degree(g.v0) == 1


def test_torus_is_not_a_tree():
    _, g = reeb_of("torus-height")
    assert not is_tree(g)
    assert len(g.edges) == len(g.vertices)  # one cycle


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_component_counts_match_oracle(name):
    fx, g = reeb_of(name)
    for c in g.midlevels:
        assert g.count_edges_at(c) == level_components_oracle(fx.mesh, fx.values, c)


@pytest.mark.parametrize("s,seed", [(1, 0), (3, 5), (6, 2)])
def test_component_counts_on_random_fields(s, seed):
    fx = random_moebius(s, seed)
    g = build_reeb(validate_field(fx.mesh, fx.values))
    for c in g.midlevels:
        assert g.count_edges_at(c) == level_components_oracle(fx.mesh, fx.values, c)
    assert is_tree(g)


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_structural_invariants(name):
    fx, g = reeb_of(name)
    f = validate_field(fx.mesh, fx.values)
    assert nx.is_connected(g.to_networkx()) == (fx.mesh.n_components == 1)
    for v in g.vertices:
        if v.kind == "boundary":
            assert g.degree(v.id) == 1
        saddles = [f.critical[x] for x in v.critical_vertices if f.critical[x].is_saddle]
        if len(v.critical_vertices) == 1 and saddles and saddles[0].k == 1:
            # a one-sided crossing on a non-orientable surface gives degree 2
            allowed = (3, 4) if fx.mesh.is_orientable() else (2, 3, 4)
            assert g.degree(v.id) in allowed
    for e in g.edges:
        lo, hi = g.vertices[e.lower].level, g.vertices[e.upper].level
        assert lo < hi and e.interval == (lo, hi)
        assert lo < e.representative.value < hi


def test_representative_curve_on_annulus():
    fx, g = reeb_of("annulus-linear")
    curve = representative_curve(g, 0)
    rungs = {frozenset((i, 8 + i)) for i in range(8)}
    assert {frozenset(e) for e in curve.edges} >= rungs
    assert len(curve.crossings) == 16  # each rung and each diagonal once


def test_dot_output():
    _, g = reeb_of("disk-cone")
    dot = to_dot(g)
    assert dot.startswith("digraph") and len(re.findall(r"^\s+v\d+ \[", dot, re.M)) == 2

    _, g = reeb_of("torus-height")
    dot = to_dot(g)
    edges = re.findall(r"v(\d+) -> v(\d+)", dot)
    h = nx.MultiGraph()
    h.add_edges_from(edges)
    assert nx.cycle_basis(nx.Graph(h)) or h.number_of_edges() > nx.Graph(h).number_of_edges()
