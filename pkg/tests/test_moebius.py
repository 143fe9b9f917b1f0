import pytest

from plmorse.cover import orientation_double_cover
from plmorse.errors import LemmaViolated, NotAMoebiusBand, NotATree
from plmorse.field import validate_field
from plmorse.fixtures import MOEBIUS_FIXTURES, fixture, random_moebius
from plmorse.moebius import (
    EdgeType,
    a_degree,
    analyze_moebius,
    classify_edge,
    classify_edges,
    find_distinguished_vertex,
    homology_oracle,
    verify_edge_lemma,
)
from plmorse.reeb import build_reeb


def setup(fx):
    f = validate_field(fx.mesh, fx.values)
    return f, build_reeb(f)


def test_mb_min_types_and_walk():
    f, g = setup(fixture("mb-min"))
    types, report, dv = analyze_moebius(f, g)
    first = g.incident(g.v0)[0]
    assert types[first] is EdgeType.A
    assert [t for e, t in types.items() if e != first] == [EdgeType.B]
    assert report.passed and report.max_a_degree == 1
    assert dv.path[0] == g.v0 and dv.edges == (first,)
    assert f.critical[g.vertices[dv.vertex].critical_vertices[0]].is_saddle


@pytest.mark.parametrize("name", MOEBIUS_FIXTURES)
def test_cut_classifier_matches_cover_oracle(name):
    fx = fixture(name)
    f, g = setup(fx)
    cover = orientation_double_cover(fx.mesh)
    for e in g.edges:
        t = classify_edge(f, g, e.id)
        for curve in e.chain:
            assert homology_oracle(cover, curve) is t


@pytest.mark.parametrize("s,seed", [(2, 3), (4, 1), (5, 6)])
def test_oracle_on_random_fields(s, seed):
    fx = random_moebius(s, seed)
    f, g = setup(fx)
    cover = orientation_double_cover(fx.mesh)
    types = classify_edges(f, g)
    assert all(homology_oracle(cover, g.edges[e].representative) is t for e, t in types.items())
    assert verify_edge_lemma(g, types).passed


def test_a_degree_violation_is_reported():
    f, g = setup(fixture("mb-case-c"))
    forged = {e.id: EdgeType.A for e in g.edges}
    report = verify_edge_lemma(g, forged)
    assert not report.passed and report.max_a_degree > 2
    assert any(v["kind"] == "a_degree" for v in report.violations)
    with pytest.raises(LemmaViolated):
        find_distinguished_vertex(g, forged)


def test_a_beyond_b_violation_carries_a_path():
    f, g = setup(random_moebius(3, 28))
    types, _, dv = analyze_moebius(f, g)
    assert len(dv.edges) == 3
    forged = dict(types)
    forged[dv.edges[0]] = EdgeType.B
    report = verify_edge_lemma(g, forged)
    hits = [v for v in report.violations if v["kind"] == "a_beyond_b"]
    assert hits and all(v["path"] for v in hits)


def test_degree_helper():
    f, g = setup(fixture("mb-case-c"))
    types = classify_edges(f, g)
    degs = sorted(a_degree(g, types, v.id) for v in g.vertices)
    assert degs.count(1) == 2 and max(degs) <= 2


def test_rejects_other_surfaces():
    f, g = setup(fixture("disk-cone"))
    with pytest.raises(NotAMoebiusBand):
        analyze_moebius(f, g)
    f, g = setup(fixture("torus-height"))
    with pytest.raises(NotATree):
        find_distinguished_vertex(g, {e.id: EdgeType.B for e in g.edges})


def test_mb_case_a_single_a_path_in_dot():
    from plmorse.reeb import to_dot

    f, g = setup(fixture("mb-case-a"))
    types = classify_edges(f, g)
    dot = to_dot(g, {e: t.value for e, t in types.items()})
    assert dot.count('label="A"') == 1
    (a_edge,) = [e for e, t in types.items() if t is EdgeType.A]
    assert g.v0 in g.edges[a_edge].ends()
