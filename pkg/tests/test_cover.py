import pytest

from plmorse.cover import lift_curve, orientation_double_cover, preimage_components
from plmorse.decomp import decompose
from plmorse.field import validate_field
from plmorse.fixtures import MOEBIUS_FIXTURES, fixture
from plmorse.moebius import EdgeType, analyze_moebius
from plmorse.reeb import build_reeb
from plmorse.surf import PieceTag, classify_piece


def check_cover_invariants(c, values=None):
    base, total = c.base, c.total
    n, nf = total.n_vertices, total.n_faces
    assert n == 2 * base.n_vertices and nf == 2 * base.n_faces
    assert all(c.xi_vertex[c.xi_vertex[v]] == v and c.xi_vertex[v] != v for v in range(n))
    assert all(c.vertex_projection[c.xi_vertex[v]] == c.vertex_projection[v] for v in range(n))
    assert all(c.face_projection[c.xi_face[t]] == c.face_projection[t] for t in range(nf))
    for d in range(total.n_darts):
        x = c.xi_dart(d)
        assert x != d and c.xi_dart(x) == d
    assert total.is_orientable()
    assert total.euler_characteristic() == 2 * base.euler_characteristic()
    if values is not None:
        lifted = c.lift_values(values)
        assert all(lifted[c.xi_vertex[v]] == lifted[v] for v in range(n))


@pytest.mark.parametrize("name", MOEBIUS_FIXTURES)
def test_moebius_cover_is_annulus(name):
    fx = fixture(name)
    c = orientation_double_cover(fx.mesh)
    check_cover_invariants(c, fx.values)
    assert classify_piece(c.total, 0).tag is PieceTag.ANNULUS
    assert len(c.total.boundary_cycles) == 2
    pre = preimage_components(c, vertices=fx.mesh.boundary_cycles[0])
    assert pre.count == 2 and pre.swapped_by_xi


def test_sphere_cover_is_two_swapped_spheres():
    fx = fixture("sphere-octa")
    c = orientation_double_cover(fx.mesh)
    check_cover_invariants(c, fx.values)
    assert c.total.n_components == 2
    comp = c.total.vertex_component
    assert all(comp[c.xi_vertex[v]] != comp[v] for v in range(c.total.n_vertices))
    assert all(c.total.euler_characteristic(k) == 2 for k in range(2))


def test_projective_plane_cover_is_sphere():
    fx = fixture("rp2")
    c = orientation_double_cover(fx.mesh)
    check_cover_invariants(c, fx.values)
    k = classify_piece(c.total, 0)
    assert c.total.n_components == 1 and (k.chi, k.boundary_count) == (2, 0)


def test_lifted_field_is_valid_with_lifted_critical_points():
    fx = fixture("mb-case-b")
    c = orientation_double_cover(fx.mesh)
    base = validate_field(fx.mesh, fx.values)
    top = validate_field(c.total, c.lift_values(fx.values))
    expected = sorted(w for v in base.critical for w in (2 * v, 2 * v + 1))
    assert sorted(top.critical) == expected
    assert all(top.critical[w] == base.critical[w // 2] for w in top.critical)


def test_disk_piece_lifts_to_two_swapped_disks():
    fx = fixture("mb-case-a")
    f = validate_field(fx.mesh, fx.values)
    g = build_reeb(f)
    _, _, dv = analyze_moebius(f, g)
    d = decompose(f, g, dv.vertex)
    c = orientation_double_cover(fx.mesh)
    # base triangles lying wholly inside Y_1 (cut meshes keep original vertex ids)
    faces = [t for t, tri in enumerate(fx.mesh.triangles) if all(d.piece_of_vertex(v) == 1 for v in tri)]
    assert faces
    pre = preimage_components(c, faces=faces)
    assert pre.count == 2 and pre.swapped_by_xi


def test_lifts_of_level_curves():
    fx = fixture("mb-min")
    f = validate_field(fx.mesh, fx.values)
    g = build_reeb(f)
    types, _, _ = analyze_moebius(f, g)
    c = orientation_double_cover(fx.mesh)
    for e in g.edges:
        lifts = lift_curve(c, e.representative)
        # level curves on the band are two-sided, so they lift to two circles
        assert len(lifts) == 2
        assert all(len(x.crossings) == len(e.representative.crossings) for x in lifts)
        edges0 = {c.project_edge(x) for x in lifts[0].edges}
        assert edges0 == set(e.representative.edges)
    assert set(types.values()) == {EdgeType.A, EdgeType.B}
