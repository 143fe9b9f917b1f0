import pytest

from plmorse.errors import CriticalOnBoundary, EqualAdjacentInteriorValues, FieldError, NonConstantBoundary
from plmorse.field import MAX, MIN, critical_values, index_sum, saddle, validate_field
from plmorse.fixtures import fixture
from plmorse.surf import build_surface


def alternations_oracle(mesh, values, v):
    """Walk the link of v as a cycle of neighbors and count sign flips directly."""
    tris = [t for t in mesh.triangles if v in t]
    # each triangle contributes the link edge opposite v
    nxt = {}
    for t in tris:
        i = t.index(v)
        a, b = t[(i + 1) % 3], t[(i + 2) % 3]
        nxt.setdefault(a, []).append(b)
        nxt.setdefault(b, []).append(a)
    start = min(nxt)
    ring, prev, cur = [start], None, start
    while True:
        step = [u for u in nxt[cur] if u != prev][0]
        if step == start:
            break
        ring.append(step)
        prev, cur = cur, step
    signs = [1 if values[u] > values[v] else -1 for u in ring]
    return sum(1 for i in range(len(signs)) if signs[i] != signs[i - 1])


def test_cone_disk():
    fx = fixture("disk-cone")
    f = validate_field(fx.mesh, fx.values)
    assert f.critical_vertices == ((0, MAX),)
    assert critical_values(f) == [0.0, 1.0]


def test_regular_annulus():
    fx = fixture("annulus-linear")
    f = validate_field(fx.mesh, fx.values)
    assert f.critical_vertices == ()
    assert critical_values(f) == [0.0, 1.0]


def test_mb_min_critical_points_match_oracle():
    fx = fixture("mb-min")
    f = validate_field(fx.mesh, fx.values)
    kinds = sorted(str(k) for _, k in f.critical_vertices)
    assert kinds == ["Max", "Saddle(1)"]
    boundary = {v for c in fx.mesh.boundary_cycles for v in c}
    for v in range(fx.mesh.n_vertices):
        if v in boundary:
            continue
        alt = alternations_oracle(fx.mesh, fx.values, v)
        kind = f.critical.get(v)
        if alt == 2:
            assert kind is None
        elif alt == 0:
            assert kind in (MIN, MAX)
        else:
            assert kind == saddle(alt // 2 - 1)
    assert len(critical_values(f)) == 3


@pytest.mark.parametrize("name", ["mb-case-b", "mb-case-c", "mb-case-d"])
def test_saddle_sectors(name):
    fx = fixture(name)
    f = validate_field(fx.mesh, fx.values)
    for v in f.saddles():
        assert f.critical[v] == saddle(alternations_oracle(fx.mesh, fx.values, v) // 2 - 1)


def test_index_sums():
    # rp2 is the figure-eight band with its boundary coned off to a minimum
    for name, chi in [("rp2", 1), ("sphere-octa", 2), ("torus-height", 0)]:
        fx = fixture(name)
        assert index_sum(validate_field(fx.mesh, fx.values)) == chi


def test_validation_errors():
    fx = fixture("disk-cone")
    bad = list(fx.values)
    bad[1] = 0.5
    with pytest.raises(NonConstantBoundary):
        validate_field(fx.mesh, bad)
    with pytest.raises(FieldError):
        validate_field(fx.mesh, fx.values[:-1])

    # interior vertex 0 joined to interior vertex 1 with the same value
    strip = build_surface([(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
                           (1, 6, 2), (2, 6, 7)])
    with pytest.raises((EqualAdjacentInteriorValues, NonConstantBoundary)):
        validate_field(strip, [1.0] * 8)


def _grid_disk(n=3):
    def vid(i, j):
        return i * (n + 1) + j

    tris = []
    for i in range(n):
        for j in range(n):
            a, b, c, d = vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)
            tris += [(a, b, c), (a, c, d)]
    return build_surface(tris), vid


def test_critical_on_boundary():
    m, vid = _grid_disk()
    vals = [0.0] * m.n_vertices
    vals[vid(1, 1)], vals[vid(2, 1)], vals[vid(2, 2)], vals[vid(1, 2)] = 1.0, 2.0, 3.0, 4.0
    validate_field(m, vals)
    # boundary vertex (0, 1) sees interior neighbors (1, 1) and (1, 2) on opposite sides
    vals[vid(1, 2)] = -1.0
    with pytest.raises(CriticalOnBoundary):
        validate_field(m, vals)
