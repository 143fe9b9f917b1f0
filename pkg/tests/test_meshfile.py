import pytest

from plmorse.errors import NonManifoldEdge, ParseError
from plmorse.fixtures import FIXTURE_NAMES, fixture
from plmorse.meshfile import format_mesh, parse_mesh


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_roundtrip(name):
    fx = fixture(name)
    text = format_mesh(fx.mesh, fx.values)
    back = parse_mesh(text)
    assert back.mesh.triangles == fx.mesh.triangles
    assert back.values == tuple(fx.values)
    assert format_mesh(back.mesh, back.values) == text


def test_coordinates_and_comments():
    text = "# a disk\nplmorse 1\n3 1\n\n0 0 0 0\n0 1 0 0\n1 0 1 0\n0 1 2\n"
    mf = parse_mesh(text)
    assert mf.mesh.coords[2] == (0.0, 1.0, 0.0)
    assert mf.values == (0.0, 0.0, 1.0)


@pytest.mark.parametrize(
    "text,line,column",
    [
        ("", 1, 1),
        ("plmorse 2\n", 1, 1),
        ("plmorse 1\n3\n", 2, 1),
        ("plmorse 1\n3 x\n", 2, 3),
        ("plmorse 1\n3 1\n0\n0\n", 5, 1),
        ("plmorse 1\n3 1\n0\nzero\n1\n0 1 2\n", 4, 1),
        ("plmorse 1\n3 1\n0\n0 1 2 3\n1\n0 1 2\n", 4, 1),
        ("plmorse 1\n3 1\n0 1 1 1\n0\n1\n0 1 2\n", 4, 1),
        ("plmorse 1\n3 1\n0\n0\n1\n0 1 5\n", 6, 5),
        ("plmorse 1\n3 1\n0\n0\n1\n0 1\n", 6, 3),
        ("plmorse 1\n3 1\n0\n0\n1\n0 1 1\n", 6, 1),
        ("plmorse 1\n3 1\n0\n0\n1\n0 1 2\n7\n", 7, 1),
        ("plmorse 1\n3 1\n0\n0\nnan\n0 1 2\n", 5, 1),
    ],
)
def test_parse_errors_carry_positions(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_mesh(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_mesh_errors_pass_through():
    text = "plmorse 1\n5 3\n0\n0\n0\n0\n0\n0 1 2\n0 1 3\n0 1 4\n"
    with pytest.raises(NonManifoldEdge):
        parse_mesh(text)
