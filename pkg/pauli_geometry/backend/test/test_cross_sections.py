import pytest

from app.models.types import Family
from app.services.cross_sections import cross_section


def _vertex_set(polygon):
    return {tuple(round(v, 9) + 0.0 for v in p) for p in polygon.vertices}


def _by_label(section):
    return {r.label: r for r in section.regions}


def test_two_distinct_zero_planes():
    sections = cross_section(Family.TWO_DISTINCT_ZERO)
    assert [s.plane for s in sections] == ["lambda3=0", "lambda1=0", "lambda2=0"]
    first = _by_label(sections[0])
    assert _vertex_set(first["cpt"]) == {(1, 0, 0), (0, 1, 0), (-1, 0, 0), (0, -1, 0)}
    assert _vertex_set(first["cpt-tlg"]) == {(0, 0, 0), (1, 0, 0), (0, 1, 0)}


def test_degenerate_pair_triangle():
    sections = cross_section(Family.DEGENERATE_PAIR)
    assert len(sections) == 3
    assert sections[0].plane == "lambda1=lambda2"
    cpt = _by_label(sections[0])["cpt"]
    assert len(cpt.vertices) == 3
    assert _vertex_set(cpt) == {(0, 0, -1), (1, 1, 1), (-1, -1, 1)}


def test_depolarizing_segment():
    sections = cross_section(Family.DEPOLARIZING)
    assert len(sections) == 1
    cpt = _by_label(sections[0])["cpt"]
    assert cpt.vertices[0] == pytest.approx((-1 / 3, -1 / 3, -1 / 3), abs=1e-12)
    assert cpt.vertices[1] == pytest.approx((1.0, 1.0, 1.0))
    tlg = _by_label(sections[0])["cpt-tlg"]
    assert _vertex_set(tlg) == {(0, 0, 0), (1, 1, 1)}


@pytest.mark.parametrize("family", [Family.AXIAL, Family.PAIR_ZERO])
def test_one_parameter_families_have_three_segments(family):
    sections = cross_section(family)
    assert len(sections) == 3
    for section in sections:
        assert all(len(r.vertices) == 2 for r in section.regions)


def test_general_tetrahedron_faces():
    (section,) = cross_section(Family.GENERAL)
    faces = [r for r in section.regions if r.label.startswith("cpt/face")]
    assert len(faces) == 4
    corners = set().union(*(_vertex_set(f) for f in faces))
    assert corners == {(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)}


def test_sections_serialize():
    data = cross_section(Family.TWO_DISTINCT_ZERO)[0].model_dump(mode="json")
    assert set(data) == {"family", "plane", "regions"}
    assert data["family"] == "two-distinct-zero"
    assert set(data["regions"][0]) == {"label", "vertices"}


def test_vertices_keep_full_precision():
    (section,) = cross_section(Family.DEPOLARIZING)
    corner = _by_label(section)["cpt"].vertices[0]
    assert all(abs(v + 1 / 3) <= 1e-15 for v in corner)
    assert corner[0] != round(-1 / 3, 12)
