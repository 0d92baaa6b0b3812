import numpy as np
import pytest

from app.services import geometry


def test_superlevel_intervals():
    # 1 - x^2 >= 0 on [-2, 2]
    assert geometry.superlevel_intervals(-1.0, 0.0, 1.0, -2.0, 2.0) == [(-1.0, 1.0)]
    # x^2 - 1/4 >= 0 on [-1, 1]
    assert geometry.superlevel_intervals(1.0, 0.0, -0.25, -1.0, 1.0) == [(-1.0, -0.5), (0.5, 1.0)]
    # -x^2 >= 0 is a single point
    assert geometry.superlevel_intervals(-1.0, 0.0, 0.0, -1.0, 1.0) == []


def test_interval_algebra():
    merged = geometry.merge_intervals([(0.0, 1.0), (0.5, 2.0), (3.0, 4.0)])
    assert merged == [(0.0, 2.0), (3.0, 4.0)]
    assert geometry.intersect_intervals([(0.0, 2.0)], [(1.0, 3.0)]) == [(1.0, 2.0)]
    assert geometry.total_length([(0.0, 1.0), (0.5, 1.5)]) == pytest.approx(1.5)


def test_clip_square_to_diamond():
    poly = geometry.box_polygon([(-1.0, 1.0), (-1.0, 1.0)])
    for a in ([1, 1], [1, -1], [-1, 1], [-1, -1]):
        poly = geometry.clip_halfplane(poly, a, 1.0)
    assert geometry.polygon_area(poly) == pytest.approx(2.0)
    assert {tuple(np.round(p, 12) + 0.0) for p in poly} == {(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)}


def test_clip_to_empty():
    poly = geometry.box_polygon([(0.0, 1.0), (0.0, 1.0)])
    assert len(geometry.clip_halfplane(poly, [1.0, 0.0], -2.0)) == 0


@pytest.mark.parametrize(
    "box, Q, a, expected",
    [
        # y >= x^2 on the unit square
        ([(0, 1), (0, 1)], [[-1, 0], [0, 0]], [0, 1], 2 / 3),
        # y >= x^2 on [-1, 1] x [0, 1]
        ([(-1, 1), (0, 1)], [[-1, 0], [0, 0]], [0, 1], 4 / 3),
        # x >= y^2 on the unit square
        ([(0, 1), (0, 1)], [[0, 0], [0, -1]], [1, 0], 2 / 3),
    ],
)
def test_area_inside_parabola(box, Q, a, expected):
    poly = geometry.box_polygon(box)
    area = geometry.area_inside_curve(poly, np.array(Q, float), np.array(a, float), 0.0)
    assert area == pytest.approx(expected, abs=1e-12)


def test_area_inside_parabola_clockwise_input():
    poly = geometry.box_polygon([(0.0, 1.0), (0.0, 1.0)])[::-1]
    area = geometry.area_inside_curve(poly, np.array([[-1.0, 0.0], [0.0, 0.0]]), np.array([0.0, 1.0]), 0.0)
    assert area == pytest.approx(2 / 3, abs=1e-12)


def _cube():
    A = np.vstack([np.eye(3), -np.eye(3)])
    return A, np.ones(6)


def test_polytope_volume_of_cube_and_corner():
    A, b = _cube()
    assert geometry.polytope_volume(A, b) == pytest.approx(8.0)
    # x + y + z <= 1 inside the positive octant of the cube
    A2 = np.vstack([A, np.eye(3), -np.ones((1, 3))])
    b2 = np.concatenate([b, np.zeros(3), [1.0]])
    assert geometry.polytope_volume(A2, b2) == pytest.approx(1 / 6)


def test_flat_polytope_has_no_volume():
    A, b = _cube()
    A2 = np.vstack([A, [[0, 0, 1.0]], [[0, 0, -1.0]]])
    b2 = np.concatenate([b, [0.0, 0.0]])
    _, radius = geometry.chebyshev_center(A2, b2)
    assert radius == pytest.approx(0.0, abs=1e-9)
    assert geometry.polytope_volume(A2, b2) == 0.0
