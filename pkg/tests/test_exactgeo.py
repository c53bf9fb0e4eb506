from __future__ import annotations

from fractions import Fraction

import pytest

from thrackle.exactgeo import (
    GeometryError,
    circle_rational_points,
    intersection_point,
    on_segment,
    orient,
    param_along,
    point,
    segment,
    segments_cross,
    segments_touch,
    winding_number,
)


def test_orient_signs():
    assert orient((0, 0), (1, 0), (0, 1)) == 1
    assert orient((0, 0), (0, 1), (1, 0)) == -1
    assert orient((0, 0), (1, 1), (2, 2)) == 0


def test_point_rejects_floats_losslessly():
    p = point(0.5, Fraction(1, 3))
    assert p.x == Fraction(1, 2) and p.y == Fraction(1, 3)


def test_degenerate_segment():
    with pytest.raises(GeometryError):
        segment((1, 1), (1, 1))


def test_proper_crossing_and_point():
    a = segment((0, 0), (2, 2))
    b = segment((0, 2), (2, 0))
    assert segments_cross(a, b)
    x = intersection_point(a, b)
    assert x == point(1, 1)
    assert param_along(a, x) == Fraction(1, 2)


def test_touching_is_not_crossing():
    a = segment((0, 0), (2, 0))
    b = segment((1, 0), (1, 5))
    assert not segments_cross(a, b)
    assert segments_touch(a, b)
    assert on_segment(a, (1, 0))
    c = segment((0, 1), (2, 1))
    assert not segments_touch(a, c)


def test_collinear_overlap_touches():
    a = segment((0, 0), (2, 0))
    b = segment((1, 0), (3, 0))
    assert segments_touch(a, b)
    assert not segments_cross(a, b)


def test_winding_square_and_double_loop():
    sq = [(0, 0), (2, 0), (2, 2), (0, 2)]
    assert winding_number(sq, (1, 1)) == 1
    assert winding_number(sq[::-1], (1, 1)) == -1
    assert winding_number(sq, (3, 1)) == 0
    star = [(0, 3), (Fraction(-18, 10), -2), (Fraction(29, 10), 1),
            (Fraction(-29, 10), 1), (Fraction(18, 10), -2)]
    assert abs(winding_number(star, (0, 0))) == 2


def test_winding_on_curve_raises():
    with pytest.raises(GeometryError):
        winding_number([(0, 0), (2, 0), (2, 2)], (1, 0))


@pytest.mark.parametrize("n", [3, 5, 7, 15])
def test_circle_points_exact_and_ordered(n):
    pts = circle_rational_points(n)
    assert all(p.x * p.x + p.y * p.y == 1 for p in pts)
    # consecutive points turn counterclockwise around the origin
    for i in range(n):
        assert orient((0, 0), pts[i], pts[(i + 1) % n]) == 1


def test_circle_points_bad_n():
    with pytest.raises(GeometryError):
        circle_rational_points(4)
