"""Exact rational plane geometry.

Everything here works over :class:`fractions.Fraction`; there are no
tolerances anywhere.  Points are plain named tuples so they hash and compare
structurally.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple, Sequence


class GeometryError(ValueError):
    """Raised for degenerate or invalid geometric input."""


class ExactPoint(NamedTuple):
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x, y) -> "ExactPoint":
        return cls(Fraction(x), Fraction(y))


class Segment(NamedTuple):
    a: ExactPoint
    b: ExactPoint


def point(x, y) -> ExactPoint:
    return ExactPoint(Fraction(x), Fraction(y))


def segment(a, b) -> Segment:
    a, b = point(*a), point(*b)
    if a == b:
        raise GeometryError("segment endpoints coincide")
    return Segment(a, b)


def cross(ax, ay, bx, by):
    return ax * by - ay * bx


def orient(p, q, r) -> int:
    """Sign of the signed area of triangle pqr (+1 counterclockwise)."""
    det = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (det > 0) - (det < 0)


def on_segment(s: Segment, p) -> bool:
    """True if ``p`` lies on the closed segment ``s``."""
    a, b = s
    if orient(a, b, p) != 0:
        return False
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def segments_cross(s1: Segment, s2: Segment) -> bool:
    """Proper crossing test: one shared point, interior to both segments.

    Touching at an endpoint and collinear overlap both count as no crossing.
    """
    a, b = s1
    c, d = s2
    o1 = orient(a, b, c)
    o2 = orient(a, b, d)
    o3 = orient(c, d, a)
    o4 = orient(c, d, b)
    if 0 in (o1, o2, o3, o4):
        return False
    return o1 != o2 and o3 != o4


def segments_touch(s1: Segment, s2: Segment) -> bool:
    """True if the closed segments share at least one point."""
    if segments_cross(s1, s2):
        return True
    return (on_segment(s1, s2.a) or on_segment(s1, s2.b)
            or on_segment(s2, s1.a) or on_segment(s2, s1.b))


def intersection_point(s1: Segment, s2: Segment) -> ExactPoint:
    """Crossing point of two properly crossing segments."""
    (ax, ay), (bx, by) = s1
    (cx, cy), (dx, dy) = s2
    rx, ry = bx - ax, by - ay
    sx, sy = dx - cx, dy - cy
    den = cross(rx, ry, sx, sy)
    if den == 0:
        raise GeometryError("parallel segments have no unique intersection")
    t = cross(cx - ax, cy - ay, sx, sy) / den
    return ExactPoint(ax + t * rx, ay + t * ry)


def param_along(s: Segment, p) -> Fraction:
    """Affine parameter of a point of ``s`` (0 at ``a``, 1 at ``b``)."""
    (ax, ay), (bx, by) = s
    if bx != ax:
        return (Fraction(p[0]) - ax) / (bx - ax)
    return (Fraction(p[1]) - ay) / (by - ay)


def winding_number(closed_polyline: Sequence, p) -> int:
    """Winding number of the closed polygonal curve around ``p``.

    ``closed_polyline`` lists the corners once; the closing segment back to
    the first corner is implied.  Raises :class:`GeometryError` if ``p`` is on
    the curve.
    """
    pts = [point(*q) for q in closed_polyline]
    p = point(*p)
    if len(pts) < 2:
        raise GeometryError("need at least two corners")
    w = 0
    for i, a in enumerate(pts):
        b = pts[(i + 1) % len(pts)]
        if a == b:
            continue
        if on_segment(Segment(a, b), p):
            raise GeometryError(f"probe {p} lies on the curve")
        if a.y <= p.y:
            if b.y > p.y and orient(a, b, p) > 0:
                w += 1
        elif b.y <= p.y and orient(a, b, p) < 0:
            w -= 1
    return w


def _tan_half_point(t: Fraction) -> ExactPoint:
    d = 1 + t * t
    return ExactPoint((1 - t * t) / d, 2 * t / d)


def circle_rational_points(n: int) -> list[ExactPoint]:
    """``n`` exact rational points on the unit circle near angles (2k+1)pi/n.

    The k-th point lies within pi/(4n) of angle (2k+1)pi/n, so the cyclic
    order is that of the regular polygon.
    """
    if not isinstance(n, int) or n < 3 or n % 2 == 0:
        raise GeometryError(f"n must be an odd integer >= 3, got {n!r}")
    out = []
    for k in range(n):
        theta = (2 * k + 1) * math.pi / n
        if 2 * k + 1 == n:
            p = ExactPoint(Fraction(-1), Fraction(0))
        else:
            t = Fraction(math.tan(theta / 2)).limit_denominator(64 * n * n)
            p = _tan_half_point(t)
        err = abs(math.remainder(math.atan2(float(p.y), float(p.x)) - theta, 2 * math.pi))
        if err >= math.pi / (4 * n):
            raise GeometryError(f"rational approximation too coarse at k={k}")
        out.append(p)
    return out
