"""Independent oracles used to derive and freeze expected values.

These avoid the package's own planarization: faces come from shapely's
polygonizer on the straight-line picture, labels from the exact winding
number of the closed polygon around a rational interior point.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction

from shapely.geometry import LineString
from shapely.ops import polygonize, unary_union

from thrackle.exactgeo import point, winding_number


def polygon_face_labels(points) -> Counter:
    """Label census of the faces of the closed polygon through ``points``.

    The unbounded face is counted with label 0.
    """
    pts = [(float(p[0]), float(p[1])) for p in points]
    k = len(pts)
    lines = [LineString([pts[i], pts[(i + 1) % k]]) for i in range(k)]
    exact = [point(*p) for p in points]
    census = Counter({0: 1})
    for poly in polygonize(unary_union(lines)):
        q = poly.representative_point()
        probe = (Fraction(q.x), Fraction(q.y))
        census[abs(winding_number(exact, probe))] += 1
    return census


def brute_force_crossing_order(points, i: int) -> list[int]:
    """Order of proper crossings along chord i, from float geometry."""
    k = len(points)
    pts = [(float(p[0]), float(p[1])) for p in points]
    a, b = pts[i], pts[(i + 1) % k]
    seg = LineString([a, b])
    hits = []
    for j in range(k):
        if j == i or {j, (j + 1) % k} & {i, (i + 1) % k}:
            continue
        other = LineString([pts[j], pts[(j + 1) % k]])
        x = seg.intersection(other)
        if not x.is_empty:
            hits.append((seg.project(x), j))
    return [j for _, j in sorted(hits)]
