"""Standard odd musquashes: crossing tables, exact realizations, recognition."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, cmp_to_key

from thrackle.core_map import PlanarDrawing, build_drawing, mirrored, relabeled, with_outer
from thrackle.exactgeo import (
    ExactPoint,
    GeometryError,
    Segment,
    on_segment,
    segments_touch,
    circle_rational_points,
    intersection_point,
    orient,
    param_along,
    segments_cross,
)


class ParameterError(ValueError):
    pass


def _check_n(n) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 3 or n % 2 == 0:
        raise ParameterError(f"n must be an odd integer >= 3, got {n!r}")


def crossing_order(n: int, i: int) -> list[int]:
    """Edges crossed by edge ``i`` of the standard n-musquash, in order.

    i+n-3, i+n-5, ..., i+2, then i+n-2, i+n-4, ..., i+3 (mod n).
    """
    _check_n(n)
    if not isinstance(i, int) or not 0 <= i < n:
        raise ParameterError(f"edge id must lie in [0, {n}), got {i!r}")
    half = (n - 3) // 2
    first = [(i + n - 3 - 2 * k) % n for k in range(half)]
    second = [(i + n - 2 - 2 * k) % n for k in range(half)]
    return first + second


def cycle_edges(n: int) -> list[tuple[int, int]]:
    return [(j, (j + 1) % n) for j in range(n)]


@dataclass(frozen=True)
class Realization:
    """Straight-line rational picture of the standard n-musquash.

    ``vertices[k]`` is graph vertex k; ``crossings[(e, f)]`` (e < f) the
    exact crossing point of chords e and f.
    """

    n: int
    vertices: tuple[ExactPoint, ...]
    crossings: dict

    def chord(self, j: int) -> Segment:
        return Segment(self.vertices[j], self.vertices[(j + 1) % self.n])

    def order_along(self, j: int) -> list[int]:
        seg = self.chord(j)
        pts = [(param_along(seg, p), f if e == j else e)
               for (e, f), p in self.crossings.items() if j in (e, f)]
        return [f for _, f in sorted(pts)]

    def polyline(self) -> list[ExactPoint]:
        return list(self.vertices)


def realize(n: int) -> Realization:
    """Vertices at rational points near e^{(2mk+1) pi i/n}, m = (n-1)/2."""
    _check_n(n)
    pts = circle_rational_points(n)
    m = (n - 1) // 2
    verts = tuple(pts[(m * k) % n] for k in range(n))
    chords = [Segment(verts[j], verts[(j + 1) % n]) for j in range(n)]
    xs = {}
    for e in range(n):
        for f in range(e + 1, n):
            if segments_cross(chords[e], chords[f]):
                xs[(e, f)] = intersection_point(chords[e], chords[f])
    return Realization(n, verts, xs)


def _angle_cmp(a, b) -> int:
    """Counterclockwise angular order of direction vectors from the +x axis."""
    def half(v):
        return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1
    ha, hb = half(a), half(b)
    if ha != hb:
        return ha - hb
    c = a[0] * b[1] - a[1] * b[0]
    return -1 if c > 0 else (1 if c < 0 else 0)


def drawing_from_straight_edges(points, edges) -> tuple[PlanarDrawing, dict]:
    """Planarize a straight-line drawing given exactly.

    Returns the drawing and a map node -> ExactPoint.  Edges must be in
    general position (no overlaps, no vertex on another edge).
    """
    points = [ExactPoint(Fraction(p[0]), Fraction(p[1])) for p in points]
    if len(set(points)) != len(points):
        raise GeometryError("two vertices share a position")
    segs = [Segment(points[u], points[v]) for u, v in edges]
    E = len(edges)
    for e, (u, v) in enumerate(edges):
        for w, p in enumerate(points):
            if w not in (u, v) and on_segment(segs[e], p):
                raise GeometryError(f"vertex {w} lies on edge {e}")
        for f in range(e + 1, E):
            if (orient(*segs[e], segs[f].a) == 0 and orient(*segs[e], segs[f].b) == 0
                    and segments_touch(segs[e], segs[f]) and len(set(edges[e]) & set(edges[f])) != 1):
                raise GeometryError(f"edges {e} and {f} overlap")
    per_edge = [[] for _ in range(E)]
    for e in range(E):
        for f in range(e + 1, E):
            if segments_cross(segs[e], segs[f]):
                p = intersection_point(segs[e], segs[f])
                d1 = (segs[e].b[0] - segs[e].a[0], segs[e].b[1] - segs[e].a[1])
                d2 = (segs[f].b[0] - segs[f].a[0], segs[f].b[1] - segs[f].a[1])
                h = 1 if d1[0] * d2[1] - d1[1] * d2[0] > 0 else -1
                per_edge[e].append((param_along(segs[e], p), f, h, p))
                per_edge[f].append((param_along(segs[f], p), e, -h, p))
    seen_points = [p for xs in per_edge for _, _, _, p in xs]
    if len(set(seen_points)) * 2 != len(seen_points):
        raise GeometryError("three edges pass through one crossing point")
    crossings = [[(f, h) for _, f, h, _ in sorted(xs)] for xs in per_edge]
    rotations = []
    for v in range(len(points)):
        ends = []
        for e, (a, b) in enumerate(edges):
            if a == v:
                other = points[b]
                ends.append((2 * e, (other[0] - points[v][0], other[1] - points[v][1])))
            if b == v:
                other = points[a]
                ends.append((2 * e + 1, (other[0] - points[v][0], other[1] - points[v][1])))
        ends.sort(key=cmp_to_key(lambda p, q: _angle_cmp(p[1], q[1])))
        rotations.append([r for r, _ in ends])
    d = build_drawing(len(points), edges, crossings, rotations)
    pos = {v: points[v] for v in range(len(points))}
    for e in range(E):
        for (_, f, h, p), dart in zip(sorted(per_edge[e]), d.edge_chain(e)):
            pos[d.head(dart)] = p
    # the unbounded face is the only one traced clockwise
    outer = None
    for face in d.faces:
        poly = [pos[d.org[x]] for x in face]
        area = sum(poly[i][0] * poly[(i + 1) % len(poly)][1] - poly[(i + 1) % len(poly)][0] * poly[i][1]
                   for i in range(len(poly)))
        if area < 0:
            outer = face[0]
    d = PlanarDrawing(d.n_vertices, d.edges, d.node_vertex, d.org, d.nxt, d.sedge, outer)
    return d, pos


@lru_cache(maxsize=None)
def _standard(n: int) -> tuple[PlanarDrawing, tuple]:
    r = realize(n)
    d, pos = drawing_from_straight_edges(r.vertices, cycle_edges(n))
    return d, tuple(sorted(pos.items()))


def standard_musquash(n: int) -> PlanarDrawing:
    """The standard n-musquash with cycle 0 -> 1 -> ... -> n-1 -> 0."""
    _check_n(n)
    return _standard(n)[0]


def musquash_positions(n: int) -> dict[int, ExactPoint]:
    """Exact node positions of :func:`standard_musquash` (vertices and crossings)."""
    _check_n(n)
    return dict(_standard(n)[1])


def musquash_cycle(n: int) -> list[int]:
    return list(range(n))


def cycle_order(d: PlanarDrawing) -> list[tuple[int, int]] | None:
    """Edges of a single-cycle drawing as [(edge, direction)] in walk order."""
    E = len(d.edges)
    if E < 3 or d.n_vertices != E:
        return None
    inc = {}
    for e, (a, b) in enumerate(d.edges):
        inc.setdefault(a, []).append(e)
        inc.setdefault(b, []).append(e)
    if any(len(v) != 2 for v in inc.values()) or len(inc) != E:
        return None
    out = [(0, 1)]
    cur = d.edges[0][1]
    prev = 0
    while len(out) < E:
        e = inc[cur][0] if inc[cur][0] != prev else inc[cur][1]
        a, b = d.edges[e]
        direction = 1 if a == cur else -1
        out.append((e, direction))
        cur = b if direction == 1 else a
        prev = e
    if cur != d.edges[0][0]:
        return None
    return out


def relabelings(order: list[tuple[int, int]]):
    """All 2n ways to read a cycle as edges 0..n-1: rotations times reflections."""
    n = len(order)
    for flip in (False, True):
        seq = order if not flip else [(e, -s) for e, s in reversed(order)]
        for r in range(n):
            yield [seq[(r + i) % n] for i in range(n)]


def verify_musquash(d: PlanarDrawing) -> bool:
    """Is ``d`` isotopic on the sphere to a standard musquash?"""
    order = cycle_order(d)
    if order is None:
        return False
    n = len(order)
    if n % 2 == 0:
        return False
    std = standard_musquash(n)
    std_plain = PlanarDrawing(std.n_vertices, std.edges, std.node_vertex, std.org,
                              std.nxt, std.sedge, None)
    table = d.crossing_table()
    for seq in relabelings(order):
        new_of = {e: i for i, (e, _) in enumerate(seq)}
        ok = True
        for i, (e, s) in enumerate(seq):
            got = [new_of[p] for p in (table[e] if s == 1 else reversed(table[e]))]
            if got != crossing_order(n, i):
                ok = False
                break
        if not ok:
            continue
        try:
            cand = relabeled(d, {e: (i, s) for i, (e, s) in enumerate(seq)})
        except ValueError:
            continue
        cand = with_outer(cand, None)
        if cand == std_plain or with_outer(mirrored(cand), None) == std_plain:
            return True
    return False
