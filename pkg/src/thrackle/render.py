"""Straight-line layouts of planarized drawings and SVG output.

Layouts are exact: every node gets a rational position and the result is
checked with exact predicates before it is used.  Standard musquashes use
their rational circle realization; everything else gets a barycentric
(Tutte) layout with the outer face pinned to a convex polygon.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key

import numpy as np

from thrackle.core_map import PlanarDrawing, face_labels
from thrackle.exactgeo import (
    ExactPoint,
    GeometryError,
    Segment,
    intersection_point,
    on_segment,
    orient,
    segments_cross,
    segments_touch,
    winding_number,
)
from thrackle.musquash import _angle_cmp, cycle_order, musquash_positions, standard_musquash

SNAP = 1 << 40


class LayoutError(RuntimeError):
    pass


@dataclass(frozen=True)
class Layout:
    positions: dict      # node -> ExactPoint
    outer: int | None
    method: str = "tutte"

    def segment(self, d: PlanarDrawing, dart: int) -> Segment:
        return Segment(self.positions[d.org[dart]], self.positions[d.head(dart)])

    def polyline(self, d: PlanarDrawing, e: int) -> list[ExactPoint]:
        chain = d.edge_chain(e)
        return [self.positions[d.org[x]] for x in chain] + [self.positions[d.head(chain[-1])]]


def _snap(x: float) -> Fraction:
    return Fraction(round(x * SNAP), SNAP)


# ---------------------------------------------------------------------------
# validation


def check_layout(lay: Layout, d: PlanarDrawing) -> None:
    """Raise :class:`LayoutError` unless the straight-line picture is the map."""
    pos = lay.positions
    if len(pos) != d.n_nodes or len(set(pos.values())) != d.n_nodes:
        raise LayoutError("node positions are missing or coincide")
    segs = [(d.org[2 * k], d.org[2 * k + 1]) for k in range(d.n_segments)]
    for i, (a, b) in enumerate(segs):
        si = Segment(pos[a], pos[b])
        for j in range(i + 1, len(segs)):
            c, e = segs[j]
            sj = Segment(pos[c], pos[e])
            shared = {a, b} & {c, e}
            if len(shared) == 2:
                raise LayoutError(f"segments {i} and {j} are parallel")
            if not shared:
                if segments_touch(si, sj):
                    raise LayoutError(f"segments {i} and {j} meet away from a node")
                continue
            s = shared.pop()
            p = pos[b if a == s else a]
            q = pos[e if c == s else c]
            o = pos[s]
            # collinear and pointing the same way means overlap
            if orient(o, p, q) == 0 and (p[0] - o[0]) * (q[0] - o[0]) + (p[1] - o[1]) * (q[1] - o[1]) > 0:
                raise LayoutError(f"segments {i} and {j} overlap")
        for node in (n for n in pos if n not in (a, b)):
            if on_segment(si, pos[node]):
                raise LayoutError(f"node {node} lies on segment {i}")
    for node in range(d.n_nodes):
        rot = d.rotation(node)
        if len(rot) < 3:
            continue
        o = pos[node]
        dirs = {x: (pos[d.head(x)][0] - o[0], pos[d.head(x)][1] - o[1]) for x in rot}
        order = sorted(rot, key=cmp_to_key(lambda x, y: _angle_cmp(dirs[x], dirs[y])))
        k = order.index(rot[0])
        if order[k:] + order[:k] != rot:
            raise LayoutError(f"rotation at node {node} is not realized")
    for f in d.face_ids():
        poly = [pos[d.org[x]] for x in d.face_darts(f)]
        area = sum(poly[i][0] * poly[(i + 1) % len(poly)][1] - poly[(i + 1) % len(poly)][0] * poly[i][1]
                   for i in range(len(poly)))
        if lay.outer is not None and (f == lay.outer) != (area < 0):
            raise LayoutError(f"face {f} has the wrong orientation")


def crossing_sets_match(lay: Layout, d: PlanarDrawing) -> bool:
    """Do the edge polylines meet exactly at the map's crossing nodes?

    Points where two polylines share a graph vertex are ignored; every other
    common point must be a crossing node of that same edge pair, and every
    crossing node must be found.
    """
    E = len(d.edges)
    polys = [lay.polyline(d, e) for e in range(E)]
    found: dict[tuple[int, int], set] = {}
    for e in range(E):
        for f in range(e + 1, E):
            ends = {lay.positions[v] for v in set(d.edges[e]) & set(d.edges[f])}
            pts = set()
            for s in zip(polys[e], polys[e][1:]):
                for t in zip(polys[f], polys[f][1:]):
                    s1, s2 = Segment(*s), Segment(*t)
                    if segments_cross(s1, s2):
                        pts.add(intersection_point(s1, s2))
                    elif segments_touch(s1, s2):
                        for p in (s1.a, s1.b, s2.a, s2.b):
                            if on_segment(s1, p) and on_segment(s2, p):
                                pts.add(p)
            pts -= ends
            if pts:
                found[(e, f)] = pts
    want: dict[tuple[int, int], set] = {}
    for x in range(d.n_vertices, d.n_nodes):
        want.setdefault(d.crossing_edges(x), set()).add(lay.positions[x])
    return found == want


# ---------------------------------------------------------------------------
# layout


def _is_standard(d: PlanarDrawing):
    order = cycle_order(d)
    if order is None or len(order) % 2 == 0:
        return None
    n = len(order)
    std = standard_musquash(n)
    if (d.edges, d.org, d.nxt, d.sedge, d.node_vertex) == (std.edges, std.org, std.nxt, std.sedge,
                                                          std.node_vertex):
        return n
    return None


def _prune_leaves(d: PlanarDrawing) -> tuple[set, list]:
    deg = [d.degree(x) for x in range(d.n_nodes)]
    alive = set(range(d.n_nodes))
    order = []  # (leaf, dart from its neighbour)
    stack = [x for x in alive if deg[x] == 1]
    while stack:
        x = stack.pop()
        if x not in alive or deg[x] != 1 or len(alive) <= 3:
            continue
        out = next(y for y in d.rotation(x) if d.head(y) in alive)
        p = d.head(out)
        alive.discard(x)
        order.append((x, out ^ 1))
        deg[p] -= 1
        if deg[p] == 1:
            stack.append(p)
    return alive, order


def _tutte(d: PlanarDrawing, core: set, outer: int) -> dict:
    """Barycentric positions of the core nodes.

    Every inner face gets an auxiliary hub joined to its boundary nodes and
    parallel segments are subdivided, so the solved graph is a simple
    triangulation-like 3-connected graph and the solve is non-degenerate.
    Auxiliary nodes are dropped from the result.
    """
    adj: dict[int, set] = {x: set() for x in core}
    extra = d.n_nodes
    sub = {}
    seen = set()
    for k in range(d.n_segments):
        a, b = d.org[2 * k], d.org[2 * k + 1]
        if a not in core or b not in core:
            continue
        key = (min(a, b), max(a, b))
        if key in seen:
            sub[k] = extra
            adj[extra] = {a, b}
            adj[a].add(extra)
            adj[b].add(extra)
            extra += 1
        else:
            seen.add(key)
            adj[a].add(b)
            adj[b].add(a)

    def boundary(f):
        out = []
        for x in d.face_darts(f):
            for node in (d.org[x], sub.get(x // 2)):
                if node is not None and node in adj and node not in out:
                    out.append(node)
        return out

    ring = boundary(outer)
    if len(ring) < 3:
        raise LayoutError("outer face has fewer than three nodes")
    for f in d.face_ids():
        if f == outer:
            continue
        nodes = boundary(f)
        adj[extra] = set(nodes)
        for y in nodes:
            adj[y].add(extra)
        extra += 1
    pos = {}
    k = len(ring)
    for i, x in enumerate(ring):
        # clockwise, because the outer face lies to the left of its darts
        t = -2 * math.pi * i / k + math.pi / 2
        pos[x] = (math.cos(t), math.sin(t))
    idx = {x: i for i, x in enumerate(sorted(set(adj) - set(ring)))}
    m = len(idx)
    if m:
        A = np.zeros((m, m))
        bx = np.zeros(m)
        by = np.zeros(m)
        for x, i in idx.items():
            for h in adj[x]:
                A[i, i] += 1
                if h in idx:
                    A[i, idx[h]] -= 1
                else:
                    bx[i] += pos[h][0]
                    by[i] += pos[h][1]
        try:
            xs = np.linalg.solve(A, bx)
            ys = np.linalg.solve(A, by)
        except np.linalg.LinAlgError as exc:
            raise LayoutError(f"barycentric system is singular: {exc}") from None
        for x, i in idx.items():
            pos[x] = (float(xs[i]), float(ys[i]))
    return {x: pos[x] for x in core}


def _place_leaf(d: PlanarDrawing, pos: dict, leaf: int, dart: int, scale: float) -> None:
    p = d.org[dart]
    px, py = pos[p]
    others = [y for y in d.rotation(p) if y != dart and d.head(y) in pos]
    if not others:
        ang = 0.0
    else:
        prv = d.prv[dart]
        nxt = d.nxt[dart]
        while d.head(prv) not in pos:
            prv = d.prv[prv]
        while d.head(nxt) not in pos:
            nxt = d.nxt[nxt]
        a1 = math.atan2(pos[d.head(prv)][1] - py, pos[d.head(prv)][0] - px)
        a2 = math.atan2(pos[d.head(nxt)][1] - py, pos[d.head(nxt)][0] - px)
        span = (a2 - a1) % (2 * math.pi) or 2 * math.pi
        ang = a1 + span / 2
    near = min((math.hypot(q[0] - px, q[1] - py) for n, q in pos.items() if n != p), default=1.0)
    r = scale * near
    pos[leaf] = (px + r * math.cos(ang), py + r * math.sin(ang))


def layout(d: PlanarDrawing, outer: int | None = None, method: str = "auto") -> Layout:
    """Validated straight-line layout of ``d`` with ``outer`` as the unbounded face."""
    if outer is None:
        outer = d.outer_face
    if method == "auto" and outer == d.outer_face:
        n = _is_standard(d)
        if n is not None:
            lay = Layout(dict(musquash_positions(n)), outer, "realization")
            check_layout(lay, d)
            return lay
    if d.n_nodes < 3:
        raise LayoutError("need at least three nodes")
    faces = d.face_ids()
    if outer is None:
        outer = max(faces, key=lambda f: (len(d.face_darts(f)), -f))
    core, leaves = _prune_leaves(d)
    base = _tutte(d, core, outer)
    last = None
    for scale in (0.3, 0.15, 0.07, 0.03, 0.01):
        pos = dict(base)
        for leaf, dart in reversed(leaves):
            _place_leaf(d, pos, leaf, dart, scale)
        lay = Layout({x: ExactPoint(_snap(px), _snap(py)) for x, (px, py) in sorted(pos.items())},
                     outer, "tutte")
        try:
            check_layout(lay, d)
            return lay
        except LayoutError as exc:
            last = exc
            if not leaves:
                break
    raise LayoutError(f"no valid layout: {last}")


# ---------------------------------------------------------------------------
# svg


@dataclass(frozen=True)
class SvgOptions:
    size: int = 400
    stroke_width: float = 1.5
    labels: bool = False
    cycle: tuple | None = None  # reference cycle for labels; default: the drawing's own


def _interior_point(poly: list[ExactPoint]) -> ExactPoint | None:
    k = len(poly)
    cands = []
    a2 = sum(poly[i][0] * poly[(i + 1) % k][1] - poly[(i + 1) % k][0] * poly[i][1] for i in range(k))
    if a2:
        cx = sum((poly[i][0] + poly[(i + 1) % k][0])
                 * (poly[i][0] * poly[(i + 1) % k][1] - poly[(i + 1) % k][0] * poly[i][1])
                 for i in range(k)) / (3 * a2)
        cy = sum((poly[i][1] + poly[(i + 1) % k][1])
                 * (poly[i][0] * poly[(i + 1) % k][1] - poly[(i + 1) % k][0] * poly[i][1])
                 for i in range(k)) / (3 * a2)
        cands.append(ExactPoint(cx, cy))
    for i in range(k):
        a, b, c = poly[i - 1], poly[i], poly[(i + 1) % k]
        cands.append(ExactPoint((a[0] + b[0] + c[0]) / 3, (a[1] + b[1] + c[1]) / 3))
    for p in cands:
        try:
            if winding_number(poly, p) != 0:
                return p
        except GeometryError:
            continue
    return None


def emit_svg(lay: Layout, d: PlanarDrawing, options: SvgOptions | None = None) -> str:
    """Deterministic SVG text for a validated layout."""
    opt = options or SvgOptions()
    pts = list(lay.positions.values())
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0) or Fraction(1)
    margin = Fraction(opt.size, 12)
    k = (opt.size - 2 * margin) / span

    def fx(p):
        return float(margin + (p[0] - x0) * k)

    def fy(p):
        return float(opt.size - margin - (p[1] - y0) * k)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{opt.size}" height="{opt.size}" '
        f'viewBox="0 0 {opt.size} {opt.size}">',
        f'<g fill="none" stroke="black" stroke-width="{opt.stroke_width:g}" stroke-linejoin="round">',
    ]
    for e in range(len(d.edges)):
        coords = " ".join(f"{fx(p):.3f},{fy(p):.3f}" for p in lay.polyline(d, e))
        out.append(f'<polyline id="e{e}" points="{coords}"/>')
    out.append("</g>")
    out.append('<g fill="black">')
    r = max(opt.stroke_width * 1.8, 2.0)
    for v in range(d.n_vertices):
        p = lay.positions[v]
        out.append(f'<circle id="v{v}" cx="{fx(p):.3f}" cy="{fy(p):.3f}" r="{r:g}"/>')
    out.append("</g>")
    if opt.labels:
        cycle = list(opt.cycle) if opt.cycle else None
        if cycle is None:
            order = cycle_order(d)
            cycle = [e for e, _ in order] if order else None
        if cycle is not None and lay.outer is not None:
            lab = face_labels(d, cycle, lay.outer)
            size = max(opt.size // 40, 8)
            out.append(f'<g font-family="serif" font-size="{size}" text-anchor="middle" '
                       f'dominant-baseline="central">')
            for f in d.face_ids():
                if f == lay.outer:
                    x, y = float(margin) / 2, float(margin) / 2
                else:
                    p = _interior_point([lay.positions[d.org[x]] for x in d.face_darts(f)])
                    if p is None:
                        continue
                    x, y = fx(p), fy(p)
                out.append(f'<text x="{x:.3f}" y="{y:.3f}">{lab.labels[f]}</text>')
            out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render(d: PlanarDrawing, options: SvgOptions | None = None, outer: int | None = None) -> str:
    return emit_svg(layout(d, outer), d, options)
