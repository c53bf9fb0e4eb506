"""Rewrites of thrackle drawings: edge removal and insertion, vertex splitting,
degree-4 perturbation.

All operations are pure: they read a :class:`PlanarDrawing` and build a new
one.  Internally a drawing is unpacked into per-edge crossing lists keyed by
crossing ids (the old node ids) so that repeated crossings of the same pair
stay unambiguous while the lists are edited.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import count

from thrackle.core_map import ConsistencyError, PlanarDrawing, build_drawing


class SurgeryError(ValueError):
    pass


class PreconditionError(SurgeryError):
    pass


class ParameterError(SurgeryError):
    pass


class NotApplicable(SurgeryError):
    pass


class RemovalBlocked(SurgeryError):
    def __init__(self, message, vertices):
        super().__init__(message)
        self.vertices = tuple(sorted(vertices))


# ---------------------------------------------------------------------------
# editable list form


@dataclass
class _Lists:
    n_vertices: int
    edges: list            # [u, v]
    xs: list               # per edge: [partner, handedness, cid]
    rots: list             # per vertex: edge ends, counterclockwise
    fresh: count = field(default_factory=count)

    @classmethod
    def of(cls, d: PlanarDrawing) -> "_Lists":
        out = cls(
            d.n_vertices,
            [list(uv) for uv in d.edges],
            [[[p, h, x] for p, h, x in d.crossings(e)] for e in range(len(d.edges))],
            [d.vertex_rotation(v) for v in range(d.n_vertices)],
        )
        out.fresh = count(d.n_nodes)
        return out

    def oriented(self, e: int, tail: int) -> list:
        """Crossings of ``e`` read from endpoint ``tail`` (handedness adjusted)."""
        if self.edges[e][0] == tail:
            return [list(x) for x in self.xs[e]]
        return [[p, -h, c] for p, h, c in reversed(self.xs[e])]

    def sign(self, e: int, tail: int) -> int:
        return 1 if self.edges[e][0] == tail else -1

    def end_at(self, e: int, v: int) -> int:
        return 2 * e if self.edges[e][0] == v else 2 * e + 1

    def add_vertex(self) -> int:
        self.rots.append([])
        self.n_vertices += 1
        return self.n_vertices - 1

    def add_edge(self, u: int, v: int) -> int:
        self.edges.append([u, v])
        self.xs.append([])
        return len(self.edges) - 1

    def add_crossing(self, e: int, pos_e: int, f: int, pos_f: int, h: int) -> None:
        """Insert a crossing of ``e`` and ``f`` (handedness ``h`` seen from e)."""
        c = next(self.fresh)
        self.xs[e].insert(pos_e, [f, h, c])
        self.xs[f].insert(pos_f, [e, -h, c])

    def replace_partner(self, cids: dict, new_edge: int, flip: int) -> None:
        for e, lst in enumerate(self.xs):
            for item in lst:
                if item[2] in cids:
                    item[0] = new_edge
                    item[1] *= flip[item[2]] if isinstance(flip, dict) else flip

    def drop(self, cids: set) -> None:
        for e, lst in enumerate(self.xs):
            self.xs[e] = [x for x in lst if x[2] not in cids]

    def compact(self, dead_edges=(), dead_vertices=()) -> tuple[dict, dict]:
        dead_edges, dead_vertices = set(dead_edges), set(dead_vertices)
        emap = {}
        for e in range(len(self.edges)):
            if e not in dead_edges:
                emap[e] = len(emap)
        vmap = {}
        for v in range(self.n_vertices):
            if v not in dead_vertices:
                vmap[v] = len(vmap)
        self.edges = [[vmap[u], vmap[v]] for e, (u, v) in enumerate(self.edges) if e in emap]
        self.xs = [[[emap[p], h, c] for p, h, c in lst]
                   for e, lst in enumerate(self.xs) if e in emap]
        self.rots = [[2 * emap[r // 2] + r % 2 for r in rot]
                     for v, rot in enumerate(self.rots) if v in vmap]
        self.n_vertices = len(vmap)
        return emap, vmap

    def build(self, outer_hint=None, check=True) -> PlanarDrawing:
        return build_drawing(self.n_vertices, [tuple(e) for e in self.edges],
                             [[tuple(x) for x in lst] for lst in self.xs],
                             self.rots, outer_hint, check)


def _carry_outer(d: PlanarDrawing, lists: _Lists, emap: dict | None = None):
    """Outer-face hint for the rebuilt drawing, following an unchanged segment end.

    Looks for a dart of the old outer face whose origin (a vertex or a
    crossing) survives and whose edge survives with the same direction.
    """
    if d.outer_face is None:
        return None
    emap = emap if emap is not None else {e: e for e in range(len(d.edges))}
    for dart in d.face_darts(d.outer_face):
        e = d.sedge[dart]
        if e not in emap:
            continue
        ne = emap[e]
        chain = d.edge_chain(e)
        idx = chain.index(dart & ~1)
        if dart & 1:
            # backward dart leaves the node at the far end of segment idx
            far = idx + 1
            if far == len(chain):
                return (ne, len(lists.xs[ne]), 1)
            cid = d.head(chain[idx])
            pos = [c for _, _, c in lists.xs[ne]]
            if cid in pos:
                return (ne, pos.index(cid), 1)
        else:
            if idx == 0:
                return (ne, 0, 0)
            cid = d.org[chain[idx]]
            pos = [c for _, _, c in lists.xs[ne]]
            if cid in pos:
                return (ne, pos.index(cid) + 1, 0)
    return None


# ---------------------------------------------------------------------------
# edge removal


@dataclass(frozen=True)
class TriangleRegion:
    """The region bounded by A v2, the middle edge v2 v3 and v3 A."""

    path: tuple[int, int, int, int]
    edge: int
    apex: int
    enclosed_nodes: frozenset
    faces: frozenset
    n_vertices: int

    @property
    def enclosed_vertices(self) -> frozenset:
        return frozenset(x for x in self.enclosed_nodes if x < self.n_vertices)


def _edge_between(d: PlanarDrawing, u: int, v: int) -> int:
    found = [e for e, (a, b) in enumerate(d.edges) if {a, b} == {u, v}]
    if len(found) != 1:
        raise PreconditionError(f"expected exactly one edge between {u} and {v}, found {len(found)}")
    return found[0]


def _path_edges(d: PlanarDrawing, path) -> tuple[int, int, int]:
    v1, v2, v3, v4 = (int(x) for x in path)
    if len({v1, v2, v3, v4}) != 4:
        raise PreconditionError(f"path {tuple(path)} must visit four distinct vertices")
    for v in (v1, v2, v3, v4):
        if not 0 <= v < d.n_vertices:
            raise PreconditionError(f"no vertex {v}")
    for v in (v2, v3):
        if d.vertex_degree(v) != 2:
            raise PreconditionError(f"inner path vertex {v} has degree {d.vertex_degree(v)}, expected 2")
    return _edge_between(d, v1, v2), _edge_between(d, v2, v3), _edge_between(d, v3, v4)


def _apex(d: PlanarDrawing, a: int, c: int) -> int:
    nodes = [x for p, _, x in d.crossings(a) if p == c]
    if len(nodes) != 1:
        raise PreconditionError(f"edges {a} and {c} cross {len(nodes)} times, expected once")
    return nodes[0]


def _walk_segments(d: PlanarDrawing, path, a, b, c, apex) -> set[int]:
    """Segments (dart >> 1) of the closed walk A -> v2 -> v3 -> A."""
    v1, v2, v3, v4 = path
    segs = set()
    for e, far in ((a, v2), (c, v3)):
        chain = list(d.edge_chain(e))
        nodes = [d.org[x] for x in chain] + [d.head(chain[-1])]
        k = nodes.index(apex)
        part = chain[k:] if nodes[-1] == far else chain[:k]
        segs.update(x >> 1 for x in part)
    segs.update(x >> 1 for x in d.edge_chain(b))
    return segs


def triangle_region(d: PlanarDrawing, path) -> TriangleRegion:
    path = tuple(int(x) for x in path)
    v1, v2, v3, v4 = path
    a, b, c = _path_edges(d, path)
    apex = _apex(d, a, c)
    walls = _walk_segments(d, path, a, b, c, apex)
    # faces on each side of the walk: flood across every other segment
    side = {}
    comps = []
    for f0 in d.face_ids():
        if f0 in side:
            continue
        k = len(comps)
        comps.append(set())
        side[f0] = k
        queue = deque([f0])
        while queue:
            f = queue.popleft()
            comps[k].add(f)
            for x in d.face_darts(f):
                if x >> 1 in walls:
                    continue
                g = d.face_of(x ^ 1)
                if g not in side:
                    side[g] = k
                    queue.append(g)
    if len(comps) != 2:
        raise ConsistencyError(f"the walk around edge {b} splits the sphere into {len(comps)} parts")
    on_walk = {d.org[x << 1] for x in walls} | {d.org[(x << 1) | 1] for x in walls}

    def side_of(node):
        sides = {side[d.face_of(x)] for x in d.rotation(node)}
        if len(sides) != 1:
            raise ConsistencyError(f"node {node} touches both sides of the walk")
        return sides.pop()

    if v1 in on_walk or v4 in on_walk:
        raise ConsistencyError("path endpoints lie on the triangle boundary")
    inner = 1 - side_of(v1)
    if side_of(v4) == inner:
        raise ConsistencyError(f"vertex {v4} lies inside the triangle of edge {b}; not a thrackle")
    enclosed = frozenset(x for x in range(d.n_nodes)
                         if x not in on_walk and d.node_darts[x] >= 0 and side_of(x) == inner)
    return TriangleRegion(path, b, apex, enclosed, frozenset(comps[inner]), d.n_vertices)


def triangle_empty(d: PlanarDrawing, path) -> bool:
    return not triangle_region(d, path).enclosed_vertices


def remove_edge(d: PlanarDrawing, path, check: bool = True) -> PlanarDrawing:
    """Replace the 3-path v1 v2 v3 v4 by a single edge v1 v4 through A.

    The new edge takes the id of v1 v2; the edges v2 v3 and v3 v4 and the
    vertices v2, v3 disappear and the remaining ids are compacted in order.
    With ``check=False`` the emptiness guard is skipped (the result may then
    fail :func:`verify_thrackle`).
    """
    path = tuple(int(x) for x in path)
    v1, v2, v3, v4 = path
    a, b, c = _path_edges(d, path)
    apex = _apex(d, a, c)
    if check:
        region = triangle_region(d, path)
        if region.enclosed_vertices:
            raise RemovalBlocked(
                f"triangle of edge {b} encloses vertices {sorted(region.enclosed_vertices)}",
                region.enclosed_vertices)
    L = _Lists.of(d)
    along_a = L.oriented(a, v1)
    along_c = L.oriented(c, v3)
    ka = [x[2] for x in along_a].index(apex)
    kc = [x[2] for x in along_c].index(apex)
    keep_a, keep_c = along_a[:ka], along_c[kc + 1:]
    dead = ({x[2] for x in along_a[ka:]} | {x[2] for x in along_c[:kc + 1]}
            | {x[2] for x in L.xs[b]})
    sa, sc = L.sign(a, v1), L.sign(c, v3)
    flips = {x[2]: sa for x in keep_a}
    flips.update({x[2]: sc for x in keep_c})
    L.drop(dead)
    L.replace_partner(flips, a, flips)
    L.edges[a] = [v1, v4]
    L.xs[a] = keep_a + keep_c
    L.rots[v1] = [2 * a if r // 2 == a else r for r in L.rots[v1]]
    L.rots[v4] = [2 * a + 1 if r // 2 == c else r for r in L.rots[v4]]
    L.rots[v2] = []
    L.rots[v3] = []
    hint_lists = L
    emap, _ = L.compact(dead_edges=(b, c), dead_vertices=(v2, v3))
    hint = _carry_outer(d, hint_lists, {e: emap[e] for e in emap if e != a})
    return L.build(hint)


def insert_edge(d: PlanarDrawing, edge: int, at: int = 0, side: int = 1) -> PlanarDrawing:
    """Woodall-style insertion: replace edge v1 v4 by a 3-path v1 v2 v3 v4.

    ``at`` places the new crossing A between the at-th and (at+1)-th crossing
    of the edge (counted from its first endpoint); ``side`` = +1 builds the
    thin triangle on the left of the edge, -1 on the right.  The new edge
    v1 v2 keeps the id of the old edge; v2 v3 and v3 v4 get the next two ids
    and v2, v3 the next two vertex ids, so :func:`remove_edge` on the new path
    gives back the original drawing.
    """
    from thrackle.core_map import mirrored

    if not isinstance(edge, int) or not 0 <= edge < len(d.edges):
        raise ParameterError(f"no edge {edge!r}")
    K = len(d.crossings(edge))
    if not isinstance(at, int) or not 0 <= at <= K:
        raise ParameterError(f"split position must lie in [0, {K}], got {at!r}")
    if side not in (1, -1):
        raise ParameterError("side must be +1 or -1")
    if side == -1:
        return mirrored(insert_edge(mirrored(d), edge, at, 1))

    L = _Lists.of(d)
    v1, v4 = L.edges[edge]
    e_xs = L.xs[edge]
    a = edge
    v2, v3 = L.add_vertex(), L.add_vertex()
    b = L.add_edge(v2, v3)
    c = L.add_edge(v3, v4)
    L.edges[a] = [v1, v2]

    rot1 = d.vertex_rotation(v1)
    k = rot1.index(2 * edge)
    g_ends = rot1[k + 1:] + rot1[:k]          # counterclockwise after e
    rot4 = d.vertex_rotation(v4)
    k = rot4.index(2 * edge + 1)
    h_ends = rot4[k + 1:] + rot4[:k]

    # strands: a = prefix + inner strand after A + inner wrap at v4
    #          b = outer wrap at v4 + outer strand + outer wrap at v1
    #          c = inner wrap at v1 + inner strand before A + suffix
    a_list = []

    def fresh():
        return next(L.fresh)

    # crossing A
    cid_A = fresh()
    # edges crossing the old edge
    new_entries = {}   # old cid -> entries replacing it in the partner's list
    inner_before, inner_after, outer = [], [], []
    for i, (f, h, cid) in enumerate(e_xs):
        before = i < at
        level0 = a if before else c
        inner = c if before else a
        c_in, c_out = fresh(), fresh()
        (inner_before if before else inner_after).append((f, h, c_in))
        outer.append((f, -h, c_out))
        # as seen from f: level 0 keeps the old crossing id
        seq = [(level0, -h, cid), (inner, -h, c_in), (b, h, c_out)]
        new_entries[cid] = seq if h == 1 else seq[::-1]
        if before:
            a_list.append([f, h, cid])
    prefix_len = len(a_list)
    suffix = [[f, h, cid] for f, h, cid in e_xs[at:]]

    # wraps: outward partner orientation; strand travelling counterclockwise
    # around the vertex sees an outward edge with handedness -1
    def outward(g_end):
        return 1 if g_end % 2 == 0 else -1

    wrap1_inner, wrap1_outer = [], []   # around v1, in g order (counterclockwise)
    g_new = {}
    for g_end in g_ends:
        g = g_end // 2
        s = outward(g_end)
        ci, co = fresh(), fresh()
        wrap1_inner.append((g, s, ci))     # c travels clockwise: +1 against outward g
        wrap1_outer.append((g, -s, co))    # b travels counterclockwise
        g_new.setdefault(g, []).append((g_end, [(c, -s, ci), (b, s, co)]))
    wrap4_inner, wrap4_outer = [], []   # around v4, in h order (counterclockwise)
    for h_end in h_ends:
        g = h_end // 2
        s = outward(h_end)
        ci, co = fresh(), fresh()
        wrap4_inner.append((g, s, ci))     # a travels clockwise
        wrap4_outer.append((g, -s, co))    # b travels counterclockwise
        g_new.setdefault(g, []).append((h_end, [(a, -s, ci), (b, s, co)]))

    a_list = (a_list + [[c, -1, cid_A]]
              + [list(x) for x in inner_after]
              + [list(x) for x in reversed(wrap4_inner)])
    b_list = ([list(x) for x in wrap4_outer]
              + [list(x) for x in reversed(outer)]
              + [list(x) for x in wrap1_outer])
    c_list = ([list(x) for x in reversed(wrap1_inner)]
              + [list(x) for x in inner_before]
              + [[a, 1, cid_A]]
              + suffix)

    # rewrite partner lists
    for f in range(len(d.edges)):
        if f == edge:
            continue
        out = []
        for p, h, cid in L.xs[f]:
            if cid in new_entries:
                out.extend(list(x) for x in new_entries[cid])
            else:
                out.append([p, h, cid])
        for end, pair in g_new.get(f, []):
            # pair is ordered outward from the vertex
            if end % 2 == 0:
                out = [list(x) for x in pair] + out
            else:
                out = out + [list(x) for x in reversed(pair)]
        L.xs[f] = out
    L.xs[a], L.xs[b], L.xs[c] = a_list, b_list, c_list
    L.rots[v4] = [2 * c + 1 if r == 2 * edge + 1 else r for r in L.rots[v4]]
    L.rots[v2] = [2 * a + 1, 2 * b]
    L.rots[v3] = [2 * b + 1, 2 * c]
    return L.build(_carry_outer_insert(d, edge, prefix_len, L))


def _carry_outer_insert(d, edge, prefix_len, L):
    if d.outer_face is None:
        return None
    for dart in d.face_darts(d.outer_face):
        e = d.sedge[dart]
        if e == edge:
            continue
        chain = d.edge_chain(e)
        idx = chain.index(dart & ~1)
        node = d.org[chain[idx]] if not dart & 1 else d.head(chain[idx])
        pos = [cid for _, _, cid in L.xs[e]]
        if dart & 1:
            if idx + 1 == len(chain):
                return (e, len(pos), 1)
            if node in pos:
                return (e, pos.index(node), 1)
        else:
            if idx == 0:
                return (e, 0, 0)
            if node in pos:
                return (e, pos.index(node) + 1, 0)
    return None


# ---------------------------------------------------------------------------
# vertex splitting and degree-4 perturbation


def split_vertex(d: PlanarDrawing, v: int, shared: int, moved) -> PlanarDrawing:
    """Split ``v`` along the edge ``shared`` = v y.

    The other edges at ``v`` are read counterclockwise starting after
    ``shared``; ``moved`` must be a nonempty proper prefix or suffix of that
    order.  A new vertex takes ``moved`` together with a parallel copy of
    ``shared`` (new edge id, same crossings).  Edges kept at ``v`` cross the
    copy, edges moved cross the original, and kept and moved edges cross each
    other, so every pair of edges meets as often as before.  An empty or
    complete ``moved`` leaves the drawing unchanged.
    """
    if not 0 <= v < d.n_vertices:
        raise ParameterError(f"no vertex {v}")
    if not 0 <= shared < len(d.edges) or v not in d.edges[shared]:
        raise ParameterError(f"edge {shared} is not incident to vertex {v}")
    rot = d.vertex_rotation(v)
    k = next(i for i, r in enumerate(rot) if r // 2 == shared)
    others = [r for r in rot[k + 1:] + rot[:k]]
    moved = set(int(e) for e in moved)
    if not moved <= {r // 2 for r in others}:
        raise ParameterError(f"moved edges {sorted(moved)} are not all incident to {v}")
    if not moved or len(moved) == len(others):
        return d
    flags = [r // 2 in moved for r in others]
    j = flags.index(flags[0] is False) if not flags[0] else flags.index(False)
    if flags[j:].count(flags[0]) or flags[:j].count(not flags[0]):
        raise ParameterError("moved edges must form a contiguous block next to the shared edge")
    R1, R2 = others[:j], others[j:]          # prefix, suffix
    new_takes_suffix = not flags[0]

    L = _Lists.of(d)
    y = d.edges[shared][1] if d.edges[shared][0] == v else d.edges[shared][0]
    vn = L.add_vertex()
    s2 = L.add_edge(*[vn if x == v else x for x in L.edges[shared]])
    L.xs[s2] = []
    # geometry with s leaving v downwards: vL holds s and the prefix R1,
    # vR holds the copy and the suffix R2; s_L crosses R2, s_R crosses R1
    if new_takes_suffix:
        vL, vR, sL, sR = v, vn, shared, s2
    else:
        vL, vR, sL, sR = vn, v, s2, shared
    for r in (R2 if new_takes_suffix else R1):
        L.edges[r // 2][r % 2] = vn
    s_fwd = L.edges[shared][0] == v          # stored direction leaves v
    s_sign = 1 if s_fwd else -1
    inherited = [list(x) for x in L.xs[shared]]

    def out_sign(end):
        return 1 if end % 2 == 0 else -1

    # Lists below are ordered outward from the vertex.  Handedness is taken
    # with the listing edge directed outward and the partner in its stored
    # direction; the stored direction of the listing edge is applied last.
    lead_L, lead_R = [], []                  # along s_L and s_R
    s_cross = {}                             # r -> entry on r for the s copy it crosses
    for r in R2:                             # s_L crosses r_{j+1}, ..., r_k
        cid = next(L.fresh)
        lead_L.append([r // 2, -out_sign(r), cid])
        s_cross[r] = [sL, s_sign, cid]
    for r in reversed(R1):                   # s_R crosses r_j, ..., r_1
        cid = next(L.fresh)
        lead_R.append([r // 2, out_sign(r), cid])
        s_cross[r] = [sR, -s_sign, cid]
    # every R1 edge crosses every R2 edge: along r_i from vL the order is
    # r_{j+1}..r_k, along r_{j+l} from vR it is r_j..r_1
    pairs = {(ri, rl): next(L.fresh) for ri in R1 for rl in R2}
    outward_lists = {}
    for ri in R1:
        outward_lists[ri] = [[rl // 2, -out_sign(rl), pairs[(ri, rl)]] for rl in R2] + [s_cross[ri]]
    for rl in R2:
        outward_lists[rl] = ([[ri // 2, out_sign(ri), pairs[(ri, rl)]] for ri in reversed(R1)]
                             + [s_cross[rl]])
    for r, lst in outward_lists.items():
        e = r // 2
        if r % 2 == 0:
            L.xs[e] = lst + L.xs[e]
        else:
            L.xs[e] = L.xs[e] + [[p, -h, c] for p, h, c in reversed(lst)]

    # s and its copy share the inherited crossings; each partner t meets s_L
    # then s_R when it passes from the right of s to its left
    copy_inherited = []
    repl = {}
    for p, h, cid in inherited:
        c2 = next(L.fresh)
        copy_inherited.append([p, h, c2])
        h_v = h * s_sign                     # seen from s directed away from v
        first, second = (sL, sR) if h_v == 1 else (sR, sL)
        ids = {shared: cid, s2: c2}
        repl[cid] = [[first, -h, ids[first]], [second, -h, ids[second]]]
    for t in range(len(d.edges)):
        if t == shared:
            continue
        out = []
        for p, h, cid in L.xs[t]:
            if p == shared and cid in repl:
                out.extend(repl[cid])
            else:
                out.append([p, h, cid])
        L.xs[t] = out
    lead_sL = [[p, h * s_sign, c] for p, h, c in (lead_L if sL == shared else lead_R)]
    lead_s2 = [[p, h * s_sign, c] for p, h, c in (lead_R if sL == shared else lead_L)]
    if s_fwd:
        L.xs[shared] = lead_sL + inherited
        L.xs[s2] = lead_s2 + copy_inherited
    else:
        L.xs[shared] = inherited + [[p, h, c] for p, h, c in reversed(lead_sL)]
        L.xs[s2] = copy_inherited + [[p, h, c] for p, h, c in reversed(lead_s2)]

    end_s = rot[k]
    end_s2 = 2 * s2 + (end_s % 2)
    rot_L = [end_s if sL == shared else end_s2] + list(R1)
    rot_R = [end_s2 if sL == shared else end_s] + list(R2)
    L.rots[vL] = rot_L
    L.rots[vR] = rot_R
    # at y the copy on the left of s (seen from v) comes first counterclockwise
    y_end = 2 * shared + (1 - end_s % 2)
    y_end2 = 2 * s2 + (1 - end_s % 2)
    ends_at_y = {shared: y_end, s2: y_end2}
    ry = []
    for r in L.rots[y]:
        if r == y_end:
            ry += [ends_at_y[sR], ends_at_y[sL]]
        else:
            ry.append(r)
    L.rots[y] = ry
    return L.build(_carry_outer(d, L))


def _cycle_groups(d: PlanarDrawing, v: int) -> list[set[int]]:
    """Edges at v grouped by the component of G - v they lead into."""
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e, (a, b) in enumerate(d.edges):
        if v in (a, b):
            continue
        parent[find(a)] = find(b)
    groups: dict[int, set[int]] = {}
    for e, (a, b) in enumerate(d.edges):
        if v in (a, b):
            other = b if a == v else a
            groups.setdefault(find(other), set()).add(e)
    return sorted(groups.values(), key=min)


def perturb_degree4(d: PlanarDrawing, v: int, first=None) -> PlanarDrawing:
    """Replace a touching point of two cycles by four crossings.

    ``first`` names the two edges of the cycle that keeps ``v``; by default
    the edges at ``v`` are grouped by the components of G - v.  The other
    two edges move to a new vertex next to ``v`` and each of them crosses
    both edges of the first cycle.
    """
    if not 0 <= v < d.n_vertices:
        raise ParameterError(f"no vertex {v}")
    rot = d.vertex_rotation(v)
    if len(rot) != 4:
        raise NotApplicable(f"vertex {v} has degree {len(rot)}, expected 4")
    if first is None:
        groups = _cycle_groups(d, v)
        if len(groups) != 2 or any(len(g) != 2 for g in groups):
            raise NotApplicable(f"cannot tell the two cycles apart at vertex {v}")
        first = groups[0]
    first = set(int(e) for e in first)
    idx = [i for i, r in enumerate(rot) if r // 2 in first]
    if len(idx) != 2:
        raise ParameterError(f"edges {sorted(first)} are not two edges at vertex {v}")
    if (idx[1] - idx[0]) % 4 == 2:
        raise NotApplicable(f"the cycles cross at vertex {v}; nothing to perturb")
    # rotate so that the rotation reads a1, a2, b1, b2
    start = idx[0] if (idx[1] - idx[0]) % 4 == 1 else idx[1]
    a1, a2, b1, b2 = (rot[(start + i) % 4] for i in range(4))

    L = _Lists.of(d)
    w = L.add_vertex()

    def osign(end):
        return 1 if end % 2 == 0 else -1

    cid = {(x, y): next(L.fresh) for x in (a1, a2) for y in (b1, b2)}
    # outward from v along a1 and a2: b2 then b1; outward from w along b1
    # and b2: a1 then a2.  Seen outward from the a-edge every crossing is +1.
    out_lists = {
        a1: [[b2 // 2, osign(b2), cid[(a1, b2)]], [b1 // 2, osign(b1), cid[(a1, b1)]]],
        a2: [[b2 // 2, osign(b2), cid[(a2, b2)]], [b1 // 2, osign(b1), cid[(a2, b1)]]],
        b1: [[a1 // 2, -osign(a1), cid[(a1, b1)]], [a2 // 2, -osign(a2), cid[(a2, b1)]]],
        b2: [[a1 // 2, -osign(a1), cid[(a1, b2)]], [a2 // 2, -osign(a2), cid[(a2, b2)]]],
    }
    for r, lst in out_lists.items():
        e = r // 2
        if r % 2 == 0:
            L.xs[e] = lst + L.xs[e]
        else:
            L.xs[e] = L.xs[e] + [[p, -h, c] for p, h, c in reversed(lst)]
    for r in (b1, b2):
        e = r // 2
        L.edges[e] = [w if (x == v and (i == r % 2)) else x for i, x in enumerate(L.edges[e])]
    L.rots[v] = [a1, a2]
    L.rots[w] = [b1, b2]
    return L.build(_carry_outer(d, L))


# ---------------------------------------------------------------------------
# bookkeeping of the musquash removal argument


def _run(hi: int, lo: int) -> list[int]:
    return list(range(hi, lo - 1, -2)) if hi >= lo else []


def mtom_case_orders(n: int) -> dict:
    """Crossing sequences of the removal argument on edge n-2 of an n-musquash.

    Returns a dict with one entry per edge ``i`` of the (n-2)-cycle obtained
    by removing the path n-3, n-2, n-1, 0:

    * edges 1..n-5: ``("three", before, deleted)``
    * edges 0 and n-4: ``("two", before, deleted)``
    * edge n-3: ``("joined", sequence)``

    ``before`` is the written order on the edge of the n-musquash and
    ``deleted`` the labels that vanish; the sequences are written out term
    by term rather than derived from :func:`crossing_order`.
    """
    out = {}
    for i in range(1, n - 4):
        if i % 2 == 0:
            seq = _run(i - 3, 1) + _run(n - 1, i + 2) + _run(i - 2, 0) + _run(n - 2, i + 3)
        else:
            seq = _run(i - 3, 0) + _run(n - 2, i + 2) + _run(i - 2, 1) + _run(n - 1, i + 3)
        out[i] = ("three", seq, (n - 1, n - 2))
    out[0] = ("two", _run(n - 3, 2) + _run(n - 2, 3), (n - 3, n - 2))
    if n - 4 > 0:
        out[n - 4] = ("two", _run(n - 7, 0) + [n - 2] + _run(n - 6, 1) + [n - 1], (n - 1, n - 2))
    out[n - 3] = ("joined", _run(n - 6, 1) + _run(n - 5, 2))
    return out
