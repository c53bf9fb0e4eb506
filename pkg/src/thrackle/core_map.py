"""Drawings as combinatorial maps on the sphere.

A drawing is planarized: graph vertices and proper crossings are both nodes
of an embedded multigraph, and every graph edge is a chain of segments from
one endpoint through its crossing nodes to the other.  Each segment is a
pair of darts ``2k`` (forward, in the edge's direction) and ``2k + 1``.

Conventions:

* ``nxt[d]`` is the counterclockwise successor of dart ``d`` around its
  origin node.
* The face on the left of ``d`` continues with ``prv[d ^ 1]``; the corner
  between ``d`` and ``nxt[d]`` belongs to that face.
* A face is identified by the smallest dart id in its orbit.
* Graph vertex ``v`` is node ``v``; crossing nodes follow.
* Edge ends are numbered ``2e`` (at the first endpoint) and ``2e + 1``.
* The handedness of a crossing of ``e`` by ``f``, seen from ``e``, is +1 when
  ``f`` passes from the right of ``e`` to its left.
"""
from __future__ import annotations

import json
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence


class DrawingError(ValueError):
    """Structurally invalid drawing data."""


class ConsistencyError(DrawingError):
    pass


class NonPlanarError(DrawingError):
    """The rotation system does not describe a drawing on the sphere."""


class LabelingError(ValueError):
    def __init__(self, message, hint=None):
        super().__init__(message)
        self.hint = hint


@dataclass(frozen=True, eq=True)
class PlanarDrawing:
    n_vertices: int
    edges: tuple[tuple[int, int], ...]
    node_vertex: tuple[int, ...]
    org: tuple[int, ...]
    nxt: tuple[int, ...]
    sedge: tuple[int, ...]
    outer_face: int | None = None

    # -- basic structure -------------------------------------------------

    @property
    def n_nodes(self) -> int:
        return len(self.node_vertex)

    @property
    def n_darts(self) -> int:
        return len(self.org)

    @property
    def n_segments(self) -> int:
        return len(self.org) // 2

    @property
    def n_crossings(self) -> int:
        return self.n_nodes - self.n_vertices

    @cached_property
    def prv(self) -> tuple[int, ...]:
        out = [0] * len(self.nxt)
        for d, e in enumerate(self.nxt):
            out[e] = d
        return tuple(out)

    def head(self, d: int) -> int:
        return self.org[d ^ 1]

    def is_vertex(self, node: int) -> bool:
        return self.node_vertex[node] >= 0

    def rotation(self, node: int) -> list[int]:
        start = self.node_darts[node]
        if start < 0:
            return []
        out = [start]
        d = self.nxt[start]
        while d != start:
            out.append(d)
            d = self.nxt[d]
        return out

    @cached_property
    def node_darts(self) -> tuple[int, ...]:
        first = [-1] * self.n_nodes
        for d in range(self.n_darts - 1, -1, -1):
            first[self.org[d]] = d
        return tuple(first)

    def degree(self, node: int) -> int:
        return len(self.rotation(node))

    # -- faces -------------------------------------------------------------

    def face_next(self, d: int) -> int:
        return self.prv[d ^ 1]

    @cached_property
    def _faces(self) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
        seen = [-1] * self.n_darts
        faces = []
        for d0 in range(self.n_darts):
            if seen[d0] >= 0:
                continue
            orbit = []
            d = d0
            while seen[d] < 0:
                seen[d] = d0
                orbit.append(d)
                d = self.face_next(d)
            faces.append(tuple(orbit))
        return tuple(faces), tuple(seen)

    @property
    def faces(self) -> tuple[tuple[int, ...], ...]:
        """Face orbits, each starting at (and identified by) its smallest dart."""
        return self._faces[0]

    def face_of(self, d: int) -> int:
        """Id of the face on the left of dart ``d``."""
        return self._faces[1][d]

    def face_ids(self) -> list[int]:
        return [f[0] for f in self.faces]

    def face_darts(self, fid: int) -> tuple[int, ...]:
        for f in self.faces:
            if f[0] == fid:
                return f
        raise KeyError(f"no face {fid}")

    def node_faces(self, node: int) -> set[int]:
        return {self.face_of(d) for d in self.rotation(node)}

    def face_nodes(self, fid: int) -> list[int]:
        return [self.org[d] for d in self.face_darts(fid)]

    # -- edges ---------------------------------------------------------------

    @cached_property
    def _chains(self) -> tuple[tuple[int, ...], ...]:
        starts = {}
        for d in range(0, self.n_darts, 2):
            e = self.sedge[d]
            u = self.edges[e][0]
            if self.org[d] == u:
                if e in starts:
                    raise DrawingError(f"edge {e} leaves its endpoint twice")
                starts[e] = d
        chains = []
        for e, (u, v) in enumerate(self.edges):
            if e not in starts:
                raise DrawingError(f"edge {e} has no segment at vertex {u}")
            d = starts[e]
            chain = [d]
            seen = {self.head(d)}
            while not self.is_vertex(self.head(d)):
                x = self.head(d)
                rot = self.rotation(x)
                if len(rot) != 4:
                    raise DrawingError(f"crossing node {x} has degree {len(rot)}")
                d = self.nxt[self.nxt[d ^ 1]]
                if self.sedge[d] != e or d & 1:
                    raise DrawingError(f"edge {e} does not pass straight through node {x}")
                if self.head(d) in seen:
                    raise DrawingError(f"edge {e} visits node {self.head(d)} twice")
                seen.add(self.head(d))
                chain.append(d)
            if self.head(d) != v:
                raise DrawingError(f"edge {e} ends at node {self.head(d)}, expected {v}")
            chains.append(tuple(chain))
        return tuple(chains)

    def edge_chain(self, e: int) -> tuple[int, ...]:
        """Forward darts of edge ``e`` from its first endpoint to its second."""
        return self._chains[e]

    def crossing_edges(self, x: int) -> tuple[int, int]:
        es = sorted({self.sedge[d] for d in self.rotation(x)})
        return es[0], es[1]

    def handedness(self, x: int, e: int) -> int:
        """Handedness of crossing node ``x`` seen from edge ``e``."""
        rot = self.rotation(x)
        e_out = next(d for d in rot if self.sedge[d] == e and not d & 1)
        f_out = next(d for d in rot if self.sedge[d] != e and not d & 1)
        return 1 if self.nxt[e_out] == f_out else -1

    def crossings(self, e: int) -> list[tuple[int, int, int]]:
        """Crossings along ``e`` in order as (partner edge, handedness, node)."""
        out = []
        for d in self.edge_chain(e)[:-1]:
            x = self.head(d)
            a, b = self.crossing_edges(x)
            out.append((b if a == e else a, self.handedness(x, e), x))
        return out

    def crossing_table(self) -> list[list[int]]:
        return [[p for p, _, _ in self.crossings(e)] for e in range(len(self.edges))]

    def edge_end(self, d: int) -> int:
        """Edge-end id of a dart leaving a vertex node."""
        e = self.sedge[d]
        return 2 * e + (d & 1)

    def vertex_rotation(self, v: int) -> list[int]:
        return [self.edge_end(d) for d in self.rotation(v)]

    def vertex_degree(self, v: int) -> int:
        return sum(1 for a, b in self.edges if a == v) + sum(1 for a, b in self.edges if b == v)

    def segment_key(self, d: int) -> tuple[int, int, int]:
        """Stable (edge, index along edge, direction) key of a dart."""
        e = self.sedge[d]
        idx = self.edge_chain(e).index(d & ~1)
        return e, idx, d & 1

    def dart_for_key(self, key) -> int:
        e, idx, direction = key
        return self.edge_chain(e)[idx] | direction

    # -- conversions ---------------------------------------------------------

    def to_data(self) -> dict:
        """Interchange document (plain JSON-compatible dict)."""
        pair_counts = Counter()
        for e in range(len(self.edges)):
            for p, _, _ in self.crossings(e):
                pair_counts[frozenset((e, p))] += 1
        edges = []
        for e, (u, v) in enumerate(self.edges):
            xs = []
            for p, h, x in self.crossings(e):
                item = {"partner_edge": p, "handedness": h}
                if pair_counts[frozenset((e, p))] > 2:
                    item["crossing_id"] = x
                xs.append(item)
            edges.append({"id": e, "endpoints": [u, v], "crossings": xs})
        return {
            "format": "thrackle-drawing/1",
            "n_vertices": self.n_vertices,
            "edges": edges,
            "vertex_rotations": [_from_min(self.vertex_rotation(v)) for v in range(self.n_vertices)],
            "outer_face_hint": (None if self.outer_face is None
                                else list(min(self.segment_key(x)
                                              for x in self.face_darts(self.outer_face)))),
        }

    def renumbered(self) -> "PlanarDrawing":
        """The same drawing rebuilt in the canonical node/dart numbering."""
        return from_data(self.to_data())


def _from_min(rot: list[int]) -> list[int]:
    # a rotation is cyclic; start at the smallest end so the text is canonical
    if not rot:
        return rot
    k = rot.index(min(rot))
    return rot[k:] + rot[:k]


# ---------------------------------------------------------------------------
# construction


def build_drawing(
    n_vertices: int,
    edges: Sequence[tuple[int, int]],
    crossings: Sequence[Sequence],
    vertex_rotations: Sequence[Sequence[int]],
    outer_face_hint=None,
    check: bool = True,
) -> PlanarDrawing:
    """Assemble and validate a drawing.

    ``crossings[e]`` lists the crossings along edge ``e`` in order, each as
    ``(partner, handedness)`` or ``(partner, handedness, crossing_id)``.  The
    k-th crossing of ``e`` with ``f`` is matched with the k-th crossing of
    ``f`` with ``e`` unless crossing ids are supplied.
    ``vertex_rotations[v]`` is the counterclockwise cyclic order of the edge
    ends at ``v``.  ``outer_face_hint`` is a dart key (edge, index,
    direction) whose left face is the outer face.
    """
    edges = [tuple(map(int, uv)) for uv in edges]
    if len(crossings) != len(edges):
        raise ConsistencyError("one crossing list per edge required")
    for e, (u, v) in enumerate(edges):
        if not (0 <= u < n_vertices and 0 <= v < n_vertices) or u == v:
            raise DrawingError(f"edge {e} has invalid endpoints {(u, v)}")

    # match crossing occurrences into nodes
    occ: dict[tuple, list] = {}
    for e, xs in enumerate(crossings):
        seen = Counter()
        for k, item in enumerate(xs):
            f, h = int(item[0]), int(item[1])
            if f == e or not 0 <= f < len(edges):
                raise ConsistencyError(f"edge {e} lists invalid partner {f}")
            if h not in (1, -1):
                raise ConsistencyError(f"edge {e}: handedness must be +1 or -1")
            if len(item) > 2 and item[2] is not None:
                key = ("id", int(item[2]))
            else:
                key = (min(e, f), max(e, f), seen[f])
                seen[f] += 1
            occ.setdefault(key, []).append((e, k, f, h))
    node_of: dict[tuple[int, int], int] = {}
    next_node = n_vertices
    order = sorted(occ.items(), key=lambda kv: min((e, k) for e, k, _, _ in kv[1]))
    hand: dict[int, tuple[int, int, int]] = {}
    for key, items in order:
        if len(items) != 2:
            raise ConsistencyError(f"crossing {key} is listed {len(items)} time(s), expected 2")
        (e1, k1, f1, h1), (e2, k2, f2, h2) = items
        if f1 != e2 or f2 != e1:
            raise ConsistencyError(f"crossing {key} pairs mismatched edges")
        if h1 != -h2:
            raise ConsistencyError(f"crossing of {e1} and {e2} has inconsistent handedness")
        node_of[(e1, k1)] = next_node
        node_of[(e2, k2)] = next_node
        hand[next_node] = (e1, e2, h1)
        next_node += 1
    n_nodes = next_node

    node_vertex = list(range(n_vertices)) + [-1] * (n_nodes - n_vertices)
    org: list[int] = []
    sedge: list[int] = []
    first_dart, last_dart = {}, {}
    # darts at crossing nodes: (edge) -> (dart leaving forward, dart leaving backward)
    at_node: dict[int, dict[int, list[int]]] = {}
    for e, (u, v) in enumerate(edges):
        chain = [u] + [node_of[(e, k)] for k in range(len(crossings[e]))] + [v]
        if len(set(chain)) != len(chain):
            raise ConsistencyError(f"edge {e} passes a node twice")
        for i in range(len(chain) - 1):
            d = len(org)
            org += [chain[i], chain[i + 1]]
            sedge += [e, e]
            if i == 0:
                first_dart[e] = d
            else:
                at_node.setdefault(chain[i], {}).setdefault(e, [None, None])[0] = d
            if i == len(chain) - 2:
                last_dart[e] = d + 1
            else:
                at_node.setdefault(chain[i + 1], {}).setdefault(e, [None, None])[1] = d + 1

    nxt = [-1] * len(org)

    def link(cycle):
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            nxt[a] = b

    for x, (e, f, h) in hand.items():
        eo, eb = at_node[x][e]
        fo, fb = at_node[x][f]
        link([eo, fo, eb, fb] if h == 1 else [eo, fb, eb, fo])

    if len(vertex_rotations) != n_vertices:
        raise ConsistencyError("one rotation per vertex required")
    for v, rot in enumerate(vertex_rotations):
        expected = sorted([2 * e for e, (a, _) in enumerate(edges) if a == v]
                          + [2 * e + 1 for e, (_, b) in enumerate(edges) if b == v])
        rot = [int(r) for r in rot]
        if sorted(rot) != expected:
            raise ConsistencyError(f"rotation at vertex {v} is {rot}, expected a cyclic order of {expected}")
        darts = [first_dart[r // 2] if r % 2 == 0 else last_dart[r // 2] for r in rot]
        if darts:
            link(darts)

    outer = None
    d = PlanarDrawing(n_vertices, tuple(edges), tuple(node_vertex), tuple(org),
                      tuple(nxt), tuple(sedge), None)
    if outer_face_hint is not None:
        outer = d.face_of(d.dart_for_key(tuple(outer_face_hint)))
        d = PlanarDrawing(n_vertices, tuple(edges), tuple(node_vertex), tuple(org),
                          tuple(nxt), tuple(sedge), outer)
    if check:
        check_euler(d)
    return d


def components(d: PlanarDrawing) -> int:
    parent = list(range(d.n_nodes))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for k in range(0, d.n_darts, 2):
        a, b = find(d.org[k]), find(d.org[k + 1])
        parent[a] = b
    return len({find(a) for a in range(d.n_nodes)})


def euler_characteristic(d: PlanarDrawing) -> int:
    isolated = sum(1 for x in range(d.n_nodes) if d.node_darts[x] < 0)
    return d.n_nodes - d.n_segments + len(d.faces) + isolated


def check_euler(d: PlanarDrawing) -> None:
    chi = euler_characteristic(d)
    c = components(d)
    if chi != 2 * c:
        raise NonPlanarError(
            f"V - E + F = {chi} over {c} component(s); a sphere drawing needs {2 * c}")


def from_data(data: dict, check: bool = True) -> PlanarDrawing:
    if data.get("format", "thrackle-drawing/1") != "thrackle-drawing/1":
        raise DrawingError(f"unknown format {data.get('format')!r}")
    try:
        edges_in = sorted(data["edges"], key=lambda r: r["id"])
        if [r["id"] for r in edges_in] != list(range(len(edges_in))):
            raise DrawingError("edge ids must be 0..E-1")
        edges = [tuple(r["endpoints"]) for r in edges_in]
        crossings = [[(c["partner_edge"], c["handedness"], c.get("crossing_id"))
                      for c in r["crossings"]] for r in edges_in]
        return build_drawing(int(data["n_vertices"]), edges, crossings,
                             data["vertex_rotations"], data.get("outer_face_hint"), check)
    except (KeyError, TypeError) as exc:
        raise DrawingError(f"malformed drawing document: {exc}") from exc


def serialize(d: PlanarDrawing) -> str:
    return json.dumps(d.to_data(), indent=1, sort_keys=True)


def parse(text: str) -> PlanarDrawing:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DrawingError(f"not a drawing document: {exc}") from exc
    return from_data(data)


# ---------------------------------------------------------------------------
# queries


def trace_faces(d: PlanarDrawing) -> list[tuple[int, ...]]:
    return list(d.faces)


@dataclass
class ThrackleReport:
    ok: bool
    violations: list[tuple[tuple[int, int], int, tuple[str, ...]]] = field(default_factory=list)


def meet_counts(d: PlanarDrawing) -> dict[tuple[int, int], int]:
    """Number of common points (shared endpoints plus crossings) per edge pair."""
    return {pair: len(kinds) for pair, kinds in _meets(d).items()}


def verify_thrackle(d: PlanarDrawing) -> ThrackleReport:
    """Check that every pair of edges meets exactly once."""
    meets = _meets(d)
    violations = [(pair, len(kinds), tuple(kinds))
                  for pair, kinds in sorted(meets.items()) if len(kinds) != 1]
    return ThrackleReport(not violations, violations)


def _meets(d: PlanarDrawing) -> dict[tuple[int, int], list[str]]:
    meets: dict[tuple[int, int], list[str]] = {}
    E = len(d.edges)
    for e in range(E):
        for f in range(e + 1, E):
            shared = set(d.edges[e]) & set(d.edges[f])
            meets[(e, f)] = ["vertex"] * len(shared)
    for x in range(d.n_vertices, d.n_nodes):
        e, f = d.crossing_edges(x)
        meets[(e, f)].append("crossing")
    return meets


def cycle_directions(d: PlanarDrawing, cycle: Sequence[int]) -> dict[int, int]:
    """Direction (+1 along the edge, -1 against) of each edge of a closed walk."""
    cycle = list(cycle)
    if len(cycle) < 2 or len(set(cycle)) != len(cycle):
        raise LabelingError(f"{cycle} is not a cycle of distinct edges")
    ends = [d.edges[e] for e in cycle]
    # the first edge's head is the vertex it shares with the second
    u0, v0 = ends[0]
    nxt_ends = set(ends[1])
    if v0 in nxt_ends:
        cur, start = v0, u0
        dirs = {cycle[0]: 1}
    elif u0 in nxt_ends:
        cur, start = u0, v0
        dirs = {cycle[0]: -1}
    else:
        raise LabelingError(f"edges {cycle[0]} and {cycle[1]} are not consecutive")
    for e in cycle[1:]:
        a, b = d.edges[e]
        if a == cur:
            dirs[e], cur = 1, b
        elif b == cur:
            dirs[e], cur = -1, a
        else:
            raise LabelingError(f"edge {e} does not continue the walk at vertex {cur}")
    if cur != start:
        raise LabelingError("edge sequence is not closed")
    return dirs


@dataclass
class FaceLabeling:
    cycle: tuple[int, ...]
    labels: dict[int, int]
    outer: int

    def census(self) -> dict[int, int]:
        return dict(sorted(Counter(self.labels.values()).items()))

    def node_label(self, d: PlanarDrawing, node: int) -> int:
        """Label of the faces around a node lying off the cycle."""
        vals = {self.labels[f] for f in d.node_faces(node)}
        if len(vals) != 1:
            raise LabelingError(f"node {node} lies on the cycle (labels {sorted(vals)})")
        return vals.pop()


def face_labels(d: PlanarDrawing, oriented_cycle: Sequence[int], outer: int | None = None,
                reverse: bool = False) -> FaceLabeling:
    """Rotation number of the oriented cycle around each face.

    ``reverse`` flips the breadth-first traversal order; results must not
    depend on it.
    """
    if outer is None:
        outer = d.outer_face
    if outer is None:
        raise LabelingError("no outer face given")
    dirs = cycle_directions(d, oriented_cycle)
    delta = [0] * d.n_darts
    for dd in range(d.n_darts):
        e = d.sedge[dd]
        if e in dirs:
            along = 1 if dd % 2 == 0 else -1
            delta[dd] = along * dirs[e]
    labels = {outer: 0}
    queue = deque([outer])
    while queue:
        f = queue.popleft()
        darts = d.face_darts(f)
        for dd in (reversed(darts) if reverse else darts):
            g = d.face_of(dd ^ 1)
            val = labels[f] - delta[dd]
            if g in labels:
                if labels[g] != val:
                    raise LabelingError(f"face {g} gets labels {labels[g]} and {val}")
            else:
                labels[g] = val
                queue.append(g)
    low = min(labels.values())
    if low < 0:
        hint = min(labels, key=lambda f: (labels[f], f))
        raise LabelingError(f"negative label {low}; face {hint} should be the outer face", hint)
    return FaceLabeling(tuple(oriented_cycle), dict(sorted(labels.items())), outer)


def signed_crossing_sums(d: PlanarDrawing, cycle: Sequence[int] | None = None) -> dict[int, int]:
    """Per edge, the sum of crossing orientations along it.

    With ``cycle`` given, edges are oriented along the cycle and only its
    edges are reported.
    """
    if cycle is None:
        dirs = {e: 1 for e in range(len(d.edges))}
        report = range(len(d.edges))
    else:
        dirs = cycle_directions(d, cycle)
        report = list(cycle)
    out = {}
    for e in report:
        total = 0
        for p, h, _ in d.crossings(e):
            total += h * dirs[e] * dirs.get(p, 1)
        out[e] = total
    return out


def outer_face_by_key(d: PlanarDrawing, key) -> int:
    return d.face_of(d.dart_for_key(key))


def with_outer(d: PlanarDrawing, face: int | None) -> PlanarDrawing:
    return PlanarDrawing(d.n_vertices, d.edges, d.node_vertex, d.org, d.nxt, d.sedge, face)


def induced_subdrawing(d: PlanarDrawing, keep: Iterable[int]) -> PlanarDrawing:
    """The drawing of a subset of edges (crossings with dropped edges vanish)."""
    keep = sorted(set(keep))
    new_id = {e: i for i, e in enumerate(keep)}
    verts = sorted({v for e in keep for v in d.edges[e]})
    vid = {v: i for i, v in enumerate(verts)}
    edges = [(vid[d.edges[e][0]], vid[d.edges[e][1]]) for e in keep]
    crossings = [[(new_id[p], h) for p, h, _ in d.crossings(e) if p in new_id] for e in keep]
    rots = []
    for v in verts:
        rots.append([2 * new_id[r // 2] + r % 2 for r in d.vertex_rotation(v) if r // 2 in new_id])
    return build_drawing(len(verts), edges, crossings, rots)


def _outer_key(d: PlanarDrawing):
    return None if d.outer_face is None else d.segment_key(d.outer_face)


def relabeled(d: PlanarDrawing, edge_map: dict[int, tuple[int, int]],
              vertex_map: dict[int, int] | None = None) -> PlanarDrawing:
    """Rename (and possibly reverse) edges; ``edge_map[old] = (new, +1 | -1)``.

    Without ``vertex_map``, vertices are numbered in order of first
    appearance along the new edges (tail before head).
    """
    E = len(d.edges)
    inv = {new: (old, s) for old, (new, s) in edge_map.items()}
    if sorted(inv) != list(range(E)) or len(edge_map) != E:
        raise ValueError("edge_map must be a bijection onto 0..E-1")

    def oriented(old, s):
        a, b = d.edges[old]
        return (a, b) if s == 1 else (b, a)

    if vertex_map is None:
        vertex_map = {}
        for new in range(E):
            for v in oriented(*inv[new]):
                vertex_map.setdefault(v, len(vertex_map))
        for v in range(d.n_vertices):
            vertex_map.setdefault(v, len(vertex_map))
    edges = []
    crossings = []
    for new in range(E):
        old, s = inv[new]
        a, b = oriented(old, s)
        edges.append((vertex_map[a], vertex_map[b]))
        xs = d.crossings(old)
        if s == -1:
            xs = xs[::-1]
        crossings.append([(edge_map[p][0], h * s * edge_map[p][1]) for p, h, _ in xs])
    rots = [None] * d.n_vertices
    for v in range(d.n_vertices):
        rot = []
        for r in d.vertex_rotation(v):
            new, s = edge_map[r // 2]
            end = r % 2 if s == 1 else 1 - r % 2
            rot.append(2 * new + end)
        rots[vertex_map[v]] = rot
    hint = None
    key = _outer_key(d)
    if key is not None:
        e, idx, direction = key
        new, s = edge_map[e]
        if s == -1:
            idx = len(d.edge_chain(e)) - 1 - idx
            direction ^= 1
        hint = (new, idx, direction)
    return build_drawing(d.n_vertices, edges, crossings, rots, hint)


def mirrored(d: PlanarDrawing) -> PlanarDrawing:
    """Mirror image: all handedness flipped, all rotations reversed."""
    crossings = [[(p, -h) for p, h, _ in d.crossings(e)] for e in range(len(d.edges))]
    rots = [d.vertex_rotation(v)[::-1] for v in range(d.n_vertices)]
    key = _outer_key(d)
    hint = None
    if key is not None:
        # the mirrored face lies on the other side of the same segment
        e, idx, direction = key
        hint = (e, idx, direction ^ 1)
    return build_drawing(d.n_vertices, d.edges, crossings, rots, hint)


def canonical_encoding(d: PlanarDrawing, allow_mirror: bool = True) -> str:
    """Labeled-isotopy invariant: equal iff the drawings agree up to a sphere homeomorphism."""
    data = d.to_data()
    data.pop("outer_face_hint")
    text = json.dumps(data, sort_keys=True, separators=(",", ":"))
    if not allow_mirror:
        return text
    mdata = mirrored(PlanarDrawing(d.n_vertices, d.edges, d.node_vertex, d.org, d.nxt,
                                   d.sedge, None)).to_data()
    mdata.pop("outer_face_hint")
    return min(text, json.dumps(mdata, sort_keys=True, separators=(",", ":")))
