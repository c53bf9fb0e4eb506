"""Arc attachment by face-walk routing.

Builds kernel plans from a :class:`PlanarDrawing`, runs the routing kernel
and turns every completed working map back into a validated drawing.
"""
from __future__ import annotations

import multiprocessing
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

from thrackle.core_map import (
    ConsistencyError,
    PlanarDrawing,
    build_drawing,
    canonical_encoding,
    check_euler,
    cycle_directions,
    face_labels,
    meet_counts,
    verify_thrackle,
)
from thrackle.musquash import ParameterError, cycle_order, standard_musquash

from . import _kernel_py

try:  # pragma: no cover - depends on the build
    from . import _kernel as _kernel_c
except ImportError:  # pragma: no cover
    _kernel_c = None

KERNELS = {"python": _kernel_py}
if _kernel_c is not None:
    KERNELS["compiled"] = _kernel_c
DEFAULT_KERNEL = "compiled" if _kernel_c is not None else "python"


def kernel_module(name: str | None = None):
    name = name or DEFAULT_KERNEL
    try:
        return KERNELS[name]
    except KeyError:
        raise ParameterError(f"unknown kernel {name!r}; available: {sorted(KERNELS)}") from None


# ---------------------------------------------------------------------------
# specs and results


@dataclass(frozen=True)
class RouteSpec:
    """One new arc.

    ``start`` / ``end`` anchors:

    * ``("vertex", v)``: existing vertex, every corner tried;
    * ``("corner", v, dart)``: existing vertex, leaving right after ``dart``
      in its rotation (the corner lies in the face left of ``dart``);
    * ``("face", dart)``: a new vertex inside the face left of ``dart``;
      ``("face", None)`` tries every face (start only);
    * ``("free",)``: a new vertex in whatever face the arc ends in (end only).

    Edges in ``must_cross`` are crossed exactly once, every other edge
    (``forbidden`` or unlisted) is not crossed.
    """

    start: tuple
    end: tuple
    must_cross: frozenset = frozenset()
    forbidden: frozenset = frozenset()


@dataclass
class Completion:
    drawing: PlanarDrawing
    labels: dict = field(default_factory=dict)  # vertex -> face label (new vertices)
    encoding: str = ""


@dataclass
class SearchResult:
    completions: list
    exhausted: bool
    nodes_explored: int
    wall_time: float
    budget_exhausted: bool = False
    details: list = field(default_factory=list)  # Completion records, same order
    kernel: str = ""

    @property
    def count(self) -> int:
        return len(self.completions)

    def summary(self) -> dict:
        return {
            "completions": len(self.completions),
            "exhausted": self.exhausted,
            "budget_exhausted": self.budget_exhausted,
            "nodes_explored": self.nodes_explored,
            "wall_time": round(self.wall_time, 3),
            "kernel": self.kernel,
        }


# ---------------------------------------------------------------------------
# plan construction


@dataclass
class _Problem:
    """Everything the kernel needs, in plain picklable form."""

    org: list
    nxt: list
    sedge: list
    vid: list
    n_edges: int
    cyc: list
    n_vertices: int
    plans: list
    arc_ends: list  # per arc (tail vertex id, head vertex id)
    outer: int | None


def _default_cycle(d: PlanarDrawing):
    order = cycle_order(d)
    if order is None:
        return None
    return [e for e, _ in order]


def _labeler(d: PlanarDrawing, cycle):
    if cycle is None:
        return lambda x: 0, [0] * len(d.edges)
    lab = face_labels(d, cycle)
    dirs = cycle_directions(d, cycle)
    cyc = [dirs.get(e, 0) for e in range(len(d.edges))]
    return (lambda x: lab.labels[d.face_of(x)]), cyc


def _problem(d: PlanarDrawing, specs: Sequence[RouteSpec], cycle) -> _Problem:
    E = len(d.edges)
    label_of, cyc = _labeler(d, cycle)
    plans = []
    arc_ends = []
    nv = d.n_vertices
    prev_end = None
    present = set(range(E))
    for k, sp in enumerate(specs):
        must = set(sp.must_cross)
        if must & set(sp.forbidden):
            raise ParameterError(f"arc {k}: must_cross and forbidden overlap")
        if not must <= present:
            raise ParameterError(f"arc {k}: unknown edges {sorted(must - present)}")
        kind = sp.start[0]
        if kind == "prev":
            if prev_end is None:
                raise ParameterError("the first arc cannot continue a previous one")
            start = ("prev",)
            tail = prev_end
        elif kind in ("vertex", "corner"):
            v = sp.start[1]
            if not 0 <= v < d.n_vertices:
                raise ParameterError(f"arc {k}: no vertex {v}")
            darts = d.rotation(v) if kind == "vertex" else [sp.start[2]]
            if kind == "corner" and (sp.start[2] not in d.rotation(v)):
                raise ParameterError(f"arc {k}: dart {sp.start[2]} does not leave vertex {v}")
            if not darts:
                raise ParameterError(f"arc {k}: isolated start vertex {v} is not supported")
            start = ("corners", [(x, label_of(x)) for x in darts])
            tail = v
        elif kind == "face":
            if sp.start[1] is None:
                reps = sorted(d.face_ids())
            else:
                reps = [sp.start[1]]
            start = ("faces", [(x, label_of(x)) for x in reps])
            tail = nv
            nv += 1
        else:
            raise ParameterError(f"arc {k}: unknown start anchor {sp.start!r}")
        if sp.end[0] == "free":
            end = ("free",)
            head = nv
            nv += 1
        elif sp.end[0] == "vertex":
            w = sp.end[1]
            if not 0 <= w < d.n_vertices:
                raise ParameterError(f"arc {k}: no vertex {w}")
            end = ("vertex", w, sorted({label_of(x) for x in d.rotation(w)}))
            head = w
        else:
            raise ParameterError(f"arc {k}: unknown end anchor {sp.end!r}")
        if tail == head:
            raise ParameterError(f"arc {k}: loops are not allowed")
        for e in must:
            if e < E and (tail in d.edges[e] or head in d.edges[e]):
                raise ParameterError(f"arc {k}: edge {e} shares an endpoint with the arc")
        for j in must - set(range(E)):
            if set(arc_ends[j - E]) & {tail, head}:
                raise ParameterError(f"arc {k}: arc edge {j} shares an endpoint with the arc")
        plans.append((E + k, start, end, sorted(must)))
        arc_ends.append((tail, head))
        present.add(E + k)
        prev_end = head
    return _Problem(list(d.org), list(d.nxt), list(d.sedge), list(d.node_vertex), E, cyc,
                    d.n_vertices, plans, arc_ends, d.outer_face)


# ---------------------------------------------------------------------------
# snapshot -> drawing


def snapshot_to_drawing(snap, base: PlanarDrawing, arc_ends) -> PlanarDrawing:
    """Rebuild a :class:`PlanarDrawing` from a finished working map."""
    org, nxt, sedge, vid = snap
    nd = len(org)
    E = len(base.edges) + len(arc_ends)
    first = [-1] * E
    node_dart = [-1] * len(vid)
    for x in range(nd - 1, -1, -1):
        node_dart[org[x]] = x
    for x in range(0, nd, 2):
        if vid[org[x]] >= 0:
            first[sedge[x]] = x
    if min(first) < 0:
        raise ConsistencyError("working map lost an edge")
    crossings = []
    chain_index = {}
    edges = []
    for e in range(E):
        x = first[e]
        xs = []
        i = 0
        while True:
            chain_index[x] = (e, i)
            X = org[x ^ 1]
            if vid[X] >= 0:
                break
            e_out = nxt[nxt[x ^ 1]]
            a, b = nxt[x ^ 1], nxt[e_out]
            f_out = a if not a & 1 else b
            h = 1 if nxt[e_out] == f_out else -1
            xs.append((sedge[f_out], h, X))
            x = e_out
            i += 1
        crossings.append(xs)
        edges.append((vid[org[first[e]]], vid[org[x ^ 1]]))
    n_vertices = max(vid) + 1
    rots = [[] for _ in range(n_vertices)]
    for node, v in enumerate(vid):
        if v < 0 or node_dart[node] < 0:
            continue
        s = node_dart[node]
        y = s
        while True:
            rots[v].append(2 * sedge[y] + (y & 1))
            y = nxt[y]
            if y == s:
                break
    hint = None
    if base.outer_face is not None:
        o = base.outer_face
        e, i = chain_index[o & ~1]
        hint = (e, i, o & 1)
    return build_drawing(n_vertices, edges, crossings, rots, hint)


# ---------------------------------------------------------------------------
# running


def _run_kernel(prob: _Problem, kernel: str, prune_dead, prune_parity, budget, prefix=(),
                collect_depth=-1):
    mod = kernel_module(kernel)
    router = mod.Router(prob.org, prob.nxt, prob.sedge, prob.vid, prob.n_edges, prob.cyc,
                        prob.n_vertices, prob.plans, prune_dead, prune_parity, budget)
    snaps = []
    nodes, aborted = router.run(lambda r: snaps.append(r.snapshot()), prefix, collect_depth)
    return nodes, aborted, snaps, list(router.collected)


def _task(args):
    prob, kernel, pd, pp, budget, prefix = args
    nodes, aborted, snaps, _ = _run_kernel(prob, kernel, pd, pp, budget, prefix)
    return nodes, aborted, snaps


def _execute(prob, kernel, prune_dead, prune_parity, budget, workers, split_depth):
    if workers <= 1:
        nodes, aborted, snaps, _ = _run_kernel(prob, kernel, prune_dead, prune_parity, budget)
        return nodes, aborted, snaps
    nodes, aborted, snaps, prefixes = _run_kernel(prob, kernel, prune_dead, prune_parity, budget,
                                                  collect_depth=split_depth)
    if aborted:
        return nodes, aborted, snaps
    left = None if budget is None else max(budget - nodes, 0)
    jobs = [(prob, kernel, prune_dead, prune_parity, left, p) for p in prefixes]
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(workers) as pool:
        # imap keeps the prefix order, so the merge is deterministic
        for n, a, s in pool.imap(_task, jobs):
            nodes += n
            aborted = aborted or a
            snaps.extend(s)
    return nodes, aborted, snaps


def _labels_of_new(dr: PlanarDrawing, cycle, vertices) -> dict:
    if cycle is None:
        return {}
    lab = face_labels(dr, cycle)
    out = {}
    for v in vertices:
        vals = {lab.labels[dr.face_of(x)] for x in dr.rotation(v)}
        out[v] = vals.pop() if len(vals) == 1 else tuple(sorted(vals))
    return out


def run_specs(d: PlanarDrawing, specs: Sequence[RouteSpec], cycle="auto", *,
              budget: int | None = None, prune_dead: bool = True, prune_parity: bool = True,
              workers: int = 1, split_depth: int = 3, kernel: str | None = None,
              require_thrackle: bool | None = None,
              keep: Callable[[Completion], bool] | None = None) -> SearchResult:
    """Route a sequence of arcs (later arcs may start with ``("prev",)``).

    ``cycle`` fixes the reference cycle for face labels ("auto": the drawing
    itself when it is a single cycle).  Every completion is rebuilt as a
    drawing, checked against the arcs' crossing requirements and Euler's
    formula, and deduplicated by its exact labeled encoding.
    """
    if cycle == "auto":
        cycle = _default_cycle(d)
    t0 = time.perf_counter()
    prob = _problem(d, specs, cycle)
    kname = kernel or DEFAULT_KERNEL
    nodes, aborted, snaps = _execute(prob, kname, prune_dead, prune_parity, budget, workers,
                                     split_depth)
    if require_thrackle is None:
        require_thrackle = verify_thrackle(d).ok
    E = len(d.edges)
    new_vertices = sorted({v for ends in prob.arc_ends for v in ends if v >= d.n_vertices})
    seen = {}
    for snap in snaps:
        dr = snapshot_to_drawing(snap, d, prob.arc_ends)
        check_euler(dr)
        _check_arcs(dr, E, prob.plans)
        if require_thrackle and not verify_thrackle(dr).ok:
            raise ConsistencyError("search produced a non-thrackle completion")
        enc = canonical_encoding(dr, allow_mirror=False)
        if enc in seen:
            continue
        comp = Completion(dr, _labels_of_new(dr, cycle, new_vertices), enc)
        if keep is not None and not keep(comp):
            continue
        seen[enc] = comp
    details = [seen[k] for k in sorted(seen)]
    return SearchResult([c.drawing for c in details], not aborted, nodes,
                        time.perf_counter() - t0, aborted, details, kname)


def _check_arcs(dr: PlanarDrawing, E: int, plans) -> None:
    meets = meet_counts(dr)
    ends = dr.edges
    for edge, _, _, must in plans:
        must = set(must)
        for f in range(edge):
            shared = len(set(ends[edge]) & set(ends[f]))
            want = shared + (1 if f in must else 0)
            if meets[(f, edge)] != want:
                raise ConsistencyError(f"arc {edge} meets edge {f} {meets[(f, edge)]} times")


def route_arc(d: PlanarDrawing, spec: RouteSpec, **kw) -> SearchResult:
    """All isotopy classes of one new arc satisfying ``spec``."""
    return run_specs(d, [spec], **kw)


# ---------------------------------------------------------------------------
# full-size searches


def _path_specs(d: PlanarDrawing, v: int, k: int, corner=None, close: bool = False) -> list:
    E = len(d.edges)
    specs = []
    for i in range(k):
        last = close and i == k - 1
        if i == 0:
            start = ("vertex", v) if corner is None else ("corner", v, corner)
            must = {e for e in range(E) if v not in d.edges[e]}
        else:
            start = ("prev",)
            must = set(range(E)) | {E + j for j in range(i - 1)}
            if last:
                must -= {e for e in range(E) if v in d.edges[e]}
                must.discard(E)
        end = ("vertex", v) if last else ("free",)
        specs.append(RouteSpec(start, end, frozenset(must)))
    return specs


def outer_corner(d: PlanarDrawing, v: int, cycle="auto") -> int:
    """The dart at ``v`` whose following corner lies in a label-0 face."""
    if cycle == "auto":
        cycle = _default_cycle(d)
    lab = face_labels(d, cycle)
    for x in d.rotation(v):
        if lab.labels[d.face_of(x)] == 0:
            return x
    raise ParameterError(f"vertex {v} has no corner in the outer domain")


def attach_path(d: PlanarDrawing, base_vertex: int, k: int, end_predicate=None,
                corner: str | int | None = "outer", **kw) -> SearchResult:
    """Attach a path of ``k`` new edges at ``base_vertex``.

    Each new edge crosses every earlier edge it does not share an endpoint
    with.  ``corner`` is ``"outer"`` (start in the label-0 corner), ``None``
    (every corner) or an explicit dart.  ``end_predicate(completion)``
    filters completions; the labels of the new vertices are in
    ``completion.labels``.
    """
    if not isinstance(k, int) or k < 1:
        raise ParameterError(f"path length must be a positive integer, got {k!r}")
    if corner == "outer":
        corner = outer_corner(d, base_vertex, kw.get("cycle", "auto"))
    return run_specs(d, _path_specs(d, base_vertex, k, corner), keep=end_predicate, **kw)


def search_figure_eight(n: int, m: int, **kw) -> SearchResult:
    """Thrackle drawings of a standard n-musquash plus an m-cycle through vertex 0.

    The musquash's symmetries act transitively on its vertices, so one base
    vertex suffices; both of its corners are tried.
    """
    if m not in (3, 5):
        raise ParameterError(f"m must be 3 or 5, got {m!r}")
    d = standard_musquash(n)
    return run_specs(d, _path_specs(d, 0, m, None, close=True), **kw)


@dataclass
class LemmaReport:
    n: int
    result: SearchResult
    pairs: dict  # (start label, end label) -> count
    violations: list

    @property
    def ok(self) -> bool:
        return self.result.exhausted and not self.violations and bool(self.pairs)


def verify_lemma_1edge(n: int, **kw) -> LemmaReport:
    """Free arcs crossing every edge of the n-musquash once; endpoint labels differ by 1."""
    d = standard_musquash(n)
    E = len(d.edges)
    spec = RouteSpec(("face", None), ("free",), frozenset(range(E)))
    res = run_specs(d, [spec], require_thrackle=False, **kw)
    pairs = {}
    bad = []
    for c in res.details:
        a, b = c.labels[E], c.labels[E + 1]
        pairs[(a, b)] = pairs.get((a, b), 0) + 1
        if abs(a - b) != 1:
            bad.append((a, b))
    return LemmaReport(n, res, dict(sorted(pairs.items())), bad)
