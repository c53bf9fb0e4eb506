from __future__ import annotations

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from thrackle.core_map import (
    PlanarDrawing,
    canonical_encoding,
    check_euler,
    face_labels,
    parse,
    relabeled,
    serialize,
    verify_thrackle,
)
from thrackle.crossvec import CrossVector, admissible_pair, o_counts, pass_vertex
from thrackle.musquash import standard_musquash
from thrackle.surgery import insert_edge, remove_edge

odd_n = st.sampled_from([3, 5, 7, 9])
fast = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def renumber(d: PlanarDrawing, node_perm, seg_perm) -> PlanarDrawing:
    """Same drawing with crossing nodes and segments renumbered."""
    V = d.n_vertices
    npos = list(range(V)) + [V + p for p in node_perm]

    def dart(x):
        return 2 * seg_perm[x // 2] + (x & 1)

    D = d.n_darts
    org, nxt, sedge = [0] * D, [0] * D, [0] * D
    for x in range(D):
        y = dart(x)
        org[y] = npos[d.org[x]]
        nxt[y] = dart(d.nxt[x])
        sedge[y] = d.sedge[x]
    node_vertex = [0] * d.n_nodes
    for x in range(d.n_nodes):
        node_vertex[npos[x]] = d.node_vertex[x]
    out = PlanarDrawing(d.n_vertices, d.edges, tuple(node_vertex), tuple(org), tuple(nxt),
                        tuple(sedge), None)
    outer = out.face_of(dart(d.face_darts(d.outer_face)[0]))
    return PlanarDrawing(out.n_vertices, out.edges, out.node_vertex, out.org, out.nxt,
                         out.sedge, outer)


@st.composite
def drawings(draw):
    n = draw(odd_n)
    d = standard_musquash(n)
    for _ in range(draw(st.integers(0, 2))):
        e = draw(st.integers(0, len(d.edges) - 1))
        at = draw(st.integers(0, len(d.crossings(e))))
        d = insert_edge(d, e, at, draw(st.sampled_from([1, -1])))
    return d


@fast
@given(drawings(), st.randoms(use_true_random=False))
def test_encoding_ignores_internal_numbering(d, rnd):
    nodes = list(range(d.n_crossings))
    segs = list(range(d.n_segments))
    rnd.shuffle(nodes)
    rnd.shuffle(segs)
    p = renumber(d, nodes, segs)
    check_euler(p)
    assert p.crossing_table() == d.crossing_table()
    assert canonical_encoding(p) == canonical_encoding(d)
    assert canonical_encoding(p, allow_mirror=False) == canonical_encoding(d, allow_mirror=False)
    assert serialize(p) == serialize(d)


@fast
@given(drawings())
def test_serialize_round_trip(d):
    text = serialize(d)
    back = parse(text)
    assert back == d
    assert serialize(back) == text


@fast
@given(drawings(), st.randoms(use_true_random=False))
def test_relabel_and_back(d, rnd):
    E = len(d.edges)
    new = list(range(E))
    rnd.shuffle(new)
    flips = [rnd.choice((1, -1)) for _ in range(E)]
    fwd = {e: (new[e], flips[e]) for e in range(E)}
    back = {new[e]: (e, flips[e]) for e in range(E)}
    same = {v: v for v in range(d.n_vertices)}
    r = relabeled(d, fwd, same)
    assert verify_thrackle(r).ok == verify_thrackle(d).ok
    assert canonical_encoding(relabeled(r, back, same), False) == canonical_encoding(d, False)


@fast
@given(odd_n.filter(lambda n: n >= 5), st.data())
def test_insert_remove_round_trip(n, data):
    d = standard_musquash(n)
    e = data.draw(st.integers(0, n - 1))
    at = data.draw(st.integers(0, n - 3))
    side = data.draw(st.sampled_from([1, -1]))
    grown = insert_edge(d, e, at, side)
    assert verify_thrackle(grown).ok
    v1, v4 = d.edges[e]
    back = remove_edge(grown, (v1, n, n + 1, v4))
    assert canonical_encoding(back, False) == canonical_encoding(d, False)


@fast
@given(odd_n)
def test_labels_independent_of_traversal(n):
    d = standard_musquash(n)
    assert face_labels(d, list(range(n))).labels == face_labels(d, list(range(n)), reverse=True).labels


vectors = st.sampled_from([5, 7, 9]).flatmap(
    lambda n: st.lists(st.integers(0, 1), min_size=n, max_size=n).map(CrossVector.of))


@settings(max_examples=200, deadline=None)
@given(vectors, st.integers(-20, 20))
def test_o_counts_symmetries(v, k):
    assert o_counts(v.relabel(k)) == o_counts(v)
    assert o_counts(v.reflect()) == o_counts(v)
    assert v.relabel(k).relabel(-k) == v
    assert v.reflect().reflect() == v


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_admissible_pair_symmetries(data):
    n = data.draw(st.sampled_from([5, 7]))
    bits = st.lists(st.integers(0, 1), min_size=n, max_size=n).map(CrossVector.of)
    a, b = data.draw(bits), data.draw(bits)
    k = data.draw(st.integers(0, n - 1))
    assert admissible_pair(a, b) == admissible_pair(b, a)
    assert admissible_pair(a, b) == admissible_pair(a.relabel(k), b.relabel(k))
    assert admissible_pair(a, b) == admissible_pair(a.reflect(), b.reflect())


@settings(max_examples=200, deadline=None)
@given(vectors, st.integers(0, 100))
def test_pass_vertex_involution_and_parity(v, k):
    w = pass_vertex(v, k % v.n)
    assert pass_vertex(w, k % v.n) == v
    assert sum(w.bits) % 2 == sum(v.bits) % 2
