from __future__ import annotations

import pytest

from thrackle.core_map import canonical_encoding, check_euler, meet_counts, verify_thrackle
from thrackle.musquash import drawing_from_straight_edges, standard_musquash, verify_musquash
from thrackle.search import attach_path
from thrackle.surgery import (
    NotApplicable,
    ParameterError,
    PreconditionError,
    insert_edge,
    perturb_degree4,
    remove_edge,
    split_vertex,
    triangle_region,
)


def bowtie():
    pts = [(0, 0), (2, 1), (2, -1), (-2, 1), (-2, -1)]
    edges = [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]
    return drawing_from_straight_edges(pts, edges)[0]


def test_remove_edge_5_to_3():
    r = remove_edge(standard_musquash(5), (4, 0, 1, 2))
    assert len(r.edges) == 3 and r.n_crossings == 0
    assert verify_musquash(r)


def test_remove_edge_needs_a_path():
    with pytest.raises(PreconditionError):
        remove_edge(standard_musquash(5), (0, 1, 2, 4))


def test_triangle_region_of_musquash_is_empty():
    reg = triangle_region(standard_musquash(7), (6, 0, 1, 2))
    assert reg.edge == 0
    assert not reg.enclosed_vertices


@pytest.mark.parametrize("at", [0, 1, 2])
@pytest.mark.parametrize("side", [1, -1])
def test_insert_then_remove_round_trip(at, side):
    d = standard_musquash(5)
    v1, v4 = d.edges[0]
    grown = insert_edge(d, 0, at, side)
    assert len(grown.edges) == 7
    assert verify_thrackle(grown).ok
    back = remove_edge(grown, (v1, 5, 6, v4))
    assert canonical_encoding(back, allow_mirror=False) == canonical_encoding(d, allow_mirror=False)


def test_insert_edge_parameters():
    d = standard_musquash(5)
    with pytest.raises(ParameterError):
        insert_edge(d, 0, 5, 1)
    with pytest.raises(ParameterError):
        insert_edge(d, 9)


def test_split_vertex_keeps_meet_counts():
    c = attach_path(standard_musquash(5), 0, 2).completions[0]
    before = meet_counts(c)
    for moved in ([4], [5]):
        s = split_vertex(c, 0, 0, moved)
        assert s.n_vertices == c.n_vertices + 1
        assert len(s.edges) == len(c.edges) + 1
        check_euler(s)
        after = meet_counts(s)
        assert {p: after[p] for p in before} == before
        assert verify_thrackle(s).ok


def test_split_vertex_bad_moved():
    c = attach_path(standard_musquash(5), 0, 2).completions[0]
    with pytest.raises(ParameterError):
        split_vertex(c, 0, 0, [9])


def test_split_vertex_trivial_is_identity():
    c = attach_path(standard_musquash(5), 0, 2).completions[0]
    assert split_vertex(c, 0, 0, []) == c


def test_perturb_degree4_bowtie():
    d = bowtie()
    p = perturb_degree4(d, 0)
    assert p.n_vertices == 6
    assert p.n_crossings == 4
    check_euler(p)
    assert meet_counts(p) == meet_counts(d)


def test_perturb_needs_degree_four():
    with pytest.raises(NotApplicable):
        perturb_degree4(standard_musquash(5), 0)
