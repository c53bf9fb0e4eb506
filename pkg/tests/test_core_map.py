from __future__ import annotations

import json

import pytest

from thrackle.core_map import (
    DrawingError,
    LabelingError,
    build_drawing,
    canonical_encoding,
    check_euler,
    euler_characteristic,
    face_labels,
    from_data,
    induced_subdrawing,
    meet_counts,
    mirrored,
    parse,
    relabeled,
    serialize,
    verify_thrackle,
    with_outer,
)
from thrackle.musquash import standard_musquash


def triangle():
    return build_drawing(3, [(0, 1), (1, 2), (2, 0)], [[], [], []],
                         [[0, 5], [1, 2], [3, 4]])


def test_triangle_structure():
    d = triangle()
    assert d.n_nodes == 3 and d.n_crossings == 0
    assert len(d.face_ids()) == 2
    check_euler(d)
    assert verify_thrackle(d).ok


def test_bad_rotation_rejected():
    with pytest.raises(DrawingError):
        build_drawing(3, [(0, 1), (1, 2), (2, 0)], [[], [], []], [[0], [1, 2], [3, 4]])


def test_unmatched_crossing_rejected():
    with pytest.raises(DrawingError):
        build_drawing(4, [(0, 1), (2, 3)], [[(1, 1)], []], [[0], [1], [2], [3]])


def test_single_crossing_faces():
    d = build_drawing(4, [(0, 1), (2, 3)], [[(1, 1)], [(0, -1)]], [[0], [1], [2], [3]])
    assert d.n_crossings == 1
    assert len(d.face_ids()) == 1
    assert euler_characteristic(d) == 2


@pytest.mark.parametrize("n", [3, 5, 7])
def test_musquash_faces_and_meets(n):
    d = standard_musquash(n)
    assert d.n_crossings == n * (n - 3) // 2
    assert len(d.face_ids()) == (n * n - 3 * n + 4) // 2
    assert set(meet_counts(d).values()) == {1}


def test_round_trip_text():
    d = standard_musquash(5)
    text = serialize(d)
    assert json.loads(text)["format"] == "thrackle-drawing/1"
    assert parse(text) == d


def test_parse_errors():
    with pytest.raises(DrawingError):
        parse("not json")
    with pytest.raises(DrawingError):
        from_data({"format": "other"})
    with pytest.raises(DrawingError):
        from_data({"n_vertices": 2})


def test_handedness_inconsistency_detected():
    data = standard_musquash(5).to_data()
    data["edges"][0]["crossings"][0]["handedness"] *= -1
    with pytest.raises(DrawingError):
        from_data(data)


def test_relabel_reverse_edge():
    d = standard_musquash(5)
    r = relabeled(d, {0: (0, -1), 1: (1, 1), 2: (2, 1), 3: (3, 1), 4: (4, 1)})
    assert verify_thrackle(r).ok
    back = relabeled(r, {0: (0, -1), 1: (1, 1), 2: (2, 1), 3: (3, 1), 4: (4, 1)})
    assert canonical_encoding(back, False) == canonical_encoding(d, False)


def test_face_labels_need_outer():
    d = standard_musquash(5)
    bare = with_outer(d, None)
    with pytest.raises(LabelingError):
        face_labels(bare, list(range(5)))


def test_face_labels_traversal_order_irrelevant():
    d = standard_musquash(7)
    a = face_labels(d, list(range(7)))
    b = face_labels(d, list(range(7)), reverse=True)
    assert a.labels == b.labels


def test_face_labels_wrong_cycle():
    with pytest.raises(LabelingError):
        face_labels(standard_musquash(5), [0, 2, 1, 3, 4])


def test_mirror_changes_encoding_only_without_mirror_freedom():
    d = standard_musquash(5)
    m = mirrored(d)
    assert canonical_encoding(d) == canonical_encoding(m)
    assert canonical_encoding(d, allow_mirror=False) != canonical_encoding(m, allow_mirror=False)
    assert canonical_encoding(mirrored(m), False) == canonical_encoding(d, False)


def test_induced_subdrawing_of_musquash():
    d = standard_musquash(7)
    sub = induced_subdrawing(d, [0, 2, 4])
    assert len(sub.edges) == 3
    check_euler(sub)
    assert sub.n_crossings == 3
    assert verify_thrackle(sub).ok
