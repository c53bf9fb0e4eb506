from __future__ import annotations

import re

import pytest

from thrackle.core_map import mirrored
from thrackle.musquash import musquash_positions, standard_musquash
from thrackle.render import (
    Layout,
    LayoutError,
    SvgOptions,
    check_layout,
    crossing_sets_match,
    emit_svg,
    layout,
    render,
)
from thrackle.search import attach_path


def test_musquash_uses_exact_realization():
    lay = layout(standard_musquash(7))
    assert lay.method == "realization"
    assert lay.positions == musquash_positions(7)


def test_tutte_layout_of_musquash():
    d = standard_musquash(5)
    lay = layout(d, method="tutte")
    check_layout(lay, d)
    assert crossing_sets_match(lay, d)


def test_mirror_image_lays_out():
    d = mirrored(standard_musquash(5))
    lay = layout(d)
    check_layout(lay, d)


def test_tree_parts_are_placed():
    d = attach_path(standard_musquash(5), 0, 2).completions[0]
    lay = layout(d)
    check_layout(lay, d)
    assert crossing_sets_match(lay, d)
    assert len(lay.positions) == d.n_nodes


def test_swapped_positions_rejected():
    d = standard_musquash(5)
    pos = dict(musquash_positions(5))
    pos[0], pos[1] = pos[1], pos[0]
    with pytest.raises(LayoutError):
        check_layout(Layout(pos, d.outer_face), d)


def test_collapsed_positions_rejected():
    d = standard_musquash(5)
    pos = dict(musquash_positions(5))
    pos[0] = pos[1]
    with pytest.raises(LayoutError):
        check_layout(Layout(pos, d.outer_face), d)


def test_svg_content():
    d = standard_musquash(5)
    svg = render(d, SvgOptions(size=300, labels=True, cycle=tuple(range(5))))
    assert svg.startswith("<?xml") and "<svg " in svg
    assert 'width="300"' in svg
    assert len(re.findall(r'<polyline[^>]*id="e\d+"', svg)) == 5
    assert len(re.findall(r'<circle[^>]*id="v\d+"', svg)) == 5
    labels = re.findall(r"<text[^>]*>(\d+)</text>", svg)
    assert sorted(map(int, labels)) == [0, 1, 1, 1, 1, 1, 2]


def test_svg_without_labels():
    svg = render(standard_musquash(5))
    assert "<text" not in svg


def test_emit_is_deterministic():
    d = attach_path(standard_musquash(5), 0, 2).completions[3]
    lay = layout(d)
    assert emit_svg(lay, d) == emit_svg(lay, d)
    assert render(d) == render(d)
