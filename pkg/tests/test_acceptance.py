"""Acceptance suite: one group of tests per numbered criterion.

Run with ``pytest tests/test_acceptance.py -v``; the terminal summary ends
with one PASS/FAIL line per criterion.
"""
from __future__ import annotations

import subprocess
import sys
import time
from collections import Counter
from fractions import Fraction

import pytest

from oracles import brute_force_crossing_order, polygon_face_labels
from thrackle.core_map import (
    canonical_encoding,
    face_labels,
    parse,
    serialize,
    signed_crossing_sums,
    verify_thrackle,
)
from thrackle.crossvec import (
    RadialProbe,
    base_vector,
    interval_rows,
    o_counts,
    pass_vertex,
    probe_radius,
    radial_crossing_set,
    table_vo,
    vertex_at_position,
)
from thrackle.exactgeo import winding_number
from thrackle.musquash import (
    crossing_order,
    musquash_positions,
    realize,
    standard_musquash,
    verify_musquash,
)
from thrackle.render import SvgOptions, check_layout, crossing_sets_match, layout, render
from thrackle.search import (
    attach_path,
    reproduce_table2,
    reproduce_v5u,
    search_figure_eight,
    verify_lemma_1edge,
)
from thrackle.search.tables import TABLE2_SURVIVORS
from thrackle.surgery import (
    PreconditionError,
    RemovalBlocked,
    insert_edge,
    mtom_case_orders,
    remove_edge,
    triangle_empty,
)

ODD_5_15 = range(5, 16, 2)
crit = pytest.mark.criterion


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0


# ---------------------------------------------------------------------------
# 1. crossing table


@crit(1)
def test_c01_crossing_table_matches_exact_realization():
    with Timer() as t:
        for n in ODD_5_15:
            r = realize(n)
            for i in range(n):
                assert crossing_order(n, i) == r.order_along(i), (n, i)
    assert t.elapsed < 5


@crit(1)
@pytest.mark.parametrize("n", [5, 7, 9, 11])
def test_c01_crossing_table_matches_float_oracle(n):
    pts = realize(n).vertices
    for i in range(n):
        assert crossing_order(n, i) == brute_force_crossing_order(pts, i)


# ---------------------------------------------------------------------------
# 2. face census


def _census_formula(n):
    out = {0: 1, (n - 1) // 2: 1}
    for s in range(1, (n - 3) // 2 + 1):
        out[s] = n
    return dict(sorted(out.items()))


@crit(2)
def test_c02_face_census():
    with Timer() as t:
        for n in ODD_5_15:
            lab = face_labels(standard_musquash(n), list(range(n)))
            assert len(lab.labels) == (n * n - 3 * n + 4) // 2
            assert lab.census() == _census_formula(n)
    assert t.elapsed < 5


@crit(2)
def test_c02_seven_musquash_instance():
    lab = face_labels(standard_musquash(7), list(range(7)))
    assert len(lab.labels) == 16
    assert lab.census() == {0: 1, 1: 7, 2: 7, 3: 1}


@crit(2)
def test_c02_labels_agree_with_winding_numbers():
    with Timer() as t:
        for n in (5, 7, 9):
            d = standard_musquash(n)
            pos = musquash_positions(n)
            curve = [pos[v] for v in range(n)]
            lab = face_labels(d, list(range(n)))
            signs = set()
            for f, value in lab.labels.items():
                if f == d.outer_face:
                    continue
                # faces of a line arrangement are convex: the vertex mean is inside
                poly = [pos[d.org[x]] for x in d.face_darts(f)]
                probe = (sum(p[0] for p in poly) / len(poly), sum(p[1] for p in poly) / len(poly))
                w = winding_number(curve, probe)
                assert abs(w) == value, (n, f)
                signs.add(w > 0)
            assert len(signs) == 1
    assert t.elapsed < 5


@crit(2)
@pytest.mark.parametrize("n", [5, 7, 9])
def test_c02_census_matches_polygonizer(n):
    pos = musquash_positions(n)
    census = polygon_face_labels([pos[v] for v in range(n)])
    assert dict(sorted(census.items())) == _census_formula(n)


# ---------------------------------------------------------------------------
# 3. removing an edge from a musquash


@crit(3)
def test_c03_removal_gives_smaller_musquash():
    with Timer() as t:
        for n in ODD_5_15:
            d = standard_musquash(n)
            for i in range(n):
                path = ((i - 1) % n, i, (i + 1) % n, (i + 2) % n)
                r = remove_edge(d, path)
                assert len(r.edges) == n - 2
                assert verify_musquash(r), (n, i)
    assert t.elapsed < 10


@crit(3)
@pytest.mark.parametrize("n", [7, 9, 11])
def test_c03_three_crossing_sequence_cases(n):
    r = remove_edge(standard_musquash(n), (n - 3, n - 2, n - 1, 0))
    cases = mtom_case_orders(n)
    assert sorted(cases) == list(range(n - 2))
    assert {c[0] for c in cases.values()} == {"three", "two", "joined"}
    for i, case in cases.items():
        after = [p for p, _, _ in r.crossings(i)]
        if case[0] == "joined":
            assert case[1] == after == crossing_order(n - 2, i)
        else:
            _, before, deleted = case
            assert before == crossing_order(n, i)
            kept = [x for x in before if x not in deleted]
            assert kept == after == crossing_order(n - 2, i)


# ---------------------------------------------------------------------------
# 4. the empty-triangle guard


def _triangle_corpus():
    """(drawing, n) pairs: musquashes and two-path certificates on them."""
    corpus = [(standard_musquash(n), n) for n in (5, 7, 9, 11)]
    for n in (5, 7):
        corpus += [(d, n) for d in attach_path(standard_musquash(n), 0, 2).completions[:40]]
    return corpus


@crit(4)
def test_c04_removal_succeeds_iff_triangle_empty():
    corpus = _triangle_corpus()
    seen = Counter()
    with Timer() as t:
        for d, n in corpus:
            # 3-paths running along the musquash cycle 0..n-1
            for i in range(n):
                path = ((i - 1) % n, i, (i + 1) % n, (i + 2) % n)
                try:
                    empty = triangle_empty(d, path)
                except PreconditionError:
                    seen["precondition"] += 1
                    continue
                if empty:
                    assert verify_thrackle(remove_edge(d, path)).ok
                    seen["removed"] += 1
                else:
                    with pytest.raises(RemovalBlocked):
                        remove_edge(d, path)
                    forced = remove_edge(d, path, check=False)
                    assert verify_thrackle(forced).violations
                    seen["blocked"] += 1
    assert seen["removed"] > 0 and seen["blocked"] > 0, seen
    assert t.elapsed < 5


# ---------------------------------------------------------------------------
# 5. endpoint crossing vectors around the disc


def _orbit_counts(n, s):
    """(j, O1, O0) after passing each position j, computed from scratch."""
    v = base_vector(n, s)
    out = []
    for j in range(n):
        v = pass_vertex(v, vertex_at_position(n, j))
        out.append((j, *o_counts(v)))
    return out


def _pattern_mismatches(n, s, listed):
    bad = []
    rows = interval_rows(n, s, listed=listed)
    for j, o1, o0 in _orbit_counts(n, s):
        if o1 != s:
            bad.append((j, "O1", o1))
            continue
        if j == 0:
            allowed = {s - 1}
        else:
            covering = [tag for tag, lo, hi, _ in rows if lo <= j <= hi]
            if len(covering) != 1:
                bad.append((j, "rows", tuple(covering)))
                continue
            allowed = {s + off for _, lo, hi, off in rows if lo <= j <= hi}
        if allowed != {o0}:
            bad.append((j, "O0", o0, tuple(sorted(allowed))))
    return bad


@crit(5)
def test_c05_vertex_orbit_corrected_pattern():
    with Timer() as t:
        for n in range(5, 14, 2):
            for s in range(1, (n - 1) // 2 + 1):
                rows = table_vo(n, s)
                assert all(r.o1 == s for r in rows)
                assert not _pattern_mismatches(n, s, listed=False), (n, s)
    assert t.elapsed < 1


@crit(5)
def test_c05_vertex_orbit_printed_pattern():
    """The interval bounds exactly as printed."""
    failures = {}
    for n in range(5, 14, 2):
        for s in range(1, (n - 1) // 2 + 1):
            bad = _pattern_mismatches(n, s, listed=True)
            if bad:
                failures[(n, s)] = bad
    assert not failures, f"{len(failures)} (n, s) cases disagree: {failures}"


# ---------------------------------------------------------------------------
# 6. admissible crossing-vector pairs

PRINTED_W = [
    "0010001", "1010000", "1010110", "1001110", "0101110", "0101101", "0100001",
]
PRINTED_U = {
    "a": "0000100", "b": "0000010", "c": "0011010", "d": "1111010",
    "e": "1111001", "f": "1110101", "g": "1000101",
    "α": "0010000", "β": "0001000", "γ": "1101000", "δ": "1101011",
    "ε": "1100111", "ζ": "1010111", "η": "0010110",
}
PRINTED_V5U = ["00001", "10000", "10110", "01110", "01101"]


def _bits(v):
    return "".join(map(str, v.bits))


@crit(6)
def test_c06_table2_rows_and_survivors():
    with Timer() as t:
        tab = reproduce_table2()
    assert [_bits(v) for v in tab.w_rows.values()] == PRINTED_W
    assert {k: _bits(v) for k, v in tab.u_rows.items()} == PRINTED_U
    assert tab.examined == 98
    assert tab.names == TABLE2_SURVIVORS == {"1b", "1β", "1γ", "5α"}
    assert t.elapsed < 1


@crit(6)
def test_c06_five_musquash_two_possibilities():
    with Timer() as t:
        five = reproduce_v5u()
    assert _bits(five.w) == "00101"
    assert [_bits(v) for v in five.listed] == PRINTED_V5U
    assert five.examined == 25
    assert sorted(_bits(v) for v in five.vectors) == ["00010", "11010"]
    # first listed vector shifted left by one, third shifted left by two
    shifts = {(i, k) for i, k, _ in five.survivors}
    assert {(0, 1), (2, 2)} <= shifts
    assert t.elapsed < 1


# ---------------------------------------------------------------------------
# 7. radial crossing sets


@crit(7)
def test_c07_radial_probes_match_base_vector():
    grid = 0
    with Timer() as t:
        for n in (5, 7, 9):
            per_n = 0
            for k in range(1, 11):
                alpha = Fraction(k, 11 * n)
                for s in range(1, (n - 1) // 2 + 1):
                    r = probe_radius(n, alpha, s)
                    got = radial_crossing_set(RadialProbe(alpha, r, s), n)
                    assert got == base_vector(n, s), (n, k, s)
                    per_n += 1
            assert per_n >= 20
            grid += per_n
    assert grid == 20 + 30 + 40
    assert t.elapsed < 30


# ---------------------------------------------------------------------------
# 8. free arcs crossing every edge once

LEMMA_PAIRS = {
    5: {(0, 1): 140, (1, 0): 140, (1, 2): 60, (2, 1): 60},
    7: {(0, 1): 812, (1, 0): 812, (1, 2): 616, (2, 1): 616, (2, 3): 336, (3, 2): 336},
}


@crit(8)
@pytest.mark.parametrize("n", [5, 7])
def test_c08_free_arc_endpoint_labels_differ_by_one(n):
    with Timer() as t:
        rep = verify_lemma_1edge(n)
    assert rep.result.exhausted and not rep.result.budget_exhausted
    assert not rep.violations
    assert all(abs(a - b) == 1 for a, b in rep.pairs)
    # every label pair that can occur does occur
    top = (n - 1) // 2
    reachable = {(a, a + 1) for a in range(top)} | {(a + 1, a) for a in range(top)}
    assert set(rep.pairs) == reachable
    assert dict(rep.pairs) == LEMMA_PAIRS[n]
    assert rep.ok
    assert t.elapsed < 600


# ---------------------------------------------------------------------------
# 9. a two-path at the outer corner

TWO_PATH_COUNTS = {5: 50, 7: 556}


@crit(9)
@pytest.mark.parametrize("n", [5, 7])
def test_c09_two_path_labels(n):
    with Timer() as t:
        res = attach_path(standard_musquash(n), 0, 2)
    assert res.exhausted and not res.budget_exhausted
    census = Counter(tuple(c.labels[v] for v in sorted(c.labels)) for c in res.details)
    # u is the middle vertex, w the far end
    assert set(census) == {(1, 0)}
    assert res.count == TWO_PATH_COUNTS[n]
    for d in res.completions:
        assert verify_thrackle(d).ok
    assert t.elapsed < 1800


# ---------------------------------------------------------------------------
# 10. non-existence


@crit(10)
@pytest.mark.parametrize("n,m", [(3, 3), (5, 3), (7, 3), (5, 5)])
def test_c10_no_figure_eight(n, m):
    res = search_figure_eight(n, m)
    assert not res.budget_exhausted, "budget exhausted: raise the budget"
    assert res.exhausted
    assert res.count == 0


# ---------------------------------------------------------------------------
# 11. signed crossing sums

SIGNED_SUM_SNAPSHOT = 0


@crit(11)
def test_c11_signed_sums_identical_on_every_edge():
    with Timer() as t:
        for n in range(3, 12, 2):
            sums = signed_crossing_sums(standard_musquash(n))
            assert sorted(sums) == list(range(n))
            assert set(sums.values()) == {SIGNED_SUM_SNAPSHOT}, (n, sums)
    assert t.elapsed < 5


# ---------------------------------------------------------------------------
# 12. infrastructure


def _corpora():
    out = [standard_musquash(n) for n in range(3, 16, 2)]
    out += [remove_edge(standard_musquash(n), (n - 1, 0, 1, 2)) for n in (7, 9)]
    out += [insert_edge(standard_musquash(5), e, at, side)
            for e in range(5) for at in range(3) for side in (1, -1)]
    out += attach_path(standard_musquash(5), 0, 2).completions
    out += verify_lemma_1edge(5).result.completions[:60]
    return out


@crit(12)
def test_c12_interchange_round_trip():
    for d in _corpora():
        text = serialize(d)
        back = parse(text)
        assert back == d
        assert serialize(back) == text
        assert canonical_encoding(back) == canonical_encoding(d)


@crit(12)
@pytest.mark.parametrize("n", [3, 5, 7, 9])
def test_c12_render_validates_musquash(n):
    d = standard_musquash(n)
    for method in ("auto", "tutte"):
        lay = layout(d, method=method)
        check_layout(lay, d)
        assert crossing_sets_match(lay, d)


@crit(12)
def test_c12_render_validates_search_certificates():
    certs = attach_path(standard_musquash(5), 0, 2).completions[:10]
    certs += verify_lemma_1edge(5).result.completions[:10]
    certs += [remove_edge(standard_musquash(9), (8, 0, 1, 2))]
    for d in certs:
        lay = layout(d)
        check_layout(lay, d)
        assert crossing_sets_match(lay, d)


@crit(12)
def test_c12_svg_is_byte_identical():
    d = standard_musquash(7)
    opts = SvgOptions(labels=True, cycle=tuple(range(7)))
    a = render(d, opts)
    assert a == render(d, opts)
    code = (
        "import sys; from thrackle.musquash import standard_musquash;"
        "from thrackle.render import SvgOptions, render;"
        "sys.stdout.write(render(standard_musquash(7), "
        "SvgOptions(labels=True, cycle=tuple(range(7)))))"
    )
    fresh = subprocess.run([sys.executable, "-c", code], capture_output=True, check=True)
    assert fresh.stdout == a.encode()
