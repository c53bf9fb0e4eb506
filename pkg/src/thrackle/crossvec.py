"""Z2 crossing vectors of sub-arcs against a standard musquash.

Bit ``j`` of a :class:`CrossVector` records whether an arc crosses musquash
edge ``j``.  Edge ``j`` joins vertex ``j`` (at angle (2mj+1)pi/n, m=(n-1)/2)
to vertex ``j+1``, so graph vertex ``k`` is incident to edges ``k-1`` and ``k``
and sits at angular position ``m*k mod n``.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

import mpmath


class ParameterError(ValueError):
    pass


class ConsistencyError(AssertionError):
    """A generated table contradicts the run-count identities it must satisfy."""


class PrecisionExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class CrossVector:
    bits: tuple[int, ...]

    def __post_init__(self):
        n = len(self.bits)
        if n < 3 or n % 2 == 0:
            raise ParameterError(f"crossing vectors have odd length >= 3, got {n}")
        if any(b not in (0, 1) for b in self.bits):
            raise ParameterError("bits must be 0 or 1")

    @classmethod
    def of(cls, bits) -> "CrossVector":
        return cls(tuple(int(b) for b in bits))

    @property
    def n(self) -> int:
        return len(self.bits)

    def support(self) -> frozenset[int]:
        return frozenset(i for i, b in enumerate(self.bits) if b)

    def __xor__(self, other: "CrossVector") -> "CrossVector":
        _check_len(self, other)
        return CrossVector(tuple(a ^ b for a, b in zip(self.bits, other.bits)))

    def __or__(self, other: "CrossVector") -> "CrossVector":
        _check_len(self, other)
        return CrossVector(tuple(a | b for a, b in zip(self.bits, other.bits)))

    def relabel(self, delta: int) -> "CrossVector":
        """Move the bit at label i to label i + delta (mod n)."""
        n = self.n
        out = [0] * n
        for i, b in enumerate(self.bits):
            out[(i + delta) % n] = b
        return CrossVector(tuple(out))

    def rotate(self, steps: int) -> "CrossVector":
        """Image under rotating the musquash picture by ``steps`` * 2pi/n."""
        return self.relabel(-2 * steps)

    def reflect(self) -> "CrossVector":
        """Image under the reflection in the real axis (edge i -> 1 - i)."""
        n = self.n
        return CrossVector(tuple(self.bits[(1 - i) % n] for i in range(n)))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.bits)) + ")"


def _check_len(a: CrossVector, b: CrossVector) -> None:
    if a.n != b.n:
        raise ParameterError(f"length mismatch: {a.n} vs {b.n}")


def _check_n(n) -> None:
    if not isinstance(n, int) or n < 3 or n % 2 == 0:
        raise ParameterError(f"n must be an odd integer >= 3, got {n!r}")


def base_vector(n: int, s: int) -> CrossVector:
    """Crossing set of a radial segment from a point labelled ``s`` out to the circle."""
    _check_n(n)
    if not 0 <= s <= (n - 1) // 2:
        raise ParameterError(f"s must lie in [0, {(n - 1) // 2}], got {s}")
    bits = [0] + [0, 1] * (s // 2) + [0] * (n - 2 * s - 1) + [0, 1] * ((s + 1) // 2)
    return CrossVector(tuple(bits))


def vertex_edges(n: int, k: int) -> tuple[int, int]:
    return ((k - 1) % n, k % n)


def vertex_at_position(n: int, j: int) -> int:
    """Graph vertex sitting at angle (2j+1)pi/n."""
    return (-2 * j) % n


def pass_vertex(v: CrossVector, vertex: int) -> CrossVector:
    """Toggle the two edges incident to graph vertex ``vertex``."""
    n = v.n
    if not 0 <= vertex < n:
        raise ParameterError(f"vertex {vertex} out of range for n={n}")
    bits = list(v.bits)
    for e in vertex_edges(n, vertex):
        bits[e] ^= 1
    return CrossVector(tuple(bits))


def cyclic_runs(bits) -> list[tuple[int, int]]:
    """Maximal cyclic runs as (value, length); a wrapping run counts once."""
    n = len(bits)
    if all(b == bits[0] for b in bits):
        return [(bits[0], n)]
    start = next(i for i in range(n) if bits[i] != bits[i - 1])
    runs = []
    length = 0
    cur = bits[start]
    for k in range(n):
        b = bits[(start + k) % n]
        if b == cur:
            length += 1
        else:
            runs.append((cur, length))
            cur, length = b, 1
    runs.append((cur, length))
    return runs


def o_counts(v: CrossVector) -> tuple[int, int]:
    """(number of odd runs of ones, number of odd runs of zeros), cyclically."""
    o1 = o0 = 0
    for val, length in cyclic_runs(v.bits):
        if length % 2:
            if val:
                o1 += 1
            else:
                o0 += 1
    return o1, o0


def even_complement(v: CrossVector) -> bool:
    return all(length % 2 == 0 for val, length in cyclic_runs(v.bits) if val == 0)


def admissible_pair(vw: CrossVector, vu: CrossVector) -> bool:
    """Disjoint supports whose union leaves only even uncovered paths."""
    _check_len(vw, vu)
    if vw.support() & vu.support():
        return False
    return even_complement(vw | vu)


def interval_rows(n: int, s: int, listed: bool = False) -> list[tuple[str, int, int, int]]:
    """Intervals for j in 1..n-1 as (tag, lo, hi, O0 - s).

    With ``listed=True`` the bounds are exactly as usually printed for this
    table.  By default the boundary row j = (n-1)/2 + [(s+1)/2] moves from
    I5 to I6: the two row formulas coincide there and the vector has s+1 odd
    zero-runs, not s-1.
    """
    h = (n - 3) // 2
    top5 = (n - 1) // 2 + (s + 1) // 2
    shift = 0 if listed else 1
    return [
        ("I1", 1, (s - 1) // 2, -1),
        ("I2", (s - 1) // 2 + 1, h - s // 2, +1),
        ("I3", h - s // 2 + 1, h, -1),
        ("I4", (n - 1) // 2, (n - 1) // 2, -1),
        ("I5", (n + 1) // 2, top5 - shift, -1),
        ("I6", top5 + 1 - shift, n - 2 - s // 2, +1),
        ("I7", n - 1 - s // 2, n - 1, -1),
    ]


def expected_o0(n: int, s: int, listed: bool = False) -> dict[int, tuple[str, int]]:
    """Map j (0..n-1) to (interval tag, expected O0)."""
    out = {0: ("J0", s - 1)}
    for tag, lo, hi, off in interval_rows(n, s, listed):
        for j in range(lo, hi + 1):
            if j in out:
                raise ConsistencyError(f"j={j} covered twice (n={n}, s={s})")
            out[j] = (tag, s + off)
    missing = set(range(n)) - set(out)
    if missing:
        raise ConsistencyError(f"j={sorted(missing)} not covered (n={n}, s={s})")
    return out


@dataclass(frozen=True)
class TableRow:
    tag: str
    j: int | None
    vector: CrossVector
    o1: int
    o0: int


def vertex_orbit(n: int, s: int) -> list[CrossVector]:
    """Base vector followed by the vectors after passing positions 0..n-2."""
    v = base_vector(n, s)
    out = [v]
    for j in range(n - 1):
        v = pass_vertex(v, vertex_at_position(n, j))
        out.append(v)
    return out


def table_vo(n: int, s: int) -> list[TableRow]:
    """The orbit of the endpoint crossing vector as Y circles the disc.

    Rows: the radial base vector (j=None), then one row per passed position
    j = 0..n-1 (the last row is the base vector again).  Raises
    :class:`ConsistencyError` if any row has O1 != s or an O0 other than the
    interval pattern.
    """
    _check_n(n)
    if not 1 <= s <= (n - 1) // 2:
        raise ParameterError(f"s must lie in [1, {(n - 1) // 2}], got {s}")
    pattern = expected_o0(n, s)
    v = base_vector(n, s)
    rows = [TableRow("base", None, v, *o_counts(v))]
    for j in range(n):
        v = pass_vertex(v, vertex_at_position(n, j))
        rows.append(TableRow(pattern[j][0], j, v, *o_counts(v)))
    for row in rows:
        want = s - 1 if row.j is None else pattern[row.j][1]
        if row.o1 != s or row.o0 not in (s - 1, s + 1) or row.o0 != want:
            raise ConsistencyError(
                f"n={n} s={s} j={row.j}: {row.vector} has O1={row.o1}, O0={row.o0}, "
                f"expected ({s}, {want})")
    if rows[-1].vector != rows[0].vector:
        raise ConsistencyError("orbit does not close after n vertex passes")
    return rows


# ---------------------------------------------------------------------------
# rigorous radial probes

@dataclass(frozen=True)
class RadialProbe:
    """Probe X = r e^{i alpha}, Y = e^{i alpha}; ``alpha`` is given in units of pi."""

    alpha_over_pi: Fraction
    r: Fraction
    s: int | None = None

    def check(self, n: int) -> None:
        a = Fraction(self.alpha_over_pi)
        r = Fraction(self.r)
        if not 0 < a < Fraction(1, n):
            raise ParameterError("alpha must lie in (0, pi/n)")
        if not 0 < r < 1:
            raise ParameterError("r must lie in (0, 1)")


START_PREC = 64
MAX_PREC = 4096


def _ivfrac(q: Fraction):
    q = Fraction(q)
    return mpmath.iv.mpf(q.numerator) / mpmath.iv.mpf(q.denominator)


def _less(x, y):
    """Decide x < y for intervals; None when the enclosures overlap."""
    if x.b < y.a:
        return True
    if x.a >= y.b:
        return False
    return None


# the interval context's precision is process-global
_IV_LOCK = threading.Lock()


def _radial_bits(iv, probe: RadialProbe, n: int):
    pi = iv.pi
    alpha = _ivfrac(probe.alpha_over_pi) * pi
    low = iv.sin(pi / (2 * n))
    high = low / _ivfrac(probe.r)
    bits = []
    for j in range(n):
        val = iv.sin(alpha + (2 * j - 1) * pi / (2 * n))
        if j % 2:
            val = -val
        lo_ok = _less(low, val)
        hi_ok = _less(val, high)
        if lo_ok is None or hi_ok is None:
            return None
        bits.append(int(lo_ok and hi_ok))
    return bits


def radial_crossing_set(probe: RadialProbe, n: int, start_prec: int = START_PREC,
                        max_prec: int = MAX_PREC) -> CrossVector:
    """Edges of the regular-polygon musquash crossed by the radial segment XY.

    Edge j is crossed iff sin(pi/2n) < (-1)^j sin(alpha + (2j-1)pi/2n)
    < sin(pi/2n)/r.  Each comparison is decided with interval enclosures,
    doubling the working precision until every one is resolved.
    """
    _check_n(n)
    probe.check(n)
    iv = mpmath.iv
    prec = start_prec
    while prec <= max_prec:
        with _IV_LOCK:
            saved = iv.prec
            iv.prec = prec
            try:
                bits = _radial_bits(iv, probe, n)
            finally:
                iv.prec = saved
        if bits is not None:
            return CrossVector(tuple(bits))
        prec *= 2
    raise PrecisionExhausted(f"undecided at {max_prec} bits for {probe}")


def probe_radius(n: int, alpha_over_pi: Fraction, s: int, dps: int = 40) -> Fraction:
    """A rational radius placing r e^{i alpha} inside the domain labelled ``s``.

    Uses the radii r_j = sin(pi/2n) / ((-1)^j sin(alpha + (2j-1)pi/2n)) at which
    the radial segment starts crossing edge j, sorted decreasingly; the probe
    sits midway between the s-th and (s+1)-th.  Used only to place probes.
    """
    _check_n(n)
    with mpmath.workdps(dps):
        alpha = mpmath.mpf(alpha_over_pi.numerator) / alpha_over_pi.denominator * mpmath.pi
        low = mpmath.sin(mpmath.pi / (2 * n))
        radii = []
        for j in range(n):
            val = (-1) ** j * mpmath.sin(alpha + (2 * j - 1) * mpmath.pi / (2 * n))
            if val > low:
                radii.append(low / val)
        radii.sort(reverse=True)
        bounds = [mpmath.mpf(1)] + radii + [mpmath.mpf(0)]
        mid = (bounds[s] + bounds[s + 1]) / 2
        return Fraction(str(mpmath.nstr(mid, 30)))
