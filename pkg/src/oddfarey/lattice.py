"""Primitive lattice counts with parity and modular-inverse restrictions.

For a region R inside the (unit-scaled) Farey triangle and an order Q, the
counters here enumerate integer points (a, b) with (a/Q, b/Q) satisfying
every region constraint at its exact strictness, optionally filtered by
coordinate parities, primitivity gcd(a, b) = 1, and the short-interval rule
below.  Sweeps go column by column with exact integer bounds per column.

Windows vs points.  Each primitive point (a, b) in Q*T with a odd is the
denominator pair of an odd-denominator fraction and its Farey successor, and
its index orbit decodes the window of the next h odd-denominator fractions.
Summed over walk families this reproduces the streaming window counts with
one caveat: the decoded walk continues past 1/1 into the periodic
continuation of the sequence, while the streaming side stops there.  The
identity checkers therefore subtract the (at most h) boundary windows that
start inside F(Q) but end past 1/1; with that correction the equality is an
exact integer identity at every order.

Short intervals.  A point (a, b) with gcd(a, b) = 1 has a unique inverse
b_bar in {1, ..., a-1} with b*b_bar = 1 mod a (b_bar = 0 when a = 1); it
equals a*(1 - gamma0) for the window's first fraction gamma0.  Membership in
I = [lo, hi] is taken as  a*(1 - hi) <= b_bar < a*(1 - lo), i.e. the
half-open rule lo < gamma0 <= hi, so interval partitions of [0, 1] induce
exact partitions of counts.  (The streaming side uses closed membership; the
two agree unless some odd-denominator fraction equals an interval endpoint,
which the verifiers flag.)
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, log, pi
from typing import Iterable, Optional, Sequence

from .farey import UnitInterval, _check_order, _element_stream, gap_histogram
from .geometry import ConvexRegion, cylinder, refine, unimodular_image
from .paths import PathFamily, arrow_text, families

__all__ = [
    "PairParity",
    "CountReport",
    "count_lattice",
    "count_lattice_interval",
    "parity_profile",
    "decode_histogram",
    "boundary_window_histogram",
    "family_lattice_count",
    "FamilyCheck",
    "VerifyResult",
    "verify_tuple_identity",
    "verify_interval_identity",
    "verify_parity_swap",
    "AsymptoticRow",
    "asymptotic_report",
    "MAIN_TERM_COEFFICIENTS",
]

_PARITIES = ("odd", "even", "any")


@dataclass(frozen=True)
class PairParity:
    """Parity filter for the two coordinates ('odd' / 'even' / 'any')."""

    x: str = "any"
    y: str = "any"

    def __post_init__(self) -> None:
        if self.x not in _PARITIES or self.y not in _PARITIES:
            raise ValueError(f"parities must be in {_PARITIES}")

    def matches(self, a: int, b: int) -> bool:
        if self.x == "odd" and a % 2 == 0:
            return False
        if self.x == "even" and a % 2 == 1:
            return False
        if self.y == "odd" and b % 2 == 0:
            return False
        if self.y == "even" and b % 2 == 1:
            return False
        return True

    def __str__(self) -> str:
        return f"({self.x},{self.y})"


@dataclass(frozen=True)
class CountReport:
    """Result of one lattice count, with the filters that produced it."""

    count: int
    region: ConvexRegion
    order: int
    parity: PairParity
    primitive: bool
    interval: Optional[UnitInterval] = None
    boundary_hits: int = 0


# ---------------------------------------------------------------------------
# column sweeps
# ---------------------------------------------------------------------------


def _scaled_constraints(
    region: ConvexRegion, q_max: int
) -> list[tuple[int, int, int, bool]]:
    """Constraints as CX*a + CY*b <= RHS (or < when strict) on integer points."""
    out = []
    for hp in region.constraints:
        f, bound = hp.form, hp.bound
        d = bound.denominator
        cx, cy = d * f.cx, d * f.cy
        rhs = q_max * bound.numerator - d * f.c0 * q_max
        if hp.sense in (">=", ">"):
            cx, cy, rhs = -cx, -cy, -rhs
        out.append((cx, cy, rhs, hp.sense in ("<", ">")))
    return out


def _column_range(
    cons: Sequence[tuple[int, int, int, bool]], a: int
) -> Optional[tuple[int, int]]:
    """Exact integer b-range of one column, or None when the column is empty."""
    lo: Optional[int] = None
    hi: Optional[int] = None
    for cx, cy, rhs, strict in cons:
        r = rhs - cx * a
        if cy == 0:
            if r < 0 or (strict and r == 0):
                return None
        elif cy > 0:
            b = (r - 1) // cy if strict else r // cy
            hi = b if hi is None else min(hi, b)
        else:
            d, p = -cy, -r
            b = p // d + 1 if strict else -((-p) // d)
            lo = b if lo is None else max(lo, b)
    if lo is None or hi is None:
        raise ValueError("region constraints do not bound the sweep column")
    if lo > hi:
        return None
    return lo, hi


def _ceil_scaled(fr: Fraction, q_max: int) -> int:
    n = q_max * fr.numerator
    return -((-n) // fr.denominator)


def _floor_scaled(fr: Fraction, q_max: int) -> int:
    return q_max * fr.numerator // fr.denominator


def _column_span(region: ConvexRegion, q_max: int) -> range:
    bounds = region.bounds()
    if bounds is None:
        return range(0)
    xmin, xmax, _, _ = bounds
    return range(max(_ceil_scaled(xmin, q_max), 1), _floor_scaled(xmax, q_max) + 1)


def count_lattice(
    region: ConvexRegion,
    q_max: int,
    parity: PairParity = PairParity(),
    primitive: bool = True,
) -> CountReport:
    """Exact count of integer points of the scaled region, with filters.

    Membership honors each constraint's strict/non-strict sense exactly, so
    boundary lattice points are classified deterministically.
    """
    _check_order(q_max)
    count = 0
    if not region.is_empty:
        cons = _scaled_constraints(region, q_max)
        ystep = 1 if parity.y == "any" else 2
        for a in _column_span(region, q_max):
            if parity.x == "odd" and a % 2 == 0:
                continue
            if parity.x == "even" and a % 2 == 1:
                continue
            rng = _column_range(cons, a)
            if rng is None:
                continue
            blo, bhi = rng
            if parity.y == "odd" and blo % 2 == 0:
                blo += 1
            elif parity.y == "even" and blo % 2 == 1:
                blo += 1
            if primitive:
                for b in range(blo, bhi + 1, ystep):
                    if gcd(a, b) == 1:
                        count += 1
            else:
                if blo <= bhi:
                    count += (bhi - blo) // ystep + 1
    return CountReport(count, region, q_max, parity, primitive)


def count_lattice_interval(
    region: ConvexRegion,
    q_max: int,
    parity: PairParity,
    interval: UnitInterval,
) -> CountReport:
    """Primitive count additionally requiring b_bar in the scaled interval.

    b_bar is the inverse of b mod a in {1, ..., a-1} (0 when a = 1), and the
    membership rule is a*(1 - hi) <= b_bar < a*(1 - lo).  Points whose b_bar
    lands exactly on either wall are tallied in ``boundary_hits``.
    """
    _check_order(q_max)
    ln, ld = interval.lo.numerator, interval.lo.denominator
    hn, hd = interval.hi.numerator, interval.hi.denominator
    count = 0
    hits = 0
    if not region.is_empty:
        cons = _scaled_constraints(region, q_max)
        ystep = 1 if parity.y == "any" else 2
        for a in _column_span(region, q_max):
            if parity.x == "odd" and a % 2 == 0:
                continue
            if parity.x == "even" and a % 2 == 1:
                continue
            rng = _column_range(cons, a)
            if rng is None:
                continue
            blo, bhi = rng
            if parity.y == "odd" and blo % 2 == 0:
                blo += 1
            elif parity.y == "even" and blo % 2 == 1:
                blo += 1
            lo_wall = a * (hd - hn)  # b_bar * hd >= this
            hi_wall = a * (ld - ln)  # b_bar * ld < this
            for b in range(blo, bhi + 1, ystep):
                if gcd(a, b) != 1:
                    continue
                bbar = 0 if a == 1 else pow(b, -1, a)
                if bbar * hd == lo_wall or bbar * ld == hi_wall:
                    hits += 1
                if bbar * hd >= lo_wall and bbar * ld < hi_wall:
                    count += 1
    return CountReport(count, region, q_max, parity, True, interval, hits)


def parity_profile(region: ConvexRegion, q_max: int) -> dict[tuple[str, str], int]:
    """Primitive counts keyed by coordinate parities, in one sweep.

    Only ('odd','odd'), ('odd','even'), ('even','odd') occur: two even
    coordinates are never coprime.
    """
    _check_order(q_max)
    out = {("odd", "odd"): 0, ("odd", "even"): 0, ("even", "odd"): 0}
    if region.is_empty:
        return out
    cons = _scaled_constraints(region, q_max)
    for a in _column_span(region, q_max):
        rng = _column_range(cons, a)
        if rng is None:
            continue
        blo, bhi = rng
        xk = "odd" if a % 2 else "even"
        for b in range(blo, bhi + 1):
            if gcd(a, b) == 1:
                out[(xk, "odd" if b % 2 else "even")] += 1
    return out


# ---------------------------------------------------------------------------
# window decoding
# ---------------------------------------------------------------------------


def _interval_key(interval: Optional[UnitInterval]) -> Optional[UnitInterval]:
    if interval is None or interval.is_full:
        return None
    return interval


@lru_cache(maxsize=64)
def _decode_cached(q_max: int, h: int, interval: Optional[UnitInterval]) -> Counter:
    ctr: Counter = Counter()
    if interval is not None:
        ln, ld = interval.lo.numerator, interval.lo.denominator
        hn, hd = interval.hi.numerator, interval.hi.denominator
    for a in range(1, q_max + 1, 2):
        b_first = max(q_max - a + 1, 1)
        for b in range(b_first, q_max + 1):
            if gcd(a, b) != 1:
                continue
            if interval is not None:
                bbar = 0 if a == 1 else pow(b, -1, a)
                if not (bbar * hd >= a * (hd - hn) and bbar * ld < a * (ld - ln)):
                    continue
            x, y = a, b
            gaps = []
            steps = []
            for _ in range(h):
                if y & 1:
                    gaps.append(1)
                    steps.append("OO")
                    x, y = y, ((q_max + x) // y) * y - x
                else:
                    k = (q_max + x) // y
                    gaps.append(k)
                    steps.append("OEO")
                    x, y = y, k * y - x
                    x, y = y, ((q_max + x) // y) * y - x
            ctr[(tuple(gaps), tuple(steps))] += 1
    return ctr


def decode_histogram(
    q_max: int, h: int, interval: Optional[UnitInterval] = None
) -> Counter:
    """Window histogram decoded from lattice points, keyed (gaps, steps).

    Every primitive point of Q*T with odd x decodes to exactly one window of
    the *periodic* odd subsequence; free index labels never exceed 2Q, so the
    per-family sums below are finite by construction.
    """
    _check_order(q_max)
    if h < 1:
        raise ValueError("window length h must be >= 1")
    return _decode_cached(q_max, h, _interval_key(interval))


@lru_cache(maxsize=64)
def _boundary_cached(
    q_max: int, h: int, interval: Optional[UnitInterval]
) -> Counter:
    n0 = 2 * h + 4
    head: list[tuple[int, int]] = []
    tail: deque = deque(maxlen=n0)
    for a, q in _element_stream(q_max):
        if len(head) < n0:
            head.append((a, q))
        tail.append((a, q))
    base = list(tail)  # ends at (1, 1)
    ext = list(base)
    target_len = len(base) + n0
    shift = 1
    while len(ext) < target_len:
        for a, q in head:
            ext.append((a + shift * q, q))
            if len(ext) >= target_len:
                break
        shift += 1
    one_idx = len(base) - 1
    odds = [j for j, (_, q) in enumerate(ext) if q & 1]
    ctr: Counter = Counter()
    for s0, j in enumerate(odds):
        if j > one_idx:
            break
        if s0 + h >= len(odds):
            break
        if odds[s0 + h] <= one_idx:
            continue  # window closes inside the finite sequence
        win = [ext[odds[s0 + t]] for t in range(h + 1)]
        if interval is not None:
            a0, q0 = win[0]
            if not (interval.lo * q0 < a0 <= interval.hi * q0):
                continue
        gaps = tuple(
            win[t + 1][0] * win[t][1] - win[t][0] * win[t + 1][1] for t in range(h)
        )
        steps = tuple(
            "OO" if odds[s0 + t] + 1 == odds[s0 + t + 1] else "OEO" for t in range(h)
        )
        ctr[(gaps, steps)] += 1
    return ctr


def boundary_window_histogram(
    q_max: int, h: int, interval: Optional[UnitInterval] = None
) -> Counter:
    """The decoded windows that start in F(Q) but end past 1/1 (at most h)."""
    _check_order(q_max)
    if h < 1:
        raise ValueError("window length h must be >= 1")
    return _boundary_cached(q_max, h, _interval_key(interval))


def family_lattice_count(
    family: PathFamily,
    q_max: int,
    deltas: Sequence[int],
    interval: Optional[UnitInterval] = None,
) -> int:
    """Lattice count of one family: points whose decoded window has the given
    gaps and the family's step signature.  Equals the sum over all free-label
    instantiations of the (odd, first-vertex-parity) count of the scaled
    cylinder; the dual region-based route is exercised in the test suite.
    """
    key = (tuple(int(d) for d in deltas), family.path.step_types())
    return decode_histogram(q_max, len(key[0]), interval)[key]


# ---------------------------------------------------------------------------
# identity verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FamilyCheck:
    """Per-family comparison of the streaming and lattice window counts."""

    signature: tuple[str, ...]
    text: str
    stream: int
    lattice: int
    boundary: int

    @property
    def ok(self) -> bool:
        return self.stream == self.lattice - self.boundary


@dataclass(frozen=True)
class VerifyResult:
    """Machine-readable outcome of one identity check."""

    ok: bool
    lhs: int
    rhs: int
    families: tuple[FamilyCheck, ...] = ()
    notes: tuple[str, ...] = ()

    def first_mismatch(self) -> Optional[FamilyCheck]:
        for fc in self.families:
            if not fc.ok:
                return fc
        return None


def verify_tuple_identity(
    q_max: int,
    deltas: Sequence[int],
    interval: Optional[UnitInterval] = None,
) -> VerifyResult:
    """Check streaming window count == lattice family sums, exactly.

    The right-hand side decodes every primitive odd-x point of Q*T into its
    window (free labels are automatically <= 2Q) and subtracts the boundary
    windows that run past 1/1.  With an interval the lattice side uses the
    half-open rule; a note is attached when the closed streaming rule could
    differ (odd-denominator fraction exactly at the lower endpoint).
    """
    target = tuple(int(d) for d in deltas)
    h = len(target)
    ikey = _interval_key(interval)
    stream_hist, _ = gap_histogram(q_max, h, interval=ikey, with_steps=True)
    dec = decode_histogram(q_max, h, ikey)
    bound = boundary_window_histogram(q_max, h, ikey)
    checks = []
    for fam in families(target):
        sig = fam.path.step_types()
        key = (target, sig)
        checks.append(
            FamilyCheck(sig, arrow_text(fam), stream_hist[key], dec[key], bound[key])
        )
    notes = []
    if ikey is not None and ikey.lo > 0:
        lo = ikey.lo
        if lo.denominator % 2 == 1 and lo.denominator <= q_max:
            notes.append(
                f"lower endpoint {lo} is an odd-denominator fraction of F({q_max}): "
                "closed (streaming) and half-open (lattice) memberships may differ"
            )
    lhs = sum(fc.stream for fc in checks)
    rhs = sum(fc.lattice - fc.boundary for fc in checks)
    return VerifyResult(all(fc.ok for fc in checks), lhs, rhs, tuple(checks), tuple(notes))


def verify_interval_identity(
    q_max: int, deltas: Sequence[int], interval: UnitInterval
) -> VerifyResult:
    """Interval-restricted form of the window identity."""
    return verify_tuple_identity(q_max, deltas, interval)


_SWAP_EVEN = (
    (("odd", "even"), ("even", "odd")),
    (("even", "odd"), ("odd", "even")),
    (("odd", "odd"), ("odd", "odd")),
)
_SWAP_ODD = (
    (("odd", "even"), ("even", "odd")),
    (("even", "odd"), ("odd", "odd")),
    (("odd", "odd"), ("odd", "even")),
)


def verify_parity_swap(
    q_max: int, k: int, domain: Optional[ConvexRegion] = None
) -> VerifyResult:
    """Check the parity exchange under the unimodular cell map, exactly.

    The map (x, y) -> (y, ky - x) is a primitive-point bijection from the
    scaled index-k cell (intersected with ``domain``) onto its image; it
    sends (odd, even) to (even, odd) and, depending on the parity of k,
    permutes the remaining classes.  All three class equalities are checked.
    """
    if k < 1:
        raise ValueError("cell index k must be >= 1")
    cell = cylinder((k,))
    region = cell if domain is None else refine(cell, domain)
    image = unimodular_image(region, k)
    pa = parity_profile(region, q_max)
    pb = parity_profile(image, q_max)
    rules = _SWAP_EVEN if k % 2 == 0 else _SWAP_ODD
    checks = []
    for left, right in rules:
        checks.append(
            FamilyCheck(
                (f"{left}->{right}",),
                f"N_{left} (cell) == N_{right} (image)",
                pa[left],
                pb[right],
                0,
            )
        )
    lhs = sum(fc.stream for fc in checks)
    rhs = sum(fc.lattice for fc in checks)
    return VerifyResult(all(fc.ok for fc in checks), lhs, rhs, tuple(checks))


# ---------------------------------------------------------------------------
# asymptotic diagnostics
# ---------------------------------------------------------------------------

MAIN_TERM_COEFFICIENTS = {
    ("odd", "any"): 4,
    ("even", "any"): 2,
    ("odd", "odd"): 2,
    ("odd", "even"): 2,
    ("even", "odd"): 2,
    ("any", "any"): 6,
}


@dataclass(frozen=True)
class AsymptoticRow:
    order: int
    count: int
    main_term: float
    residual: float
    normalized: float  # residual / (Q log Q)


def asymptotic_report(
    region: ConvexRegion,
    parity: PairParity,
    orders: Iterable[int],
    coefficient: Optional[int] = None,
) -> list[AsymptoticRow]:
    """Counts vs the predicted main term coeff * Area * Q^2 / pi^2.

    The residual is normalized by Q log Q; staying bounded is the empirical
    analogue of the counting estimates this package cross-checks.
    """
    if coefficient is None:
        try:
            coefficient = MAIN_TERM_COEFFICIENTS[(parity.x, parity.y)]
        except KeyError as exc:
            raise ValueError(
                f"no default main-term coefficient for parity {parity}; pass one"
            ) from exc
    area = float(region.area())
    rows = []
    for q_max in orders:
        n = count_lattice(region, q_max, parity).count
        main = coefficient * area * q_max * q_max / pi**2
        resid = n - main
        rows.append(
            AsymptoticRow(q_max, n, main, resid, resid / (q_max * log(q_max)))
        )
    return rows
