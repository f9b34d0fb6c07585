"""Certified evaluation of the limiting gap-tuple densities.

The limiting frequency of a gap tuple (d1, ..., dh) is the sum, over the
walk families of paths.families, of the areas of all cylinders obtained by
instantiating the free labels.  Sums over free labels may be infinite; the
engine returns a certified enclosure [lo, hi]:

  * lo is an exact partial sum (free values up to a cutoff K);
  * hi adds a rigorous tail bound.  A cylinder with a label m in some slot
    has area at most area(C(m)) = 4/(m(m+1)(m+2)) (it sits inside a backward
    iterate of the index-m cell, and the map preserves area), and cylinders
    with distinct values in the remaining slots are disjoint inside it, so
    the mass with a given slot's value > K is at most the one-slot tail
    sum_{m > K} 4/(m(m+1)(m+2)) = 2/((K+1)(K+2)).  Since every free slot is
    parity-constrained and the majorant is decreasing, the parity-restricted
    tail is at most (2/((K+1)(K+2)) + 4/((K+1)(K+2)(K+3))) / 2; one such term
    per free slot (union bound) gives the tail.

Many families have certifiably finite sums: if a slot value m >= 4r + 2
(r = cylinder arity) gives a nonempty cylinder, the labels adjacent to that
slot must equal 1 and all remaining labels must equal 2.  When the fixed
labels and the other slots' parities contradict that pattern for every free
slot, all terms beyond 4r + 1 vanish and the enclosure is exact (lo == hi).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

from .geometry import cylinder_area
from .paths import PathFamily, arrow_text, families

__all__ = [
    "Enclosure",
    "gap_density",
    "tail_after",
    "parity_tail_after",
    "family_is_certified_finite",
    "family_sum_upto",
    "rho_odd",
    "RhoRow",
    "rho_table",
]


@dataclass(frozen=True)
class Enclosure:
    """Certified rational interval around a convergent series value."""

    lo: Fraction
    hi: Fraction
    exact: bool
    cutoff: int
    converged: bool

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"invalid enclosure [{self.lo}, {self.hi}]")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, value) -> bool:
        return self.lo <= value <= self.hi


def gap_density(k: int) -> Fraction:
    """Limiting frequency 4/(k(k+1)(k+2)) of a single gap value k >= 1."""
    if k < 1:
        raise ValueError("gap value must be >= 1")
    return Fraction(4, k * (k + 1) * (k + 2))


def tail_after(k_cut: int) -> Fraction:
    """Exact value of sum_{m > k_cut} 4/(m(m+1)(m+2)) (telescoping)."""
    if k_cut < 1:
        raise ValueError("cutoff must be >= 1")
    return Fraction(2, (k_cut + 1) * (k_cut + 2))


def parity_tail_after(k_cut: int) -> Fraction:
    """Upper bound for the tail restricted to one parity class.

    For a decreasing nonnegative sequence the even- and odd-indexed partial
    tails each stay below (full tail + first term)/2.
    """
    return (tail_after(k_cut) + gap_density(k_cut + 1)) / 2


# ---------------------------------------------------------------------------
# per-family analysis
# ---------------------------------------------------------------------------


def _escape_pattern_consistent(family: PathFamily, slot: int) -> bool:
    """Can ``slot`` grow without bound while the cylinder stays nonempty?

    A label m >= 4r + 2 at position ``slot`` forces neighbours of the slot to
    carry 1 and every other position to carry 2; check that requirement
    against the family's fixed labels and the other free slots' parities.
    """
    r = family.arity
    labels = family.path.labels
    for pos in range(r):
        if pos == slot:
            continue
        required = 1 if abs(pos - slot) == 1 else 2
        lab = labels[pos]
        if not lab.admits(required):
            return False
    return True


def family_is_certified_finite(family: PathFamily) -> bool:
    """True when every free slot's escape pattern is contradicted."""
    slots = family.free_slots
    if not slots:
        return True
    return all(not _escape_pattern_consistent(family, s) for s in slots)


def _slot_values(parity: str, k_cut: int) -> range:
    if parity == "odd":
        return range(1, k_cut + 1, 2)
    if parity == "even":
        return range(2, k_cut + 1, 2)
    return range(1, k_cut + 1)


def family_sum_upto(family: PathFamily, k_cut: int) -> Fraction:
    """Exact sum of cylinder areas over free-slot values <= k_cut."""
    labels = family.path.labels
    base = [labels[i].value for i in range(family.arity)]
    slots = family.free_slots
    if not slots:
        return cylinder_area(tuple(base))
    total = Fraction(0)
    ranges = [_slot_values(labels[s].parity, k_cut) for s in slots]
    for combo in product(*ranges):
        ks = list(base)
        for s, v in zip(slots, combo):
            ks[s] = v
        total += cylinder_area(tuple(ks))
    return total


# ---------------------------------------------------------------------------
# enclosures
# ---------------------------------------------------------------------------

_FIRST_CUTOFF = 125


def rho_odd(
    deltas: Sequence[int],
    tol: Fraction = Fraction(1, 10**6),
    k_max: int = 8000,
) -> Enclosure:
    """Certified enclosure of the limiting frequency of a gap tuple.

    Families whose free sums are certified finite contribute exactly; the
    remaining families are summed over free values up to a growing cutoff K
    with a per-slot parity tail bound.  K grows (doubling) until the width
    is at most ``tol`` or K exceeds ``k_max`` (then ``converged`` is False).
    """
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    fams = families(deltas)
    exact_part = Fraction(0)
    open_fams: list[PathFamily] = []
    max_cut = 0
    for fam in fams:
        if family_is_certified_finite(fam):
            cut = 4 * fam.arity + 1 if fam.free_slots else 0
            exact_part += family_sum_upto(fam, cut)
            max_cut = max(max_cut, cut)
        else:
            open_fams.append(fam)
    if not open_fams:
        return Enclosure(exact_part, exact_part, True, max_cut, True)

    n_slots = sum(len(f.free_slots) for f in open_fams)
    k_cut = _FIRST_CUTOFF
    best_hi: Optional[Fraction] = None
    while True:
        lo = exact_part + sum(family_sum_upto(f, k_cut) for f in open_fams)
        hi = lo + n_slots * parity_tail_after(k_cut)
        if best_hi is None or hi < best_hi:
            best_hi = hi
        if best_hi - lo <= tol:
            return Enclosure(lo, best_hi, False, k_cut, True)
        if k_cut >= k_max:
            return Enclosure(lo, best_hi, False, k_cut, False)
        k_cut = min(2 * k_cut, k_max)


@dataclass(frozen=True)
class RhoRow:
    """One table row: gap tuple, its enclosure, and the families used."""

    deltas: tuple[int, ...]
    enclosure: Enclosure
    family_text: tuple[str, ...]


def rho_table(
    h: int,
    delta_max: int,
    tol: Fraction = Fraction(1, 10**6),
    k_max: int = 8000,
) -> list[RhoRow]:
    """Enclosures for every gap tuple in {1..delta_max}^h."""
    if not (1 <= h <= 4):
        raise ValueError("table window length h must be in 1..4")
    if not (1 <= delta_max <= 20):
        raise ValueError("delta_max must be in 1..20")
    rows = []
    for ds in product(range(1, delta_max + 1), repeat=h):
        enc = rho_odd(ds, tol=tol, k_max=k_max)
        rows.append(RhoRow(ds, enc, tuple(arrow_text(f) for f in families(ds))))
    return rows
