import itertools
from fractions import Fraction
from math import log

import pytest

from conftest import cached_gap_histogram

from oddfarey.density import (
    Enclosure,
    family_is_certified_finite,
    family_sum_upto,
    gap_density,
    parity_tail_after,
    rho_odd,
    rho_table,
    tail_after,
)
from oddfarey.geometry import cylinder_area
from oddfarey.paths import families


def test_gap_density_values():
    assert gap_density(1) == Fraction(2, 3)
    assert gap_density(2) == Fraction(1, 6)
    with pytest.raises(ValueError):
        gap_density(0)


@pytest.mark.parametrize("K", [1, 2, 10, 57, 200])
def test_tail_is_telescoping(K):
    assert sum(gap_density(k) for k in range(1, K + 1)) == 1 - tail_after(K)
    # parity tails are valid and below the full tail
    assert parity_tail_after(K) < tail_after(K)
    # crude check of the bound against a long truncation, per parity
    for parity in (0, 1):
        partial = sum(
            gap_density(m) for m in range(K + 1, K + 4001) if m % 2 == parity
        )
        assert partial <= parity_tail_after(K)


def test_single_gap_exact():
    for k in range(1, 51):
        enc = rho_odd((k,))
        assert enc.exact and enc.lo == enc.hi == gap_density(k)


def test_pair_exactness_flags():
    # with both entries >= 2 every family sum terminates
    for deltas in [(2, 2), (2, 3), (3, 2), (3, 3), (1, 2), (2, 1), (1, 3), (3, 1)]:
        enc = rho_odd(deltas)
        assert enc.exact and enc.lo == enc.hi
    enc = rho_odd((1, 1), tol=Fraction(1, 1000))
    assert not enc.exact and enc.lo < enc.hi


def test_certified_finiteness_analysis():
    fams = {f.path.step_types(): f for f in families((1, 1))}
    assert not family_is_certified_finite(fams[("OO", "OO")])  # sum over even k
    assert not family_is_certified_finite(fams[("OO", "OEO")])  # C(k odd, 1)
    assert not family_is_certified_finite(fams[("OEO", "OEO")])  # C(1, k even, 1)
    fams22 = families((2, 2))
    assert len(fams22) == 1 and family_is_certified_finite(fams22[0])


def test_pair_two_two_value():
    """The finite sum for (2,2) is the even-label series over C(2, k, 2)."""
    expected = sum(cylinder_area((2, k, 2)) for k in range(2, 14, 2))
    enc = rho_odd((2, 2))
    assert enc.lo == expected == Fraction(1, 14)
    # terms beyond the certified cutoff all vanish
    assert all(cylinder_area((2, k, 2)) == 0 for k in range(14, 60, 2))


def test_family_sum_upto_matches_direct_areas():
    fam = next(
        f for f in families((1, 2)) if f.path.step_types() == ("OO", "OEO")
    )
    direct = sum(cylinder_area((k, 2)) for k in range(1, 20, 2))
    assert family_sum_upto(fam, 19) == direct


def test_one_one_enclosure_tightens_monotonically():
    tols = [Fraction(1, 10**e) for e in (2, 3, 4, 5)]
    encs = [rho_odd((1, 1), tol=t) for t in tols]
    for a, b in zip(encs, encs[1:]):
        assert a.lo <= b.lo
        assert a.hi >= b.hi
        assert b.lo <= b.hi
    assert all(e.converged for e in encs)
    assert encs[-1].width <= Fraction(1, 10**5)


def test_unconverged_is_flagged():
    enc = rho_odd((1, 1), tol=Fraction(1, 10**9), k_max=400)
    assert not enc.converged and not enc.exact
    assert enc.cutoff == 400
    assert enc.lo < enc.hi


def test_rho_table_shape():
    rows = rho_table(1, 6, tol=Fraction(1, 1000))
    assert [r.deltas for r in rows] == [(k,) for k in range(1, 7)]
    for r in rows:
        assert r.enclosure.lo == gap_density(r.deltas[0])
        assert r.family_text
    with pytest.raises(ValueError):
        rho_table(5, 3)
    with pytest.raises(ValueError):
        rho_table(2, 21)


def test_table_mass_is_dominated_by_one():
    rows = rho_table(2, 3, tol=Fraction(1, 1000))
    total = sum(r.enclosure.hi for r in rows)
    assert total < 1


def test_triple_windows_certified_exact():
    """With three gaps the parity pinning contradicts every escape pattern,
    so even the all-ones tuple has a certified finite sum."""
    enc = rho_odd((1, 1, 1))
    assert enc.exact and enc.lo == Fraction(17, 70)
    assert rho_odd((1, 2, 1)).lo == Fraction(16, 315)
    # empirical cross-check at moderate order
    hist, windows = cached_gap_histogram(1500, 3)
    emp = Fraction(hist[(1, 1, 1)], windows)
    assert abs(emp - Fraction(17, 70)) <= Fraction(10 * 54, 1500)  # 10 log^2 Q / Q


def test_enclosure_soundness_against_large_order():
    """The order-5000 ratios land inside enclosure +- 10 log^2(Q)/Q for all
    windows of length <= 2 with entries <= 6."""
    q = 5000
    tol = 10 * log(q) ** 2 / q
    for h in (1, 2):
        hist, windows = cached_gap_histogram(q, h)
        for deltas in itertools.product(range(1, 7), repeat=h):
            enc = rho_odd(deltas, tol=Fraction(1, 10**6), k_max=2000)
            emp = Fraction(hist[deltas], windows)
            dev = float(max(enc.lo - emp, emp - enc.hi, Fraction(0)))
            assert dev <= tol, (deltas, dev)


def test_enclosure_type():
    with pytest.raises(ValueError):
        Enclosure(Fraction(1), Fraction(0), False, 0, False)
    e = Enclosure(Fraction(1, 3), Fraction(1, 2), False, 10, True)
    assert e.width == Fraction(1, 6)
    assert Fraction(2, 5) in e and Fraction(3, 5) not in e
    with pytest.raises(ValueError):
        rho_odd((2,), tol=Fraction(0))
