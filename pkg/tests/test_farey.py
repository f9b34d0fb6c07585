import math
from fractions import Fraction

import pytest

from conftest import F8, F8_ODD, brute_farey, brute_gaps, brute_odd_farey, brute_window_counts
from oddfarey.farey import (
    FareyCursor,
    UnitInterval,
    count_delta_tuples,
    delta,
    empirical_rho,
    farey_count,
    farey_fractions,
    farey_index,
    farey_next,
    gap_histogram,
    odd_farey_count,
    odd_farey_fractions,
    totients,
    window_count,
)


def test_order_8_reference_listings():
    assert list(farey_fractions(8)) == F8
    assert list(odd_farey_fractions(8)) == F8_ODD


@pytest.mark.parametrize("q_max", [1, 2, 3, 5, 8, 13, 29, 40])
def test_streaming_matches_brute_force(q_max):
    assert list(farey_fractions(q_max)) == brute_farey(q_max)
    assert list(odd_farey_fractions(q_max)) == brute_odd_farey(q_max)


def test_small_counts():
    assert len(list(farey_fractions(5))) == 10
    assert list(farey_fractions(1)) == [Fraction(1, 1)]
    assert list(odd_farey_fractions(1)) == [Fraction(1, 1)]
    assert odd_farey_count(8) == 13
    # the expected size is ~ 2 Q^2 / pi^2
    assert abs(odd_farey_count(8) - 2 * 64 / math.pi**2) < 1


def test_farey_next_examples():
    cur = FareyCursor(8, Fraction(1, 8), Fraction(1, 7))
    assert farey_next(cur) == Fraction(1, 6)
    assert (cur.prev, cur.curr) == (Fraction(1, 7), Fraction(1, 6))
    cur = FareyCursor(8, Fraction(3, 7), Fraction(1, 2))
    assert farey_next(cur) == Fraction(4, 7)
    cur = FareyCursor(2, Fraction(1, 2), Fraction(1, 1))
    with pytest.raises(StopIteration):
        farey_next(cur)


def test_cursor_needs_two_elements():
    with pytest.raises(ValueError):
        FareyCursor.start(1)


def test_cursor_walks_the_whole_sequence():
    cur = FareyCursor.start(12)
    seen = [cur.prev, cur.curr]
    while True:
        try:
            seen.append(farey_next(cur))
        except StopIteration:
            break
    assert seen == brute_farey(12)


def test_delta_examples():
    assert delta(Fraction(1, 3), Fraction(2, 5)) == 1
    assert delta(Fraction(3, 7), Fraction(4, 7)) == 7
    assert delta(Fraction(1, 7), Fraction(1, 5)) == 2
    with pytest.raises(ValueError):
        delta(Fraction(2, 5), Fraction(1, 3))


def test_farey_index_examples():
    assert farey_index(8, Fraction(1, 4), Fraction(2, 7)) == 1
    assert farey_index(8, Fraction(3, 7), Fraction(1, 2)) == 7
    assert farey_index(8, Fraction(1, 7), Fraction(1, 6)) == 2
    with pytest.raises(ValueError):
        farey_index(8, Fraction(1, 7), Fraction(1, 5))  # not consecutive in F(8)


@pytest.mark.parametrize("q_max", list(range(1, 61)) + [150, 300])
def test_neighbour_determinants_are_one(q_max):
    seq = list(farey_fractions(q_max))
    for g, g2 in zip(seq, seq[1:]):
        assert g2.numerator * g.denominator - g.numerator * g2.denominator == 1


@pytest.mark.parametrize("q_max", list(range(2, 151)) + [200, 300])
def test_no_two_consecutive_even_denominators(q_max):
    prev_even = False
    for f in farey_fractions(q_max):
        even = f.denominator % 2 == 0
        assert not (even and prev_even)
        prev_even = even


@pytest.mark.parametrize("q_max", list(range(2, 121)) + [160, 200])
def test_gap_above_one_skips_exactly_one_fraction(q_max):
    """Between odd-subsequence neighbours with gap > 1 sits exactly one
    F(Q) element, and the gap equals the first fraction's index."""
    seq = list(farey_fractions(q_max))
    odd_pos = [i for i, f in enumerate(seq) if f.denominator % 2 == 1]
    for i, j in zip(odd_pos, odd_pos[1:]):
        gap = delta(seq[i], seq[j])
        assert j - i in (1, 2)
        if gap > 1:
            assert j - i == 2
        if j - i == 2:
            assert gap == farey_index(q_max, seq[i], seq[i + 1])


def test_totient_sieve_against_direct_phi(rng):
    phi = totients(10_000)
    for _ in range(300):
        n = rng.randint(1, 10_000)
        direct = sum(1 for a in range(1, n + 1) if math.gcd(a, n) == 1)
        assert phi[n] == direct


@pytest.mark.parametrize("q_max", list(range(1, 61)) + [120, 300])
def test_counts_match_totient_sums(q_max):
    assert farey_count(q_max) == len(list(farey_fractions(q_max)))
    assert odd_farey_count(q_max) == len(list(odd_farey_fractions(q_max)))


def test_gap_histogram_order_8():
    hist, windows = gap_histogram(8, 1)
    assert dict(hist) == {(1,): 7, (2,): 2, (3,): 2, (7,): 1}
    assert windows == 12


@pytest.mark.parametrize("q_max", [2, 3, 5, 8, 17, 30, 60])
@pytest.mark.parametrize("h", [1, 2, 3])
def test_gap_histogram_matches_brute_force(q_max, h):
    hist, windows = gap_histogram(q_max, h)
    expected = brute_window_counts(q_max, h)
    assert dict(hist) == expected
    assert windows == sum(expected.values())
    # the specialized denominator-only loops agree with the generic walk
    hist_steps, windows_steps = gap_histogram(q_max, h, with_steps=True)
    merged = {}
    for (gaps, _steps), c in hist_steps.items():
        merged[gaps] = merged.get(gaps, 0) + c
    assert merged == expected
    assert windows_steps == windows


@pytest.mark.parametrize("q_max", list(range(2, 121)) + [333, 500])
def test_gap_counts_total_to_window_count(q_max):
    hist, windows = gap_histogram(q_max, 1)
    assert sum(hist.values()) == windows == odd_farey_count(q_max) - 1


def test_count_delta_tuples_and_empirical_rho():
    assert count_delta_tuples(8, (7,)) == 1
    assert count_delta_tuples(8, (1,)) == 7
    assert count_delta_tuples(8, (1,), UnitInterval(0, 1)) == 7
    assert empirical_rho(8, (1,)) == Fraction(7, 12)
    assert empirical_rho(8, (7,)) == Fraction(1, 12)
    assert empirical_rho(8, (7,), UnitInterval(0, 1)) == Fraction(1, 12)
    with pytest.raises(ValueError):
        empirical_rho(1, (1,))
    with pytest.raises(ValueError):
        count_delta_tuples(8, ())
    with pytest.raises(ValueError):
        count_delta_tuples(8, (0,))


def test_interval_restriction_against_brute_force():
    interval = UnitInterval(Fraction(1, 4), Fraction(3, 4))
    odd = brute_odd_farey(30)
    gaps = brute_gaps(odd)
    for deltas in [(1,), (2,), (1, 1), (2, 3)]:
        h = len(deltas)
        expected = sum(
            1
            for i in range(len(gaps) - h + 1)
            if tuple(gaps[i : i + h]) == deltas
            and interval.lo <= odd[i] <= interval.hi
        )
        assert count_delta_tuples(30, deltas, interval) == expected
    expected_windows = sum(
        1
        for i in range(len(odd) - 2)
        if interval.lo <= odd[i] <= interval.hi
    )
    assert window_count(30, 2, interval) == expected_windows


def test_unit_interval_validation():
    with pytest.raises(ValueError):
        UnitInterval(Fraction(1, 2), Fraction(1, 4))
    with pytest.raises(ValueError):
        UnitInterval(Fraction(-1, 2), Fraction(1, 4))
    i = UnitInterval.parse("1/4, 3/4")
    assert (i.lo, i.hi) == (Fraction(1, 4), Fraction(3, 4))
    assert i.contains(Fraction(1, 4)) and not i.contains_half_open(Fraction(1, 4))
    assert i.contains_half_open(Fraction(3, 4))


def test_order_cap_enforced(monkeypatch):
    monkeypatch.setenv("FAREY_MAX_Q", "100")
    with pytest.raises(ValueError):
        list(farey_fractions(101))
    monkeypatch.setenv("FAREY_MAX_Q", "not-a-number")
    with pytest.raises(ValueError):
        list(farey_fractions(10**9))
    with pytest.raises(ValueError):
        list(farey_fractions(0))
