"""Branch-and-bound search over admissible row fillings."""

from math import gcd, isqrt

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torusk import lattice
from torusk.closedform import pattern_or_table
from torusk.search import IntervalTables, compute, compute_with_witness, max_size


def naive_count(i, a, b):
    return sum(1 for z in range(a, b + 1) if gcd(z, i) == 1)


class TestIntervalTables:
    @given(
        st.integers(min_value=1, max_value=30),
        st.data(),
    )
    @settings(max_examples=60, deadline=None)
    def test_count_matches_naive(self, k, data):
        i = data.draw(st.integers(min_value=1, max_value=min(k, 8)))
        a = data.draw(st.integers(min_value=0, max_value=k))
        b = data.draw(st.integers(min_value=a, max_value=k))
        tables = IntervalTables(k)
        assert tables.count(i, a, b) == naive_count(i, a, b)

    @given(
        st.integers(min_value=2, max_value=24),
        st.data(),
    )
    @settings(max_examples=60, deadline=None)
    def test_window_max_matches_naive(self, k, data):
        i = data.draw(st.integers(min_value=1, max_value=min(k, 6)))
        a = data.draw(st.integers(min_value=0, max_value=k))
        b = data.draw(st.integers(min_value=a, max_value=k))
        tables = IntervalTables(k)
        w = k // i
        want = max(
            naive_count(i, lo, min(lo + w, b))
            for lo in range(a, b + 1)
        )
        assert tables.window_max(i, a, b) == want

    def test_count_bounds_checked(self):
        tables = IntervalTables(10)
        with pytest.raises(ValueError):
            tables.count(2, -1, 5)
        with pytest.raises(ValueError):
            tables.count(2, 3, 11)


def test_compute_improves_over_weak_baseline():
    # k = 24 at height 5 reaches 30 from any baseline below it
    assert compute(24, 5, 26) == 30
    assert compute(24, 5, 29) == 30


def test_compute_searches_exact_height():
    # the top row is always occupied, so h = 6 only sees height-6 sets,
    # and for k = 24 none of those beats the flat 26
    assert compute(24, 6, 4) == 26


def test_compute_keeps_strong_baseline():
    # nothing of height <= 4 beats 30 for k = 24
    assert compute(24, 4, 30) == 30


def test_compute_monotone_in_baseline():
    for n in range(24, 33):
        assert compute(24, 5, n) == max(30, n)


def test_compute_witness_is_valid():
    size, witness = compute_with_witness(24, 5, 26)
    assert size == 30
    assert witness is not None
    assert len(witness.points) == 30
    assert lattice.check_k_nice(witness.points, 24) is None
    assert lattice.height(witness) == 5


def test_compute_no_improvement_returns_none_witness():
    size, witness = compute_with_witness(24, 4, 30)
    assert size == 30
    assert witness is None


def test_compute_validates_arguments():
    with pytest.raises(ValueError):
        compute(5, 1, 4)
    with pytest.raises(ValueError):
        compute(5, 6, 4)
    with pytest.raises(ValueError):
        compute(5, 2, 0)


@pytest.mark.parametrize("k", list(range(3, 41)))
def test_max_size_small_range(k):
    out = max_size(k)
    assert out.max_size == pattern_or_table(k).value
    assert out.witness is not None
    assert len(out.witness.points) == out.max_size
    assert lattice.check_k_nice(out.witness.points, k) is None


def test_max_size_outcome_shape():
    out = max_size(24)
    assert out.k == 24
    assert out.max_size == 30
    heights = [h for h, _, _ in out.per_height]
    assert heights == list(range(2, isqrt(48) + 1))
    d = out.to_json_dict()
    assert d["k"] == 24
    assert d["max_size"] == 30
    assert len(d["witness"]) == 30
    assert all(set(row) == {"h", "action", "result"} for row in d["per_height"])


def test_max_size_extremal_witness_height():
    # the only way to 30 at k = 24 is higher than 3
    out = max_size(24)
    assert lattice.height(out.witness) > 3
