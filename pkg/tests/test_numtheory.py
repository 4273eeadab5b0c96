"""Density constants: rho, alpha, beta and the coprime counting helpers."""

from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from torusk.errors import CacheError
from torusk.numtheory import (
    DensityTriple,
    alpha,
    beta,
    coprime_count,
    load_triples,
    prime_factors,
    rho,
    save_triples,
    small_prime_part,
    squarefree_divisors,
    totient,
    triples,
)


def test_prime_factors():
    assert prime_factors(1) == []
    assert prime_factors(12) == [2, 3]
    assert prime_factors(210) == [2, 3, 5, 7]
    assert prime_factors(97) == [97]


def test_totient_small():
    expected = {1: 1, 2: 1, 3: 2, 4: 2, 5: 4, 6: 2, 10: 4, 12: 4, 36: 12}
    for n, phi in expected.items():
        assert totient(n) == phi


def test_squarefree_divisors_moebius():
    divs = dict(squarefree_divisors(12))
    assert divs == {1: 1, 2: -1, 3: -1, 6: 1}


@given(st.integers(1, 60), st.integers(-30, 60), st.integers(0, 80))
def test_coprime_count_matches_naive(ell, lo, span):
    hi = lo + span
    naive = sum(1 for z in range(lo, hi + 1) if gcd(z, ell) == 1)
    assert coprime_count(ell, lo, hi) == naive


def test_rho_values():
    assert rho(1) == 1
    assert rho(2) == Fraction(1, 2)
    assert rho(6) == Fraction(1, 3)
    assert rho(210) == Fraction(8, 35)


def test_alpha_values():
    assert alpha(1) == 0
    assert alpha(2) == Fraction(1, 2)
    assert alpha(4) == Fraction(1, 2)
    assert alpha(6) == 1
    assert alpha(20) == Fraction(6, 5)
    assert alpha(210) == Fraction(14, 5)


def test_beta_recurrence():
    assert beta(0) == 1
    for ell in range(1, 25):
        assert beta(ell) == beta(ell - 1) + alpha(ell) + rho(ell)
    assert beta(1) == 2
    assert beta(6) == Fraction(124, 15)


@pytest.mark.parametrize("ell", range(1, 31))
def test_interval_coprime_bound_exhaustive(ell):
    # every window of n consecutive integers holds at most rho*n + alpha
    # coprime elements; shifting over a full period is exhaustive
    r, a = rho(ell), alpha(ell)
    for start in range(0, ell):
        for n in range(1, 4 * ell + 1):
            count = coprime_count(ell, start, start + n - 1)
            assert count <= r * n + a
    # and alpha is tight: some window in [1, 2 ell] attains it
    attained = max(
        coprime_count(ell, s, t) - r * (t - s + 1)
        for s in range(1, 2 * ell + 1)
        for t in range(s, 2 * ell + 1)
    )
    assert attained == a


def test_small_prime_part():
    assert small_prime_part(1) == 1
    assert small_prime_part(4) == 2
    assert small_prime_part(12) == 6
    assert small_prime_part(11) == 1
    assert small_prime_part(210) == 210
    assert small_prime_part(121) == 1


def test_triples_validation():
    t = triples(6)
    assert isinstance(t, DensityTriple)
    assert (t.rho, t.alpha, t.beta) == (Fraction(1, 3), 1, Fraction(124, 15))


def test_triples_cache_roundtrip(tmp_path):
    path = tmp_path / "densities.txt"
    save_triples(path, list(range(1, 21)))
    loaded = load_triples(path)
    assert set(loaded) == set(range(1, 21))
    for ell, t in loaded.items():
        assert t == triples(ell)


def test_triples_cache_corruption(tmp_path):
    path = tmp_path / "densities.txt"
    save_triples(path, [1, 2, 3])
    text = path.read_text()
    path.write_text(text.replace("1/2", "1/3", 1))
    with pytest.raises(CacheError):
        load_triples(path)


def test_triples_cache_bad_header(tmp_path):
    path = tmp_path / "densities.txt"
    path.write_text("not a cache\n")
    with pytest.raises(CacheError):
        load_triples(path)
