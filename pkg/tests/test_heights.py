"""Height certificates and the sqrt(2k) reduction."""

import pytest

from torusk import lattice
from torusk.closedform import best_low_height_set, construct_extremal
from torusk.heights import (
    ROT,
    ceil_div,
    floor_div,
    reduction_range,
    reduce_height_sqrt2k,
    sweep,
    verify_height,
)
from torusk.lattice import apply_matrix, shear_power


def test_floor_ceil_div():
    assert floor_div(7, 2) == 3
    assert floor_div(-7, 2) == -4
    assert ceil_div(7, 2) == 4
    assert ceil_div(-7, 2) == -3
    assert ceil_div(6, 3) == 2


def test_smallest_not_verified_pair():
    v = verify_height(3, 2)
    assert not v.verified
    assert v.witness == (1, 1, 2)
    assert v.to_json_dict() == {
        "h": 2,
        "k": 3,
        "verified": False,
        "witness": [1, 1, 2],
    }


def test_verified_example():
    v = verify_height(24, 6)
    assert v.verified
    assert v.witness is None
    assert v.to_json_dict() == {"h": 6, "k": 24, "verified": True}


def test_range_validation():
    with pytest.raises(ValueError):
        verify_height(5, 1)
    with pytest.raises(ValueError):
        verify_height(5, 6)


def test_reduction_range_examples():
    # k = 3: no integer strictly between sqrt(4) and sqrt(6)
    assert list(reduction_range(3)) == []
    assert list(reduction_range(2)) == [2]
    assert list(reduction_range(6)) == [3]
    assert list(reduction_range(24)) == [6]
    for k in range(2, 200):
        for h in reduction_range(k):
            assert h * h <= 2 * k
            assert 3 * h * h > 4 * k


def test_sweep_small_range_all_verified():
    verdicts = sweep(2, 120)
    assert verdicts, "range should be non-empty"
    assert all(v.verified for v in verdicts)


def test_sweep_threads_agree():
    a = sweep(10, 40, threads=1)
    b = sweep(10, 40, threads=2)
    assert a == b


@pytest.mark.parametrize("k", [5, 10, 17, 24, 48])
def test_reduce_tall_rotation(k):
    base = best_low_height_set(k) if k not in (24, 48) else construct_extremal(k)
    tall = apply_matrix(base, ROT)  # width becomes height
    reduced = reduce_height_sqrt2k(tall)
    assert len(reduced.points) == len(base.points)
    assert lattice.check_k_nice(reduced.points, k) is None
    assert lattice.height(reduced) ** 2 <= 2 * k


@pytest.mark.parametrize("t", [-3, 2, 7])
def test_reduce_after_shear(t):
    k = 30
    base = best_low_height_set(k)
    twisted = apply_matrix(apply_matrix(base, ROT), shear_power(t))
    reduced = reduce_height_sqrt2k(twisted)
    assert len(reduced.points) == len(base.points)
    assert lattice.check_k_nice(reduced.points, k) is None
    assert lattice.height(reduced) ** 2 <= 2 * k


def test_reduce_short_set_is_stable():
    q = best_low_height_set(11)
    reduced = reduce_height_sqrt2k(q)
    assert lattice.height(reduced) == lattice.height(q)
    assert len(reduced.points) == len(q.points)


def test_reduce_empty_rejected():
    with pytest.raises(ValueError):
        reduce_height_sqrt2k(lattice.NiceSet(k=5, points=frozenset()))
