"""Brute-force ground truth for tiny k.

Exhaustive maximum over k-nice sets, independent of the pruned search:
any maximum-size set can be normalized to contain (1,0), (0,1), (1,1)
and fit inside {0..k} x {0..floor(sqrt(2k))}, so a depth-first scan of
that box with pairwise-measure pruning is exact.  Deliberately simple;
capped at small k where it still runs in seconds.
"""

from __future__ import annotations

from math import gcd, isqrt

from .errors import BudgetError
from .lattice import NiceSet, Point, pair_measure
from .search import SearchOutcome

ORACLE_CAP = 12

_SEEDS: tuple[Point, ...] = ((1, 0), (0, 1), (1, 1))


def _max_clique(candidates: list[Point], adj: list[int], base: int) -> tuple[int, int]:
    """Largest candidate subset with all pairs adjacent, take-or-leave DFS.

    Returns (size, chosen bitmask).  base is added to reported sizes for
    the pruning bound only.
    """
    best_size = 0
    best_mask = 0
    n = len(candidates)

    def dfs(avail: int, chosen: int, count: int) -> None:
        nonlocal best_size, best_mask
        if count > best_size:
            best_size = count
            best_mask = chosen
        while avail:
            if count + avail.bit_count() <= best_size:
                return
            j = (avail & -avail).bit_length() - 1
            bit = 1 << j
            avail &= ~bit
            dfs(avail & adj[j], chosen | bit, count + 1)

    dfs((1 << n) - 1, 0, 0)
    return base + best_size, best_mask


def brute_force_max(k: int, h_cap: int | None = None, cap: int = ORACLE_CAP) -> SearchOutcome:
    """Exact maximum size of a k-nice set by exhaustive search, k <= cap."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if k > cap:
        raise BudgetError(f"oracle capped at k <= {cap}, got {k}")
    if h_cap is None:
        h_cap = isqrt(2 * k)
    candidates: list[Point] = []
    for n in range(0, h_cap + 1):
        for m in range(0, k + 1):
            p = (m, n)
            if gcd(m, n) != 1 or p in _SEEDS:
                continue
            if all(pair_measure(p, s) <= k for s in _SEEDS):
                candidates.append(p)
    candidates.sort(key=lambda p: (p[1], p[0]))
    adj = [0] * len(candidates)
    for i, p in enumerate(candidates):
        for j in range(i + 1, len(candidates)):
            if pair_measure(p, candidates[j]) <= k:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    size, mask = _max_clique(candidates, adj, base=len(_SEEDS))
    points = list(_SEEDS) + [candidates[j] for j in range(len(candidates)) if mask >> j & 1]
    witness = NiceSet.from_points(points, k)
    if len(witness) != size:
        raise AssertionError("oracle witness size disagrees with count")
    return SearchOutcome(k=k, max_size=size, witness=witness, per_height=())


def symmetric_box_max(k: int, cap: int = 6) -> int:
    """Maximum over the symmetric box {-k..k} x {0..floor(sqrt(2k))}.

    Slower cross-check that the canonical-box restriction in
    brute_force_max loses nothing: no seed points are forced, x may be
    negative, and the y = 0 antipode pair is excluded via adjacency.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if k > cap:
        raise BudgetError(f"symmetric check capped at k <= {cap}, got {k}")
    h_cap = isqrt(2 * k)
    candidates: list[Point] = []
    for n in range(0, h_cap + 1):
        for m in range(-k, k + 1):
            if gcd(m, n) == 1:
                candidates.append((m, n))
    candidates.sort(key=lambda p: (p[1], p[0]))
    adj = [0] * len(candidates)
    for i, p in enumerate(candidates):
        for j in range(i + 1, len(candidates)):
            q = candidates[j]
            if p[0] == -q[0] and p[1] == -q[1]:
                continue
            if pair_measure(p, q) <= k:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    size, _ = _max_clique(candidates, adj, base=0)
    return size
