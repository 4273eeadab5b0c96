"""Exact branch-and-bound for the maximum size at a fixed height.

compute(k, h, N) returns the maximum size of a k-nice set of height
exactly h when that maximum exceeds N, and N otherwise.  A set of
height h <= k can be normalized to live in {0..k} x {0..h} with (1,0),
(0,1) and (1,1) present, and a maximum-size set takes, in each occupied
row y = i, every x coprime to i between the row's extremes.  The
recursion therefore picks row endpoints (a, b) from the top row down,
tightening per-row admissible intervals as it goes, and prunes with
window-capped coprime-count upper bounds.

max_size(k) combines the height <= 3 closed forms with per-height
verification: heights whose verdict is Verified cannot beat a smaller
height and are skipped, the rest are searched.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from .closedform import best_low_height_set, height_le3_max
from .heights import ceil_div, floor_div, verify_height
from .lattice import NiceSet


class IntervalTables:
    """Per-row coprime counts over [0, k] and window-capped maxima.

    count(i, a, b) is the number of z in [a, b] with gcd(z, i) = 1.
    window_max(i, a, b) is the maximum of count(i, a', b') over
    subintervals [a', b'] of [a, b] with (b' - a') * i <= k; it upper
    bounds the contribution of row i to any k-nice set confined to
    [a, b].  Tables are built lazily per row and hold for 0 <= a <= b <= k.
    """

    def __init__(self, k: int):
        if k < 1:
            raise ValueError(f"k must be positive, got {k}")
        self.k = k
        self._prefix: dict[int, list[int]] = {}
        self._sparse: dict[int, list[list[int]]] = {}

    def _prefix_for(self, i: int) -> list[int]:
        pre = self._prefix.get(i)
        if pre is None:
            pre = [0] * (self.k + 2)
            acc = 0
            for z in range(self.k + 1):
                pre[z] = acc
                if gcd(z, i) == 1:
                    acc += 1
            pre[self.k + 1] = acc
            self._prefix[i] = pre
        return pre

    def count(self, i: int, a: int, b: int) -> int:
        if not (0 <= a <= b <= self.k):
            raise ValueError(f"bad interval [{a}, {b}] for k = {self.k}")
        pre = self._prefix_for(i)
        return pre[b + 1] - pre[a]

    def _sparse_for(self, i: int) -> list[list[int]]:
        # g[a'] = count over the maximal admissible window starting at a';
        # doubling table over g gives O(1) range maxima.
        table = self._sparse.get(i)
        if table is None:
            w = self.k // i
            pre = self._prefix_for(i)
            g = [pre[a + w + 1] - pre[a] for a in range(self.k - w + 1)]
            table = [g]
            span = 1
            while 2 * span <= len(g):
                prev = table[-1]
                table.append(
                    [max(prev[t], prev[t + span]) for t in range(len(g) - 2 * span + 1)]
                )
                span *= 2
            self._sparse[i] = table
        return table

    def window_max(self, i: int, a: int, b: int) -> int:
        if not (0 <= a <= b <= self.k):
            raise ValueError(f"bad interval [{a}, {b}] for k = {self.k}")
        w = self.k // i
        if b - a <= w:
            # the whole interval is admissible and dominates subintervals
            return self.count(i, a, b)
        table = self._sparse_for(i)
        lo, hi = a, b - w
        j = (hi - lo + 1).bit_length() - 1
        row = table[j]
        return max(row[lo], row[hi - (1 << j) + 1])


@dataclass(frozen=True)
class SearchFrame:
    """Recursion state: rows above ell are fixed and contribute n_gt points.

    lower/upper are 1-based admissible x-intervals for rows 1..ell
    (index 0 is padding); they only shrink as the recursion descends.
    """

    ell: int
    n_gt: int
    lower: tuple[int, ...]
    upper: tuple[int, ...]

    def __post_init__(self):
        if len(self.lower) != self.ell + 1 or len(self.upper) != self.ell + 1:
            raise ValueError("lower/upper must cover rows 1..ell plus padding")


def _backtrack(
    k: int,
    h: int,
    N: int,
    frame: SearchFrame,
    tables: IntervalTables,
    choices: list[tuple[int, int, int]],
    best: list,
) -> int:
    ell, n_gt = frame.ell, frame.n_gt
    if ell == 0:
        # every path reaching the bottom was pruned against the current N,
        # so n_gt + 1 (the +1 is the point (1,0)) is a strict improvement
        best[0] = list(choices)
        return n_gt + 1
    L, U = frame.lower, frame.upper
    if ell < h:
        # option: leave row ell empty (the top row h must stay occupied)
        np = n_gt + 1
        for i in range(1, ell):
            if L[i] <= U[i]:
                np += tables.window_max(i, L[i], U[i])
        if np > N:
            N = _backtrack(
                k, h, N,
                SearchFrame(ell - 1, n_gt, L[:ell], U[:ell]),
                tables, choices, best,
            )
    if L[ell] > U[ell]:
        return N
    for a in range(L[ell], U[ell] + 1):
        if gcd(a, ell) != 1:
            continue
        for b in range(a, U[ell] + 1):
            if gcd(b, ell) != 1:
                continue
            if (b - a) * ell > k:
                continue
            row_count = tables.count(ell, a, b)
            np = n_gt + row_count + 1
            lower = [0] * ell
            upper = [0] * ell
            feasible_rows = True
            for i in range(1, ell):
                lo = max(L[i], ceil_div(a * i - k, ell), ceil_div(b * i - k, ell))
                hi = min(U[i], floor_div(a * i + k, ell), floor_div(b * i + k, ell))
                lower[i] = lo
                upper[i] = hi
                if lo <= hi:
                    np += tables.window_max(i, lo, hi)
            if np <= N:
                continue
            choices.append((ell, a, b))
            N = _backtrack(
                k, h, N,
                SearchFrame(ell - 1, n_gt + row_count, tuple(lower), tuple(upper)),
                tables, choices, best,
            )
            choices.pop()
    return N


def _root_frame(k: int, h: int) -> SearchFrame:
    lower = (0, 0) + (1,) * (h - 1)
    upper = (0,) + (k,) * h
    return SearchFrame(h, 0, lower, upper)


def _witness_from_choices(k: int, choices: list[tuple[int, int, int]]) -> NiceSet:
    points: list[tuple[int, int]] = [(1, 0)]
    for ell, a, b in choices:
        points += [(z, ell) for z in range(a, b + 1) if gcd(z, ell) == 1]
    return NiceSet.from_points(points, k)


def compute_with_witness(
    k: int, h: int, N: int, tables: IntervalTables | None = None
) -> tuple[int, NiceSet | None]:
    """compute(k, h, N) plus the set behind an improved value, if any."""
    if not (2 <= h <= k):
        raise ValueError(f"need 2 <= h <= k, got h = {h}, k = {k}")
    if N < 1:
        raise ValueError(f"N must be positive, got {N}")
    if tables is None:
        tables = IntervalTables(k)
    elif tables.k != k:
        raise ValueError("tables were built for a different k")
    best: list = [None]
    choices: list[tuple[int, int, int]] = []
    result = _backtrack(k, h, N, _root_frame(k, h), tables, choices, best)
    if result <= N or best[0] is None:
        return result, None
    witness = _witness_from_choices(k, best[0])
    if len(witness) != result:
        raise AssertionError("witness size disagrees with search result")
    return result, witness


def compute(k: int, h: int, N: int, tables: IntervalTables | None = None) -> int:
    """Maximum size of a k-nice set of height exactly h, if above N, else N."""
    return compute_with_witness(k, h, N, tables)[0]


@dataclass(frozen=True)
class SearchOutcome:
    """Result of the full per-height pipeline for one k."""

    k: int
    max_size: int
    witness: NiceSet | None
    per_height: tuple[tuple[int, str, int], ...]

    def to_json_dict(self) -> dict:
        out: dict = {"k": self.k, "max_size": self.max_size}
        if self.witness is not None:
            out["witness"] = [[m, n] for (m, n) in self.witness.points]
        out["per_height"] = [
            {"h": h, "action": action, "result": result}
            for (h, action, result) in self.per_height
        ]
        return out


def max_size(k: int) -> SearchOutcome:
    """Maximum size of a k-nice set for k >= 3, with provenance.

    Start from the height <= 3 closed form.  Any k-nice set can be
    normalized to height at most sqrt(2k), so sweeping h from 2 to
    floor(sqrt(2k)) covers everything: a Verified verdict at h means
    height-h sets never beat smaller heights (no search needed), and the
    remaining heights are searched exactly.
    """
    if k < 3:
        raise ValueError(f"max_size needs k >= 3, got {k}")
    N = height_le3_max(k)
    witness: NiceSet | None = best_low_height_set(k)
    tables = IntervalTables(k)
    per_height: list[tuple[int, str, int]] = []
    for h in range(2, isqrt(2 * k) + 1):
        verdict = verify_height(k, h)
        if verdict.verified:
            per_height.append((h, "skipped-verified", N))
            continue
        result, found = compute_with_witness(k, h, N, tables)
        if result > N:
            N = result
            witness = found
            per_height.append((h, "improved", N))
        else:
            per_height.append((h, "searched", N))
    if witness is not None and len(witness) != N:
        raise AssertionError("witness size disagrees with final maximum")
    return SearchOutcome(k=k, max_size=N, witness=witness, per_height=tuple(per_height))
