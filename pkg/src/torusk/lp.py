"""The density linear program and its certificates.

For ell >= 1 the program LP(ell) is

    maximize   sum_i rho(i) * (tau_i - sigma_i)
    subject to tau_i >= sigma_i >= 0                        (1 <= i <= ell)
               -1 <= i * tau_j - j * sigma_i <= 1           (1 <= i, j <= ell)

and gamma(ell) is its exact optimum.  sigma_i / tau_i bound the scaled left
and right endpoints of row i of a nice set in canonical position, so
gamma_h * k + beta_h bounds the size of any k-nice set of height h; the
strict inequalities behind the closed form for N(k) all reduce to exact
statements about gamma.

Two solution paths, both ending in exact rational certificates:

* exact simplex with constraint generation over the O(ell^2) pair
  constraints (the only path used for small ell);
* for larger ell, a floating-point solve proposes an active set, the vertex
  and multipliers are reconstructed in exact arithmetic, and the pair is
  accepted only if primal feasibility, dual feasibility and equality of
  objectives all verify exactly; any failure falls back to the simplex path.

A separate, solver-independent upper bound comes from explicit matrices
feasible for the dual of the relaxed program: dual_matrix(ell) has value
exactly 1, and perturbed_dual_matrix(ell) pushes it strictly below 1 for
ell >= 4, which is the fact that separates the k+2/k+3/k+4 patterns.
"""

from __future__ import annotations

import hashlib
import json
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from pathlib import Path

from torusk import numtheory
from torusk.errors import BudgetError, CacheError, VerificationError
from torusk.simplex import LpSolution, solve_max, solve_rational_system

ZERO = Fraction(0)
ONE = Fraction(1)

LP_SIZE_BUDGET = 256  # largest ell the solver will accept
SIMPLEX_CUTOVER = 24  # exact simplex alone up to here; guided path beyond
_GEN_BATCH = 2  # violated rows added per round, as a multiple of ell

# Row keys: ("link", i) is sigma_i - tau_i <= 0;
# ("pair", i, j, s) is s * (i * tau_j - j * sigma_i) <= 1 with s = +-1.
RowKey = tuple


@dataclass(frozen=True)
class LpDualWitness:
    """Exact multipliers for the inequality rows of LP(ell), supported on
    finitely many rows; value = sum of multipliers times right-hand sides."""

    ell: int
    multipliers: tuple[tuple[RowKey, Fraction], ...]
    value: Fraction


@dataclass(frozen=True)
class GammaValue:
    ell: int
    gamma: Fraction
    witness_primal: tuple[tuple[Fraction, ...], tuple[Fraction, ...]]  # (sigma, tau)
    witness_dual: LpDualWitness | None
    method: str  # "simplex" or "guided"


def _objective(ell: int):
    rhos = [numtheory.rho(i) for i in range(1, ell + 1)]
    return [-r for r in rhos] + list(rhos)


def _row(ell: int, key: RowKey) -> tuple[list[Fraction], Fraction]:
    coeffs = [ZERO] * (2 * ell)
    if key[0] == "link":
        i = key[1]
        coeffs[i - 1] = ONE
        coeffs[ell + i - 1] = -ONE
        return coeffs, ZERO
    _, i, j, s = key
    coeffs[ell + j - 1] = Fraction(s * i)
    coeffs[i - 1] = Fraction(-s * j)
    return coeffs, ONE


def _pair_value(sigma, tau, i, j) -> Fraction:
    return i * tau[j - 1] - j * sigma[i - 1]


def check_primal(ell: int, sigma, tau) -> str | None:
    """None if (sigma, tau) is feasible for LP(ell), else a description."""
    if len(sigma) != ell or len(tau) != ell:
        return "wrong dimension"
    for i in range(1, ell + 1):
        if sigma[i - 1] < 0:
            return f"sigma_{i} < 0"
        if tau[i - 1] < sigma[i - 1]:
            return f"tau_{i} < sigma_{i}"
    for i in range(1, ell + 1):
        for j in range(1, ell + 1):
            v = _pair_value(sigma, tau, i, j)
            if v > 1 or v < -1:
                return f"|{i} tau_{j} - {j} sigma_{i}| = |{v}| > 1"
    return None


def primal_objective(ell: int, sigma, tau) -> Fraction:
    return sum(
        numtheory.rho(i) * (tau[i - 1] - sigma[i - 1]) for i in range(1, ell + 1)
    )


def check_dual(ell: int, witness: LpDualWitness) -> str | None:
    """None if the multipliers certify value >= optimum (dual feasibility)."""
    col = [ZERO] * (2 * ell)  # accumulated y^T A per structural column
    value = ZERO
    for key, y in witness.multipliers:
        if y < 0:
            return f"negative multiplier on {key}"
        coeffs, rhs = _row(ell, key)
        for idx, a in enumerate(coeffs):
            if a:
                col[idx] += y * a
        value += y * rhs
    cvec = _objective(ell)
    for idx in range(2 * ell):
        if col[idx] < cvec[idx]:
            return f"dual infeasible at column {idx}"
    if value != witness.value:
        return "stated value does not match multipliers"
    return None


def verify_gamma(gv: GammaValue) -> None:
    """Raise VerificationError unless the witnesses prove gamma exactly."""
    sigma, tau = gv.witness_primal
    problem = check_primal(gv.ell, sigma, tau)
    if problem is not None:
        raise VerificationError(f"gamma({gv.ell}): primal witness infeasible: {problem}")
    if primal_objective(gv.ell, sigma, tau) != gv.gamma:
        raise VerificationError(f"gamma({gv.ell}): primal objective mismatch")
    if gv.witness_dual is None:
        raise VerificationError(f"gamma({gv.ell}): no dual witness")
    problem = check_dual(gv.ell, gv.witness_dual)
    if problem is not None:
        raise VerificationError(f"gamma({gv.ell}): dual witness rejected: {problem}")
    if gv.witness_dual.value != gv.gamma:
        raise VerificationError(f"gamma({gv.ell}): duality gap")


# --- exact simplex path -----------------------------------------------------


def _solve_by_generation(ell: int) -> GammaValue:
    """Exact simplex over a growing working set of rows.

    The initial rows (links and diagonal pairs) already bound the objective:
    along any recession direction tau and sigma move together, so the
    objective cannot improve along a ray and the simplex never reports
    unbounded.  At each round every violated pair constraint is found by an
    exact scan; when none remain the incumbent is optimal for the full
    program and the working-set multipliers (zero elsewhere) are dual
    feasible for it.
    """
    cvec = _objective(ell)
    work: list[RowKey] = [("link", i) for i in range(1, ell + 1)]
    work += [("pair", i, i, 1) for i in range(1, ell + 1)]
    known = set(work)
    while True:
        rows, rhs = [], []
        for key in work:
            coeffs, r = _row(ell, key)
            rows.append(coeffs)
            rhs.append(r)
        sol = solve_max(cvec, rows, rhs)
        sigma = sol.x[:ell]
        tau = sol.x[ell:]
        violated: list[tuple[Fraction, RowKey]] = []
        for i in range(1, ell + 1):
            for j in range(1, ell + 1):
                v = _pair_value(sigma, tau, i, j)
                if v > 1:
                    violated.append((v - 1, ("pair", i, j, 1)))
                elif v < -1:
                    violated.append((-v - 1, ("pair", i, j, -1)))
        violated = [(excess, key) for excess, key in violated if key not in known]
        if not violated:
            return _package(ell, sol, work, "simplex")
        violated.sort(key=lambda t: (-t[0], t[1]))
        for _, key in violated[: _GEN_BATCH * ell]:
            work.append(key)
            known.add(key)


def _package(ell: int, sol: LpSolution, work: list[RowKey], method: str) -> GammaValue:
    multipliers = tuple(
        (key, y) for key, y in zip(work, sol.duals) if y != 0
    )
    witness = LpDualWitness(ell=ell, multipliers=multipliers, value=sol.objective)
    gv = GammaValue(
        ell=ell,
        gamma=sol.objective,
        witness_primal=(tuple(sol.x[:ell]), tuple(sol.x[ell:])),
        witness_dual=witness,
        method=method,
    )
    verify_gamma(gv)
    return gv


# --- float-guided path ------------------------------------------------------


def _all_row_keys(ell: int):
    yield from (("link", i) for i in range(1, ell + 1))
    for i in range(1, ell + 1):
        for j in range(1, ell + 1):
            yield ("pair", i, j, 1)
            yield ("pair", i, j, -1)


def _solve_guided(ell: int) -> GammaValue | None:
    """Propose an optimal active set with HiGHS, then rebuild and verify the
    vertex and multipliers exactly.  Returns None when anything fails to
    check out; the caller falls back to the exact simplex."""
    import numpy as np
    from scipy.optimize import linprog
    from scipy.sparse import csr_matrix

    keys = list(_all_row_keys(ell))
    n = 2 * ell
    data, ri, ci, rhs_f = [], [], [], []
    for r, key in enumerate(keys):
        if key[0] == "link":
            i = key[1]
            cols = ((i - 1, 1.0), (ell + i - 1, -1.0))
            rhs_f.append(0.0)
        else:
            _, i, j, s = key
            cols = ((ell + j - 1, float(s * i)), (i - 1, float(-s * j)))
            rhs_f.append(1.0)
        for cidx, v in cols:
            ri.append(r)
            ci.append(cidx)
            data.append(v)
    a_ub = csr_matrix((data, (ri, ci)), shape=(len(keys), n))
    cvec = _objective(ell)
    c_f = np.array([-float(v) for v in cvec])  # linprog minimizes
    res = linprog(c_f, A_ub=a_ub, b_ub=np.array(rhs_f), bounds=(0, None), method="highs")
    if not res.success:
        return None

    marginals = res.ineqlin.marginals
    slacks = res.slack
    support = [r for r in range(len(keys)) if abs(marginals[r]) > 1e-9]
    tight = [r for r in range(len(keys)) if abs(slacks[r]) < 1e-7]
    pos = [idx for idx in range(n) if res.x[idx] > 1e-9]
    if not support or not pos:
        return None

    # Exact vertex: active rows restricted to the positive coordinates.
    rows_int, rhs_int = [], []
    for r in tight:
        coeffs, rhs_r = _row(ell, keys[r])
        rows_int.append([coeffs[idx] for idx in pos])
        rhs_int.append(rhs_r)
    xsol = solve_rational_system(rows_int, rhs_int)
    if xsol is None:
        return None
    x = [ZERO] * n
    for idx, v in zip(pos, xsol):
        x[idx] = v
    sigma, tau = x[:ell], x[ell:]
    if check_primal(ell, sigma, tau) is not None:
        return None
    g = primal_objective(ell, sigma, tau)

    # Exact multipliers on the guessed support: y^T A = c on the coordinates
    # where the vertex is nonzero (complementary slackness).
    eq_cols = [idx for idx in range(n) if x[idx] != 0]
    mat = []
    rhs_dual = []
    for idx in eq_cols:
        row = []
        for r in support:
            coeffs, _ = _row(ell, keys[r])
            row.append(coeffs[idx])
        mat.append(row)
        rhs_dual.append(cvec[idx])
    ysol = solve_rational_system(mat, rhs_dual)
    if ysol is None:
        return None
    multipliers = tuple(
        (keys[r], y) for r, y in zip(support, ysol) if y != 0
    )
    value = sum((y * _row(ell, key)[1] for key, y in multipliers), ZERO)
    witness = LpDualWitness(ell=ell, multipliers=multipliers, value=value)
    if value != g or check_dual(ell, witness) is not None:
        return None
    gv = GammaValue(
        ell=ell,
        gamma=g,
        witness_primal=(tuple(sigma), tuple(tau)),
        witness_dual=witness,
        method="guided",
    )
    verify_gamma(gv)
    return gv


# --- public entry -----------------------------------------------------------

_gamma_lock = threading.Lock()
_gamma_memo: dict[int, GammaValue] = {}


def gamma(ell: int, method: str = "auto") -> GammaValue:
    """Exact optimum of LP(ell) with verified primal and dual witnesses.

    method: "auto" (default), "simplex" (exact generation only), or
    "guided" (active-set proposal; still falls back to simplex on failure).
    """
    if ell < 1:
        raise ValueError(f"gamma needs ell >= 1, got {ell}")
    if ell > LP_SIZE_BUDGET:
        raise BudgetError(
            f"ell = {ell} exceeds the LP size budget {LP_SIZE_BUDGET}"
        )
    if method == "auto":
        method = "simplex" if ell <= SIMPLEX_CUTOVER else "guided"
    with _gamma_lock:
        hit = _gamma_memo.get(ell)
    if hit is not None and (method == "auto" or hit.method == method or method == "guided"):
        return hit
    if method == "guided":
        gv = _solve_guided(ell)
        if gv is None:
            gv = _solve_by_generation(ell)
    elif method == "simplex":
        gv = _solve_by_generation(ell)
    else:
        raise ValueError(f"unknown method {method!r}")
    with _gamma_lock:
        _gamma_memo[ell] = gv
    return gv


def primal_witness_small(ell: int) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """The hand-checkable optimal points for ell <= 3 (objective exactly 1)."""
    table = {
        1: ((ZERO,), (ONE,)),
        2: (
            (ZERO, Fraction(1, 2)),
            (Fraction(3, 4), ONE),
        ),
        3: (
            (ZERO, Fraction(1, 3), Fraction(2, 3)),
            (Fraction(5, 9), Fraction(7, 9), ONE),
        ),
    }
    if ell not in table:
        raise ValueError(f"primal_witness_small covers ell in {{1, 2, 3}}, got {ell}")
    sigma, tau = table[ell]
    problem = check_primal(ell, sigma, tau)
    if problem is not None:
        raise VerificationError(f"small witness infeasible at ell={ell}: {problem}")
    if primal_objective(ell, sigma, tau) != 1:
        raise VerificationError(f"small witness objective not 1 at ell={ell}")
    return table[ell]


# --- dual certificate matrices ---------------------------------------------


@dataclass(frozen=True)
class DualCertificate:
    """A non-negative integer matrix feasible for the transposed program:
    row i sums to at most phi(i), column j collects at least phi(j).  Its
    value sum_{i,j} a[i][j] / (i * j) is an upper bound for gamma(ell)."""

    ell: int
    matrix: tuple[tuple[int, ...], ...]

    @property
    def value(self) -> Fraction:
        total = ZERO
        for i, row in enumerate(self.matrix, start=1):
            for j, a in enumerate(row, start=1):
                if a:
                    total += Fraction(a, i * j)
        return total

    def verify(self) -> None:
        ell = self.ell
        if len(self.matrix) != ell or any(len(r) != ell for r in self.matrix):
            raise VerificationError(f"certificate matrix is not {ell} x {ell}")
        for i, row in enumerate(self.matrix, start=1):
            if any(a < 0 for a in row):
                raise VerificationError(f"negative entry in row {i}")
            if sum(row) > numtheory.totient(i):
                raise VerificationError(f"row {i} sum exceeds phi({i})")
        for j in range(1, ell + 1):
            col = sum(self.matrix[i - 1][j - 1] for i in range(1, ell + 1))
            if col < numtheory.totient(j):
                raise VerificationError(f"column {j} sum below phi({j})")


def dual_matrix(ell: int) -> DualCertificate:
    """Entry (i, j) is 1 exactly when i + j >= ell + 1 and gcd(i, j) = 1.
    Each row i then covers a window of i consecutive j's, so row and column
    sums are exactly phi, and the value is exactly 1."""
    if ell < 1:
        raise ValueError(f"dual_matrix needs ell >= 1, got {ell}")
    matrix = tuple(
        tuple(
            1 if i + j >= ell + 1 and gcd(i, j) == 1 else 0
            for j in range(1, ell + 1)
        )
        for i in range(1, ell + 1)
    )
    cert = DualCertificate(ell=ell, matrix=matrix)
    cert.verify()
    if cert.value != 1:
        raise VerificationError(f"dual_matrix({ell}) value is {cert.value}, not 1")
    return cert


def perturbed_dual_matrix(ell: int) -> DualCertificate:
    """Shift one unit of mass in the bottom-right corner of dual_matrix(ell):

        -1 at (ell-2, ell-1), (ell-1, ell-2), (ell-1, ell), (ell, ell-1)
        +1 at (ell-2, ell), (ell, ell-2);  +2 at (ell-1, ell-1)

    Row and column sums are unchanged and the value drops to
    1 - 2 * (1/(ell-2) - 1/(ell-1)) * (1/(ell-1) - 1/ell) < 1.
    """
    if ell < 4:
        raise ValueError(f"perturbed_dual_matrix needs ell >= 4, got {ell}")
    base = dual_matrix(ell).matrix
    m = [list(row) for row in base]

    def bump(i: int, j: int, delta: int) -> None:
        m[i - 1][j - 1] += delta

    bump(ell - 2, ell - 1, -1)
    bump(ell - 1, ell - 2, -1)
    bump(ell - 1, ell, -1)
    bump(ell, ell - 1, -1)
    bump(ell - 2, ell, +1)
    bump(ell, ell - 2, +1)
    bump(ell - 1, ell - 1, +2)
    cert = DualCertificate(ell=ell, matrix=tuple(tuple(r) for r in m))
    cert.verify()
    expected = 1 - 2 * (Fraction(1, ell - 2) - Fraction(1, ell - 1)) * (
        Fraction(1, ell - 1) - Fraction(1, ell)
    )
    if cert.value != expected:
        raise VerificationError(
            f"perturbed_dual_matrix({ell}) value {cert.value} != {expected}"
        )
    return cert


def gamma_upper_bound(ell: int) -> Fraction:
    """Certificate-only upper bound for gamma(ell): 1 for ell <= 3, the
    perturbed value below 1 for ell >= 4.  No LP solve involved."""
    if ell < 1:
        raise ValueError(f"gamma_upper_bound needs ell >= 1, got {ell}")
    if ell <= 3:
        return ONE
    return 1 - 2 * (Fraction(1, ell - 2) - Fraction(1, ell - 1)) * (
        Fraction(1, ell - 1) - Fraction(1, ell)
    )


# --- presentation helpers ---------------------------------------------------


def format_round4(x: Fraction) -> str:
    """Decimal string with exactly 4 places, rounding half away from zero."""
    q = x * 10_000
    n, d = q.numerator, q.denominator
    if n >= 0:
        scaled = (2 * n + d) // (2 * d)
    else:
        scaled = -((2 * -n + d) // (2 * d))
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    return f"{sign}{scaled // 10_000}.{scaled % 10_000:04d}"


def density_table_csv(ell_max: int, method: str = "auto") -> str:
    """CSV of rho, alpha, gamma, beta rounded to 4 decimals, ell = 1..ell_max."""
    lines = ["ell,rho,alpha,gamma,beta"]
    for ell in range(1, ell_max + 1):
        t = numtheory.triples(ell)
        g = gamma(ell, method=method).gamma
        lines.append(
            f"{ell},{format_round4(t.rho)},{format_round4(t.alpha)},"
            f"{format_round4(g)},{format_round4(t.beta)}"
        )
    return "\n".join(lines) + "\n"


# --- gamma cache ------------------------------------------------------------

_GAMMA_HEADER = "torusk-gamma 1"


def _checksum(lines: list[str]) -> str:
    return hashlib.sha256("\n".join(lines).encode("utf-8")).hexdigest()


def _key_to_json(key: RowKey) -> list:
    return list(key)


def _key_from_json(raw) -> RowKey:
    return (raw[0], *map(int, raw[1:]))


def save_gamma_cache(path: str | Path, values: dict[int, GammaValue]) -> None:
    """Values file: "ell num/den" per line.  Witnesses go to a JSONL sidecar
    so a later run can re-verify without re-solving."""
    path = Path(path)
    lines = [_GAMMA_HEADER]
    for ell in sorted(values):
        g = values[ell].gamma
        lines.append(f"{ell} {g.numerator}/{g.denominator}")
    lines.append(f"sha256 {_checksum(lines)}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")

    with path.with_suffix(".witness.jsonl").open("w", encoding="utf-8") as fh:
        for ell in sorted(values):
            gv = values[ell]
            sigma, tau = gv.witness_primal
            fh.write(
                json.dumps(
                    {
                        "ell": ell,
                        "method": gv.method,
                        "sigma": [str(v) for v in sigma],
                        "tau": [str(v) for v in tau],
                        "dual": [
                            [_key_to_json(key), str(y)]
                            for key, y in gv.witness_dual.multipliers
                        ],
                    }
                )
                + "\n"
            )


def load_gamma_cache(path: str | Path, verify: bool = True) -> dict[int, GammaValue]:
    """Load and (by default) re-verify a cache written by save_gamma_cache.
    CacheError on malformed or checksum-failing files; VerificationError if
    a stored witness no longer certifies its value."""
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise CacheError(f"cannot read {path}: {exc}") from exc
    if len(lines) < 2 or lines[0] != _GAMMA_HEADER:
        raise CacheError(f"{path}: missing or unknown header")
    tag, _, digest = lines[-1].partition(" ")
    if tag != "sha256" or digest != _checksum(lines[:-1]):
        raise CacheError(f"{path}: checksum mismatch")
    gammas: dict[int, Fraction] = {}
    for line in lines[1:-1]:
        try:
            raw_ell, raw_g = line.split()
            gammas[int(raw_ell)] = Fraction(raw_g)
        except (ValueError, ZeroDivisionError) as exc:
            raise CacheError(f"{path}: bad record {line!r}") from exc

    witness_path = path.with_suffix(".witness.jsonl")
    try:
        witness_lines = witness_path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise CacheError(f"cannot read {witness_path}: {exc}") from exc
    out: dict[int, GammaValue] = {}
    for line in witness_lines:
        try:
            rec = json.loads(line)
            ell = int(rec["ell"])
            sigma = tuple(Fraction(v) for v in rec["sigma"])
            tau = tuple(Fraction(v) for v in rec["tau"])
            multipliers = tuple(
                (_key_from_json(kraw), Fraction(yraw)) for kraw, yraw in rec["dual"]
            )
        except (ValueError, KeyError, ZeroDivisionError) as exc:
            raise CacheError(f"{witness_path}: bad record") from exc
        if ell not in gammas:
            raise CacheError(f"{witness_path}: witness for unlisted ell={ell}")
        gv = GammaValue(
            ell=ell,
            gamma=gammas[ell],
            witness_primal=(sigma, tau),
            witness_dual=LpDualWitness(
                ell=ell, multipliers=multipliers, value=gammas[ell]
            ),
            method=rec.get("method", "simplex"),
        )
        if verify:
            verify_gamma(gv)
        out[ell] = gv
    if set(out) != set(gammas):
        raise CacheError(f"{witness_path}: missing witnesses")
    return out


def warm_gamma_memo(values: dict[int, GammaValue]) -> None:
    with _gamma_lock:
        _gamma_memo.update(values)


def gamma_memo_snapshot() -> dict[int, GammaValue]:
    with _gamma_lock:
        return dict(_gamma_memo)
