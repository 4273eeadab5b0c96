"""Command line front end.

Subcommands map one-to-one onto the library modules: compute (full
per-height pipeline), oracle (brute force), table (range sweep with
closed-form reconciliation), lp-gamma, certify-dual, verify-height and
bounds.  Exit codes: 0 ok, 1 usage, 2 a verification failed, 3 a size
or time budget was exceeded.  Output is deterministic byte-for-byte for
a fixed config and cache state.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .errors import BudgetError, CacheError, VerificationError
from . import bounds as bounds_mod
from . import lp
from . import numtheory
from .closedform import pattern_or_table
from .heights import reduction_range, verify_height
from .lattice import NiceSet, height
from .oracle import brute_force_max
from .search import max_size

_GAMMA_CACHE = "gamma.txt"
_TRIPLES_CACHE = "densities.txt"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad flags; this CLI reserves 2 for verification
    # failures, so usage problems surface as exit 1 instead
    def error(self, message):
        raise _UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    command: str
    k: int | None = None
    h: int | None = None
    baseline: int | None = None
    witness: bool = False
    k_from: int | None = None
    k_to: int | None = None
    ell: int | None = None
    ell_max: int | None = None
    method: str = "auto"
    perturbed: bool = False
    suite: str = "all"
    output: str = "text"
    out_path: str | None = None
    cache_dir: str | None = None
    long_mode: bool = False
    threads: int = 1
    check: bool = True

    def __post_init__(self):
        if self.output not in ("text", "json", "csv"):
            raise ValueError(f"bad output format {self.output!r}")
        if self.threads < 1:
            raise ValueError("threads must be positive")


def _build_parser() -> _Parser:
    # shared flags live on a parent so they parse both before and after the
    # subcommand name
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache-dir", default=None,
                        help="cache directory (env TORUSK_CACHE_DIR as fallback)")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--long", action="store_true", dest="long_mode",
                        help="allow full-scale sweeps (hours)")
    common.add_argument("--out", default=None, help="write output here instead of stdout")

    parser = _Parser(prog="torusk", description=__doc__.splitlines()[0],
                     parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name: str, **kwargs):
        return sub.add_parser(name, parents=[common], **kwargs)

    p = add_parser("compute", help="maximum k-nice set size via the search pipeline")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--h", type=int, default=None, help="restrict to one height")
    p.add_argument("--baseline", type=int, default=None,
                   help="initial lower bound N for a single-height run")
    p.add_argument("--witness", action="store_true", help="include a witness set")
    p.add_argument("--json", action="store_true")

    p = add_parser("oracle", help="brute-force maximum for tiny k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--json", action="store_true")

    p = add_parser("table", help="k range sweep, closed form vs search")
    p.add_argument("--from", dest="k_from", type=int, required=True)
    p.add_argument("--to", dest="k_to", type=int, required=True)
    p.add_argument("--csv", action="store_true")
    p.add_argument("--no-check", action="store_true",
                   help="emit closed-form values only, skip the search cross-check")

    p = add_parser("lp-gamma", help="exact LP optimum gamma_ell")
    p.add_argument("--l", dest="ell", type=int, default=None)
    p.add_argument("--lmax", dest="ell_max", type=int, default=None,
                   help="emit a csv table for ell = 1..lmax")
    p.add_argument("--method", choices=("auto", "simplex", "guided"), default="auto")
    p.add_argument("--csv", action="store_true")

    p = add_parser("certify-dual", help="emit and verify a dual certificate matrix")
    p.add_argument("--l", dest="ell", type=int, required=True)
    p.add_argument("--perturbed", action="store_true")
    p.add_argument("--json", action="store_true")

    p = add_parser("verify-height", help="height reduction verdicts")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--h", type=int, default=None)
    p.add_argument("--from", dest="k_from", type=int, default=None)
    p.add_argument("--to", dest="k_to", type=int, default=None)

    p = add_parser("bounds", help="inequality suite reports")
    p.add_argument("--suite", choices=("sum210", "threshold-3225", "threshold-1892", "size-bound", "all"),
                   default="all")
    p.add_argument("--json", action="store_true")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    output = "text"
    if getattr(args, "json", False):
        output = "json"
    elif getattr(args, "csv", False):
        output = "csv"
    cache_dir = args.cache_dir or os.environ.get("TORUSK_CACHE_DIR")
    return RunConfig(
        command=args.command,
        k=getattr(args, "k", None),
        h=getattr(args, "h", None),
        baseline=getattr(args, "baseline", None),
        witness=getattr(args, "witness", False),
        k_from=getattr(args, "k_from", None),
        k_to=getattr(args, "k_to", None),
        ell=getattr(args, "ell", None),
        ell_max=getattr(args, "ell_max", None),
        method=getattr(args, "method", "auto"),
        perturbed=getattr(args, "perturbed", False),
        suite=getattr(args, "suite", "all"),
        output=output,
        out_path=args.out,
        cache_dir=cache_dir,
        long_mode=args.long_mode,
        threads=args.threads,
        check=not getattr(args, "no_check", False),
    )


def _load_caches(cache_dir: str | None) -> None:
    if cache_dir is None:
        return
    base = Path(cache_dir)
    gamma_file = base / _GAMMA_CACHE
    if gamma_file.exists():
        try:
            lp.warm_gamma_memo(lp.load_gamma_cache(gamma_file))
        except (CacheError, VerificationError) as exc:
            print(f"warning: ignoring bad gamma cache: {exc}", file=sys.stderr)


def _save_caches(cache_dir: str | None, ell_max: int) -> None:
    if cache_dir is None:
        return
    base = Path(cache_dir)
    base.mkdir(parents=True, exist_ok=True)
    snapshot = lp.gamma_memo_snapshot()
    if snapshot:
        lp.save_gamma_cache(base / _GAMMA_CACHE, snapshot)
    numtheory.save_triples(base / _TRIPLES_CACHE, list(range(1, ell_max + 1)))


def _emit(config: RunConfig, text: str) -> None:
    if config.out_path is None:
        sys.stdout.write(text)
    else:
        Path(config.out_path).write_text(text)


def _run_compute(config: RunConfig) -> tuple[str, int]:
    k = config.k
    if k is None or k < 1:
        raise _UsageError("compute needs --k >= 1")
    if k < 3:
        # too small for the pipeline; closed form answers directly
        pv = pattern_or_table(k)
        out = {"k": k, "max_size": pv.value, "per_height": []}
        return json.dumps(out, sort_keys=True) + "\n", 0
    if config.h is not None:
        from .search import compute_with_witness

        baseline = config.baseline if config.baseline is not None else 1
        value, wit = compute_with_witness(k, config.h, baseline)
        out = {"k": k, "h": config.h, "baseline": baseline, "value": value}
        if config.witness and wit is not None:
            out["witness"] = [[m, n] for (m, n) in wit.points]
        return json.dumps(out, sort_keys=True) + "\n", 0
    outcome = max_size(k)
    payload = outcome.to_json_dict()
    if not config.witness:
        payload.pop("witness", None)
    if config.output == "json":
        return json.dumps(payload, sort_keys=True) + "\n", 0
    return f"N({k}) = {outcome.max_size}\n", 0


def _run_oracle(config: RunConfig) -> tuple[str, int]:
    k = config.k
    if k is None or k < 1:
        raise _UsageError("oracle needs --k >= 1")
    outcome = brute_force_max(k)
    if config.output == "json":
        return json.dumps(outcome.to_json_dict(), sort_keys=True) + "\n", 0
    return f"N({k}) = {outcome.max_size}\n", 0


def _table_row(args: tuple[int, bool]) -> tuple[int, int, str, int | None]:
    k, check = args
    pv = pattern_or_table(k)
    searched = max_size(k).max_size if (check and k >= 3) else None
    return k, pv.value, pv.source, searched


def _run_table(config: RunConfig) -> tuple[str, int]:
    if config.k_from is None or config.k_to is None:
        raise _UsageError("table needs --from and --to")
    lo, hi = config.k_from, config.k_to
    if lo < 1 or hi < lo:
        raise _UsageError("table needs 1 <= from <= to")
    if hi - lo > 2000 and not config.long_mode:
        raise BudgetError(f"table range {lo}..{hi} needs --long")
    jobs = [(k, config.check) for k in range(lo, hi + 1)]
    if config.threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.threads) as pool:
            rows = list(pool.map(_table_row, jobs, chunksize=8))
    else:
        rows = [_table_row(j) for j in jobs]
    rows.sort(key=lambda r: r[0])
    mismatches = [r for r in rows if r[3] is not None and r[3] != r[1]]
    lines = ["k,N,source"]
    lines += [f"{k},{n},{source}" for k, n, source, _ in rows]
    text = "\n".join(lines) + "\n"
    if mismatches:
        detail = ", ".join(f"k={k}: closed={n}, search={s}" for k, n, _, s in mismatches)
        print(f"verification failed: table mismatch: {detail}", file=sys.stderr)
        return text, 2
    return text, 0


def _run_lp_gamma(config: RunConfig) -> tuple[str, int]:
    if config.ell_max is not None:
        return lp.density_table_csv(config.ell_max, method=config.method), 0
    if config.ell is None:
        raise _UsageError("lp-gamma needs --l or --lmax")
    value = lp.gamma(config.ell, method=config.method)
    g = value.gamma
    return f"{g.numerator}/{g.denominator} ({lp.format_round4(g)})\n", 0


def _run_certify_dual(config: RunConfig) -> tuple[str, int]:
    ell = config.ell
    if ell is None or ell < 1:
        raise _UsageError("certify-dual needs --l >= 1")
    cert = lp.perturbed_dual_matrix(ell) if config.perturbed else lp.dual_matrix(ell)
    cert.verify()
    value = cert.value
    if config.output == "json":
        payload = {
            "ell": ell,
            "perturbed": config.perturbed,
            "matrix": [list(row) for row in cert.matrix],
            "value_num": value.numerator,
            "value_den": value.denominator,
            "feasible": True,
        }
        return json.dumps(payload, sort_keys=True) + "\n", 0
    lines = [" ".join(str(v) for v in row) for row in cert.matrix]
    lines.append(f"feasible, value = {value.numerator}/{value.denominator}"
                 f" ({lp.format_round4(value)})")
    return "\n".join(lines) + "\n", 0


def _height_row(pair: tuple[int, int]) -> dict:
    k, h = pair
    return verify_height(k, h).to_json_dict()


def _run_verify_height(config: RunConfig) -> tuple[str, int]:
    pairs: list[tuple[int, int]] = []
    if config.k is not None and config.h is not None:
        pairs = [(config.k, config.h)]
    elif config.k_from is not None and config.k_to is not None:
        if config.k_to - config.k_from > 5000 and not config.long_mode:
            raise BudgetError("verify-height sweep that large needs --long")
        for k in range(config.k_from, config.k_to + 1):
            pairs += [(k, h) for h in reduction_range(k)]
    else:
        raise _UsageError("verify-height needs --k/--h or --from/--to")
    if config.threads > 1 and len(pairs) > 1:
        with ProcessPoolExecutor(max_workers=config.threads) as pool:
            rows = list(pool.map(_height_row, pairs, chunksize=64))
    else:
        rows = [_height_row(p) for p in pairs]
    rows.sort(key=lambda r: (r["k"], r["h"]))
    text = "".join(json.dumps(r, sort_keys=True) + "\n" for r in rows)
    failed = [r for r in rows if not r["verified"]]
    if failed:
        print(f"{len(failed)} verdicts not verified; first: "
              f"k={failed[0]['k']}, h={failed[0]['h']}", file=sys.stderr)
        return text, 2
    return text, 0


def _run_bounds(config: RunConfig) -> tuple[str, int]:
    suites = {
        "sum210": bounds_mod.check_sum210,
        "threshold-3225": lambda: bounds_mod.check_threshold_3225(120),
        "threshold-1892": lambda: bounds_mod.check_threshold_1892(66),
        "size-bound": lambda: bounds_mod.check_size_bound(40),
    }
    names = list(suites) if config.suite == "all" else [config.suite]
    reports = [suites[name]() for name in names]
    if config.output == "json":
        text = "".join(json.dumps(r.to_json_dict(), sort_keys=True) + "\n"
                       for r in reports)
    else:
        text = "".join(
            f"{r.name}: {'holds' if r.holds else 'FAILED'}"
            f" over {r.range}, min margin {r.margin}\n"
            for r in reports)
    bad = [r.name for r in reports if not r.holds]
    if bad:
        print(f"bound checks failed: {', '.join(bad)}", file=sys.stderr)
        return text, 2
    return text, 0


_DISPATCH = {
    "compute": _run_compute,
    "oracle": _run_oracle,
    "table": _run_table,
    "lp-gamma": _run_lp_gamma,
    "certify-dual": _run_certify_dual,
    "verify-height": _run_verify_height,
    "bounds": _run_bounds,
}


def run(config: RunConfig) -> int:
    _load_caches(config.cache_dir)
    try:
        text, code = _DISPATCH[config.command](config)
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 2
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    _emit(config, text)
    if config.cache_dir is not None and config.command in ("lp-gamma", "bounds"):
        ell_max = config.ell_max or config.ell or 20
        _save_caches(config.cache_dir, max(20, min(ell_max, 256)))
    return code


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        config = _config_from_args(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    try:
        return run(config)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
