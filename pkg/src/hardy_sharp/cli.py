"""Command-line front end: single queries, sweeps, rate fits, lemma hunts.

Subcommands
    alpha       solve the witness frequency equation for one (L, p)
    continuous  certificates and exact p=2 constant for one interval
    discrete    one d_n row (numeric value, certificates, sandwich flags)
    rate        d_n sweep over a geometric n-grid plus a deficit rate fit
    lemmas      counterexample hunts over the auxiliary inequality suite

Conventions: exit 0 on success, 1 on a failed verification (a strict lemma
violation), 2 on usage errors.  Real numbers are emitted with 17 significant
digits; CSV is UTF-8 with '\\n' line endings.  Identical configurations
produce byte-identical outputs except for the `seconds` timing column.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .core import DomainError, Exponent, Interval
from .continuous import (b_bound_classical, exact_constant_p2,
                         lower_certificate_continuous, upper_certificate_continuous)
from .discrete import SweepRecord, dn_bounds_report
from .lemmas import DIAGNOSTIC_IDS, LEMMA_IDS, hunt
from .roots import solve_alpha_extremal

ALGORITHM_VERSION = 1    # bump to invalidate cached sweep rows
CACHE_ENV = "HARDY_SHARP_CACHE"
CSV_COLUMNS = ("n", "p", "alpha", "dn_numeric", "lower_cert", "upper_cert", "qp",
               "sandwich_lo_pass", "sandwich_hi_pass", "iterations", "residual",
               "seconds")
_DEFAULT_A_GRID = "4,8,16,32,64"


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    """Validated run parameters; module preconditions are checked up front."""

    command: str
    p: float = 2.0
    n: Optional[int] = None
    a: Optional[float] = None
    b: Optional[float] = None
    L: Optional[float] = None
    tol: float = 1e-10
    max_iter: int = 2000
    A_grid: tuple = ()
    n_grid: tuple = ()
    seed: int = 42
    threads: int = 1
    fmt: str = "json"
    cache: Optional[str] = None
    out: Optional[str] = None
    ids: tuple = ()
    samples: int = 10000
    diag_samples: int = 200
    model: str = "two_term"


@dataclass(frozen=True)
class RateFit:
    """Least-squares fit of the deficit q^p - d_n against inverse log powers.

    two_term:     deficit ~ c2/ln^2(n+1) + c3/ln^3(n+1)
    c_over_log2:  deficit ~ c2/ln^2(n+1)
    """

    model: str
    coefficients: dict
    residual_norm: float
    n_lo: int
    n_hi: int
    points_used: int
    excluded: tuple


# ----------------------------------------------------------------------
# result cache

class SweepCache:
    """Append-only CSV cache of d_n sweep rows.

    The first line is a fingerprint carrying the algorithm version; rows are
    keyed by (n, p, tol) and reused only when the fingerprint matches.  A
    mismatched cache file is ignored and rewritten.
    """

    FIELDS = ("n", "p", "tol") + CSV_COLUMNS[2:]

    def __init__(self, path: Optional[str]):
        self.path = path
        self.rows: dict = {}
        if path and os.path.exists(path):
            self._load()

    def _fingerprint(self) -> str:
        return f"# hardy-sharp cache v1 algo={ALGORITHM_VERSION}"

    def _load(self) -> None:
        with open(self.path, "r", encoding="utf-8", newline="") as fh:
            first = fh.readline().rstrip("\n")
            if first != self._fingerprint():
                return
            reader = csv.DictReader(fh)
            for row in reader:
                key = (int(row["n"]), row["p"], row["tol"])
                self.rows[key] = row

    @staticmethod
    def key(n: int, p: float, tol: float):
        return (n, f"{p:.17g}", f"{tol:.17g}")

    def get(self, n: int, p: float, tol: float) -> Optional[SweepRecord]:
        row = self.rows.get(self.key(n, p, tol))
        if row is None:
            return None

        def _flag(s):
            return None if s == "" else s == "1"

        return SweepRecord(
            n=int(row["n"]), p=float(row["p"]), alpha=float(row["alpha"]),
            dn_numeric=float(row["dn_numeric"]), lower_cert=float(row["lower_cert"]),
            upper_cert=float(row["upper_cert"]), qp=float(row["qp"]),
            sandwich_lo_pass=_flag(row["sandwich_lo_pass"]),
            sandwich_hi_pass=_flag(row["sandwich_hi_pass"]),
            iterations=int(row["iterations"]), residual=float(row["residual"]),
            seconds=float(row["seconds"]),
        )

    def put(self, rec: SweepRecord, tol: float) -> None:
        if not self.path:
            return
        key = self.key(rec.n, rec.p, tol)
        if key in self.rows:
            return
        row = {"n": str(rec.n), "p": key[1], "tol": key[2]}
        row.update({c: _fmt(getattr(rec, c)) for c in CSV_COLUMNS[2:]})
        mode = "a" if (os.path.exists(self.path) and self.rows) else "w"
        with open(self.path, mode, encoding="utf-8", newline="") as fh:
            if mode == "w":
                fh.write(self._fingerprint() + "\n")
                fh.write(",".join(self.FIELDS) + "\n")
            fh.write(",".join(row[f] for f in self.FIELDS) + "\n")
        self.rows[key] = row


# ----------------------------------------------------------------------
# sweep plumbing

def _sweep_point(args) -> SweepRecord:
    n, p, tol, a_grid, max_iter = args
    return dn_bounds_report(n, Exponent(p), tol=tol, A_grid=a_grid, max_iter=max_iter)


def _compute_sweep(cfg: RunConfig, ns: Sequence[int]) -> list[SweepRecord]:
    cache = SweepCache(cfg.cache)
    records: dict[int, SweepRecord] = {}
    missing = []
    for n in ns:
        hit = cache.get(n, cfg.p, cfg.tol)
        if hit is not None:
            records[n] = hit
        else:
            missing.append(n)
    jobs = [(n, cfg.p, cfg.tol, cfg.A_grid, cfg.max_iter) for n in missing]
    if cfg.threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
            fresh = list(pool.map(_sweep_point, jobs))
    else:
        fresh = [_sweep_point(j) for j in jobs]
    for rec in fresh:
        records[rec.n] = rec
        cache.put(rec, cfg.tol)
    return [records[n] for n in ns]


def _record_row(rec: SweepRecord) -> list[str]:
    return [_fmt(getattr(rec, c)) for c in CSV_COLUMNS]


def _write_csv(rows: list[list[str]], stream) -> None:
    stream.write(",".join(CSV_COLUMNS) + "\n")
    for row in rows:
        stream.write(",".join(row) + "\n")


def _record_json(rec: SweepRecord) -> dict:
    return {c: getattr(rec, c) for c in CSV_COLUMNS}


# ----------------------------------------------------------------------
# subcommands

def _cmd_alpha(cfg: RunConfig) -> int:
    exp = Exponent(cfg.p)
    root = solve_alpha_extremal(cfg.L, exp.q)
    print(f"alpha={_fmt(root.alpha)}")
    print(f"bracket_lo={_fmt(root.bracket_lo)}")
    print(f"bracket_hi={_fmt(root.bracket_hi)}")
    print(f"residual={_fmt(root.residual)}")
    print(f"L={_fmt(root.L)}")
    print(f"q={_fmt(root.q)}")
    return 0


def _cmd_continuous(cfg: RunConfig) -> int:
    exp = Exponent(cfg.p)
    interval = Interval(cfg.a, cfg.b)
    lower = lower_certificate_continuous(interval, exp, tol=min(cfg.tol, 1e-4))
    upper = upper_certificate_continuous(interval, exp, tol=min(cfg.tol, 1e-4))
    b_lo, b_hi = b_bound_classical(interval, exp)
    exact = exact_constant_p2(interval) if cfg.p == 2.0 else None
    payload = {
        "p": cfg.p, "a": interval.a, "b": interval.b, "L": interval.L,
        "lower": lower.value, "upper": upper.value,
        **({"exact_p2": exact} if exact is not None else {}),
        "B_lower": b_lo, "B_upper": b_hi,
        "budgets": {"lower": lower.error_budget, "upper": upper.error_budget},
    }
    if cfg.fmt == "json":
        print(json.dumps(payload, default=float))
    else:
        cols = ["p", "a", "b", "L", "lower", "upper", "exact_p2",
                "B_lower", "B_upper", "budget_lower", "budget_upper"]
        vals = [cfg.p, interval.a, interval.b, interval.L, lower.value, upper.value,
                exact, b_lo, b_hi, lower.error_budget, upper.error_budget]
        print(",".join(cols))
        print(",".join(_fmt(v) for v in vals))
    return 0


def _cmd_discrete(cfg: RunConfig) -> int:
    records = _compute_sweep(cfg, [cfg.n])
    if cfg.fmt == "json":
        print(json.dumps(_record_json(records[0]), default=float))
    else:
        _write_csv([_record_row(records[0])], sys.stdout)
    return 0


def _fit_rate(records: list[SweepRecord], model: str, tol: float) -> RateFit:
    import numpy as np

    conv = [r for r in records if r.residual < math.sqrt(tol)]
    excluded = tuple(r.n for r in records if r.residual >= math.sqrt(tol))
    if len(conv) < 5:
        raise UsageError(f"rate fit needs >= 5 converged points, have {len(conv)}")
    ns = np.array([r.n for r in conv], dtype=float)
    deficit = np.array([r.qp - r.dn_numeric for r in conv])
    ln1 = np.log(ns + 1.0)
    cols = [1.0 / ln1 ** 2] + ([1.0 / ln1 ** 3] if model == "two_term" else [])
    design = np.stack(cols, axis=1)
    coef, *_ = np.linalg.lstsq(design, deficit, rcond=None)
    resid = float(np.linalg.norm(design @ coef - deficit))
    names = ["c2", "c3"][: len(coef)]
    return RateFit(model=model, coefficients={k: float(v) for k, v in zip(names, coef)},
                   residual_norm=resid, n_lo=int(min(r.n for r in conv)),
                   n_hi=int(max(r.n for r in conv)), points_used=len(conv),
                   excluded=excluded)


def _cmd_rate(cfg: RunConfig) -> int:
    ns = list(cfg.n_grid)
    records = _compute_sweep(cfg, ns)
    fit = _fit_rate(records, cfg.model, cfg.tol)
    rows = [_record_row(r) for r in records]
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            _write_csv(rows, fh)
    else:
        _write_csv(rows, sys.stdout)
    payload = {
        "model": fit.model, "coefficients": fit.coefficients,
        "residual_norm": fit.residual_norm,
        "n_range": [fit.n_lo, fit.n_hi], "points_used": fit.points_used,
        "excluded": list(fit.excluded),
    }
    if cfg.p == 2.0:
        ref = 16.0 * math.pi ** 2
        payload["reference_16pi2"] = ref
        if "c2" in fit.coefficients:
            payload["c2_over_16pi2"] = fit.coefficients["c2"] / ref
    print(json.dumps(payload, default=float))
    return 0


def _cmd_lemmas(cfg: RunConfig) -> int:
    rows = []
    any_strict_failure = False
    for lemma_id in cfg.ids:
        count = cfg.diag_samples if lemma_id in DIAGNOSTIC_IDS else cfg.samples
        number = int(lemma_id.split("_")[1])
        summary = hunt(lemma_id, count, cfg.seed + 13 * number)
        if summary.strictness == "strict" and not summary.holds_all:
            any_strict_failure = True
        worst = ";".join(f"{k}={_fmt(v) if isinstance(v, float) else v}"
                         for k, v in summary.worst_sample.items())
        rows.append([summary.id, summary.strictness, str(summary.count),
                     _fmt(summary.min_margin),
                     "1" if summary.holds_all else "0",
                     _fmt(summary.max_normalized_residual), worst])
    header = "id,strictness,samples,min_margin,holds,max_normalized_residual,worst_sample"
    out = sys.stdout
    if cfg.out:
        out = open(cfg.out, "w", encoding="utf-8", newline="")
    try:
        out.write(header + "\n")
        for row in rows:
            out.write(",".join(row) + "\n")
    finally:
        if cfg.out:
            out.close()
    return 1 if any_strict_failure else 0


# ----------------------------------------------------------------------
# argument parsing

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hardy-sharp",
                                     description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_interval_flags(sp):
        sp.add_argument("--L", type=float, default=None, help="log-length ln(b/a)")
        sp.add_argument("--a", type=float, default=None)
        sp.add_argument("--b", type=float, default=None)

    sp = sub.add_parser("alpha", help="solve tan(alpha L) + alpha q = 0")
    add_interval_flags(sp)
    sp.add_argument("--p", type=float, default=2.0)

    sp = sub.add_parser("continuous", help="certificates for d(a,b)")
    add_interval_flags(sp)
    sp.add_argument("--p", type=float, default=2.0)
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.add_argument("--format", choices=("json", "csv"), default="json")

    sp = sub.add_parser("discrete", help="one d_n row with certificates")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=float, default=2.0)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.add_argument("--max-iter", type=int, default=2000)
    sp.add_argument("--A-grid", default=_DEFAULT_A_GRID,
                    help="comma list of weight parameters A to scan")
    sp.add_argument("--format", choices=("json", "csv"), default="csv")
    sp.add_argument("--cache", default=None)

    sp = sub.add_parser("rate", help="d_n sweep and deficit rate fit")
    sp.add_argument("--p", type=float, default=2.0)
    sp.add_argument("--n-grid", required=True,
                    help="geometric grid 'lo:hi:points' or comma list; >= 5 points")
    sp.add_argument("--model", choices=("two_term", "c_over_log2"), default="two_term")
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.add_argument("--max-iter", type=int, default=2000)
    sp.add_argument("--A-grid", default=_DEFAULT_A_GRID)
    sp.add_argument("--cache", default=None)
    sp.add_argument("--threads", type=int, default=None)
    sp.add_argument("--out", default=None, help="write the sweep CSV here")

    sp = sub.add_parser("lemmas", help="counterexample hunts")
    sp.add_argument("--ids", default="all")
    sp.add_argument("--samples", type=int, default=10000)
    sp.add_argument("--diag-samples", type=int, default=200,
                    help="sample count for the diagnostic identity L2_15")
    sp.add_argument("--seed", type=int, default=42)
    sp.add_argument("--out", default=None)

    return parser


def _resolve_L(ns) -> float:
    has_L = ns.L is not None
    has_ab = ns.a is not None or ns.b is not None
    if has_L and has_ab:
        raise UsageError("give either --L or (--a and --b), not both")
    if has_L:
        if ns.L <= 0:
            raise UsageError("L must be positive")
        return ns.L
    if ns.a is None or ns.b is None:
        raise UsageError("give either --L or both --a and --b")
    if not (0 < ns.a < ns.b):
        raise UsageError("interval requires 0 < a < b")
    return math.log(ns.b / ns.a)


def _parse_n_grid(spec: str) -> tuple:
    if ":" in spec:
        parts = spec.split(":")
        if len(parts) != 3:
            raise UsageError("n-grid spec must be 'lo:hi:points' or a comma list")
        lo, hi, pts = int(parts[0]), int(parts[1]), int(parts[2])
        if not (1 <= lo < hi) or pts < 2:
            raise UsageError("n-grid requires 1 <= lo < hi and points >= 2")
        import numpy as np
        ns = np.unique(np.round(np.geomspace(lo, hi, pts)).astype(int))
        return tuple(int(v) for v in ns)
    try:
        ns = sorted({int(v) for v in spec.split(",") if v.strip()})
    except ValueError as exc:
        raise UsageError(f"bad n-grid entry: {exc}")
    if not ns or ns[0] < 1:
        raise UsageError("n-grid entries must be positive integers")
    return tuple(ns)


def _parse_a_grid(spec: str) -> tuple:
    try:
        grid = tuple(float(v) for v in spec.split(",") if v.strip())
    except ValueError as exc:
        raise UsageError(f"bad A-grid entry: {exc}")
    if any(a <= 2.0 for a in grid):
        raise UsageError("A-grid entries must be > 2")
    return grid


def _parse_ids(spec: str) -> tuple:
    if spec == "all":
        # L2_14 is the L2_13 path under another name; "all" runs each path once.
        return tuple(i for i in LEMMA_IDS if i != "L2_14")
    ids = tuple(s.strip() for s in spec.split(",") if s.strip())
    for lemma_id in ids:
        if lemma_id not in LEMMA_IDS:
            raise UsageError(f"unknown lemma id {lemma_id!r}")
    return ids


def _config_from_args(ns) -> RunConfig:
    cfg = RunConfig(command=ns.command)
    if ns.command == "alpha":
        cfg.p = ns.p
        cfg.L = _resolve_L(ns)
    elif ns.command == "continuous":
        cfg.p, cfg.tol, cfg.fmt = ns.p, ns.tol, ns.format
        if ns.L is not None:
            cfg.L = _resolve_L(ns)
            cfg.a, cfg.b = 1.0, math.exp(cfg.L)
        else:
            cfg.L = _resolve_L(ns)
            cfg.a, cfg.b = ns.a, ns.b
        if not (1e-12 <= cfg.tol <= 1e-4):
            raise UsageError("tol must lie in [1e-12, 1e-4]")
    elif ns.command == "discrete":
        if ns.n < 1:
            raise UsageError("n must be >= 1")
        cfg.n, cfg.p, cfg.tol, cfg.fmt = ns.n, ns.p, ns.tol, ns.format
        cfg.max_iter = ns.max_iter
        cfg.A_grid = _parse_a_grid(ns.A_grid)
        cfg.cache = ns.cache or os.environ.get(CACHE_ENV)
    elif ns.command == "rate":
        cfg.p, cfg.tol, cfg.model = ns.p, ns.tol, ns.model
        cfg.max_iter = ns.max_iter
        cfg.n_grid = _parse_n_grid(ns.n_grid)
        if len(cfg.n_grid) < 5:
            raise UsageError(f"rate fit needs >= 5 grid points, got {len(cfg.n_grid)}")
        cfg.A_grid = _parse_a_grid(ns.A_grid)
        cfg.cache = ns.cache or os.environ.get(CACHE_ENV)
        cfg.threads = ns.threads if ns.threads else (os.cpu_count() or 1)
        cfg.out = ns.out
    elif ns.command == "lemmas":
        if ns.samples < 1:
            raise UsageError("samples must be >= 1")
        cfg.ids = _parse_ids(ns.ids)
        cfg.samples, cfg.seed, cfg.out = ns.samples, ns.seed, ns.out
        cfg.diag_samples = ns.diag_samples
    if ns.command in ("discrete", "rate") and not (1e-13 <= cfg.tol <= 1e-6):
        raise UsageError("tol must lie in [1e-13, 1e-6]")
    return cfg


_DISPATCH = {
    "alpha": _cmd_alpha,
    "continuous": _cmd_continuous,
    "discrete": _cmd_discrete,
    "rate": _cmd_rate,
    "lemmas": _cmd_lemmas,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        cfg = _config_from_args(ns)
        return _DISPATCH[cfg.command](cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
