"""Seeded Monte-Carlo experiments over random circulant graphs.

Three experiment kinds, all driven by counter-based substreams so results
depend only on (seed, n, sample index) and never on execution order:

* scaling: theta statistics and the complement product check across n,
* tails: sign-spectrum extreme-value statistics (no LP solves),
* kernel-ratio: flatness of the theta optimizer, sqrt(n) |y*|_2 / |y*|_1.

Output rows serialize to CSV or JSON with fixed column order and floats
printed via %.9g, so a rerun with the same config is byte-identical.
Wall-clock timing is off by default for exactly that reason; turning
`record_timing` on fills the wall_seconds column and gives up
reproducibility of those bytes.
"""

from __future__ import annotations

import enum
import json
import math
import time
from dataclasses import dataclass

import numpy as np

from .errors import SolverFailureError, TooLargeError
from .fourier import spectrum
from .graph import (
    BitStream,
    CirculantGraph,
    complement,
    from_connection_set,
    graph_from_bits,
    paley,
    sample_random,
    sign_vector,
)
from .oracles import sandwich_check
from .theta import cross_validate, lovasz_theta

__all__ = [
    "ExperimentKind",
    "ExperimentConfig",
    "ScalingRecord",
    "TailRecord",
    "SCALING_COLUMNS",
    "TAIL_COLUMNS",
    "run_scaling",
    "run_tails",
    "run_kernel_ratio",
    "run_experiment",
    "write_records",
    "records_to_csv",
    "records_to_json",
    "theta_upper_bound",
    "selftest",
    "SelftestReport",
]

SCALING_COLUMNS = (
    "n",
    "samples",
    "theta_mean",
    "theta_sd",
    "ratio_mean",
    "product_residual_max",
    "wall_seconds",
)

TAIL_COLUMNS = (
    "n",
    "samples",
    "linf_violation_fraction",
    "large_entry_fraction_mean",
    "kernel_ratio_min",
    "kernel_ratio_median",
    "kernel_ratio_max",
)

MAX_EXHAUSTIVE_PAIRS = 20
_FAILURE_BUDGET = 0.01  # abort a run when more than 1% of samples fail to certify


class ExperimentKind(enum.Enum):
    SCALING = "scaling"
    TAILS = "tails"
    KERNEL_RATIO = "kernel-ratio"
    SELFTEST = "selftest"


@dataclass(frozen=True)
class ExperimentConfig:
    kind: ExperimentKind
    n_list: tuple
    samples: int
    seed: int
    tail_constant: float = 2.0
    tolerance: float = 1e-9
    output: str = None
    fmt: str = "csv"
    exhaustive: bool = False
    record_timing: bool = False

    def __post_init__(self):
        object.__setattr__(self, "n_list", tuple(int(n) for n in self.n_list))
        if not self.n_list:
            raise ValueError("n_list must not be empty")
        for n in self.n_list:
            if n < 3 or n % 2 == 0:
                raise ValueError(f"orders must be odd and >= 3, got {n}")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if not self.tail_constant > 0:
            raise ValueError("tail_constant must be positive")
        if not 0.0 < self.tolerance <= 1e-3:
            raise ValueError("tolerance must lie in (0, 1e-3]")
        if self.fmt not in ("csv", "json"):
            raise ValueError(f"fmt must be 'csv' or 'json', got {self.fmt!r}")
        if self.exhaustive and self.kind is not ExperimentKind.SCALING:
            raise ValueError("exhaustive enumeration only applies to scaling runs")
        if self.kind in (ExperimentKind.TAILS, ExperimentKind.KERNEL_RATIO):
            bad = [n for n in self.n_list if n < 17]
            if bad:
                raise ValueError(f"tail statistics need n >= 17, got {bad}")


@dataclass(frozen=True)
class ScalingRecord:
    n: int
    samples: int
    theta_mean: float
    theta_sd: float
    ratio_mean: float
    product_residual_max: float
    wall_seconds: float
    # bookkeeping, deliberately not serialized
    failures: int = 0
    bound_violations: int = 0


@dataclass(frozen=True)
class TailRecord:
    n: int
    samples: int
    linf_violation_fraction: float
    large_entry_fraction_mean: float
    kernel_ratio_min: float
    kernel_ratio_median: float
    kernel_ratio_max: float
    # bookkeeping, deliberately not serialized
    failures: int = 0
    bound_violations: int = 0
    rip_violations: int = 0


def theta_upper_bound(n: int) -> float:
    """High-probability ceiling 1 + 4 sqrt(n ln n) for random circulant theta."""
    return 1.0 + 4.0 * math.sqrt(n * math.log(n))


def _substream_graph(seed: int, n: int, idx: int) -> CirculantGraph:
    return sample_random(n, BitStream((seed, n, idx)))


def _sample_sd(values) -> float:
    if len(values) < 2:
        return 0.0
    return float(np.std(np.asarray(values), ddof=1))


class _FailureTally:
    def __init__(self, n: int, total: int):
        self.n = n
        self.total = total
        self.count = 0

    def record(self, exc: SolverFailureError) -> None:
        self.count += 1
        if self.count > _FAILURE_BUDGET * self.total:
            raise SolverFailureError(
                f"n={self.n}: {self.count} of {self.total} samples failed "
                f"certification, exceeding the {_FAILURE_BUDGET:.0%} budget; last: {exc}"
            ) from exc


def _exhaustive_bits(m: int, idx: int) -> np.ndarray:
    return np.array([(idx >> j) & 1 for j in range(m)], dtype=np.uint8)


def run_scaling(config: ExperimentConfig) -> list:
    records = []
    for n in config.n_list:
        m = (n - 1) // 2
        if config.exhaustive:
            if m > MAX_EXHAUSTIVE_PAIRS:
                raise TooLargeError(
                    f"exhaustive enumeration covers 2^m graphs; m={m} exceeds {MAX_EXHAUSTIVE_PAIRS}"
                )
            total = 1 << m
        else:
            total = config.samples
        tally = _FailureTally(n, total)
        thetas = []
        ratios = []
        prod_max = 0.0
        bound_violations = 0
        bound = theta_upper_bound(n)
        t0 = time.perf_counter()
        for idx in range(total):
            if config.exhaustive:
                g = graph_from_bits(n, _exhaustive_bits(m, idx))
            else:
                g = _substream_graph(config.seed, n, idx)
            try:
                cert = lovasz_theta(g, tol=config.tolerance)
            except SolverFailureError as exc:
                tally.record(exc)
                continue
            thetas.append(cert.theta)
            ratios.append(cert.theta / math.sqrt(n))
            if cert.theta > bound + 1e-6:
                bound_violations += 1
            if idx % 10 == 0:
                try:
                    tc = lovasz_theta(complement(g), tol=config.tolerance).theta
                except SolverFailureError as exc:
                    tally.record(exc)
                    continue
                prod_max = max(prod_max, abs(cert.theta * tc - n))
        elapsed = time.perf_counter() - t0 if config.record_timing else 0.0
        records.append(
            ScalingRecord(
                n=n,
                samples=total,
                theta_mean=float(np.mean(thetas)) if thetas else math.nan,
                theta_sd=_sample_sd(thetas),
                ratio_mean=float(np.mean(ratios)) if ratios else math.nan,
                product_residual_max=prod_max,
                wall_seconds=elapsed,
                failures=tally.count,
                bound_violations=bound_violations,
            )
        )
    return records


def _tail_stats(g: CirculantGraph, tail_constant: float):
    n = g.n
    spec = spectrum(sign_vector(g))
    linf_violated = spec.linf() > theta_upper_bound(n)
    cutoff = tail_constant * math.sqrt(n * math.log(math.log(n)))
    large_fraction = float(np.count_nonzero(np.abs(spec.entries) > cutoff)) / n
    return linf_violated, large_fraction


def run_tails(config: ExperimentConfig) -> list:
    records = []
    for n in config.n_list:
        violations = 0
        fractions = []
        for idx in range(config.samples):
            g = _substream_graph(config.seed, n, idx)
            violated, fraction = _tail_stats(g, config.tail_constant)
            violations += int(violated)
            fractions.append(fraction)
        records.append(
            TailRecord(
                n=n,
                samples=config.samples,
                linf_violation_fraction=violations / config.samples,
                large_entry_fraction_mean=float(np.mean(fractions)),
                kernel_ratio_min=math.nan,
                kernel_ratio_median=math.nan,
                kernel_ratio_max=math.nan,
            )
        )
    return records


def run_kernel_ratio(config: ExperimentConfig) -> list:
    records = []
    for n in config.n_list:
        tally = _FailureTally(n, config.samples)
        violations = 0
        fractions = []
        ratios = []
        bound_violations = 0
        rip_violations = 0
        bound = theta_upper_bound(n)
        flat_bound = math.log(n) ** 2
        for idx in range(config.samples):
            g = _substream_graph(config.seed, n, idx)
            violated, fraction = _tail_stats(g, config.tail_constant)
            violations += int(violated)
            fractions.append(fraction)
            try:
                cert = lovasz_theta(g, tol=config.tolerance)
            except SolverFailureError as exc:
                tally.record(exc)
                continue
            if cert.theta > bound + 1e-6:
                bound_violations += 1
            u = cert.y_star
            l1 = abs(u[0]) + 2.0 * np.abs(u[1:]).sum()
            l2 = math.sqrt(u[0] ** 2 + 2.0 * float(u[1:] @ u[1:]))
            ratio = math.sqrt(n) * l2 / l1
            ratios.append(ratio)
            if ratio > flat_bound or ratio < 1.0 - 1e-6:
                rip_violations += 1
        records.append(
            TailRecord(
                n=n,
                samples=config.samples,
                linf_violation_fraction=violations / config.samples,
                large_entry_fraction_mean=float(np.mean(fractions)),
                kernel_ratio_min=float(np.min(ratios)) if ratios else math.nan,
                kernel_ratio_median=float(np.median(ratios)) if ratios else math.nan,
                kernel_ratio_max=float(np.max(ratios)) if ratios else math.nan,
                failures=tally.count,
                bound_violations=bound_violations,
                rip_violations=rip_violations,
            )
        )
    return records


# ---------------------------------------------------------------------------
# serialization: fixed columns, %.9g floats, newline-terminated lines
# ---------------------------------------------------------------------------

def _fmt_cell(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return "%.9g" % (float(value) + 0.0)  # +0.0 folds -0.0 into 0.0


def records_to_csv(records, columns) -> str:
    lines = [",".join(columns)]
    for rec in records:
        lines.append(",".join(_fmt_cell(getattr(rec, c)) for c in columns))
    return "\n".join(lines) + "\n"


def _json_cell(value):
    if isinstance(value, (int, np.integer)):
        return int(value)
    return float("%.9g" % (float(value) + 0.0))


def records_to_json(records, columns) -> str:
    rows = [{c: _json_cell(getattr(rec, c)) for c in columns} for rec in records]
    return json.dumps(rows, indent=2) + "\n"


def columns_for(kind: ExperimentKind):
    if kind is ExperimentKind.SCALING:
        return SCALING_COLUMNS
    if kind in (ExperimentKind.TAILS, ExperimentKind.KERNEL_RATIO):
        return TAIL_COLUMNS
    raise ValueError(f"no tabular output for {kind}")


def write_records(records, kind: ExperimentKind, fmt: str, path: str) -> None:
    columns = columns_for(kind)
    text = records_to_csv(records, columns) if fmt == "csv" else records_to_json(records, columns)
    with open(path, "w", newline="") as fh:
        fh.write(text)


def run_experiment(config: ExperimentConfig) -> list:
    if config.kind is ExperimentKind.SCALING:
        records = run_scaling(config)
    elif config.kind is ExperimentKind.TAILS:
        records = run_tails(config)
    elif config.kind is ExperimentKind.KERNEL_RATIO:
        records = run_kernel_ratio(config)
    else:
        raise ValueError(f"run_experiment does not handle {config.kind}")
    if config.output:
        write_records(records, config.kind, config.fmt, config.output)
    return records


# ---------------------------------------------------------------------------
# selftest: closed forms and invariants that must hold on every install
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SelftestCheck:
    name: str
    ok: bool
    detail: str


@dataclass(frozen=True)
class SelftestReport:
    checks: tuple

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


def _check(checks, name, fn):
    try:
        detail = fn()
        checks.append(SelftestCheck(name, True, detail or "ok"))
    except Exception as exc:  # selftest reports, it does not crash
        checks.append(SelftestCheck(name, False, f"{type(exc).__name__}: {exc}"))


def selftest(seed: int = 20260823) -> SelftestReport:
    checks = []

    def closed_forms():
        for n in (5, 9, 101):
            m = (n - 1) // 2
            t_empty = lovasz_theta(from_connection_set(n, ())).theta
            t_full = lovasz_theta(from_connection_set(n, range(1, n))).theta
            assert abs(t_empty - n) <= 1e-8 * n, f"empty n={n}: {t_empty}"
            assert abs(t_full - 1.0) <= 1e-8 * n, f"complete n={n}: {t_full}"
            assert m == (n - 1) // 2
        return "empty=n and complete=1 for n in {5, 9, 101}"

    def pentagon():
        t = lovasz_theta(from_connection_set(5, (1, 4))).theta
        assert abs(t - math.sqrt(5.0)) <= 1e-6, t
        return f"theta(C5)={t:.9f}"

    def paley_values():
        for p in (13, 17):
            t = lovasz_theta(paley(p)).theta
            assert abs(t - math.sqrt(p)) <= 1e-5 * math.sqrt(p), (p, t)
        return "theta(paley(p))=sqrt(p) for p in {13, 17}"

    def formulations_agree():
        for idx in range(3):
            g = _substream_graph(seed, 25, idx)
            cross_validate(g)
        return "four formulations agree on 3 random graphs at n=25"

    def product_identity():
        worst = 0.0
        for idx in range(3):
            g = _substream_graph(seed, 31, idx)
            t = lovasz_theta(g).theta
            tc = lovasz_theta(complement(g)).theta
            worst = max(worst, abs(t * tc - 31.0))
        assert worst <= 1e-4 * 31, worst
        return f"max |theta * theta_complement - n| = {worst:.3e}"

    def sandwich():
        for n in (9, 13):
            for idx in range(3):
                g = _substream_graph(seed, n, idx)
                t = lovasz_theta(g).theta
                assert sandwich_check(g, t), (n, idx, t)
        return "alpha <= theta <= complement chromatic number on small graphs"

    def spectrum_identities():
        for idx in range(3):
            g = _substream_graph(seed, 101, idx)
            spec = spectrum(sign_vector(g))  # raises if an identity fails
            assert abs(spec.entries.sum() - 101.0) <= 1e-9 * 101
        return "spectrum sum, symmetry, and Parseval identities hold at n=101"

    _check(checks, "closed-forms", closed_forms)
    _check(checks, "pentagon", pentagon)
    _check(checks, "paley", paley_values)
    _check(checks, "formulations-agree", formulations_agree)
    _check(checks, "product-identity", product_identity)
    _check(checks, "sandwich", sandwich)
    _check(checks, "spectrum-identities", spectrum_identities)
    return SelftestReport(tuple(checks))
