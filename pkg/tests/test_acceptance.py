"""Acceptance gate: fourteen end-to-end checks, one verdict line each.

Run with `pytest tests/test_acceptance.py -s` to see every verdict as it
lands.  The Monte-Carlo corpora in criteria 9-11 are shared fixtures, so the
whole module costs one scaling sweep, one tail sweep, and one kernel sweep.
"""

import itertools
import math
import time

import numpy as np
import pytest

from circtheta import (
    BitStream,
    ExperimentConfig,
    ExperimentKind,
    LpProblem,
    chromatic_number,
    complement,
    cross_validate,
    from_connection_set,
    independence_number,
    lovasz_theta,
    paley,
    run_scaling,
    run_tails,
    run_kernel_ratio,
    sample_random,
    solve,
)
from circtheta.harness import (
    SCALING_COLUMNS,
    TAIL_COLUMNS,
    records_to_csv,
    records_to_json,
)

SEED = 20260823


def _verdict(num, desc, ok, detail=""):
    line = f"[criterion {num:02d}] {'PASS' if ok else 'FAIL'} {desc}"
    if detail:
        line += f"  ({detail})"
    print(line)
    assert ok, line


def _graphs(n, count, seed=SEED):
    return [sample_random(n, BitStream((seed, n, i))) for i in range(count)]


@pytest.fixture(scope="module")
def scaling_run():
    cfg = ExperimentConfig(ExperimentKind.SCALING, (101, 201, 401), 100, SEED)
    t0 = time.perf_counter()
    recs = run_scaling(cfg)
    return recs, time.perf_counter() - t0


@pytest.fixture(scope="module")
def tails_run():
    cfg = ExperimentConfig(ExperimentKind.TAILS, (1001,), 100, SEED)
    return run_tails(cfg)


@pytest.fixture(scope="module")
def kernel_run():
    cfg = ExperimentConfig(ExperimentKind.KERNEL_RATIO, (101, 401), 50, SEED)
    return run_kernel_ratio(cfg)


def test_criterion_01_closed_forms():
    worst = 0.0
    for n in (5, 9, 101):
        empty = lovasz_theta(from_connection_set(n, ())).theta
        full = lovasz_theta(from_connection_set(n, tuple(range(1, n)))).theta
        worst = max(worst, abs(empty - n) / n, abs(full - 1.0) / n)
    _verdict(1, "empty graph gives n, complete graph gives 1", worst <= 1e-8,
             f"worst relative deviation {worst:.2e}")


def test_criterion_02_pentagon():
    t = lovasz_theta(from_connection_set(5, (1, 4))).theta
    dev = abs(t - 2.2360680)
    _verdict(2, "pentagon value sqrt(5)", dev <= 1e-6, f"theta {t:.9f}, dev {dev:.2e}")


def test_criterion_03_paley():
    worst = 0.0
    for p in (13, 17, 29):
        t = lovasz_theta(paley(p)).theta
        worst = max(worst, abs(t - math.sqrt(p)) / math.sqrt(p))
    _verdict(3, "paley graphs give sqrt(p)", worst <= 1e-5,
             f"worst relative deviation {worst:.2e}")


def test_criterion_04_formulations_agree():
    t0 = time.perf_counter()
    worst = 0.0
    for n in (9, 15, 25):
        for g in _graphs(n, 20):
            cv = cross_validate(g)
            worst = max(worst, cv.max_deviation / (1.0 + cv.theta))
    elapsed = time.perf_counter() - t0
    _verdict(4, "four formulations agree on 60 random graphs",
             worst <= 1e-6 and elapsed < 30.0,
             f"worst relative spread {worst:.2e}, {elapsed:.1f}s")


def test_criterion_05_product_identity():
    t0 = time.perf_counter()
    worst = 0.0
    for n in (31, 63, 101):
        for g in _graphs(n, 20):
            t = lovasz_theta(g).theta
            tc = lovasz_theta(complement(g)).theta
            worst = max(worst, abs(t * tc - n) / n)
    elapsed = time.perf_counter() - t0
    _verdict(5, "theta(G) * theta(complement) = n on 60 random graphs",
             worst <= 1e-4 and elapsed < 120.0,
             f"worst relative residual {worst:.2e}, {elapsed:.1f}s")


def test_criterion_06_sandwich():
    ok = True
    for n in (9, 13, 15):
        for g in _graphs(n, 10):
            t = lovasz_theta(g).theta
            alpha = independence_number(g)
            chi = chromatic_number(complement(g))
            ok = ok and (alpha - 1e-6 <= t <= chi + 1e-6)
    _verdict(6, "alpha <= theta <= chromatic number of the complement", ok,
             "30 random graphs at n in {9, 13, 15}")


def test_criterion_07_objective_identity():
    worst = 0.0
    for n in (9, 15, 25):
        for g in _graphs(n, 10):
            cert = lovasz_theta(g)
            worst = max(worst, cert.objective_identity_residual / n)
    _verdict(7, "optimizer satisfies n*y0 = <y, g>", worst <= 1e-6,
             f"worst relative residual {worst:.2e}")


def test_criterion_08_exhaustive_pentagon_mean():
    cfg = ExperimentConfig(ExperimentKind.SCALING, (5,), 1, SEED, exhaustive=True)
    rec = run_scaling(cfg)[0]
    expect = (6.0 + 2.0 * math.sqrt(5.0)) / 4.0
    dev = abs(rec.theta_mean - expect)
    _verdict(8, "exhaustive n=5 mean equals (6 + 2 sqrt(5))/4",
             rec.samples == 4 and dev <= 1e-6,
             f"mean {rec.theta_mean:.9f}, dev {dev:.2e}")


def test_criterion_09_scaling_ratio(scaling_run):
    recs, elapsed = scaling_run
    ratios = {r.n: r.ratio_mean for r in recs}
    ok = all(0.95 <= v <= 2.5 for v in ratios.values()) and elapsed < 900.0
    detail = ", ".join(f"n={n}: {v:.4f}" for n, v in sorted(ratios.items()))
    _verdict(9, "mean theta / sqrt(n) stays in [0.95, 2.5] at n=101,201,401",
             ok, f"{detail}, {elapsed:.0f}s")


def test_criterion_10_spectral_tails(tails_run):
    r = tails_run[0]
    ok = r.linf_violation_fraction == 0.0 and r.large_entry_fraction_mean <= 0.02
    _verdict(10, "spectra at n=1001 stay under 1 + 4 sqrt(n ln n) with few large entries",
             ok,
             f"violations {r.linf_violation_fraction:g}, "
             f"large-entry mean {r.large_entry_fraction_mean:.4f}")


def test_criterion_11_kernel_ratio(kernel_run):
    ok = True
    details = []
    for r in kernel_run:
        limit = math.log(r.n) ** 2
        ok = ok and r.kernel_ratio_max <= limit
        details.append(f"n={r.n}: max {r.kernel_ratio_max:.3f} vs ln^2 n = {limit:.1f}")
    _verdict(11, "flatness ratio sqrt(n) |y|_2 / |y|_1 stays below ln^2 n",
             ok, "; ".join(details))


def test_criterion_12_no_bound_violations(scaling_run, tails_run, kernel_run):
    recs, _ = scaling_run
    total = sum(r.failures + r.bound_violations for r in recs)
    total += sum(r.failures + r.bound_violations + r.rip_violations for r in tails_run)
    total += sum(r.failures + r.bound_violations + r.rip_violations for r in kernel_run)
    _verdict(12, "no certification failures or bound violations in any sweep",
             total == 0, f"violation count {total}")


def test_criterion_13_lp_health():
    rng = np.random.default_rng(SEED)
    worst_gap = worst_comp = 0.0
    ok = True
    for _ in range(100):
        nv = int(rng.integers(5, 51))
        nr = int(rng.integers(3, 31))
        a = rng.uniform(-1.0, 1.0, size=(nr, nv))
        b = rng.uniform(0.5, 1.5, size=nr)  # origin feasible by construction
        c = rng.uniform(-1.0, 1.0, size=nv)
        a = np.vstack([a, np.ones(nv)])
        b = np.concatenate([b, [float(nv)]])
        sol = solve(LpProblem(sense="max", objective=c, a_ge=-a, b_ge=-b))
        ok = ok and sol.status == "optimal"
        ok = ok and sol.duality_gap <= 1e-9 * (1.0 + abs(sol.objective_value))
        ok = ok and sol.comp_slack <= 1e-8
        worst_gap = max(worst_gap, sol.duality_gap)
        worst_comp = max(worst_comp, sol.comp_slack)
    degen = solve(
        LpProblem(
            sense="max",
            objective=np.ones(3),
            a_ge=np.array(
                [[1.0, -1.0, 0.0], [0.0, 1.0, -1.0], [-1.0, 0.0, 1.0],
                 [-1.0, -1.0, -1.0]]
            ),
            b_ge=np.array([0.0, 0.0, 0.0, -3.0]),
        )
    )
    ok = ok and degen.status == "optimal" and abs(degen.objective_value - 3.0) <= 1e-9
    _verdict(13, "100 random LPs certify tightly and a degenerate LP terminates",
             ok, f"worst gap {worst_gap:.2e}, worst comp {worst_comp:.2e}")


def test_criterion_14_byte_identical_reruns():
    ok = True
    scfg = ExperimentConfig(ExperimentKind.SCALING, (19, 31), 5, SEED)
    tcfg = ExperimentConfig(ExperimentKind.TAILS, (31,), 20, SEED)
    for cfg, run, cols in (
        (scfg, run_scaling, SCALING_COLUMNS),
        (tcfg, run_tails, TAIL_COLUMNS),
    ):
        r1, r2 = run(cfg), run(cfg)
        ok = ok and records_to_csv(r1, cols) == records_to_csv(r2, cols)
        ok = ok and records_to_json(r1, cols) == records_to_json(r2, cols)
    _verdict(14, "repeated runs serialize to identical bytes", ok,
             "scaling and tail sweeps, csv and json")
