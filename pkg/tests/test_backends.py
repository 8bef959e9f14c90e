"""The compiled step kernel and the numpy fallback must pivot identically."""

import os
import subprocess
import sys

import numpy as np
import pytest

from circtheta import (
    FORMULATIONS,
    BitStream,
    LpProblem,
    backend_name,
    build_formulation,
    sample_random,
    solve,
)
from circtheta import _simplex_py

_cy = pytest.importorskip(
    "circtheta._simplex_cy", reason="compiled kernel not built in this environment"
)

KERNELS = (_simplex_py, _cy)


def _assert_same_solution(p):
    sols = [solve(p, step_kernel=k) for k in KERNELS]
    a, b = sols
    assert a.status == b.status
    assert a.iterations == b.iterations
    if a.status == "optimal":
        # identical pivot paths make the results bitwise equal, not just close
        assert a.objective_value == b.objective_value
        np.testing.assert_array_equal(a.primal, b.primal)
        np.testing.assert_array_equal(a.duals, b.duals)


def test_backend_name_reports_active_kernel():
    assert backend_name() in ("numpy", "cython")
    assert _simplex_py.BACKEND_NAME == "numpy"
    assert _cy.BACKEND_NAME == "cython"


def test_kernel_constants_match():
    assert _cy.STEP_PIVOTED == _simplex_py.STEP_PIVOTED
    assert _cy.STEP_OPTIMAL == _simplex_py.STEP_OPTIMAL
    assert _cy.STEP_UNBOUNDED == _simplex_py.STEP_UNBOUNDED


def test_apply_pivot_bitwise_equal():
    rng = np.random.default_rng(8)
    for _ in range(25):
        nr, nc = 6, 11
        tab = rng.standard_normal((nr + 2, nc + 1))
        tab[:nr, 3] = rng.uniform(0.5, 2.0, size=nr)  # workable pivot column
        basis = np.arange(nr, dtype=np.int64) + 4
        tabs = [tab.copy(), tab.copy()]
        bases = [basis.copy(), basis.copy()]
        for k, t, bs in zip(KERNELS, tabs, bases):
            k.apply_pivot(t, bs, 2, 3)
        np.testing.assert_array_equal(tabs[0], tabs[1])
        np.testing.assert_array_equal(bases[0], bases[1])


def test_parity_on_theta_formulations():
    for n in (9, 25, 63):
        for idx in range(3):
            g = sample_random(n, BitStream((77, n, idx)))
            for f in FORMULATIONS:
                _assert_same_solution(build_formulation(g, f))


def test_parity_on_random_lps():
    rng = np.random.default_rng(21)
    for _ in range(20):
        nv = int(rng.integers(3, 9))
        nr = int(rng.integers(2, 7))
        a = rng.uniform(-1.0, 1.0, size=(nr, nv))
        b = rng.uniform(0.5, 1.5, size=nr)
        c = rng.uniform(-1.0, 1.0, size=nv)
        a = np.vstack([a, np.ones(nv)])
        b = np.concatenate([b, [4.0]])
        _assert_same_solution(
            LpProblem(sense="max", objective=c, a_ge=-a, b_ge=-b)
        )


def _run_with_backend(value):
    env = dict(os.environ, CIRCTHETA_BACKEND=value)
    return subprocess.run(
        [sys.executable, "-c", "import circtheta; print(circtheta.backend_name())"],
        capture_output=True,
        text=True,
        env=env,
    )


def test_environment_forcing():
    out = _run_with_backend("numpy")
    assert out.returncode == 0 and out.stdout.strip() == "numpy"
    out = _run_with_backend("cython")
    assert out.returncode == 0 and out.stdout.strip() == "cython"
    out = _run_with_backend("fortran")
    assert out.returncode != 0
    assert "CIRCTHETA_BACKEND" in out.stderr
