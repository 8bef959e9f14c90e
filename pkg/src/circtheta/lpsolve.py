"""Dense linear programming with duality certificates.

Two-phase primal simplex on a dense tableau.  Scope is deliberately small:
the LPs solved here have at most a few hundred rows and ~2n variables, so a
dense tableau with periodic recomputation of the basis inverse (every 50
pivots, limiting drift) beats anything fancier, and the simplex basis gives
dual multipliers for free.

Conventions
-----------
* `LpProblem` rows: equality rows `a_eq x = b_eq` and inequality rows
  `a_ge x >= b_ge`.  Variables are nonnegative where `nonneg` is True, free
  otherwise.  `offset` is a constant added to the reported objective value.
* Dual multipliers are sensitivities d(objective)/d(rhs): for a ge-row they
  are >= 0 on a minimize problem and <= 0 on a maximize problem.
* Pivoting: Dantzig rule, switching to Bland's rule for the rest of the
  solve after 10*N consecutive degenerate pivots; ratio-test ties go to the
  lowest basic-variable index.  No randomization anywhere, so a fixed
  problem always produces the same pivot path.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._backend import kernel as _default_kernel
from .errors import NumericalBreakdownError

__all__ = [
    "LpProblem",
    "LpSolution",
    "StandardForm",
    "to_standard_form",
    "solve",
    "OPTIMAL",
    "INFEASIBLE",
    "UNBOUNDED",
]

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

COND_LIMIT = 1e12
REFACTOR_EVERY = 50
# ratio-test eligibility floor: entries below this are treated as zero, which
# keeps drift noise (true zeros computed as ~1e-9 after dozens of pivots) from
# ever being chosen as a pivot and dragging the basis toward singularity
_EPS_PIVOT = 1e-7
_EPS_DEGEN = 1e-11


def _as_matrix(a, ncols: int) -> np.ndarray:
    arr = np.asarray(a, dtype=np.float64)
    if arr.size == 0:
        return arr.reshape(0, ncols)
    if arr.ndim != 2:
        raise ValueError("constraint matrix must be 2-d")
    return np.ascontiguousarray(arr)


@dataclass(frozen=True)
class LpProblem:
    """Dense LP: optimize `objective . x` subject to eq/ge rows and sign masks."""

    sense: str
    objective: np.ndarray = field(repr=False)
    a_eq: np.ndarray = field(default=None, repr=False)
    b_eq: np.ndarray = field(default=None, repr=False)
    a_ge: np.ndarray = field(default=None, repr=False)
    b_ge: np.ndarray = field(default=None, repr=False)
    nonneg: np.ndarray = field(default=None, repr=False)
    offset: float = 0.0

    def __post_init__(self):
        if self.sense not in ("max", "min"):
            raise ValueError(f"sense must be 'max' or 'min', got {self.sense!r}")
        c = np.ascontiguousarray(np.asarray(self.objective, dtype=np.float64))
        if c.ndim != 1:
            raise ValueError("objective must be a vector")
        n = c.shape[0]
        a_eq = _as_matrix(self.a_eq if self.a_eq is not None else [], n)
        a_ge = _as_matrix(self.a_ge if self.a_ge is not None else [], n)
        b_eq = np.asarray(self.b_eq if self.b_eq is not None else [], dtype=np.float64).ravel()
        b_ge = np.asarray(self.b_ge if self.b_ge is not None else [], dtype=np.float64).ravel()
        if a_eq.shape != (b_eq.shape[0], n) or a_ge.shape != (b_ge.shape[0], n):
            raise ValueError("constraint dimensions are inconsistent")
        nonneg = self.nonneg
        if nonneg is None:
            nonneg = np.ones(n, dtype=bool)
        nonneg = np.asarray(nonneg, dtype=bool).ravel()
        if nonneg.shape[0] != n:
            raise ValueError("nonneg mask length mismatch")
        for name, arr in (("objective", c), ("a_eq", a_eq), ("b_eq", b_eq),
                          ("a_ge", a_ge), ("b_ge", b_ge)):
            if arr.size and not np.all(np.isfinite(arr)):
                raise ValueError(f"{name} contains non-finite entries")
        if not np.isfinite(self.offset):
            raise ValueError("offset must be finite")
        for attr, val in (("objective", c), ("a_eq", a_eq), ("b_eq", b_eq),
                          ("a_ge", a_ge), ("b_ge", b_ge), ("nonneg", nonneg)):
            object.__setattr__(self, attr, val)

    @property
    def nvars(self) -> int:
        return self.objective.shape[0]


@dataclass
class LpSolution:
    status: str
    primal: np.ndarray
    duals_eq: np.ndarray
    duals_ge: np.ndarray
    objective_value: float
    iterations: int
    # certification residuals (meaningful only when status == OPTIMAL)
    primal_residual: float = np.nan
    dual_residual: float = np.nan
    duality_gap: float = np.nan
    comp_slack: float = np.nan

    @property
    def duals(self) -> np.ndarray:
        """All row multipliers, equality rows first."""
        return np.concatenate([self.duals_eq, self.duals_ge])


@dataclass(frozen=True)
class StandardForm:
    """Equality-only all-nonnegative reformulation plus the recovery mapping."""

    problem: LpProblem
    pos_col: np.ndarray
    neg_col: np.ndarray
    n_ge: int

    def recover(self, x_std: np.ndarray) -> np.ndarray:
        x = x_std[self.pos_col].copy()
        has_neg = self.neg_col >= 0
        x[has_neg] -= x_std[self.neg_col[has_neg]]
        return x


def to_standard_form(p: LpProblem) -> StandardForm:
    """Split free variables, turn ge-rows into equalities with surplus slacks.

    The sense and objective value are preserved exactly; `recover` maps a
    standard-form point back to original variables.
    """
    n = p.nvars
    pos_col = np.empty(n, dtype=np.int64)
    neg_col = np.full(n, -1, dtype=np.int64)
    cols = 0
    for j in range(n):
        pos_col[j] = cols
        cols += 1
        if not p.nonneg[j]:
            neg_col[j] = cols
            cols += 1
    r_eq, r_ge = p.a_eq.shape[0], p.a_ge.shape[0]
    total = cols + r_ge

    c = np.zeros(total)
    c[pos_col] = p.objective
    has_neg = neg_col >= 0
    c[neg_col[has_neg]] = -p.objective[has_neg]

    a = np.zeros((r_eq + r_ge, total))
    for block, rows0 in ((p.a_eq, 0), (p.a_ge, r_eq)):
        if block.shape[0]:
            a[rows0 : rows0 + block.shape[0], pos_col] = block
            a[rows0 : rows0 + block.shape[0], neg_col[has_neg]] = -block[:, has_neg]
    for i in range(r_ge):
        a[r_eq + i, cols + i] = -1.0  # surplus: a x - s = b
    b = np.concatenate([p.b_eq, p.b_ge])

    std = LpProblem(
        sense=p.sense,
        objective=c,
        a_eq=a,
        b_eq=b,
        a_ge=np.zeros((0, total)),
        b_ge=np.zeros(0),
        nonneg=np.ones(total, dtype=bool),
        offset=p.offset,
    )
    return StandardForm(std, pos_col, neg_col, r_ge)


# ---------------------------------------------------------------------------
# internal two-phase simplex on  min c.x  s.t.  A x = b, x >= 0
# ---------------------------------------------------------------------------

@dataclass
class _RawResult:
    status: str
    x: np.ndarray
    y_rows: np.ndarray
    iterations: int


def _refactor(tab, basis, a_full, b, cost_rows):
    """Recompute the tableau from the current basis; returns the 1-norm cond."""
    nr = a_full.shape[0]
    bmat = a_full[:, basis]
    if nr == 0:
        return 1.0
    try:
        binv = np.linalg.inv(bmat)
    except np.linalg.LinAlgError as exc:
        raise NumericalBreakdownError(f"basis factorization failed: {exc}") from exc
    cond = np.abs(bmat).sum(axis=0).max() * np.abs(binv).sum(axis=0).max()
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise NumericalBreakdownError(f"basis condition estimate {cond:.3e} exceeds {COND_LIMIT:.0e}")
    tab[:nr, :-1] = binv @ a_full
    tab[:nr, -1] = binv @ b
    for row_idx, cext in cost_rows:
        cb = cext[basis]
        tab[row_idx, :-1] = cext - cb @ tab[:nr, :-1]
        tab[row_idx, basis] = 0.0
        tab[row_idx, -1] = -float(cb @ tab[:nr, -1])
    return cond


class _Simplex:
    def __init__(self, a, b, c, tol, kernel):
        self.kernel = kernel
        self.tol = tol
        nr, nc = a.shape
        rowsign = np.where(b < 0, -1.0, 1.0)
        self.a = a * rowsign[:, None]
        self.b = b * rowsign
        self.c = c
        self.rowsign = rowsign
        self.nr, self.nc = nr, nc

        # crash basis: a column with a single nonzero can start basic in its
        # row whenever that keeps the basic value nonnegative, so artificials
        # (and most of phase 1) are needed only for the rows left over
        crash = np.full(nr, -1, dtype=np.int64)
        if nr:
            for j in np.flatnonzero(np.count_nonzero(self.a, axis=0) == 1):
                i = int(np.flatnonzero(self.a[:, j])[0])
                if crash[i] >= 0:
                    continue
                if self.b[i] == 0.0 or self.a[i, j] > 0.0:
                    crash[i] = j
        art_rows = np.flatnonzero(crash < 0)
        self.nart = art_rows.size
        e_art = np.zeros((nr, self.nart))
        e_art[art_rows, np.arange(self.nart)] = 1.0
        self.a_full = np.hstack([self.a, e_art])
        self.ctot = nc + self.nart
        self.cext = np.concatenate([c, np.zeros(self.nart)])
        self.c1ext = np.concatenate([np.zeros(nc), np.ones(self.nart)])
        basis = crash.copy()
        basis[art_rows] = nc + np.arange(self.nart)
        self.basis = basis
        self.tab = np.zeros((nr + 2, self.ctot + 1))
        if nr:
            _refactor(self.tab, self.basis, self.a_full, self.b, self._both_rows())
        else:
            self.tab[nr, : self.ctot] = self.cext
        self.iterations = 0
        self.bland = False
        self.degen_run = 0
        self.since_refactor = 0
        self.max_iter = 2000 + 200 * (nr + self.ctot)

    def _both_rows(self):
        return [(self.nr, self.cext), (self.nr + 1, self.c1ext)]

    def _phase(self, cost_row: int, nact: int, cost_scale: float, cost_rows,
               stop_value=None) -> str:
        eps_cost = self.tol * cost_scale
        step = self.kernel.simplex_step
        while True:
            if self.since_refactor >= REFACTOR_EVERY:
                _refactor(self.tab, self.basis, self.a_full, self.b, cost_rows)
                self.since_refactor = 0
            code, _prow, _pcol, degen = step(
                self.tab, self.basis, cost_row, self.nr, nact,
                self.bland, eps_cost, _EPS_PIVOT, _EPS_DEGEN,
            )
            if code == self.kernel.STEP_OPTIMAL:
                return OPTIMAL
            if code == self.kernel.STEP_UNBOUNDED:
                # never trust a terminal verdict from a drifted tableau
                if self.since_refactor > 0 and self.nr:
                    _refactor(self.tab, self.basis, self.a_full, self.b, cost_rows)
                    self.since_refactor = 0
                    continue
                return UNBOUNDED
            self.iterations += 1
            self.since_refactor += 1
            if stop_value is not None and -self.tab[cost_row, -1] <= stop_value:
                return OPTIMAL  # phase 1 only needs feasibility, not optimality
            if degen:
                self.degen_run += 1
                if not self.bland and self.degen_run > 10 * nact:
                    self.bland = True
                    if self.nr:
                        _refactor(self.tab, self.basis, self.a_full, self.b, cost_rows)
                        self.since_refactor = 0
            else:
                self.degen_run = 0
            if self.iterations > self.max_iter:
                raise NumericalBreakdownError(
                    f"simplex exceeded {self.max_iter} iterations"
                )

    def run(self) -> _RawResult:
        nr, nc = self.nr, self.nc
        feas_tol = self.tol * (1.0 + abs(self.b).sum())
        if self.nart:
            status1 = self._phase(nr + 1, self.ctot, 1.0, self._both_rows(),
                                  stop_value=0.5 * feas_tol)
            if status1 == UNBOUNDED:
                raise NumericalBreakdownError("phase-1 objective reported unbounded")
            _refactor(self.tab, self.basis, self.a_full, self.b, self._both_rows())
            self.since_refactor = 0
            if -self.tab[nr + 1, -1] > feas_tol:
                return _RawResult(INFEASIBLE, np.zeros(nc), np.zeros(nr), self.iterations)

            # pivot artificials out of the basis where possible; rows that
            # cannot be pivoted are redundant and keep their artificial at ~0
            for i in range(nr):
                if self.basis[i] >= nc:
                    row = self.tab[i, :nc]
                    cand = np.flatnonzero(np.abs(row) > _EPS_PIVOT)
                    if cand.size:
                        self.kernel.apply_pivot(self.tab, self.basis, i, int(cand[0]))
                        self.iterations += 1
                        self.since_refactor += 1

        phase2_rows = [(nr, self.cext)]
        if nr:
            _refactor(self.tab, self.basis, self.a_full, self.b, phase2_rows)
            self.since_refactor = 0
        cost_scale = 1.0 + (abs(self.c).max() if nc else 0.0)
        status2 = self._phase(nr, nc, cost_scale, phase2_rows)
        if status2 == UNBOUNDED:
            return _RawResult(UNBOUNDED, np.zeros(nc), np.zeros(nr), self.iterations)

        # final answers from a fresh basis inverse, not the drifted tableau
        if nr:
            bmat = self.a_full[:, self.basis]
            try:
                binv = np.linalg.inv(bmat)
            except np.linalg.LinAlgError as exc:
                raise NumericalBreakdownError(f"basis factorization failed: {exc}") from exc
            cond = np.abs(bmat).sum(axis=0).max() * np.abs(binv).sum(axis=0).max()
            if not np.isfinite(cond) or cond > COND_LIMIT:
                raise NumericalBreakdownError(
                    f"basis condition estimate {cond:.3e} exceeds {COND_LIMIT:.0e}"
                )
            xb = binv @ self.b
            y_hat = self.cext[self.basis] @ binv
        else:
            xb = np.zeros(0)
            y_hat = np.zeros(0)
        x = np.zeros(nc)
        real = self.basis < nc
        x[self.basis[real]] = xb[real]
        y_rows = self.rowsign * y_hat
        return _RawResult(OPTIMAL, x, y_rows, self.iterations)


def _certify(p: LpProblem, x, lam, mu):
    """Residuals of the optimality system in the user's sign convention."""
    def _vmax(arr):
        return float(arr.max()) if arr.size else 0.0

    r_parts = []
    if p.a_eq.shape[0]:
        r_parts.append(float(np.abs(p.a_eq @ x - p.b_eq).max()))
    if p.a_ge.shape[0]:
        r_parts.append(max(0.0, _vmax(p.b_ge - p.a_ge @ x)))
    if p.nonneg.any():
        r_parts.append(max(0.0, -float(x[p.nonneg].min())))
    primal_residual = max(r_parts) if r_parts else 0.0

    red = p.objective.copy()
    if p.a_eq.shape[0]:
        red -= p.a_eq.T @ lam
    if p.a_ge.shape[0]:
        red -= p.a_ge.T @ mu
    free = ~p.nonneg
    d_parts = [float(np.abs(red[free]).max()) if free.any() else 0.0]
    if p.sense == "min":
        if mu.size:
            d_parts.append(max(0.0, -float(mu.min())))
        if p.nonneg.any():
            d_parts.append(max(0.0, -float(red[p.nonneg].min())))
    else:
        if mu.size:
            d_parts.append(max(0.0, float(mu.max())))
        if p.nonneg.any():
            d_parts.append(max(0.0, float(red[p.nonneg].max())))
    dual_residual = max(d_parts)

    dual_obj = float(p.b_eq @ lam) + float(p.b_ge @ mu)
    raw_obj = float(p.objective @ x)
    gap = abs(raw_obj - dual_obj)

    comp_parts = [0.0]
    if mu.size:
        comp_parts.append(float(np.abs(mu * (p.a_ge @ x - p.b_ge)).max()))
    if p.nonneg.any():
        comp_parts.append(float(np.abs(x[p.nonneg] * red[p.nonneg]).max()))
    comp = max(comp_parts)
    return primal_residual, dual_residual, gap, comp


def solve(p: LpProblem, tol: float = 1e-9, step_kernel=None) -> LpSolution:
    """Solve the LP and certify the result.

    Raises NumericalBreakdownError when the basis condition estimate exceeds
    1e12 or the optimality certificate fails its tolerances; infeasible and
    unbounded problems are reported through `status`, not exceptions.
    """
    if not 0.0 < tol <= 1e-3:
        raise ValueError(f"tol must lie in (0, 1e-3], got {tol}")
    kernel = step_kernel if step_kernel is not None else _default_kernel
    sf = to_standard_form(p)
    std = sf.problem
    c_int = std.objective if p.sense == "min" else -std.objective
    raw = _Simplex(std.a_eq, std.b_eq, c_int, tol, kernel).run()

    r_eq = p.a_eq.shape[0]
    if raw.status != OPTIMAL:
        return LpSolution(
            status=raw.status,
            primal=np.zeros(p.nvars),
            duals_eq=np.zeros(r_eq),
            duals_ge=np.zeros(p.a_ge.shape[0]),
            objective_value=np.nan,
            iterations=raw.iterations,
        )

    x = sf.recover(raw.x)
    y = raw.y_rows if p.sense == "min" else -raw.y_rows
    lam, mu = y[:r_eq], y[r_eq:]
    value = float(p.objective @ x) + p.offset
    primal_res, dual_res, gap, comp = _certify(p, x, lam, mu)
    if max(primal_res, dual_res, comp) > tol or gap > tol * (1.0 + abs(value)):
        raise NumericalBreakdownError(
            "optimality certification failed: "
            f"primal={primal_res:.3e} dual={dual_res:.3e} gap={gap:.3e} comp={comp:.3e}"
        )
    return LpSolution(
        status=OPTIMAL,
        primal=x,
        duals_eq=lam,
        duals_ge=mu,
        objective_value=value,
        iterations=raw.iterations,
        primal_residual=primal_res,
        dual_residual=dual_res,
        duality_gap=gap,
        comp_slack=comp,
    )
