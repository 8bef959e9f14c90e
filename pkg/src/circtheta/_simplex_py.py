"""Pure-numpy simplex step kernel (fallback for the compiled one).

Protocol shared with _simplex_cy: `simplex_step` picks the entering column
from the given cost row, runs the ratio test, applies the pivot in place and
returns (code, prow, pcol, degenerate).  `apply_pivot` is the bare pivot for
callers that already chose the position (driving artificials out).

Both kernels must make identical choices on identical tableaus: entering ties
go to the lowest column index, ratio ties to the lowest basic-variable index.
"""

import numpy as np

STEP_PIVOTED = 0
STEP_OPTIMAL = 1
STEP_UNBOUNDED = 2

BACKEND_NAME = "numpy"


def apply_pivot(tab: np.ndarray, basis: np.ndarray, prow: int, pcol: int) -> None:
    piv = tab[prow, pcol]
    tab[prow, :] /= piv
    col = tab[:, pcol].copy()
    col[prow] = 0.0
    tab -= np.outer(col, tab[prow, :])
    tab[:, pcol] = 0.0
    tab[prow, pcol] = 1.0
    basis[prow] = pcol


def simplex_step(
    tab: np.ndarray,
    basis: np.ndarray,
    cost_row: int,
    nrows: int,
    nact: int,
    bland: bool,
    eps_cost: float,
    eps_pivot: float,
    degen_eps: float,
):
    costs = tab[cost_row, :nact]
    if bland:
        negs = np.flatnonzero(costs < -eps_cost)
        if negs.size == 0:
            return STEP_OPTIMAL, -1, -1, False
        pcol = int(negs[0])
    else:
        pcol = int(np.argmin(costs))
        if costs[pcol] >= -eps_cost:
            return STEP_OPTIMAL, -1, -1, False

    col = tab[:nrows, pcol]
    rhs = tab[:nrows, -1]
    elig = col > eps_pivot
    if not elig.any():
        return STEP_UNBOUNDED, -1, pcol, False
    ratios = np.full(nrows, np.inf)
    np.divide(rhs, col, out=ratios, where=elig)
    rmin = ratios.min()
    ties = np.flatnonzero(ratios == rmin)
    prow = int(ties[np.argmin(basis[ties])])

    degenerate = bool(tab[prow, -1] <= degen_eps)
    apply_pivot(tab, basis, prow, pcol)
    return STEP_PIVOTED, prow, pcol, degenerate
