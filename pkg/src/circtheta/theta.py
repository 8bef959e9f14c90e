"""Lovasz number of circulant graphs by linear programming.

For a circulant graph on n (odd) vertices with symmetric connection set S,
the theta function reduces to a linear program over folded symmetric
vectors of length m + 1, m = (n - 1) / 2.  Four equivalent formulations are
built here, indexed by domain (time or frequency) and side (primal or
dual); all four share the folded cosine rows

    w_k = (1, 2 cos(2 pi k / n), ..., 2 cos(2 pi m k / n)).

With weights = (1, 2, ..., 2):

* frequency primal:  max n u_0,  weights.u = 1,  w_j.u = 0 (j in S),  u >= 0
* frequency dual:    min n u_0 + 1,  u_k = -1/n (k not in S),  w_k.u >= 0
* time primal:       max weights.u,  u_0 = 1,  u_j = 0 (j in S),  w_k.u >= 0
* time dual:         min weights.u + 1,  w_j.u = -1 (j not in S),  u >= 0

The frequency primal optimizer y* doubles as a certificate: it must lie in
the kernel of the edge rows, sum to one under the fold weights, stay
nonnegative, and satisfy n y*_0 = <y*, g> where g is the sign spectrum.
`lovasz_theta` checks all of that plus agreement with the frequency dual
before reporting a value.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import lpsolve
from .errors import DimensionMismatchError, NumericalBreakdownError, SolverFailureError
from .fourier import SymmetricVector, folded_dft_row, spectrum
from .graph import CirculantGraph, complement, sign_vector

__all__ = [
    "Domain",
    "Side",
    "Formulation",
    "FORMULATIONS",
    "build_formulation",
    "ThetaCertificate",
    "lovasz_theta",
    "objective_g",
    "cross_validate",
    "CrossValidation",
    "product_identity_residual",
]


class Domain(enum.Enum):
    TIME = "time"
    FREQUENCY = "frequency"


class Side(enum.Enum):
    PRIMAL = "primal"
    DUAL = "dual"


@dataclass(frozen=True)
class Formulation:
    domain: Domain
    side: Side

    @property
    def name(self) -> str:
        return f"{self.domain.value}-{self.side.value}"


FREQUENCY_PRIMAL = Formulation(Domain.FREQUENCY, Side.PRIMAL)
FREQUENCY_DUAL = Formulation(Domain.FREQUENCY, Side.DUAL)
TIME_PRIMAL = Formulation(Domain.TIME, Side.PRIMAL)
TIME_DUAL = Formulation(Domain.TIME, Side.DUAL)

FORMULATIONS = (FREQUENCY_PRIMAL, FREQUENCY_DUAL, TIME_PRIMAL, TIME_DUAL)


def _fold_weights(m: int) -> np.ndarray:
    w = np.full(m + 1, 2.0)
    w[0] = 1.0
    return w


def _cosine_rows(n: int, ks) -> np.ndarray:
    m = (n - 1) // 2
    if not len(ks):
        return np.zeros((0, m + 1))
    return np.array([folded_dft_row(n, k) for k in ks])


def build_formulation(g: CirculantGraph, formulation: Formulation) -> lpsolve.LpProblem:
    """The folded LP for one of the four equivalent theta formulations."""
    n, m = g.n, g.m
    edges = sorted(s for s in g.connection_set if s <= m)
    nonedges = sorted(set(range(1, m + 1)) - set(edges))
    weights = _fold_weights(m)
    e0 = np.zeros(m + 1)
    e0[0] = 1.0
    all_rows = _cosine_rows(n, range(m + 1))

    if formulation == FREQUENCY_PRIMAL:
        a_eq = np.vstack([weights[None, :], _cosine_rows(n, edges)])
        b_eq = np.zeros(a_eq.shape[0])
        b_eq[0] = 1.0
        return lpsolve.LpProblem("max", n * e0, a_eq=a_eq, b_eq=b_eq)
    if formulation == FREQUENCY_DUAL:
        # two rewrites keep the solver out of trouble here.  First, the
        # pinned coordinates u_k = -1/n (k a non-edge) are substituted out
        # instead of carried as equality rows.  Second, u_0 appears with
        # coefficient 1 in every ge row, so shifting it by max(rhs) makes
        # every rhs nonpositive: the all-slack basis is then feasible and
        # the solve needs no phase 1 at all.  The shift lands in the offset.
        cols = [0] + edges
        rhs = (1.0 / n) * all_rows[:, nonedges].sum(axis=1)
        shift = float(max(rhs.max(), 0.0))
        c = np.zeros(len(cols))
        c[0] = n
        return lpsolve.LpProblem(
            "min", c,
            a_ge=all_rows[:, cols], b_ge=rhs - shift,
            nonneg=np.zeros(len(cols), dtype=bool), offset=1.0 + n * shift,
        )
    if formulation == TIME_PRIMAL:
        # u_0 = 1 and the edge coordinates u_j = 0 are substituted out the
        # same way; every ge row then reads w_k . u >= -1
        if not nonedges:
            # complete graph: nothing left to optimize, value is the offset
            return lpsolve.LpProblem("max", np.zeros(1), offset=1.0)
        return lpsolve.LpProblem(
            "max", weights[nonedges],
            a_ge=all_rows[:, nonedges], b_ge=-all_rows[:, 0],
            nonneg=np.zeros(len(nonedges), dtype=bool), offset=1.0,
        )
    if formulation == TIME_DUAL:
        return lpsolve.LpProblem(
            "min", weights,
            a_eq=_cosine_rows(n, nonedges), b_eq=np.full(len(nonedges), -1.0),
            offset=1.0,
        )
    raise ValueError(f"unknown formulation {formulation!r}")


def objective_g(g: CirculantGraph, y) -> float:
    """<y, g> for folded symmetric y and the sign spectrum g of the graph.

    On a frequency-primal feasible point this equals n y_0, hence theta at
    the optimum; the identity is what `lovasz_theta` certifies.
    """
    if isinstance(y, SymmetricVector):
        u = y.folded
    else:
        u = np.asarray(y, dtype=np.float64).ravel()
    if u.shape[0] != g.m + 1:
        raise DimensionMismatchError(
            f"folded vector has length {u.shape[0]}, expected {g.m + 1}"
        )
    spec = spectrum(sign_vector(g)).entries[: g.m + 1]
    return float(u[0] * spec[0] + 2.0 * (u[1:] @ spec[1:]))


@dataclass(frozen=True)
class ThetaCertificate:
    """Theta value plus the residuals backing it up.

    y_star is the folded frequency-primal optimizer, t_star the folded
    frequency-dual optimizer; `duality_gap` is the disagreement between the
    two independently solved LPs, not a by-product of one solve.
    """

    graph: CirculantGraph
    theta: float
    y_star: np.ndarray
    t_star: np.ndarray
    duality_gap: float
    kernel_residual: float
    l1_deviation: float
    negativity: float
    objective_identity_residual: float
    iterations: int

    def to_dict(self) -> dict:
        return {
            "n": self.graph.n,
            "connection_set": [int(s) for s in self.graph.connection_set],
            "theta": self.theta,
            "duality_gap": self.duality_gap,
            "kernel_residual": self.kernel_residual,
            "l1_deviation": self.l1_deviation,
            "negativity": self.negativity,
            "objective_identity_residual": self.objective_identity_residual,
            "y_star_folded": [float(v) for v in self.y_star],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _solve_formulation(g: CirculantGraph, formulation: Formulation, tol: float):
    try:
        sol = lpsolve.solve(build_formulation(g, formulation), tol=tol)
    except NumericalBreakdownError as exc:
        raise SolverFailureError(f"{g.key()}: {formulation.name}: {exc}") from exc
    if sol.status != lpsolve.OPTIMAL:
        raise SolverFailureError(
            f"{g.key()}: {formulation.name} LP reported {sol.status}"
        )
    return sol


def lovasz_theta(g: CirculantGraph, tol: float = 1e-9) -> ThetaCertificate:
    """Certified theta of a circulant graph.

    Solves the frequency primal and frequency dual independently and checks
    the optimizer invariants; any violation raises SolverFailureError
    rather than returning a doubtful number.
    """
    n, m = g.n, g.m
    sol_p = _solve_formulation(g, FREQUENCY_PRIMAL, tol)
    sol_d = _solve_formulation(g, FREQUENCY_DUAL, tol)
    theta = sol_p.objective_value
    y_star = sol_p.primal
    gap = abs(theta - sol_d.objective_value)

    edges = sorted(s for s in g.connection_set if s <= m)
    # the dual LP substitutes its pinned coordinates away and shifts u_0;
    # restore the full folded vector: t_k = -1/n on non-edges, and t_0
    # recovered from the objective identity value = n t_0 + 1
    t_star = np.full(m + 1, -1.0 / n)
    t_star[0] = (sol_d.objective_value - 1.0) / n
    if edges:
        t_star[np.asarray(edges, dtype=np.int64)] = sol_d.primal[1:]
    if edges:
        kernel_residual = float(np.abs(_cosine_rows(n, edges) @ y_star).max())
    else:
        kernel_residual = 0.0
    l1_deviation = abs(float(_fold_weights(m) @ y_star) - 1.0)
    negativity = max(0.0, -float(y_star.min()))
    identity_residual = abs(n * float(y_star[0]) - objective_g(g, y_star))

    problems = []
    if not (1.0 - 1e-6 <= theta <= n + 1e-6 * n):
        problems.append(f"theta={theta!r} outside [1, n]")
    if gap > 1e-6 * (1.0 + theta):
        problems.append(f"primal/dual disagreement {gap:.3e}")
    if kernel_residual > 1e-6 * n:
        problems.append(f"kernel residual {kernel_residual:.3e}")
    if l1_deviation > 1e-8:
        problems.append(f"fold-weight sum off by {l1_deviation:.3e}")
    if negativity > 1e-9:
        problems.append(f"negative optimizer entry {negativity:.3e}")
    if identity_residual > 1e-6 * n:
        problems.append(f"objective identity residual {identity_residual:.3e}")
    if problems:
        raise SolverFailureError(f"{g.key()}: " + "; ".join(problems))

    return ThetaCertificate(
        graph=g,
        theta=theta,
        y_star=y_star,
        t_star=t_star,
        duality_gap=gap,
        kernel_residual=kernel_residual,
        l1_deviation=l1_deviation,
        negativity=negativity,
        objective_identity_residual=identity_residual,
        iterations=sol_p.iterations + sol_d.iterations,
    )


@dataclass(frozen=True)
class CrossValidation:
    graph: CirculantGraph
    values: dict
    theta: float
    max_deviation: float


def cross_validate(g: CirculantGraph, tol: float = 1e-9) -> CrossValidation:
    """Solve all four formulations and insist they agree.

    Disagreement beyond 1e-6 (1 + theta) means at least one formulation or
    the solver is wrong, and raises SolverFailureError.
    """
    values = {}
    for formulation in FORMULATIONS:
        values[formulation.name] = _solve_formulation(g, formulation, tol).objective_value
    theta = values[FREQUENCY_PRIMAL.name]
    max_dev = max(abs(a - b) for a, b in combinations(values.values(), 2))
    if max_dev > 1e-6 * (1.0 + theta):
        detail = ", ".join(f"{k}={v:.9f}" for k, v in values.items())
        raise SolverFailureError(f"{g.key()}: formulations disagree ({detail})")
    return CrossValidation(graph=g, values=values, theta=theta, max_deviation=max_dev)


def product_identity_residual(g: CirculantGraph, tol: float = 1e-9) -> float:
    """|theta(G) theta(complement G) - n|; zero in exact arithmetic."""
    t = lovasz_theta(g, tol=tol).theta
    tc = lovasz_theta(complement(g), tol=tol).theta
    return abs(t * tc - g.n)
