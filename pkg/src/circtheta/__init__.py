"""Exact Lovasz numbers of circulant graphs, with a Monte-Carlo harness.

The theta function of a circulant graph reduces to a small linear program
over folded symmetric vectors; this package solves it with a deterministic
two-phase simplex, certifies every answer against its dual and the sign
spectrum, and runs seeded experiments over random connection sets.
"""

from ._backend import backend_name
from .errors import (
    AsymmetricSetError,
    BadResidueClassError,
    CircthetaError,
    DimensionMismatchError,
    EvenOrderError,
    IndexOutOfRangeError,
    NotPrimeError,
    NotSymmetricError,
    NumericalBreakdownError,
    OutOfRangeError,
    SolverFailureError,
    TooLargeError,
    ZeroInSetError,
)
from .fourier import (
    SpectrumVector,
    SymmetricVector,
    fold,
    folded_dft_row,
    row_dot,
    spectrum,
    unfold,
)
from .graph import (
    BitStream,
    CirculantGraph,
    SignVector,
    complement,
    format_set_file,
    from_connection_set,
    graph_from_bits,
    paley,
    parse_set_file,
    sample_random,
    sign_vector,
)
from .harness import (
    ExperimentConfig,
    ExperimentKind,
    ScalingRecord,
    TailRecord,
    run_experiment,
    run_kernel_ratio,
    run_scaling,
    run_tails,
    selftest,
    theta_upper_bound,
)
from .lpsolve import INFEASIBLE, OPTIMAL, UNBOUNDED, LpProblem, LpSolution, solve, to_standard_form
from .oracles import (
    chromatic_number,
    clique_number,
    dense_adjacency,
    independence_number,
    sandwich_check,
)
from .theta import (
    FORMULATIONS,
    CrossValidation,
    Domain,
    Formulation,
    Side,
    ThetaCertificate,
    build_formulation,
    cross_validate,
    lovasz_theta,
    objective_g,
    product_identity_residual,
)

__version__ = "0.1.0"
