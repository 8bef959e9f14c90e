"""Exception hierarchy.

Everything raised on purpose by this package derives from CircthetaError, and
additionally from the closest builtin (ValueError, IndexError, ...) so that
callers who do not care about the fine-grained classes can catch the usual
suspects.
"""


class CircthetaError(Exception):
    """Base class for all errors raised by circtheta."""


# ---- graph construction ----------------------------------------------------

class EvenOrderError(CircthetaError, ValueError):
    """Vertex count must be odd (and >= 3)."""


class ZeroInSetError(CircthetaError, ValueError):
    """0 is not a valid connection-set residue (no self-loops)."""


class AsymmetricSetError(CircthetaError, ValueError):
    """Connection set must satisfy k in S  <=>  n-k in S."""


class OutOfRangeError(CircthetaError, ValueError):
    """Residue outside 1..n-1."""


class NotPrimeError(CircthetaError, ValueError):
    """Paley graphs need a prime modulus."""


class BadResidueClassError(CircthetaError, ValueError):
    """Paley graphs need p = 1 (mod 4), else the residue set is asymmetric."""


# ---- fourier ----------------------------------------------------------------

class NotSymmetricError(CircthetaError, ValueError):
    """Vector fails y[k] == y[n-k]."""


class IndexOutOfRangeError(CircthetaError, IndexError):
    """DFT row index outside 0..n-1."""


class DimensionMismatchError(CircthetaError, ValueError):
    """Folded vector length does not match the graph."""


# ---- LP solver / theta ------------------------------------------------------

class NumericalBreakdownError(CircthetaError, ArithmeticError):
    """Basis matrix too ill-conditioned (or certification failed) during a solve."""


class SolverFailureError(CircthetaError, RuntimeError):
    """An LP solve failed while certifying a graph; carries the graph identity."""


# ---- oracles ----------------------------------------------------------------

class TooLargeError(CircthetaError, ValueError):
    """Graph exceeds the hard size limit of an exact combinatorial oracle."""
