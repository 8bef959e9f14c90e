"""DFT rows restricted to symmetric vectors, and the spectrum g = Fb.

Everything here exploits that for odd n a vector with y[k] == y[n-k] is
determined by its first m+1 = (n+1)/2 entries ("folded" form), and that the
DFT of such a vector is real:

    <y, f_k> = y[0] + sum_{j=1..m} 2 cos(2 pi j k / n) y[j].

Cosine arguments are reduced mod n before the multiply by 2 pi / n so that
large j*k products do not lose precision.  Direct summation is used instead
of an FFT: at the target sizes (n <= 4096) the LP solves dominate runtime.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatchError, IndexOutOfRangeError, NotSymmetricError
from .graph import SignVector

__all__ = [
    "SymmetricVector",
    "SpectrumVector",
    "fold",
    "unfold",
    "row_dot",
    "folded_dft_row",
    "spectrum",
]

# tolerance scales: linear-sized identities at 1e-9*n, the quadratic Parseval
# identity at 1e-6*n^2 (entries of g scale up to n, so squares accumulate
# roundoff ~n times faster)
SUM_TOL = 1e-9
PARSEVAL_TOL = 1e-6


@dataclass(frozen=True)
class SymmetricVector:
    """Folded form u of a symmetric vector y in R^n: y[0]=u[0], y[k]=y[n-k]=u[k]."""

    folded: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.ascontiguousarray(self.folded, dtype=np.float64)
        if arr.ndim != 1 or arr.shape[0] < 2:
            raise DimensionMismatchError("folded vector needs at least 2 entries")
        arr.setflags(write=False)
        object.__setattr__(self, "folded", arr)

    @property
    def n(self) -> int:
        return 2 * self.folded.shape[0] - 1

    @property
    def m(self) -> int:
        return self.folded.shape[0] - 1

    def unfold(self) -> np.ndarray:
        return unfold(self, self.n)

    def l1(self) -> float:
        u = self.folded
        return float(abs(u[0]) + 2.0 * np.abs(u[1:]).sum())

    def l2(self) -> float:
        u = self.folded
        return float(np.sqrt(u[0] ** 2 + 2.0 * np.square(u[1:]).sum()))


def fold(y, tol: float = 1e-12) -> SymmetricVector:
    """Fold a length-n symmetric vector; errors if y[k] != y[n-k] beyond tol."""
    y = np.asarray(y, dtype=np.float64)
    if y.ndim != 1 or y.shape[0] % 2 == 0 or y.shape[0] < 3:
        raise DimensionMismatchError("fold needs an odd-length vector, n >= 3")
    n = y.shape[0]
    m = (n - 1) // 2
    dev = np.abs(y[1:] - y[:0:-1]).max()
    if dev > tol:
        raise NotSymmetricError(f"max |y[k]-y[n-k]| = {dev:.3g} exceeds {tol:.3g}")
    return SymmetricVector(y[: m + 1].copy())


def unfold(u: SymmetricVector, n: int) -> np.ndarray:
    """Expand folded coordinates back to the full length-n symmetric vector."""
    if n != u.n:
        raise DimensionMismatchError(f"folded length {u.folded.shape[0]} does not match n={n}")
    return np.concatenate([u.folded, u.folded[:0:-1]])


def folded_dft_row(n: int, k: int) -> np.ndarray:
    """Weights w with <y, f_k> = w . u for folded u: w = (1, 2cos(2pi k/n), ..., 2cos(2pi mk/n))."""
    if not 0 <= k <= n - 1:
        raise IndexOutOfRangeError(f"row index {k} outside 0..{n - 1}")
    m = (n - 1) // 2
    j = np.arange(m + 1, dtype=np.int64)
    w = 2.0 * np.cos(2.0 * np.pi * ((j * k) % n) / n)
    w[0] = 1.0
    return w


def row_dot(k: int, y: SymmetricVector) -> float:
    """Real value of <y, f_k> for the k-th DFT row and symmetric y."""
    return float(folded_dft_row(y.n, k) @ y.folded)


@dataclass(frozen=True)
class SpectrumVector:
    """Real spectrum g = Fb of a graph's sign vector, with its source identity."""

    entries: np.ndarray = field(repr=False)
    source: str

    def __post_init__(self):
        arr = np.ascontiguousarray(self.entries, dtype=np.float64)
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def linf(self) -> float:
        return float(np.abs(self.entries).max())


def _cosine_block(n: int, ks: np.ndarray) -> np.ndarray:
    """Rows of cos(2 pi j k / n), j = 0..n-1 reduced via (j*k) mod n."""
    j = np.arange(n, dtype=np.int64)
    prods = (ks[:, None] * j[None, :]) % n
    return np.cos(2.0 * np.pi * prods / n)


def spectrum(b: SignVector) -> SpectrumVector:
    """g = Fb, returned real (the imaginary parts vanish for symmetric b).

    Validates the spectrum identities before returning: sum g = n,
    g[0] = n - 2|S|, symmetry, and Parseval sum g^2 = n^2.
    """
    n = b.n
    g = np.empty(n)
    block = 256
    for start in range(0, n, block):
        ks = np.arange(start, min(start + block, n), dtype=np.int64)
        g[start : start + ks.shape[0]] = _cosine_block(n, ks) @ b.entries
    edges = b.edge_residues()

    lin_tol = SUM_TOL * n
    degree = len(edges)
    if abs(g.sum() - n) > lin_tol:
        raise ArithmeticError("spectrum sum identity violated")
    if abs(g[0] - (n - 2 * degree)) > lin_tol:
        raise ArithmeticError("spectrum g[0] identity violated")
    if np.abs(g[1:] - g[:0:-1]).max() > lin_tol:
        raise ArithmeticError("spectrum symmetry violated")
    if abs(np.square(g).sum() - n * n) > PARSEVAL_TOL * n * n:
        raise ArithmeticError("Parseval identity violated")

    source = f"n={n};S=" + ",".join(str(s) for s in edges)
    return SpectrumVector(g, source)
