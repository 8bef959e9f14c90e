"""Circulant graphs on an odd number of vertices.

A circulant graph is fully determined by its vertex count n and the
connection set S of vertex 0: (i, j) is an edge iff (i - j) mod n is in S.
S must be symmetric (k in S <=> n-k in S) and must not contain 0, so the
graph is simple and undirected.  Only odd n is supported; the folded
half-spectrum representation used downstream is exact only in that case.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    AsymmetricSetError,
    BadResidueClassError,
    EvenOrderError,
    NotPrimeError,
    OutOfRangeError,
    ZeroInSetError,
)

__all__ = [
    "CirculantGraph",
    "SignVector",
    "BitStream",
    "from_connection_set",
    "graph_from_bits",
    "sample_random",
    "paley",
    "complement",
    "sign_vector",
    "parse_set_file",
    "format_set_file",
]


def _check_order(n: int) -> None:
    if n % 2 == 0:
        raise EvenOrderError(f"vertex count must be odd, got n={n}")
    if n < 3:
        raise EvenOrderError(f"vertex count must be >= 3, got n={n}")


@dataclass(frozen=True)
class CirculantGraph:
    """Immutable circulant graph: odd order n plus symmetric connection set."""

    n: int
    connection_set: tuple[int, ...]

    def __post_init__(self):
        _check_order(self.n)
        seen = sorted(set(int(s) for s in self.connection_set))
        object.__setattr__(self, "connection_set", tuple(seen))
        for s in seen:
            if s == 0:
                raise ZeroInSetError("0 in connection set (self-loop)")
            if not 1 <= s <= self.n - 1:
                raise OutOfRangeError(f"residue {s} outside 1..{self.n - 1}")
        sset = set(seen)
        for s in seen:
            if (self.n - s) not in sset:
                raise AsymmetricSetError(
                    f"residue {s} in set but {self.n - s} is not"
                )

    @property
    def m(self) -> int:
        """Number of independent residue pairs, (n-1)/2."""
        return (self.n - 1) // 2

    @property
    def degree(self) -> int:
        return len(self.connection_set)

    def is_edge(self, i: int, j: int) -> bool:
        return (i - j) % self.n in self._set

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(sorted((v + s) % self.n for s in self.connection_set))

    @property
    def _set(self) -> frozenset:
        return frozenset(self.connection_set)

    def complement(self) -> "CirculantGraph":
        full = set(range(1, self.n)) - set(self.connection_set)
        return CirculantGraph(self.n, tuple(sorted(full)))

    def key(self) -> str:
        """Canonical one-line identifier, e.g. 'n=9;S=2,3,6,7'."""
        return f"n={self.n};S=" + ",".join(str(s) for s in self.connection_set)


@dataclass(frozen=True)
class SignVector:
    """The +-1 vector b: b[0]=+1, b[k]=-1 exactly on edge residues."""

    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.asarray(self.entries, dtype=np.float64)
        if arr.ndim != 1 or arr.shape[0] < 3 or arr.shape[0] % 2 == 0:
            raise EvenOrderError("sign vector length must be odd and >= 3")
        if not np.all(np.abs(arr) == 1.0) or arr[0] != 1.0:
            raise ValueError("sign vector entries must be +-1 with entry 0 = +1")
        if not np.array_equal(arr[1:], arr[:0:-1]):
            raise AsymmetricSetError("sign vector must satisfy b[k] == b[n-k]")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def edge_residues(self) -> tuple[int, ...]:
        return tuple(int(k) for k in np.flatnonzero(self.entries < 0))


class BitStream:
    """Deterministic fair-bit source.

    The output is a pure function of the key material: the key is hashed
    through numpy's SeedSequence into a Philox counter-based generator, so
    streams for distinct (seed, n, sample) triples are independent and
    reproducible regardless of scheduling.
    """

    def __init__(self, key):
        if isinstance(key, int):
            key = (key,)
        ss = np.random.SeedSequence(list(int(k) for k in key))
        self._gen = np.random.Generator(np.random.Philox(key=ss.generate_state(2, np.uint64)))

    def take(self, count: int) -> np.ndarray:
        """Return the next `count` bits as a uint8 array of 0/1."""
        if count < 0:
            raise ValueError("bit count must be >= 0")
        return self._gen.integers(0, 2, size=count, dtype=np.uint8)


def from_connection_set(n: int, residues) -> CirculantGraph:
    """Build the circulant graph on n vertices with the given connection set."""
    _check_order(n)
    return CirculantGraph(n, tuple(int(s) for s in residues))


def graph_from_bits(n: int, bits) -> CirculantGraph:
    """Graph whose first adjacency row is (0 x x-reversed) for bit vector x.

    Bit x_k (1-indexed, k = 1..m) switches the residue pair {k, n-k}.
    """
    _check_order(n)
    m = (n - 1) // 2
    bits = np.asarray(bits)
    if bits.shape != (m,):
        raise ValueError(f"need exactly m={m} bits for n={n}, got shape {bits.shape}")
    residues = []
    for k in range(1, m + 1):
        if bits[k - 1]:
            residues.extend((k, n - k))
    return CirculantGraph(n, tuple(sorted(residues)))


def sample_random(n: int, bitstream: BitStream) -> CirculantGraph:
    """Draw a dense random circulant graph: m = (n-1)/2 fair bits, one per pair.

    Consumes exactly m bits from the stream.
    """
    _check_order(n)
    m = (n - 1) // 2
    return graph_from_bits(n, bitstream.take(m))


def _is_prime(p: int) -> bool:
    # trial division; inputs here are desk-scale
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def paley(p: int) -> CirculantGraph:
    """Paley graph on a prime p = 1 (mod 4): residues are the nonzero squares mod p."""
    if not _is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    if p % 4 != 1:
        raise BadResidueClassError(
            f"p={p} is not 1 mod 4; the quadratic-residue set would be asymmetric"
        )
    squares = {(k * k) % p for k in range(1, p)}
    return CirculantGraph(p, tuple(sorted(squares)))


def complement(g: CirculantGraph) -> CirculantGraph:
    return g.complement()


def sign_vector(g: CirculantGraph) -> SignVector:
    b = np.ones(g.n)
    for s in g.connection_set:
        b[s] = -1.0
    return SignVector(b)


# ---- connection-set text format --------------------------------------------
#
#   n=9
#   2,3,6,7
#
# Both members of every residue pair are listed.  An empty second line (or a
# missing one) means the empty graph.

def parse_set_file(text: str) -> CirculantGraph:
    lines = [ln.strip() for ln in text.strip().splitlines()]
    if not lines or not lines[0].startswith("n="):
        raise ValueError("set file must start with a line 'n=<odd int>'")
    n = int(lines[0][2:])
    residues: list[int] = []
    if len(lines) > 1 and lines[1]:
        residues = [int(tok) for tok in lines[1].split(",")]
    return from_connection_set(n, residues)


def format_set_file(g: CirculantGraph) -> str:
    return f"n={g.n}\n" + ",".join(str(s) for s in g.connection_set) + "\n"
