"""Exact combinatorial invariants for small graphs.

Independent of the LP machinery on purpose: these are brute-force-with-
pruning computations of the independence, clique, and chromatic numbers,
used to sandwich theta (alpha <= theta <= chromatic number of the
complement) on instances small enough to afford it.  Vertex subsets are
Python int bitmasks, so everything here is exact.
"""

from __future__ import annotations

import numpy as np

from .errors import TooLargeError
from .graph import CirculantGraph, complement

__all__ = [
    "MAX_INDEPENDENCE_ORDER",
    "MAX_CHROMATIC_ORDER",
    "dense_adjacency",
    "independence_number",
    "clique_number",
    "chromatic_number",
    "sandwich_check",
]

MAX_INDEPENDENCE_ORDER = 40
MAX_CHROMATIC_ORDER = 20


def dense_adjacency(g: CirculantGraph) -> np.ndarray:
    """Boolean n x n adjacency matrix."""
    n = g.n
    a = np.zeros((n, n), dtype=bool)
    idx = np.arange(n)
    for s in g.connection_set:
        a[idx, (idx + s) % n] = True
    return a


def _neighbor_masks(g: CirculantGraph) -> list[int]:
    n = g.n
    masks = []
    for v in range(n):
        mask = 0
        for s in g.connection_set:
            mask |= 1 << ((v + s) % n)
        masks.append(mask)
    return masks


def _clique_cover_bound(avail: int, masks: list[int]) -> int:
    # every clique meets an independent set at most once, so the number of
    # greedy cliques covering `avail` bounds alpha restricted to it
    bound = 0
    rest = avail
    while rest:
        v = (rest & -rest).bit_length() - 1
        rest &= ~(1 << v)
        cand = rest & masks[v]
        while cand:
            u = (cand & -cand).bit_length() - 1
            rest &= ~(1 << u)
            cand &= masks[u] & rest
        bound += 1
    return bound


def _branch_vertex(avail: int, masks: list[int]) -> int:
    best_v, best_deg = -1, -1
    rest = avail
    while rest:
        v = (rest & -rest).bit_length() - 1
        rest &= rest - 1
        deg = (avail & masks[v]).bit_count()
        if deg > best_deg:
            best_v, best_deg = v, deg
    return best_v


def _max_independent_set(g: CirculantGraph) -> tuple[int, int]:
    """(alpha, witness bitmask) by branch and bound with a clique-cover bound."""
    masks = _neighbor_masks(g)
    best_size = 0
    best_set = 0

    def rec(avail: int, chosen: int, size: int) -> None:
        nonlocal best_size, best_set
        if size > best_size:
            best_size, best_set = size, chosen
        if not avail:
            return
        if size + _clique_cover_bound(avail, masks) <= best_size:
            return
        v = _branch_vertex(avail, masks)
        bit = 1 << v
        rec(avail & ~(masks[v] | bit), chosen | bit, size + 1)
        rec(avail & ~bit, chosen, size)

    rec((1 << g.n) - 1, 0, 0)
    return best_size, best_set


def independence_number(g: CirculantGraph) -> int:
    if g.n > MAX_INDEPENDENCE_ORDER:
        raise TooLargeError(
            f"independence number is exact only up to n={MAX_INDEPENDENCE_ORDER}, got {g.n}"
        )
    return _max_independent_set(g)[0]


def clique_number(g: CirculantGraph) -> int:
    if g.n > MAX_INDEPENDENCE_ORDER:
        raise TooLargeError(
            f"clique number is exact only up to n={MAX_INDEPENDENCE_ORDER}, got {g.n}"
        )
    return _max_independent_set(complement(g))[0]


def chromatic_number(g: CirculantGraph) -> int:
    if g.n > MAX_CHROMATIC_ORDER:
        raise TooLargeError(
            f"chromatic number is exact only up to n={MAX_CHROMATIC_ORDER}, got {g.n}"
        )
    n = g.n
    if not g.connection_set:
        return 1
    masks = _neighbor_masks(g)
    omega, clique_mask = _max_independent_set(complement(g))
    clique = [v for v in range(n) if clique_mask >> v & 1]
    rest = [v for v in range(n) if not clique_mask >> v & 1]

    for k in range(omega, n + 1):
        col_mask = [0] * k
        for c, v in enumerate(clique):  # a max clique needs k distinct colors anyway
            col_mask[c] = 1 << v

        def rec(i: int, highest: int) -> bool:
            if i == len(rest):
                return True
            v = rest[i]
            bit = 1 << v
            for c in range(min(k - 1, highest + 1) + 1):
                if not col_mask[c] & masks[v]:
                    col_mask[c] |= bit
                    if rec(i + 1, max(highest, c)):
                        return True
                    col_mask[c] &= ~bit
            return False

        if rec(0, omega - 1):
            return k
    return n


def sandwich_check(g: CirculantGraph, theta: float, slack: float = 1e-6) -> bool:
    """alpha(G) <= theta <= chromatic number of the complement, within slack."""
    alpha = independence_number(g)
    chrom = chromatic_number(complement(g))
    return alpha - slack <= theta <= chrom + slack
