# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled simplex step kernel.

Mirrors _simplex_py exactly (same entering rule, same tie-breaking, same
arithmetic order); built with -ffp-contract=off so the two backends stay
bit-compatible.  The win over numpy comes from fusing column choice, ratio
test and the rank-1 pivot update into one pass without temporaries, and from
skipping rows whose eliminating multiplier is exactly zero.
"""

import numpy as np

cimport numpy as cnp

STEP_PIVOTED = 0
STEP_OPTIMAL = 1
STEP_UNBOUNDED = 2

BACKEND_NAME = "cython"


cdef void _pivot(double[:, ::1] tab, Py_ssize_t prow, Py_ssize_t pcol) noexcept nogil:
    cdef Py_ssize_t nr = tab.shape[0]
    cdef Py_ssize_t nc = tab.shape[1]
    cdef double piv = tab[prow, pcol]
    cdef Py_ssize_t i, j
    cdef double mul
    for j in range(nc):
        tab[prow, j] = tab[prow, j] / piv
    for i in range(nr):
        if i == prow:
            continue
        mul = tab[i, pcol]
        if mul != 0.0:
            for j in range(nc):
                tab[i, j] = tab[i, j] - mul * tab[prow, j]
    for i in range(nr):
        tab[i, pcol] = 0.0
    tab[prow, pcol] = 1.0


def apply_pivot(double[:, ::1] tab, long long[::1] basis, Py_ssize_t prow, Py_ssize_t pcol):
    _pivot(tab, prow, pcol)
    basis[prow] = pcol


def simplex_step(
    double[:, ::1] tab,
    long long[::1] basis,
    Py_ssize_t cost_row,
    Py_ssize_t nrows,
    Py_ssize_t nact,
    bint bland,
    double eps_cost,
    double eps_pivot,
    double degen_eps,
):
    cdef Py_ssize_t rhs_col = tab.shape[1] - 1
    cdef Py_ssize_t pcol = -1
    cdef Py_ssize_t prow = -1
    cdef Py_ssize_t i, j
    cdef double best, a, r, rbest
    cdef bint degenerate

    if bland:
        for j in range(nact):
            if tab[cost_row, j] < -eps_cost:
                pcol = j
                break
    else:
        best = -eps_cost
        for j in range(nact):
            if tab[cost_row, j] < best:
                best = tab[cost_row, j]
                pcol = j
    if pcol < 0:
        return STEP_OPTIMAL, -1, -1, False

    rbest = 0.0
    for i in range(nrows):
        a = tab[i, pcol]
        if a > eps_pivot:
            r = tab[i, rhs_col] / a
            if prow < 0 or r < rbest or (r == rbest and basis[i] < basis[prow]):
                rbest = r
                prow = i
    if prow < 0:
        return STEP_UNBOUNDED, -1, pcol, False

    degenerate = tab[prow, rhs_col] <= degen_eps
    _pivot(tab, prow, pcol)
    basis[prow] = pcol
    return STEP_PIVOTED, prow, pcol, degenerate
