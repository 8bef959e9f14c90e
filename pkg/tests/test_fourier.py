"""Folded symmetric vectors and the real DFT of sign vectors."""

import math

import numpy as np
import pytest

from circtheta import (
    BitStream,
    DimensionMismatchError,
    IndexOutOfRangeError,
    NotSymmetricError,
    SymmetricVector,
    fold,
    folded_dft_row,
    from_connection_set,
    row_dot,
    sample_random,
    sign_vector,
    spectrum,
    unfold,
)


def _random_symmetric(n, rng):
    m = (n - 1) // 2
    u = rng.standard_normal(m + 1)
    return np.concatenate([u, u[:0:-1]])


def test_fold_unfold_round_trip():
    rng = np.random.default_rng(11)
    for n in (3, 9, 31):
        y = _random_symmetric(n, rng)
        u = fold(y)
        assert u.n == n
        assert u.m == (n - 1) // 2
        np.testing.assert_array_equal(u.unfold(), y)
        np.testing.assert_array_equal(unfold(u, n), y)


def test_fold_rejects_asymmetric():
    with pytest.raises(NotSymmetricError):
        fold(np.array([1.0, 2.0, 3.0, 2.0, 2.5]))
    with pytest.raises(DimensionMismatchError):
        fold(np.array([1.0, 2.0, 2.0, 1.0]))  # even length
    with pytest.raises(DimensionMismatchError):
        unfold(SymmetricVector(np.array([1.0, 2.0])), 7)


def test_fold_tolerance_boundary():
    y = np.array([0.5, 1.0, 2.0, 2.0, 1.0 + 5e-13])
    fold(y)  # within default 1e-12
    with pytest.raises(NotSymmetricError):
        fold(y, tol=1e-14)


def test_folded_norms():
    u = SymmetricVector(np.array([3.0, -1.0, 2.0]))
    # full vector is (3, -1, 2, 2, -1)
    assert u.l1() == pytest.approx(9.0, abs=0)
    assert u.l2() == pytest.approx(math.sqrt(19.0), rel=1e-15)


def test_dft_row_zero_is_fold_weights():
    w = folded_dft_row(9, 0)
    np.testing.assert_array_equal(w, np.array([1.0, 2.0, 2.0, 2.0, 2.0]))


def test_dft_row_symmetry_k_vs_n_minus_k():
    # cos(2 pi r/n) == cos(2 pi (n-r)/n) up to roundoff in the angle reduction
    for n in (9, 25):
        for k in range(1, (n - 1) // 2 + 1):
            np.testing.assert_allclose(
                folded_dft_row(n, k), folded_dft_row(n, n - k), atol=1e-12
            )


def test_dft_row_index_bounds():
    with pytest.raises(IndexOutOfRangeError):
        folded_dft_row(9, 9)
    with pytest.raises(IndexOutOfRangeError):
        folded_dft_row(9, -1)


def test_row_dot_matches_complex_fft():
    rng = np.random.default_rng(3)
    for n in (9, 31, 101):
        y = _random_symmetric(n, rng)
        u = fold(y)
        f = np.fft.fft(y)
        assert np.abs(f.imag).max() < 1e-9
        for k in range(n):
            assert row_dot(k, u) == pytest.approx(float(f[k].real), abs=1e-9)


def test_pentagon_spectrum_frozen():
    # computed by hand from 2cos(72deg) = (sqrt(5)-1)/2, 2cos(144deg) = -(sqrt(5)+1)/2
    g = spectrum(sign_vector(from_connection_set(5, (1, 4))))
    expected = np.array([1.0, -1.2360680, 3.2360680, 3.2360680, -1.2360680])
    np.testing.assert_allclose(g.entries, expected, atol=1e-7)
    assert g.linf() == pytest.approx(3.2360680, abs=1e-7)
    assert g.source == "n=5;S=1,4"


def test_spectrum_matches_complex_fft():
    for n, idx in ((9, 0), (31, 1), (101, 2)):
        graph = sample_random(n, BitStream((17, n, idx)))
        b = sign_vector(graph)
        g = spectrum(b)
        np.testing.assert_allclose(g.entries, np.fft.fft(b.entries).real, atol=1e-8)


def test_spectrum_invariants():
    for n in (9, 31, 101):
        for idx in range(5):
            graph = sample_random(n, BitStream((23, n, idx)))
            g = spectrum(sign_vector(graph)).entries
            assert g[0] == pytest.approx(n - 2 * graph.degree, abs=1e-9 * n)
            assert g.sum() == pytest.approx(n, abs=1e-9 * n)
            assert np.square(g).sum() == pytest.approx(n * n, rel=1e-9)
            np.testing.assert_allclose(g[1:], g[:0:-1], atol=1e-9 * n)


def test_spectrum_empty_graph_is_delta():
    n = 11
    g = spectrum(sign_vector(from_connection_set(n, ())))
    expected = np.zeros(n)
    expected[0] = n
    np.testing.assert_allclose(g.entries, expected, atol=1e-9)
