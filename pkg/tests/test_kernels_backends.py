"""Compiled extension vs NumPy fallback: same results within roundoff."""

import numpy as np
import numpy.testing as npt
import pytest

from gale import _kernels, _kernels_np

from conftest import random_complex

native = pytest.importorskip("gale._native", reason="compiled extension not built")


def _window_tables(rng, M, N, P, S):
    w = random_complex(rng, (M, N, 2 * S + 1))
    counts = rng.integers(1, 2 * S + 2, size=N)
    vbase = rng.integers(0, P - 2 * S - 1, size=N)
    for K in range(N):
        w[:, K, counts[K]:] = 0.0
    return np.ascontiguousarray(w), vbase.astype(np.int64), counts.astype(np.int64)


def test_active_backend_is_native():
    assert _kernels.backend_name() == "native"


def test_gather_matches_numpy(rng):
    M, N, P, S = 12, 9, 40, 3
    V = np.ascontiguousarray(random_complex(rng, (M, P)))
    w, vbase, counts = _window_tables(rng, M, N, P, S)
    a = native.gather_forward(V, w, vbase, counts, np.empty((M, N), complex))
    b = _kernels_np.gather_forward(V, w, vbase, counts, np.empty((M, N), complex))
    npt.assert_allclose(a, b, rtol=1e-13, atol=1e-13)


def test_scatter_matches_numpy(rng):
    M, N, P, S = 12, 9, 40, 3
    Y = np.ascontiguousarray(random_complex(rng, (M, N)))
    w, vbase, counts = _window_tables(rng, M, N, P, S)
    a = native.scatter_adjoint(Y, w, vbase, counts, np.zeros((M, P), complex))
    b = _kernels_np.scatter_adjoint(Y, w, vbase, counts, np.zeros((M, P), complex))
    npt.assert_allclose(a, b, rtol=1e-13, atol=1e-13)


def test_dtft_matches_numpy(rng):
    x = np.ascontiguousarray(random_complex(rng, (9, 11)))
    pts = rng.uniform(-np.pi, np.pi, (150, 2))
    xi = np.ascontiguousarray(pts[:, 0])
    ups = np.ascontiguousarray(pts[:, 1])
    a = native.dtft_block(x, xi, ups, np.empty(150, complex))
    b = _kernels_np.dtft_block(x, xi, ups, np.empty(150, complex))
    npt.assert_allclose(a, b, rtol=1e-12, atol=1e-12 * np.abs(b).max())


def test_dtft_matches_definition(rng):
    x = random_complex(rng, (4, 5))
    pts = rng.uniform(-np.pi, np.pi, (20, 2))
    expected = np.array([
        sum(x[i, j] * np.exp(-1j * (j * xi + i * ups))
            for i in range(4) for j in range(5))
        for xi, ups in pts])
    for impl in (native, _kernels_np):
        got = impl.dtft_block(np.ascontiguousarray(x),
                              np.ascontiguousarray(pts[:, 0]),
                              np.ascontiguousarray(pts[:, 1]),
                              np.empty(20, complex))
        npt.assert_allclose(got, expected, rtol=1e-12, atol=1e-13)
