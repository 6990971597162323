"""Pure-NumPy implementations of the hot kernels.

Selected automatically when the compiled extension is unavailable; the
compiled and fallback versions agree to near machine precision but are not
bit-identical (different accumulation orders).  See benchmarks/ for a speed
comparison.
"""

import numpy as np

BACKEND_NAME = "numpy"


def gather_forward(V, w, vbase, counts, out):
    """out[:, K] = sum_t w[:, K, t] * V[:, vbase[K] + t]  for t < counts[K]."""
    for K in range(len(vbase)):
        c = counts[K]
        b = vbase[K]
        np.einsum("it,it->i", w[:, K, :c], V[:, b:b + c], out=out[:, K])
    return out


def scatter_adjoint(Y, w, vbase, counts, out):
    """Adjoint of gather_forward: out[:, vbase[K]+t] += conj(w[:, K, t]) * Y[:, K].

    K is traversed in ascending order so the accumulation order (and hence
    the bit pattern) is fixed.
    """
    for K in range(len(vbase)):
        c = counts[K]
        b = vbase[K]
        out[:, b:b + c] += np.conj(w[:, K, :c]) * Y[:, K, None]
    return out


def dtft_block(x, xi, ups, out):
    """Direct DTFT of the image x at one block of frequency points.

    out[k] = sum_{i,j} x[i, j] * exp(-1j*(j*xi[k] + i*ups[k]))

    The column contraction runs through BLAS; the row accumulation is
    compensated (Kahan) so the oracle error stays at the few-eps level.
    """
    m, n = x.shape
    col_phase = np.exp(-1j * np.outer(np.arange(n), xi))     # (n, k)
    row_phase = np.exp(-1j * np.outer(np.arange(m), ups))    # (m, k)
    partial = x @ col_phase                                   # (m, k)
    acc = np.zeros(xi.shape[0], dtype=np.complex128)
    comp = np.zeros_like(acc)
    for i in range(m):
        term = partial[i] * row_phase[i] - comp
        new = acc + term
        comp = (new - acc) - term
        acc = new
    out[:] = acc
    return out
