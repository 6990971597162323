"""Zero-padded forward FFTs, truncated inverse FFTs and range-shift weights.

These are the 1-D building blocks of everything else in the package:

    fft_padded(x, M)[I]     = sum_i x[i] * exp(-1j * i * 2*pi*I / M)
    ifft_truncated(y, m)[i] = (1/M) * sum_I y[I] * exp(+1j * I * 2*pi*i / M)

with M = len(y) in the second case.  The pair satisfies the adjoint identity

    ifft_truncated(. , m) = (1/M) * fft_padded(. , M)^*

which the adjoint helpers below rely on.  All transforms are backed by
numpy's pocketfft (any length, not just powers of two); twiddle caching is
pocketfft's own and plans are immutable, so concurrent use is safe.
"""

import threading

import numpy as np

# Per-(kind, length) count of 1-D transforms executed, for cost-structure
# assertions in the tests.  Not synchronized beyond a plain lock; intended
# for single-threaded instrumentation only.
_count_lock = threading.Lock()
transform_counts: dict[tuple[str, int], int] = {}


def reset_counts() -> None:
    with _count_lock:
        transform_counts.clear()


def _record(kind: str, length: int, nvec: int) -> None:
    with _count_lock:
        key = (kind, length)
        transform_counts[key] = transform_counts.get(key, 0) + nvec


def _nvec(x: np.ndarray, axis: int) -> int:
    return int(x.size // x.shape[axis]) if x.ndim > 1 else 1


def fft_padded(x: np.ndarray, M: int, axis: int = -1) -> np.ndarray:
    """Forward DFT of length M of the zero-padded input (len <= M)."""
    x = np.asarray(x)
    m = x.shape[axis]
    if M < m:
        raise ValueError(f"padded length M={M} must be >= input length m={m}")
    _record("fft", M, _nvec(x, axis))
    return np.fft.fft(x, n=M, axis=axis)


def ifft_truncated(y: np.ndarray, m: int, axis: int = -1) -> np.ndarray:
    """First m entries of the length-M inverse DFT (m <= M = len along axis)."""
    y = np.asarray(y)
    M = y.shape[axis]
    if m > M:
        raise ValueError(f"truncation length m={m} must be <= input length M={M}")
    _record("ifft", M, _nvec(y, axis))
    out = np.fft.ifft(y, axis=axis)
    sl = [slice(None)] * out.ndim
    sl[axis] = slice(0, m)
    return out[tuple(sl)]


def fft_padded_adjoint(y: np.ndarray, m: int, axis: int = -1) -> np.ndarray:
    """Adjoint of ``fft_padded(., M)`` as a map C^m -> C^M; equals M * ifft_truncated."""
    M = np.asarray(y).shape[axis]
    return M * ifft_truncated(y, m, axis=axis)


def ifft_truncated_adjoint(x: np.ndarray, M: int, axis: int = -1) -> np.ndarray:
    """Adjoint of ``ifft_truncated(., m)`` as a map C^M -> C^m; equals (1/M) * fft_padded."""
    return fft_padded(x, M, axis=axis) / M


def range_shift_weights(m: int, R: int, M: int) -> np.ndarray:
    """Premodulation exp(+1j * i * 2*pi*R/M) shifting DFT output indices by R.

    Multiplying the input by these weights before ``fft_padded`` turns the
    output into  sum_i x[i] exp(-1j * i * 2*pi*(I - R)/M).
    """
    if M < 1:
        raise ValueError("modulus M must be >= 1")
    return np.exp(2j * np.pi * R / M * np.arange(m))
