"""Chirp-Z transform with arbitrary real frequency step and output shift.

The transform computed here is

    czt(x)[I] = sum_i x[i] * exp(-1j * i * 2*pi*(I - R)*alpha / M),   I = 0..P-1

evaluated through a circular convolution of length 2P (one padded FFT, one
truncated IFFT per apply).  Initialization precomputes the data-independent
pre-modulation r, convolution spectrum q_hat and post-modulation s; plans are
immutable and may be shared across threads.
"""

from dataclasses import dataclass

import numpy as np

from gale import fftcore


@dataclass(frozen=True)
class CztPlan:
    m: int                 # input length
    P: int                 # output length
    alpha: float
    modulus: float         # the M of the exponent scale
    R: int                 # output index shift
    q_hat: np.ndarray      # (2P,) FFT of the chirp sequence
    r: np.ndarray          # (m,) pre-modulation
    s: np.ndarray          # (P,) post-modulation, unit modulus


def czt_init(m: int, alpha: float, M: float, P: int, R: int) -> CztPlan:
    """Precompute the (q_hat, r, s) triple for one (m, alpha, M, P, R)."""
    if m < 1:
        raise ValueError("input length m must be >= 1")
    if P < m:
        raise ValueError(f"output length P={P} must be >= input length m={m}")
    i = np.arange(m)
    r = np.exp(-1j * np.pi * alpha / M * i * (i - 2 * R))
    idx = np.arange(2 * P)
    mirrored = np.where(idx < P, idx, 2 * P - idx)
    q = np.exp(1j * np.pi * alpha / M * mirrored.astype(float) ** 2)
    q_hat = fftcore.fft_padded(q, 2 * P)
    I = np.arange(P)
    s = np.exp(-1j * np.pi * alpha / M * I.astype(float) ** 2)
    return CztPlan(m=m, P=P, alpha=float(alpha), modulus=float(M), R=int(R),
                   q_hat=q_hat, r=r, s=s)


def czt_apply(x: np.ndarray, plan: CztPlan) -> np.ndarray:
    """Apply the transform; x may be (m,) or a stack (..., m) sharing the plan."""
    x = np.asarray(x, dtype=np.complex128)
    if x.shape[-1] != plan.m:
        raise ValueError(f"input length {x.shape[-1]} does not match plan.m={plan.m}")
    p = x * plan.r
    spec = fftcore.fft_padded(p, 2 * plan.P, axis=-1)
    spec *= plan.q_hat
    y = fftcore.ifft_truncated(spec, plan.P, axis=-1)
    y *= plan.s
    return y


def czt_adjoint(y: np.ndarray, plan: CztPlan) -> np.ndarray:
    """Exact adjoint of czt_apply as a linear map C^m -> C^P."""
    y = np.asarray(y, dtype=np.complex128)
    if y.shape[-1] != plan.P:
        raise ValueError(f"input length {y.shape[-1]} does not match plan.P={plan.P}")
    t = y * np.conj(plan.s)
    spec = fftcore.ifft_truncated_adjoint(t, 2 * plan.P, axis=-1)
    spec *= np.conj(plan.q_hat)
    x = fftcore.fft_padded_adjoint(spec, plan.m, axis=-1)
    x *= np.conj(plan.r)
    return x
