"""Approximation-quality metrics: mean relative error, relative squared error
and the image l1 norm the error bound scales with."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ErrorReport:
    mre: float
    rse: float
    max_abs: float
    max_abs_bound: float   # worst-case truncation bound used for comparison


def mre(y, yhat, skip_zeros: bool = False) -> float:
    """Mean of |y - yhat| / |y| over all entries.

    The definition presumes a nonzero reference everywhere; by default a zero
    entry raises (naming its index).  skip_zeros=True averages over the
    nonzero entries instead, for data where exact zeros legitimately occur.
    """
    y = np.asarray(y)
    yhat = np.asarray(yhat)
    if y.shape != yhat.shape:
        raise ValueError(f"shape mismatch: {y.shape} vs {yhat.shape}")
    mag = np.abs(y)
    zero = mag == 0
    if np.any(zero):
        if not skip_zeros:
            idx = tuple(int(v) for v in np.argwhere(zero)[0])
            raise ValueError(f"reference entry at index {idx} is zero; "
                             "MRE is undefined (use skip_zeros to average over the rest)")
        keep = ~zero
        if not np.any(keep):
            raise ValueError("reference is identically zero")
        return float(np.mean(np.abs(y[keep] - yhat[keep]) / mag[keep]))
    return float(np.mean(np.abs(y - yhat) / mag))


def rse(y, yhat) -> float:
    """sum |y - yhat|^2 / sum |y|^2."""
    y = np.asarray(y)
    yhat = np.asarray(yhat)
    if y.shape != yhat.shape:
        raise ValueError(f"shape mismatch: {y.shape} vs {yhat.shape}")
    denom = np.sum(np.abs(y) ** 2)
    if denom == 0:
        raise ValueError("reference has zero norm; RSE is undefined")
    return float(np.sum(np.abs(y - yhat) ** 2) / denom)


def l1_norm(x) -> float:
    """Sum of complex moduli of all entries."""
    return float(np.sum(np.abs(x)))
