"""Brute-force DTFT and its adjoint: the ground truth for accuracy tests.

Deliberately naive O(m*n*npoints) evaluation of

    out[k] = sum_{i,j} x[i,j] * exp(-1j*(j*xi_k + i*ups_k))

with compensated summation so that oracle roundoff sits well below the
truncation error bounds it is used to verify.  Points are processed in
fixed-size blocks; threads only distribute whole blocks, so results are
bit-identical for any thread count.
"""

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from gale import _kernels
from gale.domains import GalfdSpec, galfd_points

_BLOCK = 2048


def _check_points(points) -> np.ndarray:
    pts = np.ascontiguousarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError("points must have shape (npoints, 2)")
    return pts


def dtft_direct(x: np.ndarray, points, threads: int = 1) -> np.ndarray:
    """DTFT of the image x at each (xi, upsilon) point; shape (npoints,)."""
    x = np.ascontiguousarray(x, dtype=np.complex128)
    if x.ndim != 2:
        raise ValueError("image must be two-dimensional")
    pts = _check_points(points)
    out = np.empty(len(pts), dtype=np.complex128)
    blocks = range(0, len(pts), _BLOCK)

    def run(start):
        stop = min(start + _BLOCK, len(pts))
        xi = np.ascontiguousarray(pts[start:stop, 0])
        ups = np.ascontiguousarray(pts[start:stop, 1])
        _kernels.dtft_block(x, xi, ups, out[start:stop])

    if threads > 1 and len(pts) > _BLOCK:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(run, blocks))
    else:
        for start in blocks:
            run(start)
    return out


def dtft_adjoint_direct(values, points, m: int, n: int, threads: int = 1) -> np.ndarray:
    """Exact adjoint of dtft_direct: x[i,j] = sum_k values[k] * exp(+1j*(j*xi_k + i*ups_k))."""
    values = np.asarray(values, dtype=np.complex128)
    pts = _check_points(points)
    if values.shape != (len(pts),):
        raise ValueError(
            f"values length {values.shape} does not match {len(pts)} points")
    rows = np.arange(m)
    cols = np.arange(n)

    def run(start):
        stop = min(start + _BLOCK, len(pts))
        xi = pts[start:stop, 0]
        ups = pts[start:stop, 1]
        row_phase = np.exp(1j * np.outer(rows, ups))          # (m, k)
        col_phase = np.exp(1j * np.outer(xi, cols))           # (k, n)
        return (row_phase * values[start:stop]) @ col_phase

    blocks = list(range(0, len(pts), _BLOCK))
    if threads > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(run, blocks))
    else:
        parts = [run(s) for s in blocks]
    out = np.zeros((m, n), dtype=np.complex128)
    for part in parts:  # fixed order: summation independent of threading
        out += part
    return out


class DirectTransform:
    """Reference operator over a linogram domain, same interface as the fast one.

    forward/adjoint run the brute-force sums above at the domain's points,
    reshaped to the (M, N) ray-sample layout (column K = ray K, in-ray index
    ascending).  Drop-in replacement wherever a GalfdTransform is accepted.
    """

    def __init__(self, spec: GalfdSpec, m: int, n: int, threads: int = 1):
        self.spec = spec
        self.m, self.n = int(m), int(n)
        self.threads = int(threads)
        self._points = galfd_points(spec)

    def points(self) -> np.ndarray:
        return self._points

    def frequency_grids(self):
        pts = self._points.reshape(self.spec.N, self.spec.M, 2)
        return pts[:, :, 0].T.copy(), pts[:, :, 1].T.copy()

    def forward(self, x: np.ndarray) -> np.ndarray:
        vals = dtft_direct(x, self._points, threads=self.threads)
        return np.ascontiguousarray(vals.reshape(self.spec.N, self.spec.M).T)

    def adjoint(self, Y: np.ndarray) -> np.ndarray:
        Y = np.asarray(Y, dtype=np.complex128)
        if Y.shape != (self.spec.M, self.spec.N):
            raise ValueError(f"sample shape {Y.shape} does not match "
                             f"({self.spec.M}, {self.spec.N})")
        return dtft_adjoint_direct(Y.T.ravel(), self._points, self.m, self.n,
                                   threads=self.threads)
