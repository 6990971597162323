"""Fast DTFT approximation on linogram rays and its exact adjoint.

One ray family at a time, the forward pipeline for an m-by-n image x is

  1.  multiply each column by the diagonal p and zero-pad FFT it to length M
      (puts the range-shifted 1-D ray spectra in the rows of U);
  2.  chirp-z transform each row with a per-row frequency step alpha_I whose
      pre-modulation has been divided by Kaiser-Bessel window samples
      (V[I, J] then holds the windowed intermediate spectrum Z);
  3.  for every ray K, combine at most 2S+1 consecutive entries of row I of V
      with precomputed window-transform weights to approximate the DTFT at
      ray sample (I, K).

All data-independent state lives in a GalePlan built once by gale_init; the
adjoint reuses it with no recomputation, running the conjugated stages in
reverse.  Rays with theta in [pi/4, 3pi/4] sample equispaced vertically and
are handled directly; rays in [3pi/4, 5pi/4) reduce to the first kind by
transposing the image, negating sigma and mapping theta -> Lambda(-theta -
pi/2), which the combined-domain operator below does transparently.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from gale import _kernels, fftcore
from gale.domains import GalfdSpec, constrain_angle, galfd_points
from gale.windows import bessel_i0

DEFAULT_EPSILON = 1.0 - 1e-4


def default_fourier_length(n: int) -> int:
    """Smallest multiple of 4 that is >= 2.25*n (the default oversampling)."""
    return 4 * int(np.ceil(2.25 * n / 4.0))


@dataclass(frozen=True)
class GalePlan:
    """Precomputed state for one ray family.

    Row I of the ray-sample output corresponds to the shifted in-ray index
    I - R1; the CZT output column J corresponds to the shifted spectrum index
    J - R2.  Weight row w[I, K, :counts[K]] combines V[I, vbase[K]:...] and is
    zero-padded beyond counts[K].
    """

    m: int
    n: int
    M: int
    N: int
    NL: int
    S: int
    R1: int
    R2: int
    sigma: float
    epsilon: float
    thetas: np.ndarray = field(repr=False)
    p: np.ndarray = field(repr=False)          # (m,)   column pre-modulation
    r_mat: np.ndarray = field(repr=False)      # (M, n) window-divided CZT pre-modulation
    q_hat_mat: np.ndarray = field(repr=False)  # (M, 2P) CZT convolution spectra
    s_mat: np.ndarray = field(repr=False)      # (M, P)  CZT post-modulation
    vbase: np.ndarray = field(repr=False)      # (N,)   first V column per ray
    counts: np.ndarray = field(repr=False)     # (N,)   terms per ray, <= 2S+1
    w: np.ndarray = field(repr=False)          # (M, N, 2S+1) combination weights
    etas: np.ndarray = field(repr=False)       # (N,)   ray frequencies NL*cot(theta)/4
    alphas: np.ndarray = field(repr=False)     # (M,)
    varpis: np.ndarray = field(repr=False)     # (M,)
    taus: np.ndarray = field(repr=False)       # (M,)

    @property
    def P(self) -> int:
        return self.NL // 2 + 2 * (self.S + 1)

    def row_bounds(self, x_l1: float) -> np.ndarray:
        """Per-row truncation error bound for an image of the given l1 norm."""
        gap = self.taus**2 - self.varpis**2
        return 29.5 * x_l1 / (np.pi * bessel_i0(self.S * np.sqrt(gap)))


def gale_init(thetas, m: int, n: int, M: int, NL: int, S: int, R1: int, R2: int,
              sigma: float, epsilon: float = DEFAULT_EPSILON) -> GalePlan:
    """Build the full precomputed state for one family of rays.

    thetas must already be constrained to [pi/4, 3pi/4]; the closed right
    endpoint only occurs for rays mapped over from the horizontal family.
    """
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    if M < 2 or M % 2 != 0:
        raise ValueError(f"samples per ray M={M} must be a positive even integer")
    if M < m:
        raise ValueError(f"samples per ray M={M} must be >= image height m={m}")
    if NL < 2 * n:
        raise ValueError(f"Fourier sampling length N_L={NL} must be >= 2n = {2 * n}")
    if NL % 4 != 0:
        raise ValueError(f"Fourier sampling length N_L={NL} must be divisible by 4")
    if not (isinstance(S, (int, np.integer)) and 1 < S <= 15):
        raise ValueError(f"truncation parameter S={S} must be an integer in (1, 15]")
    if n > 1 and not abs(sigma) < np.pi / (n - 1):
        raise ValueError(
            f"|sigma|={abs(sigma):.6g} violates the constraint |sigma| < pi/(n-1) = "
            f"{np.pi / (n - 1):.6g}")
    if not 0.0 < epsilon < 1.0:
        raise ValueError("epsilon must lie in (0, 1)")
    if thetas.size and not (np.all(thetas >= np.pi / 4) and np.all(thetas <= 3 * np.pi / 4)):
        raise ValueError("all ray angles must lie in [pi/4, 3pi/4]")

    N = len(thetas)
    P = NL // 2 + 2 * (S + 1)
    rows = np.arange(M)
    j = np.arange(n)

    p = np.exp(1j * np.arange(m) * (2.0 * np.pi * R1 / M + sigma))
    alphas = 4.0 * (rows - R1) / M - 2.0 * sigma / np.pi
    varpis = np.pi * (n - 1) / NL * alphas
    taus = np.pi + epsilon * (np.pi - np.abs(varpis))
    betas = S * taus

    # CZT tables for every row at once (modulus NL, output shift R2)
    r_mat = np.exp(-1j * np.pi / NL * np.outer(alphas, j * (j - 2 * R2)))
    idx = np.arange(2 * P)
    mirrored = np.where(idx < P, idx, 2 * P - idx).astype(float)
    q_hat_mat = fftcore.fft_padded(
        np.exp(1j * np.pi / NL * np.outer(alphas, mirrored**2)), 2 * P, axis=1)
    s_mat = np.exp(-1j * np.pi / NL * np.outer(alphas, np.arange(P).astype(float) ** 2))

    # fold the window division into the CZT pre-modulation
    t_centered = 2.0 * np.pi / NL * np.outer(alphas, j) - varpis[:, None]
    win_arg = np.maximum(1.0 - (t_centered / taus[:, None]) ** 2, 0.0)
    window_vals = bessel_i0(betas[:, None] * np.sqrt(win_arg)) / bessel_i0(betas)[:, None]
    r_mat /= window_vals

    etas = NL * (np.cos(thetas) / np.sin(thetas)) / 4.0
    # snap to integers so exactly-axis-aligned rays get the full 2S+1 window
    # despite the float noise in cot(theta)
    nearest = np.round(etas)
    etas = np.where(np.abs(etas - nearest) < 1e-9, nearest, etas)
    j_first = np.ceil(etas - S).astype(np.int64)
    j_last = np.floor(etas + S).astype(np.int64)
    counts = j_last - j_first + 1
    vbase = j_first + R2
    if np.any(vbase < 0) or np.any(vbase + counts > P):
        raise ValueError("ray index window exceeds the CZT output range; "
                         "R2 is inconsistent with the ray family")

    w = np.zeros((M, N, 2 * S + 1), dtype=np.complex128)
    for K in range(N):
        offsets = etas[K] - (j_first[K] + np.arange(counts[K]))   # eta_K - J
        hat = _kb_hat_rows(betas, taus, offsets)
        w[:, K, :counts[K]] = hat * np.exp(-1j * np.outer(varpis, offsets)) / (2.0 * np.pi)

    return GalePlan(m=m, n=n, M=M, N=N, NL=NL, S=int(S), R1=int(R1), R2=int(R2),
                    sigma=float(sigma), epsilon=float(epsilon), thetas=thetas,
                    p=p, r_mat=r_mat, q_hat_mat=q_hat_mat, s_mat=s_mat,
                    vbase=vbase, counts=counts, w=w, etas=etas,
                    alphas=alphas, varpis=varpis, taus=taus)


def _kb_hat_rows(betas, taus, offsets):
    """Kaiser-Bessel window transform on a per-row (beta, tau) grid of offsets."""
    wsq = betas[:, None] ** 2 - (np.outer(taus, offsets)) ** 2
    out = np.empty_like(wsq)
    tiny = np.abs(wsq) < 1e-8
    out[tiny] = 1.0 + wsq[tiny] / 6.0 + wsq[tiny] ** 2 / 120.0
    pos = ~tiny & (wsq > 0)
    z = np.sqrt(wsq[pos])
    out[pos] = np.sinh(z) / z
    neg = ~tiny & (wsq < 0)
    y = np.sqrt(-wsq[neg])
    out[neg] = np.sin(y) / y
    return 2.0 * taus[:, None] / bessel_i0(betas)[:, None] * out


def gale_apply(x: np.ndarray, plan: GalePlan) -> np.ndarray:
    """Approximate ray samples Y (M rays-per-sample by N rays) of the image x."""
    x = np.asarray(x, dtype=np.complex128)
    if x.shape != (plan.m, plan.n):
        raise ValueError(f"image shape {x.shape} does not match plan ({plan.m}, {plan.n})")
    U = fftcore.fft_padded(x * plan.p[:, None], plan.M, axis=0)
    spec = fftcore.fft_padded(U * plan.r_mat, 2 * plan.P, axis=1)
    spec *= plan.q_hat_mat
    V = fftcore.ifft_truncated(spec, plan.P, axis=1)
    V *= plan.s_mat
    Y = np.empty((plan.M, plan.N), dtype=np.complex128)
    _kernels.gather_forward(np.ascontiguousarray(V), plan.w, plan.vbase, plan.counts, Y)
    return Y


def gale_adjoint(Y: np.ndarray, plan: GalePlan) -> np.ndarray:
    """Exact adjoint of gale_apply, reusing the same plan."""
    Y = np.asarray(Y, dtype=np.complex128)
    if Y.shape != (plan.M, plan.N):
        raise ValueError(f"sample shape {Y.shape} does not match plan ({plan.M}, {plan.N})")
    V = np.zeros((plan.M, plan.P), dtype=np.complex128)
    _kernels.scatter_adjoint(np.ascontiguousarray(Y), plan.w, plan.vbase, plan.counts, V)
    V *= np.conj(plan.s_mat)
    spec = fftcore.ifft_truncated_adjoint(V, 2 * plan.P, axis=1)
    spec *= np.conj(plan.q_hat_mat)
    U = fftcore.fft_padded_adjoint(spec, plan.n, axis=1)
    U *= np.conj(plan.r_mat)
    x = fftcore.fft_padded_adjoint(U, plan.m, axis=0)
    x *= np.conj(plan.p)[:, None]
    return x


class GalfdTransform:
    """DTFT over a full golden-angle linogram domain, forward and adjoint.

    Splits the rays of the spec into the two families, plans each once, and
    interleaves the per-family outputs back into original ray order.  Row I,
    column K of the (M, N) output is the sample at the K-th ray's I-th point
    in the same order galfd_points emits them.
    """

    def __init__(self, spec: GalfdSpec, m: int, n: int, NL: int | None = None,
                 S: int = 4, epsilon: float = DEFAULT_EPSILON, threads: int = 1):
        if NL is None:
            NL = default_fourier_length(max(m, n))
        self.spec = spec
        self.m, self.n = int(m), int(n)
        self.NL, self.S, self.epsilon = int(NL), int(S), float(epsilon)
        self.threads = int(threads)
        M = spec.M
        self.vertical_plan = None
        self.horizontal_plan = None
        if len(spec.v_rays):
            self.vertical_plan = gale_init(
                spec.angles[spec.v_rays], m, n, M, NL, S,
                R1=M // 2 - 1, R2=NL // 4 + S + 1, sigma=spec.sigma, epsilon=epsilon)
        if len(spec.h_rays):
            mapped = constrain_angle(-spec.angles[spec.h_rays] - np.pi / 2.0)
            self.horizontal_plan = gale_init(
                mapped, n, m, M, NL, S,
                R1=M // 2, R2=NL // 4 + S, sigma=-spec.sigma, epsilon=epsilon)

    @property
    def shape(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (self.spec.M, self.spec.N), (self.m, self.n)

    def points(self) -> np.ndarray:
        return galfd_points(self.spec)

    def frequency_grids(self) -> tuple[np.ndarray, np.ndarray]:
        """(xi, upsilon) arrays of shape (M, N) matching the output layout."""
        pts = self.points().reshape(self.spec.N, self.spec.M, 2)
        return pts[:, :, 0].T.copy(), pts[:, :, 1].T.copy()

    def forward(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.complex128)
        if x.shape != (self.m, self.n):
            raise ValueError(f"image shape {x.shape} does not match ({self.m}, {self.n})")
        spec = self.spec
        Y = np.empty((spec.M, spec.N), dtype=np.complex128)
        jobs = []
        if self.vertical_plan is not None:
            jobs.append((spec.v_rays,
                         lambda: gale_apply(x, self.vertical_plan)))
        if self.horizontal_plan is not None:
            xt = np.ascontiguousarray(x.T)
            jobs.append((spec.h_rays,
                         lambda: gale_apply(xt, self.horizontal_plan)))
        results = self._run([job for _, job in jobs])
        for (cols, _), res in zip(jobs, results):
            Y[:, cols] = res
        return Y

    def adjoint(self, Y: np.ndarray) -> np.ndarray:
        Y = np.asarray(Y, dtype=np.complex128)
        spec = self.spec
        if Y.shape != (spec.M, spec.N):
            raise ValueError(f"sample shape {Y.shape} does not match ({spec.M}, {spec.N})")
        tasks = []
        if self.vertical_plan is not None:
            tasks.append(lambda: gale_adjoint(
                np.ascontiguousarray(Y[:, spec.v_rays]), self.vertical_plan))
        if self.horizontal_plan is not None:
            tasks.append(lambda: gale_adjoint(
                np.ascontiguousarray(Y[:, spec.h_rays]), self.horizontal_plan).T)
        parts = self._run(tasks)
        x = np.zeros((self.m, self.n), dtype=np.complex128)
        for part in parts:  # fixed order, independent of threading
            x += part
        return x

    def _run(self, tasks):
        if self.threads > 1 and len(tasks) > 1:
            with ThreadPoolExecutor(max_workers=min(self.threads, len(tasks))) as pool:
                futures = [pool.submit(t) for t in tasks]
                return [f.result() for f in futures]
        return [t() for t in tasks]

    def point_bounds(self, x_l1: float) -> np.ndarray:
        """Truncation error bound at every output entry, shape (M, N)."""
        out = np.empty((self.spec.M, self.spec.N))
        if self.vertical_plan is not None:
            out[:, self.spec.v_rays] = self.vertical_plan.row_bounds(x_l1)[:, None]
        if self.horizontal_plan is not None:
            out[:, self.spec.h_rays] = self.horizontal_plan.row_bounds(x_l1)[:, None]
        return out

    def max_bound(self, x_l1: float) -> float:
        return float(self.point_bounds(x_l1).max())


def galfd_forward(x: np.ndarray, spec: GalfdSpec, NL: int | None = None,
                  S: int = 4, epsilon: float = DEFAULT_EPSILON,
                  threads: int = 1) -> np.ndarray:
    """One-shot forward transform (plans are rebuilt; use GalfdTransform to reuse)."""
    x = np.asarray(x)
    op = GalfdTransform(spec, x.shape[0], x.shape[1], NL=NL, S=S,
                        epsilon=epsilon, threads=threads)
    return op.forward(x)


def galfd_adjoint(Y: np.ndarray, spec: GalfdSpec, m: int, n: int,
                  NL: int | None = None, S: int = 4,
                  epsilon: float = DEFAULT_EPSILON, threads: int = 1) -> np.ndarray:
    """One-shot adjoint transform (plans are rebuilt; use GalfdTransform to reuse)."""
    op = GalfdTransform(spec, m, n, NL=NL, S=S, epsilon=epsilon, threads=threads)
    return op.adjoint(Y)
