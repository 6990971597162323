"""Reconstruction layer: phase/scale and density-compensation operators,
adjoint-based filtered backprojection, and iterative least-squares solvers.

Every solver here is operator-agnostic: it only needs an object with
``forward(image) -> samples`` and ``adjoint(samples) -> image`` plus a
``frequency_grids()`` accessor for the diagonal operators, so the fast
transform and the brute-force oracle are interchangeable.
"""

from dataclasses import dataclass, field

import numpy as np


@dataclass
class SolverReport:
    residual_norms: list = field(default_factory=list)
    iterations: int = 0
    breakdown: bool = False


@dataclass
class SolverConfig:
    """Settings of the relaxed iteration: step count, constant relaxation,
    signal-to-noise scale, prior image and starting image."""

    iters: int = 20
    lam: float = 1.0
    r: float = 1.0
    mu: np.ndarray | float = 0.0
    x0: np.ndarray | None = None


def apply_z(y, xi, ups, m: int, n: int, direction: str = "forward") -> np.ndarray:
    """Diagonal phase/scale map between DTFT samples and centered-FT samples.

    forward:  y * exp(+1j*((n/2)*xi + (m/2)*ups)) / (m*n)
    adjoint:  conjugate phase, same 1/(m*n) scale.
    """
    y = np.asarray(y)
    if y.shape != xi.shape or y.shape != ups.shape:
        raise ValueError("sample and frequency grids must share a shape")
    phase = np.exp(1j * ((n / 2.0) * xi + (m / 2.0) * ups))
    if direction == "adjoint":
        phase = np.conj(phase)
    elif direction != "forward":
        raise ValueError(f"direction must be 'forward' or 'adjoint', got {direction!r}")
    return y * phase / (m * n)


def apply_dcf(y, xi, ups) -> np.ndarray:
    """Radial density compensation: multiply each sample by its frequency radius."""
    y = np.asarray(y)
    if y.shape != xi.shape or y.shape != ups.shape:
        raise ValueError("sample and frequency grids must share a shape")
    return y * np.sqrt(xi**2 + ups**2)


def fbp_reconstruct(coil_data, op) -> np.ndarray:
    """Density-compensated adjoint reconstruction with root-sum-of-squares combine.

    coil_data has shape (C, M, N) on the domain of ``op``.  Per coil the
    pipeline is  adjoint(Z* (C y))  and the coils are combined as
    sqrt(sum_c |x_c|^2), which keeps the output real.
    """
    coil_data = np.asarray(coil_data, dtype=np.complex128)
    if coil_data.ndim == 2:
        coil_data = coil_data[None]
    xi, ups = op.frequency_grids()
    m, n = getattr(op, "m"), getattr(op, "n")
    acc = np.zeros((m, n))
    for y in coil_data:
        weighted = apply_z(apply_dcf(y, xi, ups), xi, ups, m, n, direction="adjoint")
        xc = op.adjoint(weighted)
        acc += np.abs(xc) ** 2
    return np.sqrt(acc)


def cg_least_squares(y, op, iters: int, x0=None):
    """Conjugate gradients on the normal equations G*G x = G*y.

    Returns (image, SolverReport).  The recorded residual norms are the
    least-squares residuals ||y - G x||, which are non-increasing in exact
    arithmetic; the iteration terminates early (flagging a breakdown) when
    the search-direction curvature vanishes.
    """
    y = np.asarray(y, dtype=np.complex128)
    if iters < 0:
        raise ValueError("iteration count must be >= 0")
    m, n = getattr(op, "m"), getattr(op, "n")
    x = np.zeros((m, n), dtype=np.complex128) if x0 is None else np.array(x0, dtype=np.complex128)
    report = SolverReport()
    r_ls = y - op.forward(x)
    report.residual_norms.append(float(np.linalg.norm(r_ls)))
    s = op.adjoint(r_ls)
    rho = float(np.vdot(s, s).real)
    p = s.copy()
    for _ in range(iters):
        if rho == 0.0:
            report.breakdown = True
            break
        Gp = op.forward(p)
        curvature = float(np.vdot(Gp, Gp).real)
        if curvature <= 0.0:
            report.breakdown = True
            break
        alpha = rho / curvature
        x += alpha * p
        r_ls -= alpha * Gp
        report.residual_norms.append(float(np.linalg.norm(r_ls)))
        s = op.adjoint(r_ls)
        rho_new = float(np.vdot(s, s).real)
        p = s + (rho_new / rho) * p
        rho = rho_new
        report.iterations += 1
    return x, report


def landweber_step(xk, y, op, lam: float, r: float, mu) -> np.ndarray:
    """One relaxed iteration x + lam*(r^2 * G*(y - G x) + (mu - x))."""
    xk = np.asarray(xk, dtype=np.complex128)
    y = np.asarray(y, dtype=np.complex128)
    mu = np.asarray(mu, dtype=np.complex128)
    if mu.shape != xk.shape:
        raise ValueError(f"prior shape {mu.shape} does not match iterate {xk.shape}")
    return xk + lam * (r**2 * op.adjoint(y - op.forward(xk)) + (mu - xk))


def relaxed_iteration(y, op, config: SolverConfig):
    """Run config.iters relaxed steps; returns (image, SolverReport).

    The recorded residuals are ||y - G x_k|| including the starting point.
    """
    if config.iters < 0:
        raise ValueError("iteration count must be >= 0")
    m, n = getattr(op, "m"), getattr(op, "n")
    x = (np.zeros((m, n), dtype=np.complex128) if config.x0 is None
         else np.array(config.x0, dtype=np.complex128))
    mu = np.broadcast_to(np.asarray(config.mu, dtype=np.complex128), x.shape)
    report = SolverReport()
    report.residual_norms.append(float(np.linalg.norm(y - op.forward(x))))
    for _ in range(config.iters):
        x = landweber_step(x, y, op, config.lam, config.r, mu)
        report.residual_norms.append(float(np.linalg.norm(y - op.forward(x))))
        report.iterations += 1
    return x, report
