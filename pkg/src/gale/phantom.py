"""Synthetic test images and simulated coil sensitivity maps.

The ellipse phantom is a seeded composite in the spirit of the classic
head phantoms: a fixed base layout plus seed-dependent jitter, clamped to
[0, 1].  It is deterministic for a given (kind, seed, dims).
"""

from dataclasses import dataclass

import numpy as np

# (amplitude, center_x, center_y, axis_x, axis_y, angle) in [-1, 1]^2 coords
_BASE_ELLIPSES = [
    (1.00, 0.00, 0.00, 0.69, 0.92, 0.0),
    (-0.60, 0.00, -0.0184, 0.662, 0.874, 0.0),
    (-0.20, 0.22, 0.00, 0.11, 0.31, -0.314),
    (-0.20, -0.22, 0.00, 0.16, 0.41, 0.314),
    (0.30, 0.00, 0.35, 0.21, 0.25, 0.0),
    (0.15, 0.00, 0.10, 0.046, 0.046, 0.0),
    (0.15, 0.00, -0.10, 0.046, 0.046, 0.0),
    (0.20, -0.08, -0.605, 0.046, 0.023, 0.0),
    (0.20, 0.00, -0.605, 0.023, 0.023, 0.0),
    (0.20, 0.06, -0.605, 0.023, 0.046, 0.0),
]


@dataclass(frozen=True)
class PhantomSpec:
    m: int
    n: int
    kind: str = "ellipses"
    seed: int = 0


def make_phantom(spec: PhantomSpec) -> np.ndarray:
    """Real-valued test image in [0, 1], shape (m, n), complex128 dtype."""
    if spec.m < 1 or spec.n < 1:
        raise ValueError("phantom dimensions must be >= 1")
    kind = spec.kind.lower()
    if kind == "delta":
        img = np.zeros((spec.m, spec.n))
        img[0, 0] = 1.0
    elif kind == "bars":
        img = _bars(spec.m, spec.n, spec.seed)
    elif kind == "ellipses":
        img = _ellipses(spec.m, spec.n, spec.seed)
    else:
        raise ValueError(f"unknown phantom kind {spec.kind!r}")
    return np.clip(img, 0.0, 1.0).astype(np.complex128)


def _ellipses(m, n, seed):
    rng = np.random.default_rng(seed)
    ii, jj = np.meshgrid(np.linspace(-1, 1, m), np.linspace(-1, 1, n), indexing="ij")
    img = np.zeros((m, n))
    for amp, cx, cy, ax, ay, ang in _BASE_ELLIPSES:
        cx += rng.uniform(-0.02, 0.02)
        cy += rng.uniform(-0.02, 0.02)
        ang += rng.uniform(-0.05, 0.05)
        c, s = np.cos(ang), np.sin(ang)
        u = (jj - cx) * c + (ii - cy) * s
        v = -(jj - cx) * s + (ii - cy) * c
        img += amp * ((u / ax) ** 2 + (v / ay) ** 2 <= 1.0)
    return img


def _bars(m, n, seed):
    rng = np.random.default_rng(seed)
    img = np.zeros((m, n))
    nbars = 4 + rng.integers(0, 4)
    for _ in range(nbars):
        j0 = rng.integers(0, max(1, n - 1))
        width = int(rng.integers(1, max(2, n // 6)))
        img[:, j0:j0 + width] += rng.uniform(0.2, 0.8)
    return img


def make_sensitivities(m: int, n: int, C: int) -> np.ndarray:
    """C smooth complex coil profiles with sum_c |zeta_c|^2 = 1 everywhere.

    Gaussian magnitude lobes placed around the field of view with gentle
    per-coil linear phase; C=1 degenerates to an all-ones map.
    """
    if C < 1:
        raise ValueError("coil count C must be >= 1")
    if C == 1:
        return np.ones((1, m, n), dtype=np.complex128)
    ii, jj = np.meshgrid(np.linspace(-1, 1, m), np.linspace(-1, 1, n), indexing="ij")
    maps = np.empty((C, m, n), dtype=np.complex128)
    for c in range(C):
        ang = 2 * np.pi * c / C
        cx, cy = 0.6 * np.cos(ang), 0.6 * np.sin(ang)
        mag = np.exp(-((jj - cx) ** 2 + (ii - cy) ** 2) / 0.8)
        phase = 0.5 * (np.cos(ang) * jj + np.sin(ang) * ii)
        maps[c] = mag * np.exp(1j * phase)
    norm = np.sqrt(np.sum(np.abs(maps) ** 2, axis=0))
    return maps / norm
