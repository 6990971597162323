"""Sampling-domain generators: golden-angle linogram domains and the classic
Cartesian / polar / linogram / golden-angle polar families.

Points are returned as float arrays of shape (npoints, 2) with columns
(xi, upsilon), xi being the horizontal angular frequency (coupled to the
column index of an image) and upsilon the vertical one.  Ray-based domains
are emitted ray-major with the in-ray index I ascending; that fixed order
defines the layout of ray-sample matrices everywhere else in the package.
"""

from dataclasses import dataclass, field

import numpy as np

GOLDEN_RATIO = (1.0 + np.sqrt(5.0)) / 2.0
GOLDEN_ANGLE = np.pi / GOLDEN_RATIO

QUARTER_PI = np.pi / 4.0
THREE_QUARTER_PI = 3.0 * np.pi / 4.0


def constrain_angle(theta):
    """Wrap an angle into [pi/4, 5*pi/4) with period pi.

    Uses the floored (always non-negative) remainder so negative inputs land
    in range too.
    """
    theta = np.asarray(theta, dtype=float)
    if not np.all(np.isfinite(theta)):
        raise ValueError("constrain_angle requires finite input")
    return (np.mod(theta - QUARTER_PI, np.pi) + QUARTER_PI)[()]


def golden_angles(N: int, theta0: float) -> np.ndarray:
    """The first N golden-angle ray orientations from theta0, constrained."""
    if N < 1:
        raise ValueError("ray count N must be >= 1")
    return constrain_angle(theta0 + np.arange(N) * GOLDEN_ANGLE)


def is_vertical_ray(theta) -> np.ndarray:
    """True for angles whose rays sample equispaced in upsilon (theta in [pi/4, 3pi/4))."""
    theta = np.asarray(theta)
    return (theta >= QUARTER_PI) & (theta < THREE_QUARTER_PI)


@dataclass(frozen=True)
class GalfdSpec:
    """Geometry of one golden-angle linogram Fourier domain.

    M     -- samples per ray (even)
    N     -- number of rays
    theta0-- orientation of the first ray (radians)
    sigma -- radial offset (radians); must satisfy |sigma| < pi/(n-1) against
             the image width at transform time
    angles-- the N constrained ray angles
    v_rays/h_rays -- ray indices of the vertical family [pi/4, 3pi/4) and the
             horizontal family [3pi/4, 5pi/4); together they partition 0..N-1
    """

    M: int
    N: int
    theta0: float
    sigma: float
    angles: np.ndarray = field(repr=False)
    v_rays: np.ndarray = field(repr=False)
    h_rays: np.ndarray = field(repr=False)


def make_galfd_spec(M: int, N: int, theta0: float = np.pi / 2.0,
                    sigma: float | None = None) -> GalfdSpec:
    """Build a GalfdSpec; sigma defaults to pi/M (the standard convention)."""
    if M < 2 or M % 2 != 0:
        raise ValueError(f"samples per ray M={M} must be a positive even integer")
    if N < 1:
        raise ValueError("ray count N must be >= 1")
    if sigma is None:
        sigma = np.pi / M
    if not np.isfinite(theta0) or not np.isfinite(sigma):
        raise ValueError("theta0 and sigma must be finite")
    angles = np.atleast_1d(golden_angles(N, theta0))
    vertical = is_vertical_ray(angles)
    return GalfdSpec(M=int(M), N=int(N), theta0=float(theta0), sigma=float(sigma),
                     angles=angles,
                     v_rays=np.flatnonzero(vertical),
                     h_rays=np.flatnonzero(~vertical))


def lrfs_ray_indices(M: int, theta: float) -> np.ndarray:
    """In-ray sample indices I of one linogram ray, ascending."""
    if M % 2 != 0 or M < 2:
        raise ValueError(f"samples per ray M={M} must be a positive even integer")
    if is_vertical_ray(theta):
        return np.arange(-M // 2 + 1, M // 2 + 1)
    return np.arange(-M // 2, M // 2)


def lrfs_points(M: int, sigma: float, theta: float) -> np.ndarray:
    """Sample points of one linogram ray at orientation theta.

    Vertical-family rays (theta in [pi/4, 3pi/4)) are equispaced in upsilon
    with xi = upsilon*cot(theta); horizontal-family rays (theta in
    [3pi/4, 5pi/4)) are equispaced in xi with upsilon = xi*tan(theta).
    """
    if not (QUARTER_PI <= theta < 5.0 * np.pi / 4.0):
        raise ValueError(f"theta={theta} must lie in [pi/4, 5pi/4); apply constrain_angle first")
    I = lrfs_ray_indices(M, theta)
    if is_vertical_ray(theta):
        ups = 2.0 * np.pi * I / M - sigma
        xi = ups * (np.cos(theta) / np.sin(theta))
    else:
        xi = 2.0 * np.pi * I / M + sigma
        ups = xi * (np.sin(theta) / np.cos(theta))
    return np.column_stack([xi, ups])


def galfd_points(spec: GalfdSpec) -> np.ndarray:
    """All N*M points of the domain, ray-major, in-ray index ascending."""
    return np.concatenate([lrfs_points(spec.M, spec.sigma, th) for th in spec.angles])


def classic_domain_points(kind: str, M: int, N: int, theta0: float = 0.0) -> np.ndarray:
    """Point sets of the classic domains: 'cfd', 'pfd', 'lfd' or 'gapfd'.

    The LFD is emitted as its H-set followed by its V-set; duplicate points
    (every ray contains the origin, and the LFD shares more) are kept so the
    output always has the nominal cardinality.
    """
    kind = kind.lower()
    if M < 2 or N < 1:
        raise ValueError("M must be >= 2 and N >= 1")
    half = np.arange(-(M // 2), M // 2)
    if kind == "cfd":
        if M % 2 or N % 2:
            raise ValueError("CFD requires even M and N")
        J = np.arange(-(N // 2), N // 2)
        xi, ups = np.meshgrid(2 * np.pi * half / M, 2 * np.pi * J / N, indexing="ij")
        return np.column_stack([xi.ravel(), ups.ravel()])
    if kind == "pfd":
        if M % 2:
            raise ValueError("PFD requires even M")
        th = np.pi * np.arange(N) / N
        r = 2 * np.pi * half / M
        xi = np.outer(np.cos(th), r)
        ups = np.outer(np.sin(th), r)
        return np.column_stack([xi.ravel(), ups.ravel()])
    if kind == "gapfd":
        if M % 2:
            raise ValueError("GAPFD requires even M")
        th = theta0 + np.arange(N) * GOLDEN_ANGLE
        r = 2 * np.pi * half / M
        xi = np.outer(np.cos(th), r)
        ups = np.outer(np.sin(th), r)
        return np.column_stack([xi.ravel(), ups.ravel()])
    if kind == "lfd":
        if M % 2 or N % 4:
            raise ValueError("LFD requires even M and N divisible by 4")
        out = []
        for J in range(-N // 4 + 1, N // 4 + 1):            # H-set
            xi = 2 * np.pi * half / M
            out.append(np.column_stack([xi, xi * 4 * J / N]))
        halfv = np.arange(-(M // 2) + 1, M // 2 + 1)
        for J in range(-N // 4, N // 4):                    # V-set
            ups = 2 * np.pi * halfv / M
            out.append(np.column_stack([ups * 4 * J / N, ups]))
        return np.concatenate(out)
    raise ValueError(f"unknown domain kind {kind!r}")
