"""Fast DTFT evaluation on golden-angle linogram Fourier domains.

The package provides the sampling-domain generators, the windowed chirp-z
evaluation pipeline with its exact adjoint, a brute-force reference, error
metrics and bounds, synthetic phantoms, and a reconstruction layer, all
driven either as a library or through the ``gale`` command line tool.
"""

from gale._kernels import backend_name
from gale.czt import CztPlan, czt_adjoint, czt_apply, czt_init
from gale.domains import (GOLDEN_ANGLE, GOLDEN_RATIO, GalfdSpec, classic_domain_points,
                          constrain_angle, galfd_points, golden_angles,
                          is_vertical_ray, lrfs_points, make_galfd_spec)
from gale.fftcore import (fft_padded, fft_padded_adjoint, ifft_truncated,
                          ifft_truncated_adjoint, range_shift_weights)
from gale.gcpx import read_gcpx, write_gcpx
from gale.metrics import ErrorReport, l1_norm, mre, rse
from gale.oracle import DirectTransform, dtft_adjoint_direct, dtft_direct
from gale.phantom import PhantomSpec, make_phantom, make_sensitivities
from gale.recon import (SolverConfig, SolverReport, apply_dcf, apply_z,
                        cg_least_squares, fbp_reconstruct, landweber_step,
                        relaxed_iteration)
from gale.transform import (DEFAULT_EPSILON, GalePlan, GalfdTransform,
                            default_fourier_length, gale_adjoint, gale_apply,
                            gale_init, galfd_adjoint, galfd_forward)
from gale.windows import (WindowParams, bessel_i0, error_bound, kb_window,
                          kb_window_hat, window_params)

__version__ = "0.1.0"

__all__ = [
    "GOLDEN_ANGLE", "GOLDEN_RATIO", "GalfdSpec", "classic_domain_points",
    "constrain_angle", "galfd_points", "golden_angles", "is_vertical_ray",
    "lrfs_points", "make_galfd_spec",
    "WindowParams", "bessel_i0", "error_bound", "kb_window", "kb_window_hat",
    "window_params",
    "fft_padded", "fft_padded_adjoint", "ifft_truncated",
    "ifft_truncated_adjoint", "range_shift_weights",
    "CztPlan", "czt_adjoint", "czt_apply", "czt_init",
    "DEFAULT_EPSILON", "GalePlan", "GalfdTransform", "default_fourier_length",
    "gale_adjoint", "gale_apply", "gale_init", "galfd_adjoint", "galfd_forward",
    "DirectTransform", "dtft_adjoint_direct", "dtft_direct",
    "ErrorReport", "l1_norm", "mre", "rse",
    "PhantomSpec", "make_phantom", "make_sensitivities",
    "SolverConfig", "SolverReport", "apply_dcf", "apply_z", "cg_least_squares",
    "fbp_reconstruct", "landweber_step", "relaxed_iteration",
    "read_gcpx", "write_gcpx", "backend_name",
]
