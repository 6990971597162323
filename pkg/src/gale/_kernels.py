"""Kernel backend selection: compiled extension if importable, NumPy otherwise."""

try:
    from gale import _native as _impl
except ImportError:  # extension not built on this install
    from gale import _kernels_np as _impl

gather_forward = _impl.gather_forward
scatter_adjoint = _impl.scatter_adjoint
dtft_block = _impl.dtft_block
BACKEND_NAME = _impl.BACKEND_NAME


def backend_name() -> str:
    """Which kernel backend is active: 'native' or 'numpy'."""
    return BACKEND_NAME
