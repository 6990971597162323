"""GCPX: the package's binary container for complex arrays.

Layout (all little-endian):

    bytes 0-3   magic "GCPX"
    bytes 4-7   version, uint32, currently 1
    bytes 8-11  ndims, uint32
    next        ndims * uint32 dimension sizes
    payload     row-major complex entries, each one float64 re, float64 im

Payload length must equal 16 * prod(dims); magic or version mismatch is
rejected on read.
"""

import struct

import numpy as np

MAGIC = b"GCPX"
VERSION = 1


class GcpxError(ValueError):
    """Malformed container file (bad magic, version or payload size)."""


def write_gcpx(path, array) -> None:
    arr = np.ascontiguousarray(array, dtype="<c16")
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<II", VERSION, arr.ndim))
        fh.write(struct.pack(f"<{arr.ndim}I", *arr.shape))
        fh.write(arr.tobytes())


def read_gcpx(path) -> np.ndarray:
    with open(path, "rb") as fh:
        head = fh.read(4)
        if head != MAGIC:
            raise GcpxError(f"{path}: not a GCPX file (magic {head!r})")
        version, ndims = struct.unpack("<II", fh.read(8))
        if version != VERSION:
            raise GcpxError(f"{path}: unsupported GCPX version {version}")
        dims = struct.unpack(f"<{ndims}I", fh.read(4 * ndims))
        payload = fh.read()
    expected = 16 * int(np.prod(dims, dtype=np.int64))
    if len(payload) != expected:
        raise GcpxError(f"{path}: payload is {len(payload)} bytes, expected {expected}")
    return np.frombuffer(payload, dtype="<c16").reshape(dims).astype(np.complex128)
