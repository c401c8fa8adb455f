"""Binary spectral-state checkpoints.

Layout (little-endian)::

    0   4s   magic "GKSV"
    4   u8   version (1)
    5   u16  d
    7   u64  N
    15  f64  L
    23  f64  t
    31  ...  N^d complex128 coefficients, index order k = -N/2 .. N/2-1 per axis, row-major
"""

from __future__ import annotations

import os
import struct
from pathlib import Path
from typing import Tuple, Union

import numpy as np

from kstails.errors import CheckpointFormatError, ContractViolation
from kstails.spectral.field import SpectralField
from kstails.spectral.grid import Grid

MAGIC = b"GKSV"
VERSION = 1
_HEADER = struct.Struct("<HQdd")
_PREFIX = len(MAGIC) + 1
_PAYLOAD_OFFSET = _PREFIX + _HEADER.size
_COEFF = np.dtype("<c16")


def encode_checkpoint(u: SpectralField, t: float) -> bytes:
    g = u.grid
    header = MAGIC + bytes([VERSION]) + _HEADER.pack(g.d, g.N, g.L, float(t))
    payload = np.ascontiguousarray(np.fft.fftshift(u.coefficients), dtype=_COEFF)
    return header + payload.tobytes()


def decode_checkpoint(data: bytes) -> Tuple[SpectralField, float]:
    if len(data) < _PREFIX:
        raise CheckpointFormatError(f"truncated header: {len(data)} bytes", len(data))
    if data[:4] != MAGIC:
        raise CheckpointFormatError(f"bad magic {data[:4]!r}, expected {MAGIC!r}", 0)
    version = data[4]
    if version != VERSION:
        raise CheckpointFormatError(
            f"unsupported checkpoint version {version} (expected {VERSION})", 4
        )
    if len(data) < _PAYLOAD_OFFSET:
        raise CheckpointFormatError(f"truncated header: {len(data)} bytes", len(data))
    d, n, L, t = _HEADER.unpack_from(data, _PREFIX)
    try:
        grid = Grid(d=d, L=L, N=n)
    except ContractViolation as exc:
        raise CheckpointFormatError(f"invalid grid header ({exc})", _PREFIX) from exc
    expected = (n**d) * _COEFF.itemsize
    found = len(data) - _PAYLOAD_OFFSET
    if found < expected:
        raise CheckpointFormatError(
            f"truncated coefficient block: expected {expected} bytes, found {found}", len(data)
        )
    if found > expected:
        raise CheckpointFormatError(
            f"{found - expected} trailing bytes after the coefficient block", _PAYLOAD_OFFSET + expected
        )
    flat = np.frombuffer(data, dtype=_COEFF, count=n**d, offset=_PAYLOAD_OFFSET)
    coeffs = np.fft.ifftshift(flat.reshape(grid.shape))
    return SpectralField(grid, coeffs), float(t)


def save_checkpoint(u: SpectralField, t: float, path: Union[str, os.PathLike]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_bytes(encode_checkpoint(u, t))
    os.replace(tmp, path)
    return path


def load_checkpoint(path: Union[str, os.PathLike]) -> Tuple[SpectralField, float]:
    return decode_checkpoint(Path(path).read_bytes())
