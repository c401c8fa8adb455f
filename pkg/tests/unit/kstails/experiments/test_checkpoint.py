"""Tests for the binary checkpoint format."""

from __future__ import annotations

import struct

import numpy as np
import pytest

from kstails.errors import CheckpointFormatError
from kstails.experiments.checkpoint import (
    MAGIC,
    decode_checkpoint,
    encode_checkpoint,
    load_checkpoint,
    save_checkpoint,
)
from kstails.spectral.grid import Grid
from kstails.testing import random_hermitian

PAYLOAD_OFFSET = 31


@pytest.mark.parametrize("grid", [Grid(1, 3.5, 32), Grid(2, 1.25, 16)], ids=["1d", "2d"])
def test_checkpoint_restores_the_exact_state(grid, rng, tmp_path):
    u = random_hermitian(grid, rng, keep_nyquist=True)
    path = save_checkpoint(u, 12.375, tmp_path / "sub" / "state.ckpt")
    assert path.stat().st_size == PAYLOAD_OFFSET + 16 * grid.N**grid.d
    assert not list(path.parent.glob("*.tmp"))
    v, t = load_checkpoint(path)
    assert t == 12.375
    assert v.grid == grid
    assert np.array_equal(v.coefficients, u.coefficients)


def test_payload_runs_from_the_most_negative_index(rng):
    grid = Grid(1, 1.0, 8)
    u = random_hermitian(grid, rng, keep_nyquist=True)
    data = encode_checkpoint(u, 0.0)
    assert data[:4] == MAGIC
    first = np.frombuffer(data, dtype="<c16", count=1, offset=PAYLOAD_OFFSET)[0]
    assert first == u.coefficients[-4]


def _valid(rng) -> bytes:
    return encode_checkpoint(random_hermitian(Grid(1, 1.0, 8), rng), 1.0)


def _offset_of(data: bytes) -> int:
    with pytest.raises(CheckpointFormatError) as info:
        decode_checkpoint(data)
    assert str(info.value).endswith(f"at byte offset {info.value.offset}")
    return info.value.offset


def test_bad_magic(rng):
    assert _offset_of(b"XXXX" + _valid(rng)[4:]) == 0


def test_unsupported_version(rng):
    data = _valid(rng)
    assert _offset_of(data[:4] + bytes([2]) + data[5:]) == 4


def test_truncated_header(rng):
    assert _offset_of(_valid(rng)[:3]) == 3
    assert _offset_of(_valid(rng)[:20]) == 20


def test_invalid_grid_header(rng):
    data = _valid(rng)
    header = struct.pack("<HQdd", 3, 8, 1.0, 0.0)
    assert _offset_of(data[:5] + header + data[PAYLOAD_OFFSET:]) == 5


def test_truncated_and_overlong_payload(rng):
    data = _valid(rng)
    assert _offset_of(data[:-1]) == len(data) - 1
    assert _offset_of(data + b"\x00\x00") == len(data)
