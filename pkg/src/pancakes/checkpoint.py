"""Resumable search checkpoints.

File layout (all little-endian): magic ``PKLS``, format version u32, graph
kind u8 (0 = plain, 1 = burnt), n u8, completed_layer u32, layer count u32,
that many u64 layer counts, the visited bit array (ceil(size/64) u64 words,
bit b of word w addressing rank 64w+b), the frontier bit array in the same
layout, and a trailing CRC-32C over all preceding bytes.

Writes go through a temp file and ``os.replace`` so a crash never leaves a
half-written checkpoint in place; corruption is detected by length and
checksum on read.
"""

from __future__ import annotations

import os
import struct
from dataclasses import dataclass

import numpy as np

from .graphs import GraphKind, PancakeGraph

__all__ = [
    "CHECKPOINT_MAGIC",
    "CHECKPOINT_VERSION",
    "CheckpointError",
    "SearchCheckpoint",
    "crc32c",
    "read_checkpoint",
    "write_checkpoint",
]

CHECKPOINT_MAGIC = b"PKLS"
CHECKPOINT_VERSION = 1

_HEADER = struct.Struct("<4sIBBII")
_CRC = struct.Struct("<I")


def _make_crc32c_table() -> tuple[int, ...]:
    poly = 0x82F63B78  # Castagnoli polynomial, reflected
    table = []
    for byte in range(256):
        crc = byte
        for _ in range(8):
            crc = (crc >> 1) ^ poly if crc & 1 else crc >> 1
        table.append(crc)
    return tuple(table)


_CRC32C_TABLE = _make_crc32c_table()


def crc32c(data: bytes | bytearray | memoryview, crc: int = 0) -> int:
    """CRC-32C (Castagnoli) checksum; check value crc32c(b"123456789") = 0xE3069283."""
    table = _CRC32C_TABLE
    crc ^= 0xFFFFFFFF
    for b in bytes(data):
        crc = table[(crc ^ b) & 0xFF] ^ (crc >> 8)
    return crc ^ 0xFFFFFFFF


class CheckpointError(ValueError):
    """Checkpoint file is corrupt, truncated, or incompatible."""


@dataclass(frozen=True, slots=True)
class SearchCheckpoint:
    """Search state after ``completed_layer`` finished layers."""

    kind: GraphKind
    n: int
    completed_layer: int
    counts: tuple[int, ...]
    visited: np.ndarray  # uint64 words
    frontier: np.ndarray  # uint64 words

    @property
    def graph(self) -> PancakeGraph:
        return PancakeGraph(self.kind, self.n)

    @property
    def terminal(self) -> bool:
        """True when the frontier is empty, i.e. the search already finished."""
        return not self.frontier.any()


def _expected_words(kind: GraphKind, n: int) -> int:
    return (PancakeGraph(kind, n).size + 63) // 64


def write_checkpoint(path: str | os.PathLike, cp: SearchCheckpoint) -> None:
    words = _expected_words(cp.kind, cp.n)
    if cp.visited.shape != (words,) or cp.frontier.shape != (words,):
        raise CheckpointError(
            f"bit arrays must have {words} words for kind={cp.kind} n={cp.n}"
        )
    payload = bytearray()
    payload += _HEADER.pack(
        CHECKPOINT_MAGIC,
        CHECKPOINT_VERSION,
        int(cp.kind),
        cp.n,
        cp.completed_layer,
        len(cp.counts),
    )
    payload += np.asarray(cp.counts, dtype="<u8").tobytes()
    payload += cp.visited.astype("<u8", copy=False).tobytes()
    payload += cp.frontier.astype("<u8", copy=False).tobytes()
    payload += _CRC.pack(crc32c(payload))
    tmp = os.fspath(path) + ".tmp"
    with open(tmp, "wb") as fh:
        fh.write(payload)
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp, path)


def read_checkpoint(path: str | os.PathLike) -> SearchCheckpoint:
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < _HEADER.size + _CRC.size:
        raise CheckpointError("checkpoint file truncated")
    body, (stored_crc,) = blob[: -_CRC.size], _CRC.unpack(blob[-_CRC.size :])
    if crc32c(body) != stored_crc:
        raise CheckpointError("checkpoint checksum mismatch")
    magic, version, kind_code, n, completed_layer, layer_count = _HEADER.unpack_from(body)
    if magic != CHECKPOINT_MAGIC:
        raise CheckpointError(f"bad magic {magic!r}")
    if version != CHECKPOINT_VERSION:
        raise CheckpointError(f"unsupported checkpoint version {version}")
    try:
        kind = GraphKind(kind_code)
    except ValueError:
        raise CheckpointError(f"unknown graph kind code {kind_code}") from None
    words = _expected_words(kind, n)
    expected_len = _HEADER.size + 8 * layer_count + 16 * words
    if len(body) != expected_len:
        raise CheckpointError(
            f"checkpoint length {len(body)} does not match kind={kind} n={n} "
            f"with {layer_count} layers (expected {expected_len})"
        )
    off = _HEADER.size
    counts = tuple(
        int(v) for v in np.frombuffer(body, dtype="<u8", count=layer_count, offset=off)
    )
    off += 8 * layer_count
    visited = np.frombuffer(body, dtype="<u8", count=words, offset=off).astype(np.uint64)
    off += 8 * words
    frontier = np.frombuffer(body, dtype="<u8", count=words, offset=off).astype(np.uint64)
    if completed_layer != layer_count - 1:
        raise CheckpointError(
            f"completed_layer {completed_layer} inconsistent with {layer_count} layer counts"
        )
    cp = SearchCheckpoint(kind, n, completed_layer, counts, visited, frontier)
    if int(np.bitwise_count(visited).sum()) != sum(counts):
        raise CheckpointError("visited popcount does not equal the sum of layer counts")
    return cp
