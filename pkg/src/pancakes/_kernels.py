"""Vectorized batch kernels for the bitset BFS.

Permutation batches are (m, n) arrays: uint8 one-line entries for the plain
graph, int8 signed window entries for the burnt graph. Ranks are int64 and
use the same encodings as :mod:`pancakes.perms` (lexicographic Lehmer rank;
signed ranks put the unsigned rank in the high bits and one sign bit per
position in the low n bits).

Bitsets are flat uint64 arrays with bit ``b`` of word ``w`` addressing rank
``64*w + b``.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "factorials",
    "batch_unrank",
    "batch_rank",
    "batch_flip",
    "batch_sunrank",
    "batch_srank",
    "batch_signed_flip",
    "bitset_alloc",
    "bitset_set",
    "bitset_test",
    "bitset_extract_ranks",
    "bitset_popcount",
]


def factorials(n: int) -> list[int]:
    return [math.factorial(k) for k in range(n + 1)]


# ---------------------------------------------------------------------------
# unsigned permutations

def batch_unrank(n: int, ranks: np.ndarray) -> np.ndarray:
    """Decode lexicographic ranks into one-line notation, shape (m, n) uint8."""
    m = ranks.shape[0]
    out = np.empty((m, n), dtype=np.uint8)
    avail = np.ones((m, n), dtype=bool)
    rest = ranks.astype(np.int64, copy=True)
    fact = factorials(n)
    rows = np.arange(m)
    for pos in range(n):
        f = fact[n - 1 - pos]
        digit = rest // f
        rest -= digit * f
        # pick the digit-th remaining value in each row
        csum = np.cumsum(avail, axis=1)
        idx = np.argmax(csum == (digit + 1)[:, None], axis=1)
        out[:, pos] = idx + 1
        avail[rows, idx] = False
    return out


def batch_rank(perms: np.ndarray) -> np.ndarray:
    """Lexicographic ranks of one-line uint8 rows, shape (m,) int64."""
    m, n = perms.shape
    ranks = np.zeros(m, dtype=np.int64)
    fact = factorials(n)
    smaller = np.zeros(m, dtype=np.int64)
    for pos in range(n - 1):
        v = perms[:, pos]
        smaller[:] = 0
        for k in range(pos + 1, n):
            smaller += perms[:, k] < v
        ranks += smaller * fact[n - 1 - pos]
    return ranks


def batch_flip(perms: np.ndarray, i: int) -> np.ndarray:
    """Reverse the first i columns of each row."""
    out = perms.copy()
    out[:, :i] = perms[:, i - 1 :: -1]
    return out


# ---------------------------------------------------------------------------
# signed permutations

def batch_sunrank(n: int, ranks: np.ndarray) -> np.ndarray:
    """Decode signed ranks into window notation, shape (m, n) int8."""
    base = ranks >> np.int64(n)
    bits = ranks & np.int64((1 << n) - 1)
    out = batch_unrank(n, base).astype(np.int8)
    sign_on = (bits[:, None] >> np.arange(n, dtype=np.int64)) & 1
    np.negative(out, where=sign_on.astype(bool), out=out)
    return out


def batch_srank(perms: np.ndarray) -> np.ndarray:
    """Signed ranks of int8 window rows, shape (m,) int64."""
    n = perms.shape[1]
    ranks = batch_rank(np.abs(perms).astype(np.uint8)) << np.int64(n)
    neg = perms < 0
    for idx in range(n):
        ranks += neg[:, idx].astype(np.int64) << np.int64(idx)
    return ranks


def batch_signed_flip(perms: np.ndarray, i: int) -> np.ndarray:
    """Reverse and negate the first i columns of each row."""
    out = perms.copy()
    out[:, :i] = perms[:, i - 1 :: -1]
    np.negative(out[:, :i], out=out[:, :i])
    return out


# ---------------------------------------------------------------------------
# bitsets

def bitset_alloc(size_bits: int) -> np.ndarray:
    return np.zeros((size_bits + 63) // 64, dtype=np.uint64)


def bitset_set(words: np.ndarray, ranks: np.ndarray) -> None:
    """Set the given bits (idempotent; duplicate ranks allowed)."""
    bit = np.left_shift(np.uint64(1), (ranks & 63).astype(np.uint64))
    np.bitwise_or.at(words, ranks >> 6, bit)


def bitset_test(words: np.ndarray, ranks: np.ndarray) -> np.ndarray:
    """Boolean array: is each rank's bit set?"""
    shift = (ranks & 63).astype(np.uint64)
    return (words[ranks >> 6] >> shift).astype(np.int64) & 1 == 1


def bitset_extract_ranks(words: np.ndarray, word_offset: int = 0) -> np.ndarray:
    """Ranks of all set bits, ascending, as int64."""
    bits = np.unpackbits(words.view(np.uint8), bitorder="little")
    ranks = np.flatnonzero(bits).astype(np.int64)
    if word_offset:
        ranks += word_offset * 64
    return ranks


def bitset_popcount(words: np.ndarray) -> int:
    return int(np.bitwise_count(words).sum())
