"""Dense bitsets over uint64 words.

Errors, syndromes and qubit subsets are stored as little-endian bit arrays:
bit ``i`` of the set lives in word ``i >> 6`` at position ``i & 63``.  All
helpers here are vectorized numpy; the decoder kernels manipulate the same
word arrays directly.
"""

from __future__ import annotations

import numpy as np

_ONE = np.uint64(1)
_SIX3 = np.uint64(63)


def n_words(n_bits: int) -> int:
    """Number of uint64 words needed for ``n_bits`` bits."""
    return (int(n_bits) + 63) >> 6


def zeros(n_bits: int) -> np.ndarray:
    """Empty bitset able to hold ``n_bits`` bits."""
    return np.zeros(n_words(n_bits), dtype=np.uint64)


def from_indices(indices, n_bits: int) -> np.ndarray:
    """Bitset with exactly the given bit positions set.

    Duplicate indices are collapsed (set semantics, not XOR).
    """
    words = zeros(n_bits)
    idx = np.asarray(indices, dtype=np.int64)
    if idx.size == 0:
        return words
    if idx.min() < 0 or idx.max() >= n_bits:
        raise IndexError(f"bit index out of range for size {n_bits}")
    np.bitwise_or.at(words, idx >> 6, _ONE << (idx & 63).astype(np.uint64))
    return words


def from_bool(mask: np.ndarray) -> np.ndarray:
    """Bitset from a boolean (or 0/1) vector."""
    mask = np.asarray(mask)
    return from_indices(np.flatnonzero(mask), mask.shape[0])


def to_indices(words: np.ndarray, n_bits: int | None = None) -> np.ndarray:
    """Sorted array of set bit positions."""
    out = []
    for w_i, w in enumerate(words):
        w = int(w)
        base = w_i << 6
        while w:
            low = w & -w
            out.append(base + low.bit_length() - 1)
            w ^= low
    idx = np.asarray(out, dtype=np.int64)
    if n_bits is not None:
        idx = idx[idx < n_bits]
    return idx


def to_bool(words: np.ndarray, n_bits: int) -> np.ndarray:
    """Boolean vector of length ``n_bits``."""
    out = np.zeros(n_bits, dtype=bool)
    idx = to_indices(words, n_bits)
    out[idx] = True
    return out


def popcount(words: np.ndarray) -> int:
    """Number of set bits."""
    return int(np.bitwise_count(words).sum())


def get_bit(words: np.ndarray, i: int) -> int:
    return int((words[i >> 6] >> np.uint64(i & 63)) & _ONE)


def flip_bit(words: np.ndarray, i: int) -> None:
    words[i >> 6] ^= _ONE << np.uint64(i & 63)


def xor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.bitwise_xor(a, b)


def intersection_size(a: np.ndarray, b: np.ndarray) -> int:
    return int(np.bitwise_count(a & b).sum())


def union(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.bitwise_or(a, b)


def is_zero(words: np.ndarray) -> bool:
    return not words.any()


def equal(a: np.ndarray, b: np.ndarray) -> bool:
    return bool(np.array_equal(a, b))


def isdisjoint(a: np.ndarray, b: np.ndarray) -> bool:
    return not (a & b).any()


def subset_of(a: np.ndarray, b: np.ndarray) -> bool:
    """True when every bit of ``a`` is also set in ``b``."""
    return not (a & ~b).any()
