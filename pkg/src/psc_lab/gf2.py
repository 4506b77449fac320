"""Bit-packed linear algebra over GF(2).

Matrices are stored row-major with 64 columns per machine word; column j of
a row lives in word j // 64 at bit j % 64.  All operations treat the caller's
matrix as immutable and work on copies.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_WORD = 64
_FULL = np.uint64(0xFFFFFFFFFFFFFFFF)


def _n_words(cols: int) -> int:
    return max(1, (cols + _WORD - 1) // _WORD)


@dataclass(frozen=True)
class BitMatrix:
    """Binary matrix packed into uint64 words, row-major."""

    rows: int
    cols: int
    words: np.ndarray  # shape (rows, n_words), dtype uint64

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, np.zeros((rows, _n_words(cols)), dtype=np.uint64))

    @classmethod
    def from_int_rows(cls, masks, cols: int) -> "BitMatrix":
        """Build from an iterable of Python ints, bit j = column j."""
        masks = list(masks)
        nw = _n_words(cols)
        words = np.zeros((len(masks), nw), dtype=np.uint64)
        for i, mask in enumerate(masks):
            if mask < 0 or mask >> cols:
                raise ValueError(f"row {i} does not fit in {cols} columns")
            for w in range(nw):
                words[i, w] = (mask >> (_WORD * w)) & 0xFFFFFFFFFFFFFFFF
        return cls(len(masks), cols, words)

    @classmethod
    def from_bits(cls, bits) -> "BitMatrix":
        """Build from a 2-d array of 0/1 values."""
        bits = np.asarray(bits, dtype=np.uint8)
        if bits.ndim != 2:
            raise ValueError("expected a 2-d array")
        rows, cols = bits.shape
        out = cls.zeros(rows, cols)
        shifts = np.arange(cols, dtype=np.uint64) % _WORD
        cols_w = np.arange(cols) // _WORD
        for w in range(out.words.shape[1]):
            sel = cols_w == w
            if not sel.any():
                continue
            contrib = (bits[:, sel].astype(np.uint64) << shifts[sel]).sum(
                axis=1, dtype=np.uint64
            )
            out.words[:, w] = contrib
        return out

    def get(self, i: int, j: int) -> int:
        return int((self.words[i, j // _WORD] >> np.uint64(j % _WORD)) & np.uint64(1))

    def to_bits(self) -> np.ndarray:
        """Unpack to a (rows, cols) uint8 array of 0/1."""
        if self.rows == 0:
            return np.zeros((0, self.cols), dtype=np.uint8)
        shifts = np.arange(_WORD, dtype=np.uint64)
        bits = (self.words[:, :, None] >> shifts[None, None, :]) & np.uint64(1)
        return bits.reshape(self.rows, -1)[:, : self.cols].astype(np.uint8)

    def row_as_int(self, i: int) -> int:
        mask = 0
        for w in range(self.words.shape[1] - 1, -1, -1):
            mask = (mask << _WORD) | int(self.words[i, w])
        return mask

    def row_weights(self) -> np.ndarray:
        bits = self.to_bits()
        return bits.sum(axis=1, dtype=np.int64)

    def copy(self) -> "BitMatrix":
        return BitMatrix(self.rows, self.cols, self.words.copy())


def _column_bit(words: np.ndarray, j: int) -> np.ndarray:
    return (words[:, j // _WORD] >> np.uint64(j % _WORD)) & np.uint64(1)


def gf2_rank(mat: BitMatrix) -> int:
    """Rank over GF(2); the input matrix is not modified."""
    words = mat.words.copy()
    rank = 0
    for col in range(mat.cols):
        if rank == mat.rows:
            break
        hits = np.nonzero(_column_bit(words[rank:], col))[0]
        if hits.size == 0:
            continue
        piv = rank + int(hits[0])
        if piv != rank:
            words[[rank, piv]] = words[[piv, rank]]
        below = rank + 1 + np.nonzero(_column_bit(words[rank + 1 :], col))[0]
        if below.size:
            words[below] ^= words[rank]
        rank += 1
    return rank


def _rref(words: np.ndarray, cols: int) -> tuple[np.ndarray, list[int]]:
    """In-place reduced row echelon form; returns (words, pivot columns)."""
    pivots: list[int] = []
    rank = 0
    for col in range(cols):
        if rank == words.shape[0]:
            break
        hits = np.nonzero(_column_bit(words[rank:], col))[0]
        if hits.size == 0:
            continue
        piv = rank + int(hits[0])
        if piv != rank:
            words[[rank, piv]] = words[[piv, rank]]
        others = np.nonzero(_column_bit(words, col))[0]
        others = others[others != rank]
        if others.size:
            words[others] ^= words[rank]
        pivots.append(col)
        rank += 1
    return words, pivots


def null_space(mat: BitMatrix) -> BitMatrix:
    """Basis of {h : M h^T = 0} as rows of a (cols - rank) x cols matrix."""
    words, pivots = _rref(mat.words.copy(), mat.cols)
    pivot_set = set(pivots)
    free = [j for j in range(mat.cols) if j not in pivot_set]
    out = BitMatrix.zeros(len(free), mat.cols)
    for row, f in enumerate(free):
        out.words[row, f // _WORD] |= np.uint64(1) << np.uint64(f % _WORD)
        col = _column_bit(words[: len(pivots)], f)
        for i, p in enumerate(pivots):
            if col[i]:
                out.words[row, p // _WORD] ^= np.uint64(1) << np.uint64(p % _WORD)
    return out


def select_columns(mat: BitMatrix, keep: np.ndarray) -> BitMatrix:
    """Submatrix of the columns where keep is true."""
    keep = np.asarray(keep, dtype=bool)
    if keep.shape != (mat.cols,):
        raise ValueError("column selector length mismatch")
    return BitMatrix.from_bits(mat.to_bits()[:, keep])


def stack_rows(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    if a.cols != b.cols:
        raise ValueError("column count mismatch")
    return BitMatrix(a.rows + b.rows, a.cols, np.vstack([a.words, b.words]))


def matmul_t(a: BitMatrix, b: BitMatrix) -> np.ndarray:
    """A @ B^T over GF(2) as a (a.rows, b.rows) uint8 array."""
    if a.cols != b.cols:
        raise ValueError("column count mismatch")
    ab, bb = a.to_bits(), b.to_bits()
    return (ab.astype(np.uint32) @ bb.T.astype(np.uint32)) % 2
