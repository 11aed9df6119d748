"""Dense bit-packed linear algebra over F2.

Matrices and vectors store one bit per entry in row-major uint64 words,
so row operations are word-parallel XORs.  Gaussian elimination always
picks pivots left to right and swaps rows upward, which pins down every
basis this module returns: identical inputs give bit-identical outputs.

Zero-dimensional matrices (0 x n, n x 0) are valid everywhere.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

import numpy as np

WORD_BITS = 64


def _n_words(cols: int) -> int:
    return (cols + WORD_BITS - 1) // WORD_BITS


def _pack(dense: np.ndarray, cols: int) -> np.ndarray:
    """Pack a (rows, cols) 0/1 array into (rows, n_words) uint64, little-endian bits."""
    rows = dense.shape[0]
    nw = _n_words(cols)
    if cols == 0 or rows == 0:
        return np.zeros((rows, nw), dtype=np.uint64)
    packed8 = np.packbits(dense.astype(np.uint8), axis=1, bitorder="little")
    padded = np.zeros((rows, nw * 8), dtype=np.uint8)
    padded[:, : packed8.shape[1]] = packed8
    return padded.view(np.uint64)


def _unpack(words: np.ndarray, cols: int) -> np.ndarray:
    rows = words.shape[0]
    if cols == 0 or rows == 0:
        return np.zeros((rows, cols), dtype=np.uint8)
    bits = np.unpackbits(words.view(np.uint8), axis=1, bitorder="little", count=cols)
    return bits.astype(np.uint8)


def popcount_rows(words: np.ndarray) -> np.ndarray:
    """Per-row popcount of a (rows, n_words) uint64 array."""
    if words.size == 0:
        return np.zeros(words.shape[0], dtype=np.int64)
    return np.bitwise_count(words).sum(axis=1, dtype=np.int64)


class F2Vector:
    """Immutable bit-packed vector over F2."""

    __slots__ = ("len", "words")

    def __init__(self, words: np.ndarray, length: int):
        self.len = int(length)
        self.words = words
        self.words.flags.writeable = False

    @staticmethod
    def from_bits(bits: Sequence[int] | np.ndarray) -> "F2Vector":
        arr = np.asarray(bits, dtype=np.uint8).reshape(1, -1) & 1
        n = arr.shape[1]
        return F2Vector(_pack(arr, n)[0], n)

    @staticmethod
    def zeros(n: int) -> "F2Vector":
        return F2Vector(np.zeros(_n_words(n), dtype=np.uint64), n)

    @staticmethod
    def from_support(n: int, support: Iterable[int]) -> "F2Vector":
        bits = np.zeros(n, dtype=np.uint8)
        for i in support:
            bits[i] ^= 1
        return F2Vector.from_bits(bits)

    def to_bits(self) -> np.ndarray:
        return _unpack(self.words.reshape(1, -1), self.len)[0]

    def support(self) -> np.ndarray:
        return np.nonzero(self.to_bits())[0]

    def weight(self) -> int:
        return int(popcount_rows(self.words.reshape(1, -1))[0])

    def dot(self, other: "F2Vector") -> int:
        if self.len != other.len:
            raise ValueError(f"length mismatch: {self.len} vs {other.len}")
        return int(np.bitwise_count(self.words & other.words).sum() & 1)

    def __xor__(self, other: "F2Vector") -> "F2Vector":
        if self.len != other.len:
            raise ValueError(f"length mismatch: {self.len} vs {other.len}")
        return F2Vector(self.words ^ other.words, self.len)

    def __getitem__(self, i: int) -> int:
        return int((self.words[i >> 6] >> np.uint64(i & 63)) & np.uint64(1))

    def is_zero(self) -> bool:
        return not self.words.any()

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, F2Vector)
            and self.len == other.len
            and np.array_equal(self.words, other.words)
        )

    def __hash__(self) -> int:
        return hash((self.len, self.words.tobytes()))

    def __repr__(self) -> str:
        return f"F2Vector({''.join(map(str, self.to_bits()))})"


class F2Matrix:
    """Immutable bit-packed matrix over F2, row-major."""

    __slots__ = ("rows", "cols", "words")

    def __init__(self, words: np.ndarray, rows: int, cols: int):
        self.rows = int(rows)
        self.cols = int(cols)
        self.words = words
        self.words.flags.writeable = False

    @staticmethod
    def from_dense(dense: Sequence[Sequence[int]] | np.ndarray) -> "F2Matrix":
        arr = np.asarray(dense, dtype=np.uint8) & 1
        if arr.ndim != 2:
            raise ValueError("expected a 2D array")
        rows, cols = arr.shape
        return F2Matrix(_pack(arr, cols), rows, cols)

    @staticmethod
    def zeros(rows: int, cols: int) -> "F2Matrix":
        return F2Matrix(np.zeros((rows, _n_words(cols)), dtype=np.uint64), rows, cols)

    @staticmethod
    def identity(n: int) -> "F2Matrix":
        return F2Matrix.from_dense(np.eye(n, dtype=np.uint8))

    @staticmethod
    def from_rows(vectors: Sequence[F2Vector], cols: Optional[int] = None) -> "F2Matrix":
        if not vectors:
            if cols is None:
                raise ValueError("cols required for an empty row list")
            return F2Matrix.zeros(0, cols)
        n = vectors[0].len
        if cols is not None and cols != n:
            raise ValueError("cols disagrees with vector length")
        if any(v.len != n for v in vectors):
            raise ValueError("row length mismatch")
        words = np.stack([v.words for v in vectors])
        return F2Matrix(words, len(vectors), n)

    def to_dense(self) -> np.ndarray:
        return _unpack(self.words, self.cols)

    def row(self, i: int) -> F2Vector:
        return F2Vector(self.words[i].copy(), self.cols)

    def get(self, i: int, j: int) -> int:
        return int((self.words[i, j >> 6] >> np.uint64(j & 63)) & np.uint64(1))

    def transpose(self) -> "F2Matrix":
        return F2Matrix.from_dense(self.to_dense().T)

    def mul(self, other: "F2Matrix") -> "F2Matrix":
        """Matrix product over F2."""
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.cols} vs {other.rows}")
        out = np.zeros((self.rows, other.words.shape[1]), dtype=np.uint64)
        dense_left = self.to_dense()
        for i in range(self.rows):
            supp = np.nonzero(dense_left[i])[0]
            if supp.size:
                out[i] = np.bitwise_xor.reduce(other.words[supp], axis=0)
        return F2Matrix(out, self.rows, other.cols)

    def mul_vec(self, v: F2Vector) -> F2Vector:
        """Matrix-vector product M @ v over F2."""
        if self.cols != v.len:
            raise ValueError(f"shape mismatch: {self.cols} vs {v.len}")
        overlap = np.bitwise_count(self.words & v.words.reshape(1, -1)).sum(axis=1) & 1
        return F2Vector.from_bits(overlap)

    def add(self, other: "F2Matrix") -> "F2Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return F2Matrix(self.words ^ other.words, self.rows, self.cols)

    def vstack(self, other: "F2Matrix") -> "F2Matrix":
        if self.cols != other.cols:
            raise ValueError("column count mismatch")
        return F2Matrix(
            np.concatenate([self.words, other.words], axis=0),
            self.rows + other.rows,
            self.cols,
        )

    def hstack(self, other: "F2Matrix") -> "F2Matrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return F2Matrix.from_dense(
            np.concatenate([self.to_dense(), other.to_dense()], axis=1)
        )

    def take_columns(self, indices: Sequence[int]) -> "F2Matrix":
        return F2Matrix.from_dense(self.to_dense()[:, list(indices)])

    def take_rows(self, indices: Sequence[int]) -> "F2Matrix":
        idx = list(indices)
        return F2Matrix(self.words[idx].copy(), len(idx), self.cols)

    def is_zero(self) -> bool:
        return not self.words.any()

    def row_weights(self) -> np.ndarray:
        return popcount_rows(self.words)

    def col_weights(self) -> np.ndarray:
        return self.to_dense().sum(axis=0, dtype=np.int64)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, F2Matrix)
            and (self.rows, self.cols) == (other.rows, other.cols)
            and np.array_equal(self.words, other.words)
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.words.tobytes()))

    def __repr__(self) -> str:
        return f"F2Matrix({self.rows}x{self.cols})"


def _echelon(words: np.ndarray, cols: int, reduced: bool = True) -> list[int]:
    """In-place Gaussian elimination on packed rows; returns pivot columns.

    Pivots are chosen left to right and rows swapped upward.  With
    reduced=True entries above pivots are cleared too (RREF).
    """
    rows = words.shape[0]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        w = c >> 6
        bit = np.uint64(1 << (c & 63))
        col = words[r:, w] & bit
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            words[[r, p]] = words[[p, r]]
        if reduced:
            mask = (words[:, w] & bit).astype(bool)
        else:
            mask = np.zeros(rows, dtype=bool)
            mask[r:] = (words[r:, w] & bit).astype(bool)
        mask[r] = False
        if mask.any():
            words[mask] ^= words[r]
        pivots.append(c)
        r += 1
    return pivots


def rank(m: F2Matrix) -> int:
    """F2 rank of a matrix; the input is not mutated."""
    work = m.words.copy()
    return len(_echelon(work, m.cols))


def kernel_basis(m: F2Matrix) -> list[F2Vector]:
    """Deterministic basis of {x : Mx = 0}; size = cols - rank."""
    work = m.words.copy()
    pivots = _echelon(work, m.cols)
    pivot_set = set(pivots)
    free_cols = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for free in free_cols:
        bits = np.zeros(m.cols, dtype=np.uint8)
        bits[free] = 1
        fw = free >> 6
        fbit = np.uint64(1 << (free & 63))
        for i, p in enumerate(pivots):
            if (work[i, fw] & fbit) != 0:
                bits[p] = 1
        basis.append(F2Vector.from_bits(bits))
    return basis


def image_basis(m: F2Matrix) -> list[F2Vector]:
    """Basis of the column space: the original columns at pivot positions."""
    work = m.words.copy()
    pivots = _echelon(work, m.cols)
    dense = m.to_dense()
    return [F2Vector.from_bits(dense[:, p]) for p in pivots]


def solve(m: F2Matrix, b: F2Vector) -> Optional[F2Vector]:
    """Some x with Mx = b, or None if b is not in the column space of M."""
    if b.len != m.rows:
        raise ValueError(f"dimension mismatch: b has length {b.len}, M has {m.rows} rows")
    aug = F2Matrix.from_dense(
        np.concatenate([m.to_dense(), b.to_bits().reshape(-1, 1)], axis=1)
    )
    work = aug.words.copy()
    pivots = _echelon(work, aug.cols)
    if pivots and pivots[-1] == m.cols:
        return None
    bits = np.zeros(m.cols, dtype=np.uint8)
    bw = m.cols >> 6
    bbit = np.uint64(1 << (m.cols & 63))
    for i, p in enumerate(pivots):
        if (work[i, bw] & bbit) != 0:
            bits[p] = 1
    return F2Vector.from_bits(bits)


class _EchelonAccumulator:
    """Incremental row-echelon store for span membership and extension tests."""

    def __init__(self, n: int):
        self.n = n
        self.rows: list[np.ndarray] = []
        self.pivots: list[int] = []

    @staticmethod
    def from_vectors(vectors: Iterable[F2Vector], n: int) -> "_EchelonAccumulator":
        acc = _EchelonAccumulator(n)
        for v in vectors:
            acc.add(v)
        return acc

    def _reduce_words(self, words: np.ndarray) -> np.ndarray:
        w = words.copy()
        for piv, row in zip(self.pivots, self.rows):
            if (w[piv >> 6] >> np.uint64(piv & 63)) & np.uint64(1):
                w ^= row
        return w

    def reduce(self, v: F2Vector) -> F2Vector:
        return F2Vector(self._reduce_words(v.words), self.n)

    def contains(self, v: F2Vector) -> bool:
        return not self._reduce_words(v.words).any()

    def add(self, v: F2Vector) -> bool:
        """Add v to the span; returns True if it increased the rank."""
        w = self._reduce_words(v.words)
        if not w.any():
            return False
        nz_word = int(np.nonzero(w)[0][0])
        low = int(w[nz_word])
        piv = nz_word * 64 + ((low & -low).bit_length() - 1)
        self.rows.append(w)
        self.pivots.append(piv)
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)


def span_contains(vectors: Sequence[F2Vector], v: F2Vector) -> bool:
    """Whether v lies in the F2 span of the given vectors."""
    acc = _EchelonAccumulator.from_vectors(vectors, v.len)
    return acc.contains(v)


def quotient_basis(big: Sequence[F2Vector], small: Sequence[F2Vector]) -> list[F2Vector]:
    """Vectors from `big` extending a basis of span(small) to span(big).

    Their cosets form a basis of span(big)/span(small).  Requires
    span(small) to be contained in span(big).
    """
    if big:
        n = big[0].len
    elif small:
        n = small[0].len
    else:
        return []
    big_acc = _EchelonAccumulator.from_vectors(big, n)
    for v in small:
        if not big_acc.contains(v):
            raise ValueError("span(small) is not contained in span(big)")
    acc = _EchelonAccumulator.from_vectors(small, n)
    out = []
    for v in big:
        if acc.add(v):
            out.append(v)
    return out
