"""Code constructors: tensor products, lifted products, and gadget codes.

Lifted products are built by writing the block matrices symbolically over
a circulant (or bivariate-circulant) polynomial ring and then expanding
every ring entry to its F2 shift-matrix image.  Transposes are always
taken on the expanded F2 matrices, which sidesteps polynomial
conjugation bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .codes import CssCode
from .f2 import F2Matrix, kernel_basis, rank


@dataclass
class ClassicalCode:
    """A binary linear code presented by its parity-check matrix C_1 -> C_0."""

    check: F2Matrix

    @property
    def n(self) -> int:
        return self.check.cols

    @property
    def k(self) -> int:
        return self.check.cols - rank(self.check)

    @property
    def n_dual(self) -> int:
        return self.check.rows

    @property
    def k_dual(self) -> int:
        return self.check.rows - rank(self.check)

    @staticmethod
    def repetition(n: int) -> "ClassicalCode":
        """(n-1) x n repetition-code check matrix."""
        dense = np.zeros((n - 1, n), dtype=np.uint8)
        for i in range(n - 1):
            dense[i, i] = dense[i, i + 1] = 1
        return ClassicalCode(F2Matrix.from_dense(dense))


@dataclass(frozen=True)
class CirculantPoly:
    """Element of F2[x]/(x^ell - 1), stored as its set of exponents."""

    ell: int
    terms: frozenset[int]

    @staticmethod
    def make(ell: int, exponents: Sequence[int]) -> "CirculantPoly":
        return CirculantPoly(ell, frozenset(e % ell for e in exponents))


@dataclass(frozen=True)
class BivariatePoly:
    """Element of F2[x,y]/(x^ell - 1, y^m - 1) as a set of (i, j) exponent pairs."""

    ell: int
    m: int
    terms: frozenset[tuple[int, int]]

    @staticmethod
    def make(ell: int, m: int, exponents: Sequence[tuple[int, int]]) -> "BivariatePoly":
        return BivariatePoly(ell, m, frozenset((i % ell, j % m) for i, j in exponents))


def _shift(ell: int, e: int) -> np.ndarray:
    """Right cyclic shift matrix x^e: row i has a one at column (i + e) mod ell."""
    return np.roll(np.eye(ell, dtype=np.uint8), e % ell, axis=1)


def circulant_matrix(p: CirculantPoly) -> F2Matrix:
    """Expand a circulant polynomial to its ell x ell F2 matrix."""
    dense = np.zeros((p.ell, p.ell), dtype=np.uint8)
    for e in sorted(p.terms):
        dense ^= _shift(p.ell, e)
    return F2Matrix.from_dense(dense)


def bivariate_matrix(p: BivariatePoly) -> F2Matrix:
    """Expand x^i y^j terms to kron(shift_ell^i, shift_m^j); size ell*m."""
    dense = np.zeros((p.ell * p.m, p.ell * p.m), dtype=np.uint8)
    for i, j in sorted(p.terms):
        dense ^= np.kron(_shift(p.ell, i), _shift(p.m, j))
    return F2Matrix.from_dense(dense)


def tensor_product(a: ClassicalCode, b: ClassicalCode) -> CssCode:
    """Tensor product CSS code of two classical codes.

    With A = a.check and B = b.check:
        P_X = (id_{C_0} (x) B | A (x) id_{D_0})
        P_Z = (A^T (x) id_{D_1} | id_{C_1} (x) B^T)
    Qubits are the C_0 (x) D_1 block first, then C_1 (x) D_0.
    """
    ad = a.check.to_dense()
    bd = b.check.to_dense()
    a0, a1 = ad.shape
    b0, b1 = bd.shape
    px = np.concatenate(
        [np.kron(np.eye(a0, dtype=np.uint8), bd), np.kron(ad, np.eye(b0, dtype=np.uint8))],
        axis=1,
    )
    pz = np.concatenate(
        [np.kron(ad.T, np.eye(b1, dtype=np.uint8)), np.kron(np.eye(a1, dtype=np.uint8), bd.T)],
        axis=1,
    )
    return CssCode.from_dense(px, pz)


def kunneth_k(a: ClassicalCode, b: ClassicalCode) -> int:
    """Logical count of tensor_product(a, b) from the dimension-count identity."""
    return a.k_dual * b.k + a.k * b.k_dual


def path_code(r: int) -> ClassicalCode:
    """Incidence matrix of the path graph on r+1 vertices ((r+1) x r)."""
    if r < 1:
        raise ValueError("depth r must be >= 1")
    dense = np.zeros((r + 1, r), dtype=np.uint8)
    for j in range(r):
        dense[j, j] = dense[j + 1, j] = 1
    return ClassicalCode(F2Matrix.from_dense(dense))


def truncated_path_code(r: int) -> ClassicalCode:
    """r x r lower-bidiagonal incidence matrix of a truncated path graph."""
    if r < 1:
        raise ValueError("depth r must be >= 1")
    dense = np.zeros((r, r), dtype=np.uint8)
    for s in range(r):
        dense[s, s] = 1
        if s > 0:
            dense[s, s - 1] = 1
    return ClassicalCode(F2Matrix.from_dense(dense))


def gadget_tensor(base: ClassicalCode, sub_matrix: F2Matrix, base_first: bool = True) -> CssCode:
    """Tensor a gadget classical code with a restricted-matrix complex.

    base_first=True builds the merge gadget (base (x) V); False builds the
    measurement gadget (V (x) base).
    """
    v = ClassicalCode(sub_matrix)
    return tensor_product(base, v) if base_first else tensor_product(v, base)


def _ring_block_expand(
    blocks: list[list[Optional[CirculantPoly]]], ell: int
) -> np.ndarray:
    """Expand a block matrix of circulant polynomials to dense F2."""
    nr = len(blocks)
    nc = len(blocks[0]) if nr else 0
    out = np.zeros((nr * ell, nc * ell), dtype=np.uint8)
    for i in range(nr):
        for j in range(nc):
            p = blocks[i][j]
            if p is not None and p.terms:
                out[i * ell : (i + 1) * ell, j * ell : (j + 1) * ell] = circulant_matrix(
                    p
                ).to_dense()
    return out


def lcs_code(L: int, ell: int) -> CssCode:
    """Lift-connected surface code over the ring of ell x ell circulants.

    The base classical code is the L x (L+1) block matrix B with identity
    blocks on the diagonal and (1 + x) blocks beside them; the CSS code is
    the lifted tensor product of B^T with B.  Parameters are
    n = ((L+1)^2 + L^2) ell and k = ell.
    """
    if L < 1:
        raise ValueError("L must be >= 1")
    if ell < 2:
        raise ValueError("ell must be >= 2")
    one = CirculantPoly.make(ell, [0])
    one_plus_x = CirculantPoly.make(ell, [0, 1])
    b_blocks: list[list[Optional[CirculantPoly]]] = [
        [None] * (L + 1) for _ in range(L)
    ]
    for i in range(L):
        b_blocks[i][i] = one
        b_blocks[i][i + 1] = one_plus_x
    b_f2 = _ring_block_expand(b_blocks, ell)
    a_f2 = b_f2.T  # A = B^T, transposed after expansion
    # lifted tensor product: kron over the ring = blockwise placement of
    # ell x ell chunks, which coincides with plain kron on id factors
    a0, a1 = L + 1, L  # ring ranks of C_0, C_1
    b0, b1 = L, L + 1
    px = np.concatenate(
        [
            _kron_id_left(b_f2, a0, ell),
            _kron_id_right(a_f2, b0, ell),
        ],
        axis=1,
    )
    pz = np.concatenate(
        [
            _kron_id_right(a_f2.T, b1, ell),
            _kron_id_left(b_f2.T, a1, ell),
        ],
        axis=1,
    )
    return CssCode.from_dense(px, pz)


def _kron_id_left(m_f2: np.ndarray, k: int, ell: int) -> np.ndarray:
    """Expanded id_k (x) M for M an expanded ring matrix with ell x ell blocks."""
    r, c = m_f2.shape
    out = np.zeros((k * r, k * c), dtype=np.uint8)
    for i in range(k):
        out[i * r : (i + 1) * r, i * c : (i + 1) * c] = m_f2
    return out


def _kron_id_right(m_f2: np.ndarray, k: int, ell: int) -> np.ndarray:
    """Expanded M (x) id_k: block (i, j) of M becomes diag-repeated k times."""
    r, c = m_f2.shape
    nr, nc = r // ell, c // ell
    out = np.zeros((nr * k * ell, nc * k * ell), dtype=np.uint8)
    for i in range(nr):
        for j in range(nc):
            block = m_f2[i * ell : (i + 1) * ell, j * ell : (j + 1) * ell]
            if block.any():
                for t in range(k):
                    out[
                        (i * k + t) * ell : (i * k + t + 1) * ell,
                        (j * k + t) * ell : (j * k + t + 1) * ell,
                    ] = block
    return out


def gb_code(ell: int, a: CirculantPoly, b: CirculantPoly) -> CssCode:
    """Generalised bicycle code: P_X = (A B), P_Z = (B^T A^T), n = 2 ell."""
    if a.ell != ell or b.ell != ell:
        raise ValueError("polynomial modulus does not match ell")
    A = circulant_matrix(a).to_dense()
    B = circulant_matrix(b).to_dense()
    px = np.concatenate([A, B], axis=1)
    pz = np.concatenate([B.T, A.T], axis=1)
    return CssCode.from_dense(px, pz)


def bb_code(ell: int, m: int, a: BivariatePoly, b: BivariatePoly) -> CssCode:
    """Bivariate bicycle code over C_ell (x) C_m: P_X = (A B), P_Z = (B^T A^T).

    n = 2 ell m; the unprimed block of ell*m qubits comes first, the primed
    block second.
    """
    if (a.ell, a.m) != (ell, m) or (b.ell, b.m) != (ell, m):
        raise ValueError("polynomial moduli do not match (ell, m)")
    A = bivariate_matrix(a).to_dense()
    B = bivariate_matrix(b).to_dense()
    px = np.concatenate([A, B], axis=1)
    pz = np.concatenate([B.T, A.T], axis=1)
    return CssCode.from_dense(px, pz)


def gross_code() -> CssCode:
    """The [[144, 12, 12]] bivariate bicycle code: ell=12, m=6, A=x^3+y+y^2, B=y^3+x+x^2."""
    a = BivariatePoly.make(12, 6, [(3, 0), (0, 1), (0, 2)])
    b = BivariatePoly.make(12, 6, [(0, 3), (1, 0), (2, 0)])
    return bb_code(12, 6, a, b)
