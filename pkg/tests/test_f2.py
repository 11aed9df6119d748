"""Tests for the bit-packed F2 linear algebra kernel."""

import itertools

import numpy as np
import pytest

from cssurgeon.f2 import (
    F2Matrix,
    F2Vector,
    image_basis,
    kernel_basis,
    quotient_basis,
    rank,
    solve,
    span_contains,
)


def brute_nullspace(dense: np.ndarray) -> set[tuple[int, ...]]:
    """Oracle: enumerate all of F2^n and keep vectors with Mx = 0."""
    m, n = dense.shape
    out = set()
    for bits in itertools.product((0, 1), repeat=n):
        x = np.array(bits, dtype=np.uint8)
        if not ((dense @ x) % 2).any():
            out.add(bits)
    return out


def brute_span(vectors: list[np.ndarray], n: int) -> set[tuple[int, ...]]:
    """Oracle: enumerate every F2 combination of the given vectors."""
    out = set()
    for coeffs in itertools.product((0, 1), repeat=len(vectors)):
        acc = np.zeros(n, dtype=np.uint8)
        for c, v in zip(coeffs, vectors):
            if c:
                acc ^= v
        out.add(tuple(acc))
    return out


class TestRank:
    def test_identity(self):
        assert rank(F2Matrix.identity(3)) == 3

    def test_hand_row_reduction(self):
        # [[1,1,0],[0,1,1]]: rows already independent by hand reduction.
        assert rank(F2Matrix.from_dense([[1, 1, 0], [0, 1, 1]])) == 2

    def test_empty(self):
        assert rank(F2Matrix.zeros(0, 5)) == 0
        assert rank(F2Matrix.zeros(5, 0)) == 0

    def test_rank_equals_transpose_rank(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            m = F2Matrix.from_dense(rng.integers(0, 2, size=(rng.integers(0, 9), rng.integers(0, 9))))
            assert rank(m) == rank(m.transpose())


class TestKernel:
    def test_repetition_kernel(self):
        ker = kernel_basis(F2Matrix.from_dense([[1, 1, 0], [0, 1, 1]]))
        assert [v.to_bits().tolist() for v in ker] == [[1, 1, 1]]

    def test_identity_kernel_empty(self):
        assert kernel_basis(F2Matrix.identity(4)) == []

    def test_random_vs_exhaustive_enumeration(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            dense = rng.integers(0, 2, size=(4, 8)).astype(np.uint8)
            m = F2Matrix.from_dense(dense)
            basis = kernel_basis(m)
            assert len(basis) == 8 - rank(m)
            for b in basis:
                assert not ((dense @ b.to_bits()) % 2).any()
            # basis spans exactly the brute-force nullspace
            spanned = brute_span([b.to_bits() for b in basis], 8)
            assert spanned == brute_nullspace(dense)
            # linear independence via rank of the stacked matrix
            if basis:
                assert rank(F2Matrix.from_rows(basis)) == len(basis)

    def test_rank_nullity(self):
        rng = np.random.default_rng(3)
        for _ in range(30):
            m = F2Matrix.from_dense(rng.integers(0, 2, size=(5, 7)))
            assert m.cols == rank(m) + len(kernel_basis(m))

    def test_wide_matrix_multiword(self):
        # exercise the multi-word path (cols > 64)
        rng = np.random.default_rng(5)
        dense = rng.integers(0, 2, size=(10, 130)).astype(np.uint8)
        m = F2Matrix.from_dense(dense)
        for b in kernel_basis(m):
            assert not ((dense @ b.to_bits()) % 2).any()
        assert len(kernel_basis(m)) == 130 - rank(m)


class TestImage:
    def test_identity(self):
        basis = image_basis(F2Matrix.identity(2))
        assert [v.to_bits().tolist() for v in basis] == [[1, 0], [0, 1]]

    def test_rank_one(self):
        basis = image_basis(F2Matrix.from_dense([[1, 1], [1, 1]]))
        assert [v.to_bits().tolist() for v in basis] == [[1, 1]]

    def test_span_matches_column_span(self):
        rng = np.random.default_rng(13)
        for _ in range(20):
            n_rows = int(rng.integers(1, 7))
            n_cols = int(rng.integers(1, 7))
            dense = rng.integers(0, 2, size=(n_rows, n_cols)).astype(np.uint8)
            m = F2Matrix.from_dense(dense)
            basis = image_basis(m)
            assert len(basis) == rank(m)
            got = brute_span([v.to_bits() for v in basis], n_rows)
            want = brute_span([dense[:, j] for j in range(n_cols)], n_rows)
            assert got == want


class TestSolve:
    def test_identity(self):
        b = F2Vector.from_bits([1, 0, 1])
        x = solve(F2Matrix.identity(3), b)
        assert x == b

    def test_solution_satisfies_system(self):
        m = F2Matrix.from_dense([[1, 1, 0], [0, 1, 1]])
        b = F2Vector.from_bits([1, 0])
        x = solve(m, b)
        assert x is not None
        assert m.mul_vec(x) == b

    def test_zero_matrix_unsolvable(self):
        m = F2Matrix.zeros(3, 4)
        assert solve(m, F2Vector.from_bits([1, 0, 0])) is None
        assert solve(m, F2Vector.zeros(3)) == F2Vector.zeros(4)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            solve(F2Matrix.identity(3), F2Vector.from_bits([1, 0]))

    def test_random(self):
        rng = np.random.default_rng(17)
        for _ in range(40):
            dense = rng.integers(0, 2, size=(5, 6)).astype(np.uint8)
            m = F2Matrix.from_dense(dense)
            x0 = rng.integers(0, 2, size=6).astype(np.uint8)
            b = F2Vector.from_bits((dense @ x0) % 2)
            x = solve(m, b)
            assert x is not None
            assert m.mul_vec(x) == b


class TestQuotientBasis:
    def test_extend_single(self):
        e1 = F2Vector.from_bits([1, 0])
        e2 = F2Vector.from_bits([0, 1])
        out = quotient_basis([e1, e2], [e1])
        assert out == [e2]

    def test_full_space_empty_small(self):
        basis = [F2Vector.from_bits(b) for b in ([1, 0, 0], [0, 1, 0], [0, 0, 1])]
        out = quotient_basis(basis, [])
        assert len(out) == 3
        assert rank(F2Matrix.from_rows(out)) == 3

    def test_precondition_violation(self):
        e1 = F2Vector.from_bits([1, 0])
        e2 = F2Vector.from_bits([0, 1])
        with pytest.raises(ValueError):
            quotient_basis([e1], [e2])

    def test_counts_random(self):
        rng = np.random.default_rng(23)
        for _ in range(30):
            vecs = [F2Vector.from_bits(rng.integers(0, 2, size=7)) for _ in range(6)]
            small = vecs[:2]
            big = vecs  # small is a subset, so spans nest
            out = quotient_basis(big, small)
            dim_big = rank(F2Matrix.from_rows(big))
            dim_small = rank(F2Matrix.from_rows(small))
            assert len(out) == dim_big - dim_small
            stacked = small + out
            assert rank(F2Matrix.from_rows(stacked, cols=7)) == dim_big


class TestMatrixOps:
    def test_mul_matches_numpy(self):
        rng = np.random.default_rng(29)
        for _ in range(20):
            a = rng.integers(0, 2, size=(4, 6)).astype(np.uint8)
            b = rng.integers(0, 2, size=(6, 3)).astype(np.uint8)
            got = F2Matrix.from_dense(a).mul(F2Matrix.from_dense(b)).to_dense()
            assert np.array_equal(got, (a @ b) % 2)

    def test_padding_invariant_after_ops(self):
        # bits beyond `cols` in the last word stay zero
        m = F2Matrix.from_dense(np.ones((3, 65), dtype=np.uint8))
        x = m.add(F2Matrix.zeros(3, 65))
        assert x.words[:, 1].max() == 1  # only bit 0 of word 1 used

    def test_vector_ops(self):
        v = F2Vector.from_bits([1, 0, 1, 1])
        w = F2Vector.from_bits([0, 1, 1, 0])
        assert v.weight() == 3
        assert (v ^ w).to_bits().tolist() == [1, 1, 0, 1]
        assert v.dot(w) == 1
        assert v.support().tolist() == [0, 2, 3]

    def test_determinism(self):
        rng = np.random.default_rng(31)
        dense = rng.integers(0, 2, size=(6, 9)).astype(np.uint8)
        m1 = F2Matrix.from_dense(dense)
        m2 = F2Matrix.from_dense(dense)
        assert kernel_basis(m1) == kernel_basis(m2)
        assert image_basis(m1) == image_basis(m2)

    def test_span_contains(self):
        vs = [F2Vector.from_bits([1, 1, 0]), F2Vector.from_bits([0, 1, 1])]
        assert span_contains(vs, F2Vector.from_bits([1, 0, 1]))
        assert not span_contains(vs, F2Vector.from_bits([1, 0, 0]))
