"""Small distance-3 reference codes used by tests and benchmarks."""

from __future__ import annotations

import numpy as np

from .codes import CssCode
from .f2 import F2Matrix
from .products import ClassicalCode, tensor_product


def steane_code() -> CssCode:
    """[[7,1,3]] code with P_X = P_Z = the Hamming(7,4) check matrix."""
    h = [[(j + 1) >> i & 1 for j in range(7)] for i in (2, 1, 0)]
    return CssCode.from_dense(h, h)


def shor_code() -> CssCode:
    """[[9,1,3]] code: weight-2 Z checks within blocks, weight-6 X checks."""
    pz = np.zeros((6, 9), dtype=np.uint8)
    row = 0
    for block in range(3):
        for i in range(2):
            pz[row, 3 * block + i] = pz[row, 3 * block + i + 1] = 1
            row += 1
    px = np.zeros((2, 9), dtype=np.uint8)
    px[0, 0:6] = 1
    px[1, 3:9] = 1
    return CssCode.from_dense(px, pz)


def qrm_code() -> CssCode:
    """[[15,1,3]] quantum Reed-Muller code (d_X = 7, triorthogonal).

    Qubit j corresponds to the nonzero point j+1 of F2^4.  X checks are
    the four coordinate evaluation vectors (weight 8); the ten Z checks
    are independent weight-4 degree-2 evaluations: the pairwise products
    x_i x_j plus x_i (1 + x_{i+1 mod 4}).
    """
    bits = np.array([[(j + 1) >> i & 1 for j in range(15)] for i in range(4)], dtype=np.uint8)
    px = bits
    pairs = [bits[i] & bits[j] for i in range(4) for j in range(i + 1, 4)]
    halves = [bits[i] & (1 - bits[(i + 1) % 4]) for i in range(4)]
    pz = np.stack(pairs + halves)
    return CssCode.from_dense(px, pz)


def rotated_surface_code() -> CssCode:
    """[[9,1,3]] rotated surface code on a 3x3 grid (qubit index = 3*row + col)."""
    px = [
        [1, 1, 0, 0, 0, 0, 0, 0, 0],
        [0, 1, 1, 0, 1, 1, 0, 0, 0],
        [0, 0, 0, 1, 1, 0, 1, 1, 0],
        [0, 0, 0, 0, 0, 0, 0, 1, 1],
    ]
    pz = [
        [1, 1, 0, 1, 1, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 1, 0, 0, 0],
        [0, 0, 0, 1, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 1, 1, 0, 1, 1],
    ]
    return CssCode.from_dense(px, pz)


def unrotated_surface_code() -> CssCode:
    """[[13,1,3]] planar surface code as the tensor product of rep-3 with its dual."""
    rep = ClassicalCode.repetition(3)
    rep_dual = ClassicalCode(rep.check.transpose())
    return tensor_product(rep, rep_dual)


def toric_code(size: int = 3) -> CssCode:
    """[[2L^2, 2, L]] toric code; horizontal edges first, then vertical."""
    L = size
    n = 2 * L * L

    def h(i: int, j: int) -> int:
        return L * (i % L) + (j % L)

    def v(i: int, j: int) -> int:
        return L * L + L * (i % L) + (j % L)

    px = np.zeros((L * L, n), dtype=np.uint8)  # vertices
    pz = np.zeros((L * L, n), dtype=np.uint8)  # faces
    for i in range(L):
        for j in range(L):
            row = L * i + j
            px[row, h(i, j)] ^= 1
            px[row, h(i, j - 1)] ^= 1
            px[row, v(i, j)] ^= 1
            px[row, v(i - 1, j)] ^= 1
            pz[row, h(i, j)] ^= 1
            pz[row, h(i + 1, j)] ^= 1
            pz[row, v(i, j)] ^= 1
            pz[row, v(i, j + 1)] ^= 1
    return CssCode.from_dense(px, pz)


SMALL_SET = {
    "shor": shor_code,
    "qrm": qrm_code,
    "steane": steane_code,
    "rotated_surface": rotated_surface_code,
    "surface": unrotated_surface_code,
}
