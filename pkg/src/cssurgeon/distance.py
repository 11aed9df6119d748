"""Code-distance computation: exhaustive, weight-increment, and RIS engines.

The exhaustive engine enumerates the full coset space ker(check) minus
im(co-check^T) with bit-packed batch popcounts.  The weight-increment
engine enumerates supports of growing weight with an early exit.  The
RIS engine repeatedly permutes columns, row-reduces a generator matrix
of the kernel, un-permutes, and scans rows for low-weight logicals; it
yields an upper bound that is deterministic for a fixed (trials, seed)
regardless of worker count.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .codes import CssCode, SubsystemCode, X, Z, _check_basis, _checks
from .f2 import (
    F2Matrix,
    F2Vector,
    _EchelonAccumulator,
    _echelon,
    _pack,
    image_basis,
    kernel_basis,
    popcount_rows,
    quotient_basis,
)

EXHAUSTIVE = "exhaustive"
WEIGHT_INCREMENT = "weight_increment"
RIS = "ris"

_CHUNK_BITS = 16


class BudgetExceeded(RuntimeError):
    """Raised when an exact engine would enumerate beyond its budget."""


@dataclass
class DistanceReport:
    value: int
    exact: bool
    method: str
    witness: Optional[F2Vector] = None
    trials: Optional[int] = None
    seed: Optional[int] = None

    def to_dict(self) -> dict:
        out = {"value": self.value, "exact": self.exact, "method": self.method}
        if self.trials is not None:
            out["trials"] = self.trials
        if self.seed is not None:
            out["seed"] = self.seed
        if self.witness is not None:
            out["witness"] = "".join(map(str, self.witness.to_bits()))
        return out


def _combination_table(words: np.ndarray) -> np.ndarray:
    """All 2^k XOR-combinations of k packed rows; index bit i selects row i."""
    k, w = words.shape
    table = np.zeros((1 << k, w), dtype=np.uint64)
    size = 1
    for i in range(k):
        table[size : 2 * size] = table[:size] ^ words[i]
        size *= 2
    return table


def _min_weight_excluding_subspace(
    logical_words: np.ndarray, stab_words: np.ndarray, n: int
) -> tuple[int, F2Vector]:
    """Minimum weight over span(logicals + stabs) with nonzero logical part."""
    k = logical_words.shape[0]
    basis = (
        np.concatenate([logical_words, stab_words], axis=0)
        if stab_words.size or logical_words.size
        else logical_words
    )
    dim = basis.shape[0]
    low = min(dim, _CHUNK_BITS)
    low_table = _combination_table(basis[:low])
    low_logical_bits = min(k, low)
    low_has_logical = (np.arange(1 << low) & ((1 << low_logical_bits) - 1)) != 0
    high_words = basis[low:]
    best = n + 1
    best_vec: Optional[np.ndarray] = None
    for high in range(1 << (dim - low)):
        base = np.zeros(basis.shape[1], dtype=np.uint64)
        h = high
        idx = 0
        high_has_logical = False
        while h:
            if h & 1:
                base = base ^ high_words[idx]
                if low + idx < k:
                    high_has_logical = True
            h >>= 1
            idx += 1
        chunk = low_table ^ base
        weights = popcount_rows(chunk)
        if not high_has_logical:
            weights = np.where(low_has_logical, weights, n + 1)
        i = int(weights.argmin())
        if weights[i] < best:
            best = int(weights[i])
            best_vec = chunk[i].copy()
    assert best_vec is not None
    return best, F2Vector(best_vec, n)


def distance_exhaustive(
    code: CssCode, basis: str, max_kernel_dim: int = 26
) -> DistanceReport:
    """Exact distance by enumerating every logical operator in the basis.

    Refuses to run when dim ker(check) exceeds max_kernel_dim.
    """
    check, co = _checks(code, basis)
    ker = kernel_basis(check)
    if len(ker) > max_kernel_dim:
        raise BudgetExceeded(
            f"kernel dimension {len(ker)} exceeds budget {max_kernel_dim}"
        )
    stab = image_basis(co.transpose())
    logs = quotient_basis(ker, stab)
    if not logs:
        raise ValueError("code has no logical operators")
    logical_words = np.stack([v.words for v in logs])
    stab_words = (
        np.stack([v.words for v in stab])
        if stab
        else np.zeros((0, logical_words.shape[1]), dtype=np.uint64)
    )
    value, witness = _min_weight_excluding_subspace(logical_words, stab_words, code.n)
    return DistanceReport(value=value, exact=True, method=EXHAUSTIVE, witness=witness)


def distance_weight_increment(
    code: CssCode, basis: str, max_w: int, _chunk: int = 200_000
) -> DistanceReport:
    """Exact distance if it is at most max_w, else a "greater than max_w" report.

    Enumerates supports of weight 1, 2, ... in lexicographic order and
    returns the first logical found, so the witness is the
    lexicographically first minimum-weight logical.  A report with
    witness=None means every operator of weight <= max_w is trivial.
    """
    check, co = _checks(code, basis)
    cols = check.transpose()  # row j = column j of check, packed
    col_words = cols.words
    stab_acc = _EchelonAccumulator.from_vectors(
        [co.row(i) for i in range(co.rows)], code.n
    )
    if len(kernel_basis(check)) <= stab_acc.rank:
        raise ValueError("code has no logical operators in this basis")
    for w in range(1, max_w + 1):
        combos = itertools.combinations(range(code.n), w)
        while True:
            batch = np.array(list(itertools.islice(combos, _chunk)), dtype=np.intp)
            if batch.size == 0:
                break
            syn = col_words[batch[:, 0]].copy()
            for j in range(1, w):
                syn ^= col_words[batch[:, j]]
            in_kernel = np.nonzero(~syn.any(axis=1))[0]
            for i in in_kernel:
                v = F2Vector.from_support(code.n, batch[i])
                if not stab_acc.contains(v):
                    return DistanceReport(
                        value=w, exact=True, method=WEIGHT_INCREMENT, witness=v
                    )
    return DistanceReport(value=max_w, exact=False, method=WEIGHT_INCREMENT, witness=None)


def _ris_trial_range(
    gen_dense: np.ndarray,
    stab_rows: list[np.ndarray],
    stab_pivots: list[int],
    n: int,
    trials: range,
    seed: int,
) -> tuple[int, int, int, Optional[np.ndarray]]:
    """Scan a range of RIS trials; returns (weight, trial, row_pos, witness_words)."""
    acc = _EchelonAccumulator(n)
    acc.rows = [r for r in stab_rows]
    acc.pivots = list(stab_pivots)
    best = (n + 1, -1, -1)
    best_vec: Optional[np.ndarray] = None
    for t in trials:
        rng = np.random.default_rng(seed + t)
        perm = rng.permutation(n)
        gp = gen_dense[:, perm]
        words = _pack(gp, n)
        _echelon(words, n, reduced=True)
        weights = popcount_rows(words)
        order = np.argsort(weights, kind="stable")
        for pos, ridx in enumerate(order):
            w = int(weights[ridx])
            if w == 0:
                continue
            if w >= best[0]:
                break
            bits_perm = np.unpackbits(
                words[ridx].view(np.uint8), bitorder="little", count=n
            )
            bits = np.empty(n, dtype=np.uint8)
            bits[perm] = bits_perm
            v = F2Vector.from_bits(bits)
            if not acc.contains(v):
                best = (w, t, pos)
                best_vec = v.words.copy()
    return best[0], best[1], best[2], best_vec


def distance_ris(
    code: CssCode,
    basis: str,
    trials: int = 10_000,
    seed: int = 0,
    workers: int = 1,
    pair_sums: bool = False,
) -> DistanceReport:
    """Random-information-set upper bound on the basis distance.

    Per-trial seeds are seed + trial index, so the report is identical
    for any worker count and across runs.  With pair_sums=True each
    trial additionally scans XORs of pairs of reduced rows.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    check, co = _checks(code, basis)
    ker = kernel_basis(check)
    stab_acc = _EchelonAccumulator.from_vectors(
        [co.row(i) for i in range(co.rows)], code.n
    )
    if len(ker) <= stab_acc.rank:
        raise ValueError("code has no logical operators in this basis")
    gen_dense = np.stack([v.to_bits() for v in ker])
    if pair_sums:
        results = [
            _ris_trial_range_pairs(
                gen_dense, stab_acc.rows, stab_acc.pivots, code.n, range(trials), seed
            )
        ]
    elif workers <= 1 or trials < 4:
        results = [
            _ris_trial_range(
                gen_dense, stab_acc.rows, stab_acc.pivots, code.n, range(trials), seed
            )
        ]
    else:
        from concurrent.futures import ProcessPoolExecutor

        spans = _split_range(trials, workers)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(
                    _ris_trial_range,
                    gen_dense,
                    stab_acc.rows,
                    stab_acc.pivots,
                    code.n,
                    span,
                    seed,
                )
                for span in spans
            ]
            results = [f.result() for f in futures]
    best = min(results, key=lambda r: (r[0], r[1], r[2]))
    if best[3] is None:
        raise RuntimeError(
            "RIS found no logical rows; increase trials (kernel may be stabilizer-dominated)"
        )
    return DistanceReport(
        value=best[0],
        exact=False,
        method=RIS,
        witness=F2Vector(best[3], code.n),
        trials=trials,
        seed=seed,
    )


def _ris_trial_range_pairs(
    gen_dense: np.ndarray,
    stab_rows: list[np.ndarray],
    stab_pivots: list[int],
    n: int,
    trials: range,
    seed: int,
) -> tuple[int, int, int, Optional[np.ndarray]]:
    """RIS scan that also considers sums of pairs of reduced rows."""
    acc = _EchelonAccumulator(n)
    acc.rows = [r for r in stab_rows]
    acc.pivots = list(stab_pivots)
    best = (n + 1, -1, -1)
    best_vec: Optional[np.ndarray] = None
    for t in trials:
        rng = np.random.default_rng(seed + t)
        perm = rng.permutation(n)
        gp = gen_dense[:, perm]
        words = _pack(gp, n)
        _echelon(words, n, reduced=True)
        k = words.shape[0]
        cand = np.concatenate(
            [words, (words[:, None, :] ^ words[None, :, :]).reshape(k * k, -1)], axis=0
        )
        weights = popcount_rows(cand)
        order = np.argsort(weights, kind="stable")
        for pos, ridx in enumerate(order):
            w = int(weights[ridx])
            if w >= best[0]:
                break
            if w == 0:
                continue
            bits_perm = np.unpackbits(
                cand[ridx].view(np.uint8), bitorder="little", count=n
            )
            bits = np.empty(n, dtype=np.uint8)
            bits[perm] = bits_perm
            v = F2Vector.from_bits(bits)
            if not acc.contains(v):
                best = (w, t, pos)
                best_vec = v.words.copy()
    return best[0], best[1], best[2], best_vec


def _split_range(trials: int, workers: int) -> list[range]:
    per = (trials + workers - 1) // workers
    return [range(i, min(i + per, trials)) for i in range(0, trials, per)]


_ENGINES = {EXHAUSTIVE, WEIGHT_INCREMENT, RIS}


def _run_engine(code: CssCode, basis: str, engine: str, **kw) -> DistanceReport:
    if engine == EXHAUSTIVE:
        return distance_exhaustive(code, basis, **kw)
    if engine in (WEIGHT_INCREMENT, "increment"):
        kw.setdefault("max_w", code.n)
        return distance_weight_increment(code, basis, **kw)
    if engine == RIS:
        return distance_ris(code, basis, **kw)
    raise ValueError(f"unknown engine {engine!r}; expected one of {sorted(_ENGINES)}")


def subsystem_distance(
    sub: SubsystemCode,
    basis: Optional[str] = None,
    engine: str = EXHAUSTIVE,
    **engine_kwargs,
) -> DistanceReport:
    """Dressed distance of a subsystem code via check-matrix augmentation.

    For the Z side the gauge Z logicals are appended to P_Z and any
    engine is run on the augmented code; the X side is symmetric.  When
    basis is None both are computed and the smaller report returned.
    """
    if basis is None:
        rz = subsystem_distance(sub, Z, engine, **engine_kwargs)
        rx = subsystem_distance(sub, X, engine, **engine_kwargs)
        return rz if rz.value <= rx.value else rx
    b = _check_basis(basis)
    base = sub.base
    if b == Z:
        extra = sub.gauge_z
        pz = base.pz
        if extra:
            pz = pz.vstack(F2Matrix.from_rows(extra, cols=base.n))
        aug = CssCode(base.px, pz)  # constructor errors on broken orthogonality
    else:
        extra = sub.gauge_x
        px = base.px
        if extra:
            px = px.vstack(F2Matrix.from_rows(extra, cols=base.n))
        aug = CssCode(px, base.pz)
    return _run_engine(aug, b, engine, **engine_kwargs)
