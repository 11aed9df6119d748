"""Code surgery via colimits of chain complexes.

External merges glue two codes through a path-graph tensor gadget with
two pushouts; internal merges apply two coequalisers inside one block;
single-qubit measurements glue a truncated-path gadget with one pushout.
All of them reduce to one primitive: a simultaneous coequaliser that
identifies groups of qubits and groups of X checks on a direct-sum host
code.  Check identification XORs rows; qubit identification requires the
identified columns to agree afterwards (this is asserted, and is exactly
the commuting-square condition) and collapses them.

X-basis operations are performed by dualizing, running the Z-basis
routine, and dualizing back, with the Z/X bookkeeping swapped.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .codes import (
    CssCode,
    LogicalBasis,
    LogicalSubcomplex,
    SubsystemCode,
    X,
    Z,
    _check_basis,
    dualize,
    is_irreducible,
    logical_basis,
    omega,
    promote_to_subsystem,
    restricted_matrix,
)
from .f2 import (
    F2Matrix,
    F2Vector,
    _EchelonAccumulator,
    kernel_basis,
    quotient_basis,
    solve,
)
from .products import ClassicalCode, path_code, tensor_product, truncated_path_code


@dataclass
class MonicSpan:
    """Witness that two restricted matrices are equal up to permutations.

    qubit_bijection[c] is the column of the second matrix matched to
    column c of the first; check_bijection does the same for rows.
    """

    qubit_bijection: tuple[int, ...]
    check_bijection: tuple[int, ...]


@dataclass
class MergeOutcome:
    """Everything a merge produces beyond the merged code itself."""

    code: CssCode
    inclusion: F2Matrix  # old qubits (C then D) -> merged qubits, one 1 per row
    new_qubits: list[int]
    new_z_checks: list[int]
    new_x_checks: list[int]
    new_z_logicals: list[F2Vector]
    new_x_logicals: list[F2Vector]
    old_z_logicals: list[F2Vector]
    old_x_logicals: list[F2Vector]
    subsystem: SubsystemCode
    depth: int
    n_before: int


@dataclass
class MergeReport:
    depth: int
    n_initial: int
    n_ancilla: int
    ancilla_ratio: float
    omega: int
    new_z_check_count: int
    new_x_check_count: int
    old_logical_count: int
    new_logical_count: int


def find_monic_span(
    rm1: LogicalSubcomplex, rm2: LogicalSubcomplex
) -> Optional[MonicSpan]:
    """First basis-preserving isomorphism between two restricted matrices.

    Deterministic backtracking over the bipartite Tanner graphs: columns
    are matched in ascending order against ascending candidates, pruned
    by column weight and pairwise codegree; rows are then matched by
    exact support equality.  Returns None when no isomorphism exists.
    """
    m1, m2 = rm1.matrix, rm2.matrix
    if m1.rows != m2.rows or m1.cols != m2.cols:
        return None
    d1 = m1.to_dense()
    d2 = m2.to_dense()
    colw1 = d1.sum(axis=0)
    colw2 = d2.sum(axis=0)
    roww1 = d1.sum(axis=1)
    roww2 = d2.sum(axis=1)
    if sorted(colw1) != sorted(colw2) or sorted(roww1) != sorted(roww2):
        return None
    ncols, nrows = m1.cols, m1.rows
    codeg1 = d1.T @ d1  # common-row counts per column pair
    codeg2 = d2.T @ d2
    assignment = [-1] * ncols
    used = [False] * ncols

    def match_rows(col_map: list[int]) -> Optional[list[int]]:
        # map each row of d1 to a row of d2 with exactly the permuted support
        available: dict[tuple[int, ...], list[int]] = {}
        for r2 in range(nrows):
            available.setdefault(tuple(np.nonzero(d2[r2])[0]), []).append(r2)
        row_map = []
        inv = np.empty(ncols, dtype=np.intp)
        for c1, c2 in enumerate(col_map):
            inv[c1] = c2
        for r1 in range(nrows):
            key = tuple(sorted(int(inv[c]) for c in np.nonzero(d1[r1])[0]))
            bucket = available.get(key)
            if not bucket:
                return None
            row_map.append(bucket.pop(0))
        return row_map

    def backtrack(c1: int) -> Optional[list[int]]:
        if c1 == ncols:
            return assignment[:]
        for c2 in range(ncols):
            if used[c2] or colw1[c1] != colw2[c2]:
                continue
            ok = True
            for prev in range(c1):
                if codeg1[c1, prev] != codeg2[c2, assignment[prev]]:
                    ok = False
                    break
            if not ok:
                continue
            assignment[c1] = c2
            used[c2] = True
            result = backtrack(c1 + 1)
            if result is not None:
                rows = match_rows(result) if c1 + 1 == ncols else None
                if c1 + 1 < ncols or rows is not None:
                    return result
            used[c2] = False
            assignment[c1] = -1
        return None

    # leaf row-matching folded into the search: retry column assignments
    # until one admits a row bijection
    def search(c1: int) -> Optional[tuple[list[int], list[int]]]:
        if c1 == ncols:
            rows = match_rows(assignment)
            if rows is None:
                return None
            return assignment[:], rows
        for c2 in range(ncols):
            if used[c2] or colw1[c1] != colw2[c2]:
                continue
            if any(
                codeg1[c1, prev] != codeg2[c2, assignment[prev]] for prev in range(c1)
            ):
                continue
            assignment[c1] = c2
            used[c2] = True
            found = search(c1 + 1)
            if found is not None:
                return found
            used[c2] = False
            assignment[c1] = -1
        return None

    found = search(0)
    if found is None:
        return None
    col_map, row_map = found
    for r in range(nrows):
        for c in range(ncols):
            if d1[r, c] != d2[row_map[r], col_map[c]]:
                raise AssertionError("span verification failed")
    return MonicSpan(tuple(col_map), tuple(row_map))


def _direct_sum(parts: Sequence[CssCode]) -> tuple[CssCode, list[int], list[int], list[int]]:
    """Block-diagonal direct sum; returns (code, qubit/xcheck/zcheck offsets)."""
    q_off, x_off, z_off = [], [], []
    q = x = z = 0
    for p in parts:
        q_off.append(q)
        x_off.append(x)
        z_off.append(z)
        q += p.n
        x += p.px.rows
        z += p.pz.rows
    px = np.zeros((x, q), dtype=np.uint8)
    pz = np.zeros((z, q), dtype=np.uint8)
    for p, qo, xo, zo in zip(parts, q_off, x_off, z_off):
        px[xo : xo + p.px.rows, qo : qo + p.n] = p.px.to_dense()
        pz[zo : zo + p.pz.rows, qo : qo + p.n] = p.pz.to_dense()
    return CssCode.from_dense(px, pz, check=False), q_off, x_off, z_off


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def _quotient_map(n: int, groups: Sequence[Sequence[int]]) -> np.ndarray:
    """Map old indices to new, collapsing each group onto its lowest index."""
    uf = _UnionFind(n)
    for g in groups:
        for a, b in zip(g, g[1:]):
            uf.union(a, b)
    roots = [uf.find(i) for i in range(n)]
    survivors = sorted({r for r in roots})
    new_index = {r: i for i, r in enumerate(survivors)}
    return np.array([new_index[r] for r in roots], dtype=np.intp)


def simultaneous_coequalise(
    host: CssCode,
    qubit_groups: Sequence[Sequence[int]],
    xcheck_groups: Sequence[Sequence[int]],
) -> tuple[CssCode, np.ndarray, np.ndarray]:
    """Identify groups of qubits and X checks on a host code.

    Z-check rows are untouched (T_2 = R_2).  In P_Z the identified qubit
    columns are XORed together; in P_X the identified check rows are
    XORed, after which the identified qubit columns must be equal (the
    commuting-square condition, raised on violation) and are collapsed.
    Returns (merged, qubit_map, xcheck_map) with maps old index -> new.
    """
    n = host.n
    qmap = _quotient_map(n, qubit_groups)
    xmap = _quotient_map(host.px.rows, xcheck_groups)
    n_new = int(qmap.max()) + 1 if n else 0
    x_new = int(xmap.max()) + 1 if host.px.rows else 0

    # P_Z: XOR identified qubit columns (rows of P_Z^T)
    pzt = host.pz.to_dense().T  # n x m_Z
    pzt_new = np.zeros((n_new, host.pz.rows), dtype=np.uint8)
    np.bitwise_xor.at(pzt_new, qmap, pzt)

    # P_X: XOR identified check rows, then collapse equal qubit columns
    px = host.px.to_dense()
    px_rows = np.zeros((x_new, n), dtype=np.uint8)
    np.bitwise_xor.at(px_rows, xmap, px)
    px_new = np.zeros((x_new, n_new), dtype=np.uint8)
    filled = np.zeros(n_new, dtype=bool)
    for old_q in range(n):
        tgt = qmap[old_q]
        if filled[tgt]:
            if not np.array_equal(px_new[:, tgt], px_rows[:, old_q]):
                raise ValueError(
                    "coequaliser commuting-square violation: identified qubit "
                    "columns differ after check identification (inputs are not "
                    "disjoint basis-preserving subcomplex inclusions)"
                )
        else:
            px_new[:, tgt] = px_rows[:, old_q]
            filled[tgt] = True
    merged = CssCode.from_dense(px_new, pzt_new.T)  # constructor asserts px pz^T = 0
    return merged, qmap, xmap


def coequalise(
    sub: LogicalSubcomplex,
    f_qubits: Sequence[int],
    f_checks: Sequence[int],
    g_qubits: Sequence[int],
    g_checks: Sequence[int],
    host: CssCode,
) -> tuple[CssCode, np.ndarray, np.ndarray]:
    """Coequalise two basis-preserving inclusions of a subcomplex in a host.

    The inclusions are given as index maps (V columns -> host qubits, V
    rows -> host X checks); they must be injective chain maps with
    disjoint images.
    """
    v0, v1 = sub.matrix.rows, sub.matrix.cols
    for name, qs, cs in (("f", f_qubits, f_checks), ("g", g_qubits, g_checks)):
        if len(qs) != v1 or len(cs) != v0:
            raise ValueError(f"{name} maps have wrong arity for the subcomplex")
        if len(set(qs)) != v1 or len(set(cs)) != v0:
            raise ValueError(f"{name} maps are not injective")
        _validate_subcomplex_inclusion(sub, qs, cs, host, name)
    if set(f_qubits) & set(g_qubits) or set(f_checks) & set(g_checks):
        raise ValueError("inclusion images overlap")
    qubit_groups = [[f_qubits[e], g_qubits[e]] for e in range(v1)]
    xcheck_groups = [[f_checks[t], g_checks[t]] for t in range(v0)]
    return simultaneous_coequalise(host, qubit_groups, xcheck_groups)


def _validate_subcomplex_inclusion(
    sub: LogicalSubcomplex,
    qubits: Sequence[int],
    checks: Sequence[int],
    host: CssCode,
    name: str,
) -> None:
    """The host differential restricted to the image must equal the subcomplex."""
    px = host.px.to_dense()
    block = px[np.ix_(list(checks), list(qubits))]
    if not np.array_equal(block, sub.matrix.to_dense()):
        raise ValueError(f"{name} is not a chain map onto the subcomplex")
    outside = np.delete(px[:, list(qubits)], list(checks), axis=0)
    if outside.any():
        raise ValueError(
            f"{name} image qubits touch checks outside the subcomplex image"
        )


# gadget index layout helpers; V has v1 support qubits and v0 checks


def _merge_gadget(vmat: F2Matrix, r: int) -> CssCode:
    """(path (x) V): (r+1) copies of V_1, r edge copies of V_0."""
    return tensor_product(path_code(r), ClassicalCode(vmat))


def _measure_gadget(vmat: F2Matrix, r: int) -> CssCode:
    """(V (x) truncated-path): r copies of V_0 first, then r copies of V_1."""
    return tensor_product(ClassicalCode(vmat), truncated_path_code(r))


def _w_copy_qubit(v1: int, copy: int, e: int) -> int:
    return copy * v1 + e


def _w_xcheck(v0: int, copy: int, t: int) -> int:
    return copy * v0 + t


def _vs_v1_qubit(v0: int, r: int, e: int, s: int) -> int:
    return v0 * r + e * r + s


def _vs_xcheck(r: int, t: int, s: int) -> int:
    return t * r + s


def _push_vector(v: F2Vector, offset: int, inc_targets: np.ndarray, n_new: int) -> F2Vector:
    """Push an initial-code vector through the inclusion into the merged code."""
    bits = np.zeros(n_new, dtype=np.uint8)
    for q in v.support():
        bits[inc_targets[offset + int(q)]] ^= 1
    return F2Vector.from_bits(bits)


def _merge_outcome(
    merged: CssCode,
    qmap: np.ndarray,
    xmap: np.ndarray,
    initials: list[CssCode],
    initial_q_offsets: list[int],
    gadget_z_host: list[int],
    gadget_x_host: list[int],
    depth: int,
) -> MergeOutcome:
    """Assemble inclusion, index lists, and logical bases for a merged code."""
    n_old = sum(c.n for c in initials)
    inc_targets = np.empty(n_old, dtype=np.intp)
    pos = 0
    for code, qo in zip(initials, initial_q_offsets):
        for q in range(code.n):
            inc_targets[pos] = qmap[qo + q]
            pos += 1
    inc_dense = np.zeros((n_old, merged.n), dtype=np.uint8)
    inc_dense[np.arange(n_old), inc_targets] = 1
    inclusion = F2Matrix.from_dense(inc_dense)

    new_qubits = sorted(set(range(merged.n)) - set(int(t) for t in inc_targets))
    new_z_checks = sorted(gadget_z_host)  # Z checks are never identified
    old_x_final = set()
    for code, qo in zip(initials, initial_q_offsets):
        pass
    new_x_checks = sorted(
        set(int(xmap[h]) for h in gadget_x_host)
        - set(int(xmap[h]) for h in range(len(xmap)) if h not in set(gadget_x_host))
    )

    # old logicals: initial-code representatives pushed through the inclusion,
    # filtered to an independent set modulo im(P_Z^T)
    pushed_z: list[F2Vector] = []
    pushed_x: list[F2Vector] = []
    for code, qo in zip(initials, initial_q_offsets):
        lb = logical_basis(code)
        for zv in lb.z_logicals:
            pushed_z.append(_push_vector(zv, 0, inc_targets[qo : qo + code.n], merged.n))
        for xv in lb.x_logicals:
            pushed_x.append(_push_vector(xv, 0, inc_targets[qo : qo + code.n], merged.n))
    # note: inc_targets slice above is already per-code, so offset is 0
    acc = _EchelonAccumulator.from_vectors(
        [merged.pz.row(i) for i in range(merged.pz.rows)], merged.n
    )
    old_z = [v for v in pushed_z if acc.add(v)]

    fresh = logical_basis(merged)
    k_t = fresh.k
    k_old = len(old_z)
    if k_old:
        lam = F2Matrix.from_dense(
            [[old_z[j].dot(fresh.x_logicals[i]) for j in range(k_old)] for i in range(k_t)]
        )
        coord_units = [
            F2Vector.from_bits(np.eye(k_t, dtype=np.uint8)[i]) for i in range(k_t)
        ]
        lam_cols = [lam.take_columns([j]).transpose().row(0) for j in range(k_old)]
        new_coords = quotient_basis(coord_units, lam_cols)
        lam_t = lam.transpose()
        old_x = []
        for j in range(k_old):
            e_j = F2Vector.from_bits(np.eye(k_old, dtype=np.uint8)[j])
            mu = solve(lam_t, e_j)
            if mu is None:
                raise AssertionError("old logical classes are not independent")
            old_x.append(_combine(fresh.x_logicals, mu))
        new_x = [_combine(fresh.x_logicals, mu) for mu in kernel_basis(lam_t)]
    else:
        new_coords = [
            F2Vector.from_bits(np.eye(k_t, dtype=np.uint8)[i]) for i in range(k_t)
        ]
        old_x = []
        new_x = list(fresh.x_logicals)
    new_z = [_combine(fresh.z_logicals, coords) for coords in new_coords]

    subsystem = promote_to_subsystem(merged, new_z, new_x)
    return MergeOutcome(
        code=merged,
        inclusion=inclusion,
        new_qubits=[int(q) for q in new_qubits],
        new_z_checks=[int(i) for i in new_z_checks],
        new_x_checks=[int(i) for i in new_x_checks],
        new_z_logicals=new_z,
        new_x_logicals=new_x,
        old_z_logicals=old_z,
        old_x_logicals=old_x,
        subsystem=subsystem,
        depth=depth,
        n_before=n_old,
    )


def _combine(vectors: list[F2Vector], coords: F2Vector) -> F2Vector:
    acc = F2Vector.zeros(vectors[0].len if vectors else 0)
    for i in coords.support():
        acc = acc ^ vectors[int(i)]
    return acc


def _swap_outcome_bases(out: MergeOutcome) -> MergeOutcome:
    """Translate an outcome computed on dual codes back to the primal."""
    merged = dualize(out.code)
    sub = SubsystemCode(merged, out.subsystem.gauge_x, out.subsystem.gauge_z)
    return MergeOutcome(
        code=merged,
        inclusion=out.inclusion,
        new_qubits=out.new_qubits,
        new_z_checks=out.new_x_checks,
        new_x_checks=out.new_z_checks,
        new_z_logicals=out.new_x_logicals,
        new_x_logicals=out.new_z_logicals,
        old_z_logicals=out.old_x_logicals,
        old_x_logicals=out.old_z_logicals,
        subsystem=sub,
        depth=out.depth,
        n_before=out.n_before,
    )


def external_merge(
    c: CssCode,
    d: CssCode,
    u: F2Vector,
    v: F2Vector,
    basis: str = Z,
    r: int = 1,
    span: Optional[MonicSpan] = None,
) -> Optional[MergeOutcome]:
    """Logical parity measurement between codeblocks c and d along u and v.

    Returns None when the two restricted matrices admit no monic span;
    raises on non-irreducible inputs.
    """
    if _check_basis(basis) == X:
        out = external_merge(dualize(c), dualize(d), u, v, Z, r, span)
        return None if out is None else _swap_outcome_bases(out)
    if r < 1:
        raise ValueError("depth r must be >= 1")
    if not is_irreducible(c, u, Z):
        raise ValueError("u is not an irreducible Z logical of c")
    if not is_irreducible(d, v, Z):
        raise ValueError("v is not an irreducible Z logical of d")
    rm1 = restricted_matrix(c, u, Z)
    rm2 = restricted_matrix(d, v, Z)
    if span is None:
        span = find_monic_span(rm1, rm2)
        if span is None:
            return None
    v1, v0 = rm1.matrix.cols, rm1.matrix.rows
    w = _merge_gadget(rm1.matrix, r)
    host, q_off, x_off, z_off = _direct_sum([c, w, d])
    qubit_groups = []
    for e in range(v1):
        qubit_groups.append([rm1.qubit_map[e], q_off[1] + _w_copy_qubit(v1, 0, e)])
        qubit_groups.append(
            [
                q_off[1] + _w_copy_qubit(v1, r, e),
                q_off[2] + rm2.qubit_map[span.qubit_bijection[e]],
            ]
        )
    xcheck_groups = []
    for t in range(v0):
        xcheck_groups.append([rm1.check_map[t], x_off[1] + _w_xcheck(v0, 0, t)])
        xcheck_groups.append(
            [
                x_off[1] + _w_xcheck(v0, r, t),
                x_off[2] + rm2.check_map[span.check_bijection[t]],
            ]
        )
    merged, qmap, xmap = simultaneous_coequalise(host, qubit_groups, xcheck_groups)
    gadget_z = [z_off[1] + i for i in range(w.pz.rows)]
    gadget_x = [x_off[1] + i for i in range(w.px.rows)]
    return _merge_outcome(
        merged, qmap, xmap, [c, d], [q_off[0], q_off[2]], gadget_z, gadget_x, r
    )


def internal_merge(
    c: CssCode,
    u: F2Vector,
    v: F2Vector,
    basis: str = Z,
    r: int = 1,
    span: Optional[MonicSpan] = None,
) -> Optional[MergeOutcome]:
    """Logical parity measurement between two logical qubits of one block.

    Returns None when the supports or incident-check sets of the two
    logicals overlap, or when no monic span exists.  Raises when u and v
    are homologous (they must belong to distinct logical qubits).
    """
    if _check_basis(basis) == X:
        out = internal_merge(dualize(c), u, v, Z, r, span)
        return None if out is None else _swap_outcome_bases(out)
    if r < 1:
        raise ValueError("depth r must be >= 1")
    if not is_irreducible(c, u, Z):
        raise ValueError("u is not an irreducible Z logical of c")
    if not is_irreducible(c, v, Z):
        raise ValueError("v is not an irreducible Z logical of c")
    zspan = _EchelonAccumulator.from_vectors(
        [c.pz.row(i) for i in range(c.pz.rows)], c.n
    )
    if zspan.contains(u ^ v):
        raise ValueError("u and v are homologous; internal merge needs distinct classes")
    rm1 = restricted_matrix(c, u, Z)
    rm2 = restricted_matrix(c, v, Z)
    if set(rm1.qubit_map) & set(rm2.qubit_map):
        return None
    if set(rm1.check_map) & set(rm2.check_map):
        return None
    if span is None:
        span = find_monic_span(rm1, rm2)
        if span is None:
            return None
    v1, v0 = rm1.matrix.cols, rm1.matrix.rows
    w = _merge_gadget(rm1.matrix, r)
    host, q_off, x_off, z_off = _direct_sum([c, w])
    qubit_groups = []
    for e in range(v1):
        qubit_groups.append([rm1.qubit_map[e], q_off[1] + _w_copy_qubit(v1, 0, e)])
        qubit_groups.append(
            [rm2.qubit_map[span.qubit_bijection[e]], q_off[1] + _w_copy_qubit(v1, r, e)]
        )
    xcheck_groups = []
    for t in range(v0):
        xcheck_groups.append([rm1.check_map[t], x_off[1] + _w_xcheck(v0, 0, t)])
        xcheck_groups.append(
            [rm2.check_map[span.check_bijection[t]], x_off[1] + _w_xcheck(v0, r, t)]
        )
    merged, qmap, xmap = simultaneous_coequalise(host, qubit_groups, xcheck_groups)
    gadget_z = [z_off[1] + i for i in range(w.pz.rows)]
    gadget_x = [x_off[1] + i for i in range(w.px.rows)]
    return _merge_outcome(merged, qmap, xmap, [c], [q_off[0]], gadget_z, gadget_x, r)


def single_qubit_measure(
    c: CssCode, v: F2Vector, basis: str = Z, r: int = 1
) -> MergeOutcome:
    """Destructive logical measurement of one logical qubit by gadget gluing.

    The glued gadget has no logical qubits, so the measured class becomes
    trivial in the result.
    """
    if _check_basis(basis) == X:
        return _swap_outcome_bases(single_qubit_measure(dualize(c), v, Z, r))
    return _parallel_measure_z(c, [v], r)


def parallel_single_qubit_measure(
    c: CssCode, logicals: Sequence[F2Vector], basis: str = Z, r: int = 1
) -> MergeOutcome:
    """Measure several logical qubits at once, one fresh gadget per logical."""
    if _check_basis(basis) == X:
        return _swap_outcome_bases(_parallel_measure_z(dualize(c), list(logicals), r))
    return _parallel_measure_z(c, list(logicals), r)


def _parallel_measure_z(c: CssCode, logicals: list[F2Vector], r: int) -> MergeOutcome:
    if r < 1:
        raise ValueError("depth r must be >= 1")
    rms = []
    for v in logicals:
        if not is_irreducible(c, v, Z):
            raise ValueError("measured vector is not an irreducible Z logical")
        rms.append(restricted_matrix(c, v, Z))
    gadgets = [_measure_gadget(rm.matrix, r) for rm in rms]
    host, q_off, x_off, z_off = _direct_sum([c] + gadgets)
    qubit_groups = []
    xcheck_groups = []
    for i, rm in enumerate(rms):
        v1, v0 = rm.matrix.cols, rm.matrix.rows
        for e in range(v1):
            qubit_groups.append(
                [rm.qubit_map[e], q_off[1 + i] + _vs_v1_qubit(v0, r, e, 0)]
            )
        for t in range(v0):
            xcheck_groups.append([rm.check_map[t], x_off[1 + i] + _vs_xcheck(r, t, 0)])
    merged, qmap, xmap = simultaneous_coequalise(host, qubit_groups, xcheck_groups)
    gadget_z = [z_off[1 + i] + j for i, g in enumerate(gadgets) for j in range(g.pz.rows)]
    gadget_x = [x_off[1 + i] + j for i, g in enumerate(gadgets) for j in range(g.px.rows)]
    return _merge_outcome(merged, qmap, xmap, [c], [q_off[0]], gadget_z, gadget_x, r)


def parallel_external_merge(
    c: CssCode,
    d: CssCode,
    pairs: Sequence[tuple[F2Vector, F2Vector]],
    basis: str = Z,
    r: int = 1,
) -> Optional[MergeOutcome]:
    """Simultaneous external merges along several (u_i, v_i) pairs.

    Each pair gets a fresh gadget at the common depth r; host supports
    may overlap between pairs.  Returns None when any span is missing.
    """
    if _check_basis(basis) == X:
        out = parallel_external_merge(dualize(c), dualize(d), pairs, Z, r)
        return None if out is None else _swap_outcome_bases(out)
    if r < 1:
        raise ValueError("depth r must be >= 1")
    rms = []
    for u, v in pairs:
        if not is_irreducible(c, u, Z):
            raise ValueError("u is not an irreducible Z logical of c")
        if not is_irreducible(d, v, Z):
            raise ValueError("v is not an irreducible Z logical of d")
        rm1 = restricted_matrix(c, u, Z)
        rm2 = restricted_matrix(d, v, Z)
        span = find_monic_span(rm1, rm2)
        if span is None:
            return None
        rms.append((rm1, rm2, span))
    gadgets = [_merge_gadget(rm1.matrix, r) for rm1, _, _ in rms]
    host, q_off, x_off, z_off = _direct_sum([c] + gadgets + [d])
    d_q = q_off[-1]
    d_x = x_off[-1]
    qubit_groups = []
    xcheck_groups = []
    for i, (rm1, rm2, span) in enumerate(rms):
        v1, v0 = rm1.matrix.cols, rm1.matrix.rows
        for e in range(v1):
            qubit_groups.append(
                [rm1.qubit_map[e], q_off[1 + i] + _w_copy_qubit(v1, 0, e)]
            )
            qubit_groups.append(
                [
                    q_off[1 + i] + _w_copy_qubit(v1, r, e),
                    d_q + rm2.qubit_map[span.qubit_bijection[e]],
                ]
            )
        for t in range(v0):
            xcheck_groups.append(
                [rm1.check_map[t], x_off[1 + i] + _w_xcheck(v0, 0, t)]
            )
            xcheck_groups.append(
                [
                    x_off[1 + i] + _w_xcheck(v0, r, t),
                    d_x + rm2.check_map[span.check_bijection[t]],
                ]
            )
    merged, qmap, xmap = simultaneous_coequalise(host, qubit_groups, xcheck_groups)
    gadget_z = [
        z_off[1 + i] + j for i, g in enumerate(gadgets) for j in range(g.pz.rows)
    ]
    gadget_x = [
        x_off[1 + i] + j for i, g in enumerate(gadgets) for j in range(g.px.rows)
    ]
    return _merge_outcome(
        merged, qmap, xmap, [c, d], [q_off[0], d_q], gadget_z, gadget_x, r
    )


def merge_report(outcome: MergeOutcome) -> MergeReport:
    """Figures of merit for a merge."""
    n_initial = outcome.n_before
    n_ancilla = outcome.code.n - n_initial
    return MergeReport(
        depth=outcome.depth,
        n_initial=n_initial,
        n_ancilla=n_ancilla,
        ancilla_ratio=n_ancilla / n_initial if n_initial else 0.0,
        omega=omega(outcome.code),
        new_z_check_count=len(outcome.new_z_checks),
        new_x_check_count=len(outcome.new_x_checks),
        old_logical_count=len(outcome.old_z_logicals),
        new_logical_count=len(outcome.new_z_logicals),
    )


def surface_baseline(k: int, d: int) -> tuple[int, int, int]:
    """Surface-code lattice-surgery comparison values.

    Returns (n_initial, merge_ancilla, measure_ancilla) for 2k unrotated
    distance-d patches: n_initial = 2k (d^2 + (d-1)^2), a single merge
    costs d-1 ancilla qubits, a single-qubit measurement costs none.
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    n_initial = 2 * k * (d * d + (d - 1) * (d - 1))
    return n_initial, d - 1, 0
