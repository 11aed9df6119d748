"""Tests for the three distance engines and the subsystem adapter."""

import numpy as np
import pytest

from cssurgeon.codes import (
    CssCode,
    SubsystemCode,
    X,
    Z,
    dualize,
    is_logical,
    logical_basis,
    num_logicals,
)
from cssurgeon.distance import (
    BudgetExceeded,
    distance_exhaustive,
    distance_ris,
    distance_weight_increment,
    subsystem_distance,
)
from cssurgeon.f2 import F2Matrix, F2Vector, kernel_basis, rank
from cssurgeon.smallcodes import (
    SMALL_SET,
    qrm_code,
    rotated_surface_code,
    shor_code,
    steane_code,
    toric_code,
    unrotated_surface_code,
)


def random_css_code(rng, n, m_z=None, m_x=None) -> CssCode:
    """Random valid CSS code: pz random, px rows sampled from ker(pz)."""
    m_z = m_z or int(rng.integers(1, max(2, n // 2)))
    m_x = m_x or int(rng.integers(1, max(2, n // 2)))
    while True:
        pz = F2Matrix.from_dense(rng.integers(0, 2, size=(m_z, n)))
        ker = kernel_basis(pz)
        if not ker:
            continue
        rows = []
        for _ in range(m_x):
            coeffs = rng.integers(0, 2, size=len(ker))
            acc = F2Vector.zeros(n)
            for c, v in zip(coeffs, ker):
                if c:
                    acc = acc ^ v
            rows.append(acc)
        px = F2Matrix.from_rows(rows, cols=n)
        code = CssCode(px, pz)
        if num_logicals(code) > 0:
            return code


class TestExhaustive:
    def test_steane(self):
        rep = distance_exhaustive(steane_code(), Z)
        assert rep.value == 3 and rep.exact
        assert is_logical(steane_code(), rep.witness, Z)
        assert rep.witness.weight() == 3

    def test_toric(self):
        code = toric_code(3)
        assert distance_exhaustive(code, Z).value == 3
        assert distance_exhaustive(code, X).value == 3

    def test_qrm_dx(self):
        assert distance_exhaustive(qrm_code(), X).value == 7
        assert distance_exhaustive(qrm_code(), Z).value == 3

    def test_small_set_distances(self):
        for name, fn in SMALL_SET.items():
            code = fn()
            dz = distance_exhaustive(code, Z).value
            dx = distance_exhaustive(code, X).value
            assert min(dz, dx) == 3, name

    def test_budget(self):
        code = toric_code(3)
        with pytest.raises(BudgetExceeded):
            distance_exhaustive(code, Z, max_kernel_dim=3)

    def test_duality(self):
        # d_Z(code) = d_X(dualize(code)) on small codes
        for fn in (steane_code, shor_code, rotated_surface_code):
            code = fn()
            assert (
                distance_exhaustive(code, Z).value
                == distance_exhaustive(dualize(code), X).value
            )


class TestWeightIncrement:
    def test_shor(self):
        rep = distance_weight_increment(shor_code(), Z, max_w=5)
        assert rep.value == 3 and rep.exact
        assert rep.witness.weight() == 3

    def test_rotated_surface(self):
        assert distance_weight_increment(rotated_surface_code(), Z, max_w=4).value == 3
        assert distance_weight_increment(rotated_surface_code(), X, max_w=4).value == 3

    def test_not_found(self):
        rep = distance_weight_increment(steane_code(), Z, max_w=0)
        assert rep.witness is None and not rep.exact and rep.value == 0
        rep2 = distance_weight_increment(steane_code(), Z, max_w=2)
        assert rep2.witness is None and rep2.value == 2

    def test_agrees_with_exhaustive_random(self):
        rng = np.random.default_rng(42)
        for _ in range(15):
            code = random_css_code(rng, int(rng.integers(4, 11)))
            for b in (Z, X):
                exh = distance_exhaustive(code, b)
                inc = distance_weight_increment(code, b, max_w=code.n)
                assert exh.value == inc.value


class TestRis:
    def test_matches_exhaustive_small_set(self):
        for name, fn in SMALL_SET.items():
            code = fn()
            for b in (Z, X):
                exact = distance_exhaustive(code, b).value
                est = distance_ris(code, b, trials=100, seed=1)
                assert est.value == exact, (name, b)
                assert not est.exact
                assert is_logical(code, est.witness, b)

    def test_deterministic(self):
        code = steane_code()
        r1 = distance_ris(code, Z, trials=50, seed=7)
        r2 = distance_ris(code, Z, trials=50, seed=7)
        assert r1.value == r2.value and r1.witness == r2.witness

    def test_workers_equivalent(self):
        code = toric_code(3)
        serial = distance_ris(code, Z, trials=40, seed=3, workers=1)
        parallel = distance_ris(code, Z, trials=40, seed=3, workers=2)
        assert serial.value == parallel.value
        assert serial.witness == parallel.witness

    def test_upper_bound(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            code = random_css_code(rng, int(rng.integers(4, 10)))
            exact = distance_exhaustive(code, Z).value
            est = distance_ris(code, Z, trials=60, seed=11)
            assert est.value >= exact

    def test_no_logicals_error(self):
        code = CssCode.from_dense([[1, 0], [0, 1]], np.zeros((0, 2)))
        with pytest.raises(ValueError, match="no logical"):
            distance_ris(code, Z, trials=5, seed=0)

    def test_pair_sums_flag(self):
        code = steane_code()
        rep = distance_ris(code, Z, trials=30, seed=2, pair_sums=True)
        assert rep.value == 3


def brute_dressed_distance(code: CssCode, gauge, basis: str) -> int:
    """Oracle: scan all of F2^n for minimum-weight dressed logicals.

    Builds the syndrome and span-remainder of every vector by doubling
    over unit vectors, fully independent of the engines' coset walk.
    """
    n = code.n
    check = (code.px if basis == Z else code.pz).to_dense()
    span_rows = (code.pz if basis == Z else code.px).to_dense().tolist()
    span_rows += [g.to_bits().tolist() for g in gauge]
    # echelonize the span for remainder computation
    span = np.array(span_rows, dtype=np.uint8) % 2
    piv_rows, pivots = [], []
    for r in span:
        r = r.copy()
        for pr, pc in zip(piv_rows, pivots):
            if r[pc]:
                r ^= pr
        nz = np.nonzero(r)[0]
        if nz.size:
            piv_rows.append(r)
            pivots.append(int(nz[0]))

    def remainder(v):
        v = v.copy()
        for pr, pc in zip(piv_rows, pivots):
            if v[pc]:
                v ^= pr
        return v

    best = None
    # doubling construction of syndromes and remainders for all 2^n vectors
    syn = np.zeros((1, check.shape[0]), dtype=np.uint8)
    rem = np.zeros((1, n), dtype=np.uint8)
    wts = np.zeros(1, dtype=np.int64)
    for b in range(n):
        unit = np.zeros(n, dtype=np.uint8)
        unit[b] = 1
        syn = np.concatenate([syn, syn ^ (check @ unit % 2)])
        rem = np.concatenate([rem, rem ^ remainder(unit)])
        wts = np.concatenate([wts, wts + 1])
    mask = (~syn.any(axis=1)) & rem.any(axis=1)
    if not mask.any():
        return -1
    return int(wts[mask].min())


class TestSubsystem:
    def test_empty_gauge_reduces_to_plain(self):
        code = steane_code()
        sub = SubsystemCode(code, [], [])
        for engine in ("exhaustive", "weight_increment", "ris"):
            kw = {"trials": 100, "seed": 1} if engine == "ris" else {}
            if engine == "weight_increment":
                kw = {"max_w": 5}
            rep = subsystem_distance(sub, Z, engine, **kw)
            assert rep.value == 3

    def test_min_of_both_bases(self):
        code = qrm_code()
        sub = SubsystemCode(code, [], [])
        rep = subsystem_distance(sub, None, "exhaustive")
        assert rep.value == 3  # min(3, 7)

    def test_vs_bruteforce_random_demotions(self):
        rng = np.random.default_rng(99)
        done = 0
        while done < 25:
            code = random_css_code(rng, int(rng.integers(5, 12)))
            basis = logical_basis(code)
            if basis.k < 1:
                continue
            idx = int(rng.integers(0, basis.k))
            sub = SubsystemCode(code, [basis.z_logicals[idx]], [basis.x_logicals[idx]])
            for b in (Z, X):
                want = brute_dressed_distance(code, sub.gauge_z if b == Z else sub.gauge_x, b)
                if want == -1:
                    continue
                got = subsystem_distance(sub, b, "exhaustive")
                assert got.value == want
            done += 1

    def test_invalid_gauge_errors(self):
        code = steane_code()
        bad = F2Vector.from_bits([1, 0, 0, 0, 0, 0, 0])  # anticommutes with X checks
        sub = SubsystemCode(code, [bad], [])
        with pytest.raises(ValueError):
            subsystem_distance(sub, Z, "exhaustive")
