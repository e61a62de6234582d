from fractions import Fraction
from math import comb

import numpy as np
import pytest

from oracles import phi_oracle
from siegel_theta.characteristics import ThetaCharacteristic, enumerate_characteristics
from siegel_theta.cocycles import kappa_pow4
from siegel_theta.cyclotomic import ONE, Cyclotomic8
from siegel_theta.genus3 import (
    EXAMPLE_M,
    EXAMPLE_N,
    CharacteristicError,
    CharacteristicMatrix,
    GradientTable,
    all_pairs,
    chi,
    classify_all,
    coset_representatives,
    gradient_form,
    odd_census_by_top,
    worked_example,
    q_sign_census,
    q_value,
    r16_residual,
    symmetrize,
    transformation_residual,
    translated_tables,
    verify_q_invariance,
    verify_r16,
)
from siegel_theta.quotients import GENUS3_B
from siegel_theta.symplectic import SymplecticMatrix, group, random_elements, translation
from siegel_theta.theta import SiegelPoint


@pytest.fixture(scope="module")
def classification():
    return classify_all(seed=11, numeric_points=3, numeric_per_class=5)


def test_characteristic_matrix_validation():
    with pytest.raises(CharacteristicError):
        CharacteristicMatrix.parse("000|000", "001|001")
    with pytest.raises(CharacteristicError):
        CharacteristicMatrix.parse("001|001", "001|001")
    M = CharacteristicMatrix((ThetaCharacteristic.parse("001|001"),) * 2, allow_duplicate=True)
    assert M.columns[0] == M.columns[1]


def test_gradient_form_shape(rng):
    tau = SiegelPoint.random(rng, 3)
    W = gradient_form(EXAMPLE_M, tau)
    assert np.abs(W - W.T).max() == 0
    s = np.linalg.svd(W, compute_uv=False)
    assert s[1] < 1e-12 * s[0]
    assert np.abs(W).max() > 1e-10


def test_duplicate_columns_give_zero(rng):
    m = ThetaCharacteristic.parse("011|010")
    M = CharacteristicMatrix((m, m), allow_duplicate=True)
    assert np.abs(gradient_form(M, SiegelPoint.random(rng, 3))).max() == 0


def test_every_pair_nonzero_at_random_point(rng):
    table = GradientTable(SiegelPoint.random(rng, 3))
    assert min(np.abs(table.W(M.columns)).max() for M in all_pairs()) > 1e-10


def test_W_transformation_law(rng):
    for x in random_elements(group("Gamma(2,4)", 3), 12, 6, 4):
        assert transformation_residual(EXAMPLE_M, x, SiegelPoint.random(rng, 3)) < 1e-6
    for x in random_elements(group("Gamma", 3), 13, 6, 4):
        M = all_pairs()[int(rng.integers(378))]
        assert transformation_residual(M, x, SiegelPoint.random(rng, 3)) < 1e-6


def test_chi_spot_values():
    assert chi(EXAMPLE_M, SymplecticMatrix.identity(3)) == ONE
    g1 = translation(GENUS3_B[0])
    for m in EXAMPLE_M.columns:
        assert phi_oracle(m.top + m.bottom, g1.tolist()) == Fraction(0)
    assert chi(EXAMPLE_M, g1) == ONE


def test_chi_exact_fourth_roots_on_all_representatives():
    reps = coset_representatives()
    assert len(reps) == 64
    for g in reps:
        assert kappa_pow4(g) == 1
        for M in all_pairs():
            assert chi(M, g) ** 4 == ONE


def test_worked_example():
    comb_ = symmetrize(EXAMPLE_M)
    want = {N.columns: Cyclotomic8.from_int(16) for N in EXAMPLE_N}
    assert comb_.support() == want
    assert worked_example()["matches"]
    # as a function: 32 on each unordered pair
    assert set(comb_.unordered().support().values()) == {Cyclotomic8.from_int(32)}


def test_identity_term_present_before_cancellation():
    M = CharacteristicMatrix.parse("001|001", "010|010")
    assert chi(M, coset_representatives()[0]) == ONE
    assert coset_representatives()[0] == SymplecticMatrix.identity(3)


def test_different_tops_vanish():
    for M in all_pairs()[::7]:
        if not M.criterion():
            assert symmetrize(M).is_zero()


def test_column_swap_invariance():
    for M in all_pairs()[::9]:
        a = symmetrize(M).unordered().support()
        b = symmetrize(M.swapped()).unordered().support()
        assert a == b
        swapped_keys = {(k[1], k[0]): v for k, v in symmetrize(M).support().items()}
        assert symmetrize(M.swapped()).support() == swapped_keys


def test_census_oracle():
    census = odd_census_by_top()
    assert sum(census.values()) == 28
    assert sum(comb(k, 2) for k in census.values()) == 42
    odd = enumerate_characteristics(3, "odd")
    assert sum(1 for i, a in enumerate(odd) for b in odd[i + 1:] if a.top == b.top) == 42


def test_classification(classification):
    r = classification
    assert r["total"] == 378 and r["nonvanishing"] == 42 and r["vanishing"] == 336
    assert r["criterion_agrees"]
    assert r["numeric"]["checked"] == 30
    assert r["numeric"]["min_nonvanishing_relative"] > 1e-6
    assert r["numeric"]["max_vanishing_relative"] < 1e-8
    assert not r["numeric"]["gap_failures"]


def test_formal_matches_direct_sum(rng):
    tau = SiegelPoint.random(rng, 3)
    tables = translated_tables(tau)
    pairs = all_pairs()
    for k in rng.choice(len(pairs), 5, replace=False):
        M = pairs[int(k)]
        direct = sum(t.W(M.columns) for t in tables)
        scale = max(np.abs(t.W(M.columns)).max() for t in tables)
        assert np.abs(direct - symmetrize(M).evaluate(tables[0])).max() < 1e-6 * scale


def test_r16(rng):
    for _ in range(10):
        assert r16_residual(SiegelPoint.random(rng, 3)) < 1e-8
    r = verify_r16(seed=3, samples=3)
    assert r["ok"] and r["translated_residual"] < 1e-8
    assert "genus2_informational" in r


def test_q_sign_census():
    census = q_sign_census()
    assert set(census) == {f"M{i}" for i in range(1, 7)}
    assert all(v % 2 == 0 for v in census.values())


def test_q_identity_ratio_exact(rng):
    tau = SiegelPoint.random(rng, 3)
    e = SymplecticMatrix.identity(3)
    assert q_value(SiegelPoint(e.act(tau.tau))) / q_value(tau) == 1


def test_q_invariance():
    r = verify_q_invariance(seed=2, samples=5)
    assert r["ok"] and r["max_ratio_error"] < 1e-8
