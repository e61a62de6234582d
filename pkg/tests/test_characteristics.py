import itertools

import numpy as np
import pytest

from oracles import act_oracle, parity_census
from siegel_theta.characteristics import (
    ThetaCharacteristic,
    act,
    census,
    enumerate_characteristics,
    inverse_act,
    parity,
    reduce_with_sign,
)
from siegel_theta.symplectic import SymplecticMatrix, group, random_elements, translation


def test_parity_spot_values():
    assert parity(ThetaCharacteristic((0, 0), (0, 0))) == 1
    assert parity(ThetaCharacteristic((1, 0), (1, 0))) == -1


@pytest.mark.parametrize("g", [1, 2, 3, 4])
def test_census_formula_and_oracle(g):
    even, odd = census(g)
    assert (even, odd) == (2 ** (g - 1) * (2 ** g + 1), 2 ** (g - 1) * (2 ** g - 1))
    assert (even, odd) == parity_census(g)


def test_enumeration_spot_values():
    assert enumerate_characteristics(1, "odd") == [ThetaCharacteristic((1,), (1,))]
    assert len(enumerate_characteristics(3, "odd")) == 28
    assert len(enumerate_characteristics(2)) == 16


def test_parse_round_trip():
    m = ThetaCharacteristic.parse("001|011")
    assert m.top == (0, 0, 1) and m.bottom == (0, 1, 1)
    assert str(m) == "001|011"
    with pytest.raises(ValueError):
        ThetaCharacteristic((0, 2), (0, 0))


def test_identity_acts_trivially():
    e = SymplecticMatrix.identity(3)
    for m in enumerate_characteristics(3):
        assert act(e, m) == m
        assert inverse_act(e, m) == m


def test_translation_spot_value_against_oracle():
    B = np.array([[2, 0, 0], [0, 0, 1], [0, 1, 0]])
    gb = translation(B)
    for m in enumerate_characteristics(3):
        got = act(gb, m)
        mp, mpp = np.array(m.top), np.array(m.bottom)
        want = tuple(list(mp) + list((-B @ mp + mpp + np.diag(B)) % 2))
        assert got.top + got.bottom == want


@pytest.mark.parametrize("g", [2, 3])
def test_action_matches_oracle_and_preserves_parity(g):
    chars = enumerate_characteristics(g)
    rng = np.random.default_rng(g)
    for x in random_elements(group("Gamma", g), g, 100, 10):
        for _ in range(5):
            m = chars[int(rng.integers(len(chars)))]
            got = act(x, m)
            assert got.top + got.bottom == act_oracle(x.tolist(), m.top + m.bottom)
            assert got.parity() == m.parity()
            assert act(x, inverse_act(x, m)) == m


@pytest.mark.parametrize("g", [2, 3])
def test_action_is_a_group_action(g):
    chars = enumerate_characteristics(g)
    xs = random_elements(group("Gamma", g), 100 + g, 500 if g == 2 else 200, 8)
    violations = 0
    for x, y in zip(xs, xs[1:]):
        for m in chars[:: max(1, len(chars) // 8)]:
            violations += act(x @ y, m) != act(x, act(y, m))
    assert violations == 0


def test_action_permutes_each_parity_class():
    for x in random_elements(group("Gamma", 3), 5, 50, 8):
        for p in ("even", "odd"):
            chars = enumerate_characteristics(3, p)
            assert sorted(act(x, m) for m in chars) == sorted(chars)


def test_deep_congruence_fixes_characteristics():
    for x in random_elements(group("Gamma(4,8)", 2), 6, 30, 6):
        for m in enumerate_characteristics(2):
            assert inverse_act(x, m) == m


def test_reduce_with_sign():
    r, s = reduce_with_sign([1, 0, 3, 0])
    assert r == ThetaCharacteristic((1, 0), (1, 0)) and s == -1
    r, s = reduce_with_sign([0, 1, 2, 0])
    assert s == 1
    for v in itertools.product(range(-2, 3), repeat=2):
        r, _ = reduce_with_sign([1, 1, *v])
        assert r.bottom == tuple(x % 2 for x in v)
