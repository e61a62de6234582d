import itertools

import numpy as np
import pytest

from siegel_theta.riemann import (
    addition_formula,
    products_table,
    relation_residuals,
    sign_matrix,
    squares_table,
    verify_addition,
)
from siegel_theta.theta import SiegelPoint


@pytest.mark.parametrize("g", [2, 3])
def test_both_relations(rng, g):
    for _ in range(10):
        r1, r2 = relation_residuals(SiegelPoint.random(rng, g))
        assert r1 < 1e-8 and r2 < 1e-8


def test_change_of_basis_is_scaled_hadamard(rng):
    for g in (2, 3):
        H = sign_matrix(g)
        assert np.array_equal(H @ H.T, 2 ** g * np.eye(2 ** g, dtype=int))
        tau = SiegelPoint.random(rng, g)
        P, T = products_table(tau), squares_table(tau)
        assert np.abs(P - T @ H.T / 2 ** g).max() < 1e-10 * np.abs(T).max()


def test_addition_formula_at_zero_reduces_to_constants(rng):
    tau = SiegelPoint.random(rng, 2)
    lhs, rhs = addition_formula([0, 0, 0, 0], [0, 0, 0, 0], tau, np.zeros(2), np.zeros(2))
    assert abs(lhs - rhs) < 1e-10 * abs(lhs)


def test_addition_formula_random():
    r = verify_addition(seed=3, samples=10)
    assert r["ok"], r


def test_addition_formula_all_characteristic_pairs(rng):
    tau = SiegelPoint.random(rng, 2)
    z = np.array([0.1 + 0.05j, -0.2])
    w = np.array([0.3, 0.1 - 0.1j])
    for eps in itertools.product((0, 1), repeat=4):
        for delta in itertools.product((0, 1), repeat=4):
            lhs, rhs = addition_formula(eps, delta, tau, z, w)
            assert abs(lhs - rhs) < 1e-9 * max(1, abs(lhs))
