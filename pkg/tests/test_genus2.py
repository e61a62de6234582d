import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from siegel_theta.genus2 import (
    HADAMARD,
    LABELS,
    M,
    ProjectivePoint3,
    subgroup_witness,
    fiber_check,
    igusa_quartic,
    preimages,
    sign_action,
    sign_table,
    slash_table_check,
    squaring_map,
    theta_b,
    v_theta_J2,
    verify_fricke_groups,
    verify_fricke_identities,
    verify_G04_module,
    verify_G_module_iso,
    verify_integer_weight_subring,
    verify_signs,
)
from siegel_theta.quotients import genus2_G, genus2_G00, match_subgroups, H_generators, phi_iso
from siegel_theta.symplectic import fricke_act
from siegel_theta.theta import SiegelPoint, second_order_all


@pytest.fixture(scope="module")
def phi():
    return phi_iso(genus2_G(), genus2_G00())


def test_sign_table_spot_values():
    for i in (1, 2, 3):
        assert sign_action(i, (0, 0)) == 1
    assert sign_action(3, (1, 1)) == -1
    assert sign_table()["M1"] == {"00": 1, "01": 1, "10": -1, "11": -1}
    assert sign_table()["M2"] == {"00": 1, "01": -1, "10": 1, "11": -1}
    assert sign_table()["M3"] == {"00": 1, "01": 1, "10": 1, "11": -1}


def test_signs_numeric_and_exact():
    r = verify_signs(seed=5, samples=5)
    assert r["exact"] and r["max_ratio_error"] < 1e-8


def test_integer_weight_subring():
    r = verify_integer_weight_subring(seed=5, samples=5)
    assert r["ok"], r
    assert r["sign_character_rank_f2"] == 3 and r["trivial_on_f00"]


def test_squaring_spot_values():
    ones = ProjectivePoint3((1, 1, 1, 1))
    assert squaring_map(ones).equivalent(ones)
    assert len(preimages(ones)) == 8
    e0 = ProjectivePoint3((1, 0, 0, 0))
    assert squaring_map(e0).equivalent(e0)
    assert len(preimages(e0)) == 1
    with pytest.raises(ValueError):
        ProjectivePoint3((0, 0, 0, 0))


def test_squaring_is_theta_compatible(rng):
    for _ in range(5):
        f = second_order_all(SiegelPoint.random(rng, 2))
        assert squaring_map(ProjectivePoint3(tuple(f))).equivalent(ProjectivePoint3(tuple(f ** 2)))


def test_degree_eight_fibers():
    r = fiber_check(seed=9, count=100)
    assert r["all_eight"] and r["counts"] == [8]


@settings(max_examples=50, deadline=None)
@given(st.lists(st.complex_numbers(min_magnitude=0.1, max_magnitude=10, allow_nan=False, allow_infinity=False),
                min_size=4, max_size=4))
def test_fibers_property(coords):
    q = ProjectivePoint3(tuple(coords))
    pre = preimages(q)
    assert len(pre) == 8
    assert all(squaring_map(p).equivalent(q) for p in pre)


def test_igusa_quartic_spot_values():
    assert igusa_quartic((0, 0, 0, 0, 0)) == 0
    assert igusa_quartic((1, 1, 1, 0, -3)) == 9
    for t in (-2, 0, 3.5, 1j):
        assert igusa_quartic((0, 0, 0, 1, t)) == 1


def test_module_isomorphism_exact_and_numeric(phi):
    r = verify_G_module_iso(seed=2, samples=3, phi=phi)
    assert r["ok"]
    assert all(row["exact_equal"] for row in r["generators"])
    assert max(row["numeric_residual"] for row in r["generators"]) < 1e-8


def test_slash_table():
    assert slash_table_check() == {"lower_2S": True, "block_diag": True, "upper_S": True, "ok": True}


def test_v_theta_J2_is_eighth_root():
    v = v_theta_J2()
    assert abs(v ** 8 - 1) < 1e-6
    assert abs(v + 1j) < 1e-10


def test_fricke_identities():
    r = verify_fricke_identities(seed=4, samples=5)
    assert r["ok"], r
    assert r["ratio_spread"] < 1e-8
    assert r["hadamard_squared_is_4I"]


def test_fricke_involution_on_points(rng):
    tau = SiegelPoint.random(rng, 2).tau
    assert np.abs(fricke_act(fricke_act(tau)) - tau).max() < 1e-12


def test_hadamard_change_of_basis(rng):
    tau = SiegelPoint.random(rng, 2)
    f2 = second_order_all(tau) ** 2
    th2 = theta_b(tau) ** 2
    assert np.abs(HADAMARD @ f2 - th2).max() < 1e-10 * np.abs(th2).max()
    assert np.array_equal(HADAMARD @ HADAMARD, 4 * np.eye(4, dtype=int))


def test_fricke_groups():
    r = verify_fricke_groups(seed=4, samples=100)
    assert r["ok"], r


def test_G04_module():
    assert verify_G04_module()["ok"]


def test_subgroup_witness(phi):
    H = match_subgroups(phi, H_generators(genus2_G00()), side="codomain").H
    r = subgroup_witness(phi, H, seed=6, samples=2)
    assert r["ok"] and r["max_residual"] < 1e-8


def test_labels_order():
    assert LABELS == ((0, 0), (0, 1), (1, 0), (1, 1))
    assert M(3).B.tolist() == [[0, 1], [1, 0]]
