"""The twelve acceptance criteria, each at its stated tolerance and time budget.

Every test records a one-line verdict, printed in the terminal summary.
"""
import time

import numpy as np
import pytest

from siegel_theta.characteristics import census, enumerate_characteristics
from siegel_theta.cocycles import verify_transformation_batch
from siegel_theta.genus2 import (
    fiber_check,
    verify_fricke_groups,
    verify_fricke_identities,
    verify_G_module_iso,
)
from siegel_theta.genus3 import classify_all, r16_residual, verify_q_invariance, worked_example
from siegel_theta.quotients import (
    H_generators,
    enumerate_quotient,
    genus2_G,
    genus2_G00,
    genus3_quotient,
    genus3_word_set,
    match_subgroups,
    phi_iso,
    standard_generator_families,
    structure_report,
)
from siegel_theta.riemann import relation_residuals, verify_addition
from siegel_theta.symplectic import group
from siegel_theta.theta import SiegelPoint, theta

SEED = 2024


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def test_01_characteristic_census(acceptance):
    with Timer() as t:
        rows = {g: census(g) for g in range(1, 5)}
    ok = all(rows[g] == (2 ** (g - 1) * (2 ** g + 1), 2 ** (g - 1) * (2 ** g - 1)) for g in rows)
    acceptance(1, "characteristic census", ok and t.elapsed < 1,
               f"{rows} in {t.elapsed:.2f}s")


def test_02_odd_theta_vanishing(acceptance):
    rng = np.random.default_rng(SEED)
    with Timer() as t:
        worst = 0.0
        for g in (2, 3):
            odd = enumerate_characteristics(g, "odd")
            for _ in range(10):
                tau = SiegelPoint.random(rng, g)
                worst = max(worst, max(abs(theta(m, tau).value) for m in odd))
    acceptance(2, "odd theta vanishing", worst < 1e-10 and t.elapsed < 10,
               f"max |theta_odd| = {worst:.1e} in {t.elapsed:.1f}s")


def test_03_transformation_formula(acceptance):
    with Timer() as t:
        r = verify_transformation_batch(SEED, samples=100, max_length=12, g=2)
    ok = (r["max_residual"] < 1e-8 and r["max_kappa8_error"] < 1e-6 and r["kappa4_mismatches"] == 0
          and r["kappa2_mismatches"] == 0 and not r["failures"] and t.elapsed < 60)
    acceptance(3, "transformation formula", ok,
               f"residual {r['max_residual']:.1e}, |k^8-1| {r['max_kappa8_error']:.1e}, "
               f"k^4/k^2 mismatches {r['kappa4_mismatches']}/{r['kappa2_mismatches']} in {t.elapsed:.1f}s")


def test_04_riemann_identities(acceptance):
    rng = np.random.default_rng(SEED)
    with Timer() as t:
        worst = 0.0
        for g in (2, 3):
            for _ in range(10):
                worst = max(worst, *relation_residuals(SiegelPoint.random(rng, g)))
        add = verify_addition(SEED, samples=10, g=2)
    ok = worst < 1e-8 and add["ok"] and t.elapsed < 60
    acceptance(4, "Riemann identities", ok,
               f"relations {worst:.1e}, addition {add['max_residual']:.1e} in {t.elapsed:.1f}s")


def test_05_quotient_orders(acceptance):
    with Timer() as t:
        G = genus2_G()
        F = enumerate_quotient(group("Gamma^2(2,4)", 2), group("Gamma(2,4)", 2))
        Q3 = genus3_quotient()
        words = {Q3.locate(w) for _, w in genus3_word_set()}
        rep = structure_report(G)
    ok = (G.order == 96 and F.order == 8 and Q3.order == 64 and len(words) == 64
          and rep["normal_f2_4"] and rep["quotient_order"] == 6 and rep["quotient_nonabelian"]
          and t.elapsed < 120)
    acceptance(5, "quotient orders", ok,
               f"96={G.order}, 8={F.order}, 64={Q3.order} (words {len(words)}), "
               f"G = {rep['description']} in {t.elapsed:.1f}s")


def test_06_phi_isomorphism(acceptance):
    with Timer() as t:
        G, G00 = genus2_G(), genus2_G00()
        phi = phi_iso(G, G00)
        images = [phi(G.locate(x)) for fam in standard_generator_families(2).values() for x in fam]
        generate = len(G00.closure(images)) == G00.order
        m = match_subgroups(phi, H_generators(G00), side="codomain")
    ok = (phi.is_homomorphism() and phi.is_bijective() and generate
          and m.gamma_names == ["Gamma(2)"] and m.gamma_prime_names == ["Gamma_1(2)"] and t.elapsed < 60)
    acceptance(6, "isomorphism phi", ok,
               f"H order {len(m.H)} -> {m.gamma_names} / {m.gamma_prime_names} in {t.elapsed:.1f}s")


def test_07_g_module_equivariance(acceptance):
    with Timer() as t:
        r = verify_G_module_iso(seed=SEED, samples=3)
    rows = r["generators"]
    worst = max(row["numeric_residual"] for row in rows)
    ok = all(row["exact_equal"] for row in rows) and worst < 1e-8 and t.elapsed < 60
    acceptance(7, "G-module equivariance", ok,
               f"{len(rows)} generators exact, slash residual {worst:.1e} in {t.elapsed:.1f}s")


def test_08_fricke_suite(acceptance):
    with Timer() as t:
        groups = verify_fricke_groups(SEED, samples=100)
        ids = verify_fricke_identities(SEED, samples=5)
    ok = groups["ok"] and ids["ratio_spread"] < 1e-8 and ids["ok"] and t.elapsed < 60
    acceptance(8, "Fricke suite", ok,
               f"groups {groups['ok']}, ratio spread {ids['ratio_spread']:.1e} in {t.elapsed:.1f}s")


def test_09_degree_eight_fibers(acceptance):
    with Timer() as t:
        r = fiber_check(SEED, count=100)
    acceptance(9, "degree-8 fibers", r["all_eight"] and t.elapsed < 1,
               f"preimage counts {r['counts']} over {r['targets']} points in {t.elapsed:.2f}s")


def test_10_r16(acceptance):
    rng = np.random.default_rng(SEED)
    with Timer() as t:
        worst = max(r16_residual(SiegelPoint.random(rng, 3)) for _ in range(10))
    acceptance(10, "R16 identity", worst < 1e-8 and t.elapsed < 120,
               f"max relative residual {worst:.1e} in {t.elapsed:.1f}s")


@pytest.mark.slow
def test_11_classification(acceptance):
    with Timer() as t:
        r = classify_all(seed=SEED, numeric_points=3, numeric_per_class=5)
        ex = worked_example()
    num = r["numeric"]
    ok = (r["nonvanishing"] == 42 and r["total"] == 378 and r["criterion_agrees"] and ex["matches"]
          and num["min_nonvanishing_relative"] > 1e-6 and num["max_vanishing_relative"] < 1e-8
          and not num["gap_failures"] and t.elapsed < 600)
    acceptance(11, "Phi(M) classification", ok,
               f"{r['nonvanishing']}/{r['total']} nonvanishing, example {ex['matches']}, "
               f"gap {num['min_nonvanishing_relative']:.1e} vs {num['max_vanishing_relative']:.1e} "
               f"in {t.elapsed:.1f}s")


def test_12_q_invariance(acceptance):
    with Timer() as t:
        r = verify_q_invariance(SEED, samples=5)
    acceptance(12, "q-invariance", r["ok"] and r["max_ratio_error"] < 1e-8 and t.elapsed < 30,
               f"max |ratio - 1| {r['max_ratio_error']:.1e} in {t.elapsed:.1f}s")
