"""Genus 3: gradient forms W(M), the character chi_M, the symmetrisation Phi(M)
over Gamma_3^2(2,4)/Gamma_3(2,4), the R_16 relation and q = prod f_a.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .characteristics import ThetaCharacteristic, act, enumerate_characteristics, inverse_act
from .cocycles import e_phi, kappa_pow4
from .cyclotomic import ONE, ZERO, Cyclotomic8
from .quotients import GENUS3_B, genus3_quotient, genus3_word_set
from .symplectic import SymplecticMatrix, translation
from .theta import DEFAULT_TOL, SiegelPoint, as_point, second_order_all, theta_gradients, theta_many

Pair = tuple[ThetaCharacteristic, ThetaCharacteristic]


class CharacteristicError(ValueError):
    """A column is even, or two columns coincide."""


@dataclass(frozen=True)
class CharacteristicMatrix:
    """M = (m_1, m_2): two odd genus-3 characteristics as columns."""

    columns: Pair
    allow_duplicate: bool = field(default=False, compare=False)

    def __post_init__(self):
        if len(self.columns) != 2:
            raise CharacteristicError("genus 3 needs exactly two columns")
        for m in self.columns:
            if m.g != 3 or m.is_even:
                raise CharacteristicError(f"column {m} is not an odd genus-3 characteristic")
        if self.columns[0] == self.columns[1] and not self.allow_duplicate:
            raise CharacteristicError("columns must be distinct")

    @classmethod
    def parse(cls, a: str, b: str) -> "CharacteristicMatrix":
        return cls((ThetaCharacteristic.parse(a), ThetaCharacteristic.parse(b)))

    def swapped(self) -> "CharacteristicMatrix":
        return CharacteristicMatrix((self.columns[1], self.columns[0]), self.allow_duplicate)

    def unordered(self) -> Pair:
        return tuple(sorted(self.columns))

    def criterion(self) -> bool:
        """m_1' = m_2'."""
        return self.columns[0].top == self.columns[1].top

    def __str__(self) -> str:
        return f"({self.columns[0]}, {self.columns[1]})"


def all_pairs() -> list[CharacteristicMatrix]:
    """The C(28, 2) = 378 unordered pairs of distinct odd characteristics."""
    odd = enumerate_characteristics(3, "odd")
    return [CharacteristicMatrix((a, b)) for a, b in combinations(odd, 2)]


# -- W(M) -----------------------------------------------------------------------------

def _outer_cross(psi1: np.ndarray, psi2: np.ndarray) -> np.ndarray:
    w = np.cross(psi1, psi2)
    W = np.outer(w, w) / np.pi ** 4
    # vectorised products are not bitwise commutative
    return (W + W.T) / 2


def gradient_form(M: CharacteristicMatrix, tau, tol: float = DEFAULT_TOL) -> np.ndarray:
    """W(M)(tau) = pi^{-4} w w^T with w = psi_{m1} x psi_{m2}."""
    tau = as_point(tau)
    if tau.g != 3:
        raise ValueError("gradient forms are defined here for genus 3")
    if M.columns[0] == M.columns[1]:
        return np.zeros((3, 3), dtype=complex)
    psi = theta_gradients(M.columns, tau, tol)
    return _outer_cross(psi[0], psi[1])


class GradientTable:
    """All 28 odd gradients at one tau, so any W(M)(tau) is an outer product away."""

    def __init__(self, tau, tol: float = DEFAULT_TOL):
        self.tau = as_point(tau)
        self.odd = enumerate_characteristics(3, "odd")
        self.index = {m: i for i, m in enumerate(self.odd)}
        self.psi = theta_gradients(self.odd, self.tau, tol)

    def W(self, pair: Sequence[ThetaCharacteristic]) -> np.ndarray:
        return _outer_cross(self.psi[self.index[pair[0]]], self.psi[self.index[pair[1]]])


def chi(M: CharacteristicMatrix, gamma: SymplecticMatrix) -> Cyclotomic8:
    """chi_M(gamma) = kappa(gamma)^4 e(2 phi_{m1}(gamma) + 2 phi_{m2}(gamma)), exactly."""
    out = Cyclotomic8.from_int(kappa_pow4(gamma))
    for m in M.columns:
        out = out * e_phi(m, gamma, multiple=2)
    return out


def act_matrix(gamma: SymplecticMatrix, M: CharacteristicMatrix) -> CharacteristicMatrix:
    return CharacteristicMatrix(tuple(act(gamma, m) for m in M.columns), M.allow_duplicate)


def transformation_residual(M: CharacteristicMatrix, gamma: SymplecticMatrix, tau,
                            tol: float = DEFAULT_TOL) -> float:
    """Relative residual of W(gamma.M)(gamma.tau) = chi det^4 (C tau+D)^{-T} W(M)(tau) (C tau+D)^{-1}."""
    tau = as_point(tau)
    gtau = SiegelPoint(gamma.act(tau.tau))
    lhs = gradient_form(act_matrix(gamma, M), gtau, tol)
    Z = gamma.cocycle_matrix(tau.tau)
    Zi = np.linalg.inv(Z)
    rhs = complex(chi(M, gamma)) * np.linalg.det(Z) ** 4 * (Zi.T @ gradient_form(M, tau, tol) @ Zi)
    return float(np.abs(lhs - rhs).max() / max(np.abs(lhs).max(), np.abs(rhs).max()))


# -- formal combinations ---------------------------------------------------------------

@dataclass
class FormalThetaCombination:
    """Finite sum of coefficient * W(N) with exact Z[zeta_8] coefficients.

    Keys are ordered column pairs.  W is unchanged by swapping columns, so
    ``unordered`` is the combination as a function of tau.
    """

    terms: dict = field(default_factory=dict)

    def add(self, key: Pair, coeff: Cyclotomic8) -> None:
        self.terms[key] = self.terms.get(key, ZERO) + coeff

    def support(self) -> dict:
        return {k: v for k, v in sorted(self.terms.items()) if v}

    def unordered(self) -> "FormalThetaCombination":
        out = FormalThetaCombination()
        for k, v in self.terms.items():
            out.add(tuple(sorted(k)), v)
        return out

    def is_zero(self) -> bool:
        """True iff the combination vanishes as a function (after collapsing column order)."""
        return not self.unordered().support()

    def evaluate(self, table: GradientTable) -> np.ndarray:
        out = np.zeros((3, 3), dtype=complex)
        for k, v in self.support().items():
            out += complex(v) * table.W(k)
        return out

    def to_json(self) -> list:
        return [{"N": [str(k[0]), str(k[1])], "coeff": list(v.coeffs)} for k, v in self.support().items()]


_REPS: list[SymplecticMatrix] | None = None


def coset_representatives() -> list[SymplecticMatrix]:
    """The 64 translations prod M_i^{eps_i}, checked to be distinct classes by BFS."""
    global _REPS
    if _REPS is None:
        Q = genus3_quotient()
        words = [w for _, w in genus3_word_set()]
        classes = {Q.locate(w) for w in words}
        if Q.order != 64 or len(classes) != 64:
            raise RuntimeError(f"quotient order {Q.order}, word classes {len(classes)}")
        _REPS = words
    return _REPS


def symmetrize(M: CharacteristicMatrix, reps: Sequence[SymplecticMatrix] | None = None) -> FormalThetaCombination:
    """Phi(M) = sum over classes gamma of chi_N(gamma) W(N), N = gamma^{-1} . M."""
    reps = coset_representatives() if reps is None else reps
    out = FormalThetaCombination()
    for gamma in reps:
        N = CharacteristicMatrix(tuple(inverse_act(gamma, m) for m in M.columns), M.allow_duplicate)
        out.add(N.columns, chi(N, gamma))
    return out


def direct_sum(M: CharacteristicMatrix, tables: Sequence[GradientTable]) -> np.ndarray:
    """sum_B W(M)(tau + B), given gradient tables at the 64 translated points."""
    return sum(t.W(M.columns) for t in tables)


def translated_tables(tau, tol: float = DEFAULT_TOL) -> list[GradientTable]:
    tau = as_point(tau)
    return [GradientTable(SiegelPoint(tau.tau + np.asarray(g.B, dtype=float)), tol)
            for g in coset_representatives()]


EXAMPLE_M = CharacteristicMatrix.parse("001|001", "001|011")
EXAMPLE_N = (
    CharacteristicMatrix.parse("001|001", "001|011"),
    CharacteristicMatrix.parse("001|011", "001|001"),
    CharacteristicMatrix.parse("001|101", "001|111"),
    CharacteristicMatrix.parse("001|111", "001|101"),
)


def worked_example() -> dict:
    """Coefficients of Phi(M) for the worked example, as ordered keys."""
    comb_ = symmetrize(EXAMPLE_M)
    sup = comb_.support()
    want = {N.columns: Cyclotomic8.from_int(16) for N in EXAMPLE_N}
    return {
        "M": [str(m) for m in EXAMPLE_M.columns],
        "N": [[str(m) for m in N.columns] for N in EXAMPLE_N],
        "coefficients": comb_.to_json(),
        "matches": sup == want,
    }


def odd_census_by_top() -> dict[str, int]:
    """Number of odd characteristics for each top m'."""
    c = Counter("".join(map(str, m.top)) for m in enumerate_characteristics(3, "odd"))
    return dict(sorted(c.items()))


def classify_all(seed: int = 0, numeric_points: int = 1, numeric_per_class: int = 5,
                 tol: float = DEFAULT_TOL) -> dict:
    """Nonvanishing of Phi(M) for all 378 pairs, with a numerical gap check.

    The gap check evaluates Phi(M)(tau0) as the direct sum of the 64
    translates, relative to the largest translate, for the first
    ``numeric_per_class`` vanishing and nonvanishing pairs (all pairs when
    ``numeric_per_class`` is None).
    """
    pairs = all_pairs()
    reps = coset_representatives()
    rows, nonvanishing = [], []
    for M in pairs:
        c = symmetrize(M, reps)
        nz = not c.is_zero()
        rows.append((M, c, nz))
        if nz:
            nonvanishing.append(M)
    criterion_agrees = all(nz == M.criterion() for M, _, nz in rows)
    census = odd_census_by_top()
    census_count = sum(comb(k, 2) for top, k in census.items())

    rng = np.random.default_rng(seed)
    chosen = rows
    if numeric_per_class is not None:
        chosen = [r for r in rows if r[2]][:numeric_per_class] + [r for r in rows if not r[2]][:numeric_per_class]
    nz_min, z_max, gap_failures, formal_err = np.inf, 0.0, [], 0.0
    log_hist: Counter = Counter()
    for _ in range(numeric_points):
        tau = SiegelPoint.random(rng, 3)
        tables = translated_tables(tau, tol)
        for M, c, nz in chosen:
            terms = [t.W(M.columns) for t in tables]
            scale = max(np.abs(x).max() for x in terms)
            total = sum(terms)
            rel = float(np.abs(total).max() / scale)
            formal_err = max(formal_err, float(np.abs(total - c.evaluate(tables[0])).max() / scale))
            log_hist[int(np.floor(np.log10(max(rel, 1e-300))))] += 1
            if nz:
                nz_min = min(nz_min, rel)
                if rel <= 1e-6:
                    gap_failures.append(str(M))
            else:
                z_max = max(z_max, rel)
                if rel >= 1e-8:
                    gap_failures.append(str(M))
    ok = (len(nonvanishing) == 42 and len(pairs) == 378 and criterion_agrees
          and census_count == 42 and not gap_failures and formal_err < 1e-6)
    return {
        "total": len(pairs),
        "nonvanishing": len(nonvanishing),
        "vanishing": len(pairs) - len(nonvanishing),
        "criterion_agrees": criterion_agrees,
        "census_count": census_count,
        "nonvanishing_pairs": [[str(m) for m in M.columns] for M in nonvanishing],
        "numeric": {
            "checked": len(chosen) * numeric_points,
            "min_nonvanishing_relative": float(nz_min),
            "max_vanishing_relative": float(z_max),
            "formal_vs_direct": formal_err,
            "log10_histogram": {str(k): log_hist[k] for k in sorted(log_hist)},
            "gap_failures": gap_failures,
        },
        "ok": bool(ok),
    }


# -- R_16 and q --------------------------------------------------------------------------

def r16_residual(tau, tol: float = DEFAULT_TOL) -> float:
    """|2^3 sum theta_m^16 - (sum theta_m^8)^2| relative to the larger of the two terms."""
    tau = as_point(tau)
    th = theta_many(enumerate_characteristics(tau.g, "even"), tau, None, tol)
    a = 8 * np.sum(th ** 16)
    b = np.sum(th ** 8) ** 2
    return float(abs(a - b) / max(abs(a), abs(b)))


def verify_r16(seed: int, samples: int = 10, tol: float = DEFAULT_TOL) -> dict:
    rng = np.random.default_rng(seed)
    taus = [SiegelPoint.random(rng, 3) for _ in range(samples)]
    res = [r16_residual(t, tol) for t in taus]
    S = 2 * np.array([[1, 0, 1], [0, 0, 1], [1, 1, 0]], dtype=float)
    shifted = r16_residual(SiegelPoint(taus[0].tau + S), tol)
    genus2 = r16_residual(SiegelPoint.random(rng, 2), tol)
    return {
        "max_residual": max(res),
        "translated_residual": shifted,
        "genus2_informational": genus2,
        "ok": max(res) < 1e-8 and shifted < 1e-8,
    }


def q_value(tau, tol: float = DEFAULT_TOL) -> complex:
    """q = prod_a f_a over a in F_2^3."""
    return complex(np.prod(second_order_all(tau, tol)))


def q_sign_census() -> dict:
    """Number of a with i^{a^T B_i a} = -1, per generator (must be even)."""
    from itertools import product

    out = {}
    for k, B in enumerate(GENUS3_B, start=1):
        phases = [int(np.array(a) @ B @ np.array(a)) % 4 for a in product((0, 1), repeat=3)]
        if any(p % 2 for p in phases):
            raise AssertionError("a^T B a must be even for these B")
        out[f"M{k}"] = sum(1 for p in phases if p == 2)
    return out


def verify_q_invariance(seed: int, samples: int = 5, tol: float = DEFAULT_TOL) -> dict:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        tau = SiegelPoint.random(rng, 3)
        q0 = q_value(tau, tol)
        for B in GENUS3_B:
            qi = q_value(SiegelPoint(translation(B).act(tau.tau)), tol)
            worst = max(worst, abs(qi / q0 - 1))
    census = q_sign_census()
    return {
        "max_ratio_error": worst,
        "sign_flips": census,
        "ok": worst < 1e-8 and all(v % 2 == 0 for v in census.values()),
    }
