"""The theta transformation formula: exact phases, powers of kappa, and numerical checks.

For gamma in Sp(2g, Z) and an integer characteristic m,

    theta[gamma . m](gamma . tau) = kappa(gamma) det(C tau + D)^{1/2} e(phi_m(gamma)) theta[m](tau)

where gamma . m is the *unreduced* affine action.  kappa is an 8th root of
unity relative to the principal branch of the square root; it is extracted
numerically per (gamma, tau) and only its 2nd/4th/8th powers are asserted.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable

import numpy as np

from .characteristics import (
    ThetaCharacteristic,
    act_integral,
    enumerate_characteristics,
    inverse_act,
    reduce_with_sign,
)
from .cyclotomic import Cyclotomic8, MonomialMatrix
from .symplectic import GenusMismatchError, SymplecticMatrix, group, member
from .theta import DEFAULT_TOL, SiegelPoint, as_point, theta_constant, theta_many


class IllConditionedError(ArithmeticError):
    """Every candidate pivot theta constant is too small at this point."""


class PreconditionError(ValueError):
    pass


def _int_vector(m) -> list[int]:
    if isinstance(m, ThetaCharacteristic):
        return list(m.top + m.bottom)
    return [int(x) for x in m]


def phi(m, gamma: SymplecticMatrix) -> Fraction:
    """phi_m(gamma) reduced into [0, 1).

    -1/8 (m'^T B^T D m' + m''^T A^T C m'' - 2 m'^T B^T C m'') + 1/4 diag(A B^T)^T (D m' - C m'')
    """
    v = _int_vector(m)
    g = gamma.g
    if len(v) != 2 * g:
        raise GenusMismatchError(f"characteristic of length {len(v)} for genus {g}")
    mp = np.array(v[:g], dtype=object)
    mpp = np.array(v[g:], dtype=object)
    A, B, C, D = gamma.A, gamma.B, gamma.C, gamma.D
    quad = (
        mp.dot(B.T.dot(D).dot(mp))
        + mpp.dot(A.T.dot(C).dot(mpp))
        - 2 * mp.dot(B.T.dot(C).dot(mpp))
    )
    lin = np.diagonal(A.dot(B.T)).dot(D.dot(mp) - C.dot(mpp))
    return (Fraction(-int(quad), 8) + Fraction(int(lin), 4)) % 1


def e_phi(m, gamma: SymplecticMatrix, multiple: int = 1) -> Cyclotomic8:
    """e(multiple * phi_m(gamma)) as an exact 8th root of unity."""
    return Cyclotomic8.e(multiple * phi(m, gamma))


def kappa_pow4(gamma: SymplecticMatrix) -> int:
    """kappa(gamma)^4 = (-1)^{Tr(B^T C)}."""
    tr = int(np.trace(gamma.B.T.dot(gamma.C)))
    return -1 if tr % 2 else 1


def kappa_pow2(gamma: SymplecticMatrix) -> int:
    """kappa(gamma)^2 = (-1)^{Tr((A - 1)/2)} on Gamma_g(2)."""
    if not member(gamma, group("Gamma(2)", gamma.g)):
        raise PreconditionError("kappa^2 closed form needs gamma in Gamma_g(2)")
    half = sum((int(a) - 1) // 2 for a in np.diagonal(gamma.A))
    return -1 if half % 2 else 1


def tilde(gamma: SymplecticMatrix) -> SymplecticMatrix:
    """The matrix [[A, 2B], [C/2, D]] with 2(gamma.tau) = tilde(gamma).(2 tau)."""
    if any(int(c) % 2 for c in gamma.C.ravel()):
        raise PreconditionError("tilde(gamma) is integral only for C even")
    half = np.vectorize(lambda x: int(x) // 2, otypes=[object])(gamma.C)
    return SymplecticMatrix.from_blocks(gamma.A, 2 * gamma.B, half, gamma.D)


def tilde_kappa_sign(gamma: SymplecticMatrix) -> int:
    """s with kappa(tilde gamma)^2 = s * kappa(gamma)^2, namely (-1)^{Tr(B^T C / 2)}.

    s = 1 whenever B is even, in particular on Gamma_g(2, 4).
    """
    if any(int(c) % 2 for c in gamma.C.ravel()):
        raise PreconditionError("needs C even")
    tr = int(np.trace(gamma.B.T.dot(gamma.C))) // 2
    return -1 if tr % 2 else 1


def sqrt_det_principal(gamma: SymplecticMatrix, tau: SiegelPoint) -> complex:
    return cmath.sqrt(complex(np.linalg.det(gamma.cocycle_matrix(tau.tau))))


def _pivot(tau: SiegelPoint, tol: float):
    even = enumerate_characteristics(tau.g, "even")
    vals = theta_many(even, tau, None, tol)
    i = int(np.argmax(np.abs(vals)))
    if abs(vals[i]) <= 10 * tol:
        raise IllConditionedError("all even theta constants are below threshold")
    return even, vals, i


def extract_kappa(gamma: SymplecticMatrix, tau, tol: float = DEFAULT_TOL) -> complex:
    """kappa(gamma) at tau, using the even characteristic with the largest |theta_m(tau)|."""
    tau = as_point(tau)
    if gamma.g != tau.g:
        raise GenusMismatchError("genus mismatch")
    even, vals, i = _pivot(tau, tol)
    m = even[i]
    gtau = SiegelPoint(gamma.act(tau.tau))
    lhs = theta_constant(act_integral(gamma, m), gtau, tol)
    rhs = sqrt_det_principal(gamma, tau) * complex(e_phi(m, gamma)) * vals[i]
    return complex(lhs / rhs)


@dataclass
class TransformationReport:
    kappa: complex
    residual: float
    kappa8_error: float
    kappa4: int
    kappa4_numeric_error: float
    per_characteristic: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.residual < 1e-8 and self.kappa8_error < 1e-6 and self.kappa4_numeric_error < 1e-8


def verify_transformation(gamma: SymplecticMatrix, tau, tol: float = DEFAULT_TOL) -> TransformationReport:
    """Check the transformation formula for every even m with one extracted kappa.

    The residual is max_m |lhs - rhs| / max_m |theta_m(tau)|.
    """
    tau = as_point(tau)
    even, vals, i = _pivot(tau, tol)
    gtau = SiegelPoint(gamma.act(tau.tau))
    targets = [act_integral(gamma, m) for m in even]
    lhs = theta_many(targets, gtau, None, tol)
    sq = sqrt_det_principal(gamma, tau)
    phases = np.array([complex(e_phi(m, gamma)) for m in even])
    kappa = lhs[i] / (sq * phases[i] * vals[i])
    rhs = kappa * sq * phases * vals
    scale = np.abs(vals).max()
    diffs = np.abs(lhs - rhs) / scale
    k4 = kappa_pow4(gamma)
    return TransformationReport(
        kappa=complex(kappa),
        residual=float(diffs.max()),
        kappa8_error=float(abs(kappa ** 8 - 1)),
        kappa4=k4,
        kappa4_numeric_error=float(abs(kappa ** 4 - k4)),
        per_characteristic={str(m): float(d) for m, d in zip(even, diffs)},
    )


def translation_closed_form(m: ThetaCharacteristic, S, tau, tol: float = DEFAULT_TOL) -> tuple[complex, complex]:
    """(theta[m](tau + S), eps^{-m'^T(S m' + 2 diag S)} theta[m'; m'' + S m' + diag S](tau)).

    eps = (1 + i)/sqrt(2); the second characteristic is kept unreduced.
    """
    tau = as_point(tau)
    S = np.asarray(S, dtype=object)
    mp = np.array(m.top, dtype=object)
    mpp = np.array(m.bottom, dtype=object)
    expo = int(mp.dot(S.dot(mp) + 2 * np.diagonal(S)))
    shifted = [int(x) for x in np.concatenate([mp, mpp + S.dot(mp) + np.diagonal(S)])]
    lhs = theta_constant(m, SiegelPoint(tau.tau + S.astype(float)), tol)
    rhs = complex(Cyclotomic8.zeta(-expo)) * theta_constant(shifted, tau, tol)
    return lhs, rhs


# -- exact monomial actions ------------------------------------------------------

def theta_monomial(gamma: SymplecticMatrix) -> tuple[list[ThetaCharacteristic], MonomialMatrix]:
    """Exact P(gamma) with theta(gamma.tau) = kappa det(C tau + D)^{1/2} P(gamma) theta(tau).

    theta is the vector of even theta constants in enumeration order.
    """
    even = enumerate_characteristics(gamma.g, "even")
    index = {m: i for i, m in enumerate(even)}
    perm, phases = [], []
    for r in even:
        m = inverse_act(gamma, r)
        red, sign = reduce_with_sign(act_integral(gamma, m))
        assert red == r
        perm.append(index[m])
        phases.append(e_phi(m, gamma) * sign)
    return even, MonomialMatrix(tuple(perm), tuple(phases))


def second_order_monomial(gamma: SymplecticMatrix) -> MonomialMatrix:
    """Exact P(gamma) with Theta(gamma.tau) = kappa(tilde gamma) det^{1/2} P(gamma) Theta(tau).

    Rows and columns are indexed by a in F_2^g in lexicographic order; gamma
    must lie in Gamma_{g,0}(2).
    """
    g = gamma.g
    gt = tilde(gamma)
    labels = list(product((0, 1), repeat=g))
    index = {a: i for i, a in enumerate(labels)}
    perm, phases = [], []
    for a in labels:
        target = ThetaCharacteristic(a, (0,) * g)
        n = inverse_act(gt, target)
        if any(n.bottom):
            raise AssertionError("second-order characteristics must stay in [a; 0]")
        red, sign = reduce_with_sign(act_integral(gt, n))
        assert red == target
        perm.append(index[n.top])
        phases.append(e_phi(n, gt) * sign)
    return MonomialMatrix(tuple(perm), tuple(phases))


def automorphy_factor(gamma: SymplecticMatrix, tau, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Dense matrix T(gamma, tau) with theta(gamma.tau) = T theta(tau) on even theta constants."""
    tau = as_point(tau)
    _, P = theta_monomial(gamma)
    j = extract_kappa(gamma, tau, tol) * sqrt_det_principal(gamma, tau)
    return j * P.dense()


def v_theta(gamma: SymplecticMatrix, tau, tol: float = DEFAULT_TOL) -> complex:
    """v_Theta(gamma) = kappa(tilde gamma), extracted at 2 tau."""
    tau = as_point(tau)
    return extract_kappa(tilde(gamma), SiegelPoint(2 * tau.tau), tol)


def slash(f: Callable[[SiegelPoint], complex], gamma: SymplecticMatrix, k: int,
          v, tau) -> complex:
    """f|_{gamma, k/2, v}(tau) = v(gamma)^{-1} det(C tau + D)^{-k/2} f(gamma.tau).

    ``v`` is a number or a callable of (gamma, tau); powers of det use the
    principal branch.
    """
    tau = as_point(tau)
    mult = v(gamma, tau) if callable(v) else v
    det = complex(np.linalg.det(gamma.cocycle_matrix(tau.tau)))
    factor = cmath.exp(-0.5 * k * cmath.log(det))
    return complex(factor / mult * f(SiegelPoint(gamma.act(tau.tau))))


# -- batch checks ---------------------------------------------------------------------

def cocycle_residual(gamma: SymplecticMatrix, beta: SymplecticMatrix, tau, tol: float = DEFAULT_TOL) -> float:
    """max |T(gamma beta, tau) - T(gamma, beta.tau) T(beta, tau)| relative to max |T(gamma beta, tau)|."""
    tau = as_point(tau)
    btau = SiegelPoint(beta.act(tau.tau))
    lhs = automorphy_factor(gamma @ beta, tau, tol)
    rhs = automorphy_factor(gamma, btau, tol) @ automorphy_factor(beta, tau, tol)
    return float(np.abs(lhs - rhs).max() / np.abs(lhs).max())


def second_order_residual(gamma: SymplecticMatrix, tau, tol: float = DEFAULT_TOL) -> float:
    """Theta(gamma.tau) against kappa(tilde gamma) det(C tau + D)^{1/2} P(gamma) Theta(tau), relative."""
    from .theta import second_order_all

    tau = as_point(tau)
    P = second_order_monomial(gamma)
    lhs = second_order_all(SiegelPoint(gamma.act(tau.tau)), tol)
    base = second_order_all(tau, tol)
    rhs = v_theta(gamma, tau, tol) * sqrt_det_principal(gamma, tau) * (P.dense() @ base)
    return float(np.abs(lhs - rhs).max() / np.abs(base).max())


def tilde_kappa_squares(gamma: SymplecticMatrix, tau, tol: float = DEFAULT_TOL) -> tuple[complex, complex]:
    """(kappa(tilde gamma)^2, kappa(gamma)^2) extracted at 2 tau and tau."""
    tau = as_point(tau)
    return v_theta(gamma, tau, tol) ** 2, extract_kappa(gamma, tau, tol) ** 2


def verify_transformation_batch(seed: int, samples: int = 100, max_length: int = 12, g: int = 2,
                                tol: float = DEFAULT_TOL) -> dict:
    """Transformation formula on random words in Gamma_g, kappa^2 on random words in Gamma_g(2)."""
    from .symplectic import random_elements

    rng = np.random.default_rng(seed)
    worst, k8, failures, k4_bad, k2_bad = 0.0, 0.0, [], 0, 0
    for i, gamma in enumerate(random_elements(group("Gamma", g), seed, samples, max_length)):
        tau = SiegelPoint.random(rng, g)
        rep = verify_transformation(gamma, tau, tol)
        worst = max(worst, rep.residual)
        k8 = max(k8, rep.kappa8_error)
        if rep.kappa4_numeric_error >= 1e-8:
            k4_bad += 1
        if not rep.ok:
            failures.append({"index": i, "gamma": gamma.to_json(), "residual": rep.residual})
    for gamma in random_elements(group("Gamma(2)", g), seed + 1, samples, max_length):
        tau = SiegelPoint.random(rng, g)
        if abs(extract_kappa(gamma, tau, tol) ** 2 - kappa_pow2(gamma)) >= 1e-8:
            k2_bad += 1
    return {
        "samples": samples,
        "max_residual": worst,
        "max_kappa8_error": k8,
        "kappa4_mismatches": k4_bad,
        "kappa2_mismatches": k2_bad,
        "failures": failures,
        "ok": not failures and k4_bad == 0 and k2_bad == 0 and worst < 1e-8 and k8 < 1e-6,
    }
