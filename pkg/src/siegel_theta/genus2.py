"""Genus 2: sign actions on f_a = Theta[a], the squaring map of P^3, the G-module
isomorphism f_a -> f_a^2, and the Fricke involution.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

import numpy as np

from .characteristics import ThetaCharacteristic, act_integral, inverse_act, reduce_with_sign
from .cocycles import e_phi, second_order_monomial, sqrt_det_principal, v_theta
from .cyclotomic import Cyclotomic8, MonomialMatrix
from .quotients import (
    FiniteQuotient,
    QuotientMap,
    RepresentativeError,
    standard_generator_families,
    phi_integral,
    phi_prime_integral,
)
from .symplectic import (
    SymplecticMatrix,
    fricke_act,
    fricke_conjugate,
    group,
    member,
    random_element,
    translation,
)
from .theta import (
    DEFAULT_TOL,
    SiegelPoint,
    as_point,
    second_order_all,
    sqrt_det_holomorphic,
    theta_many,
)

LABELS = ((0, 0), (0, 1), (1, 0), (1, 1))
B_MATRICES = (
    np.array([[2, 0], [0, 0]]),
    np.array([[0, 0], [0, 2]]),
    np.array([[0, 1], [1, 0]]),
)
# sign (-1)^{a^T S a} with +-1 entries; rows sigma, columns b
HADAMARD = np.array([[(-1) ** (s[0] * b[0] + s[1] * b[1]) for b in LABELS] for s in LABELS])


def M(i: int) -> SymplecticMatrix:
    """M_i = gamma_{B_i}, i = 1, 2, 3."""
    return translation(B_MATRICES[i - 1])


def sign_action(i: int, a: Sequence[int]) -> int:
    """f_a(M_i . tau) / f_a(tau): (-1)^{a1}, (-1)^{a2}, (-1)^{a1 a2}."""
    a1, a2 = int(a[0]) % 2, int(a[1]) % 2
    expo = {1: a1, 2: a2, 3: a1 * a2}[i]
    return -1 if expo else 1


def sign_table() -> dict[str, dict[str, int]]:
    return {f"M{i}": {f"{a[0]}{a[1]}": sign_action(i, a) for a in LABELS} for i in (1, 2, 3)}


def theta_b(tau, tol: float = DEFAULT_TOL) -> np.ndarray:
    """(theta[0; b](tau))_b for b in F_2^2."""
    return theta_many([ThetaCharacteristic((0, 0), b) for b in LABELS], tau, None, tol)


def _rank_f2(rows: np.ndarray) -> int:
    A = np.array(rows, dtype=np.int64) % 2
    rank = 0
    for col in range(A.shape[1]):
        pivot = next((r for r in range(rank, A.shape[0]) if A[r, col]), None)
        if pivot is None:
            continue
        A[[rank, pivot]] = A[[pivot, rank]]
        for r in range(A.shape[0]):
            if r != rank and A[r, col]:
                A[r] ^= A[rank]
        rank += 1
    return rank


def _relative(x, y) -> float:
    x, y = np.asarray(x), np.asarray(y)
    scale = max(np.abs(x).max(), np.abs(y).max(), 1e-300)
    return float(np.abs(x - y).max() / scale)


# -- projective geometry of the squaring map ----------------------------------------------

@dataclass(frozen=True)
class ProjectivePoint3:
    coords: tuple[complex, complex, complex, complex]

    def __post_init__(self):
        c = tuple(complex(x) for x in self.coords)
        if len(c) != 4:
            raise ValueError("need four coordinates")
        if not any(c):
            raise ValueError("the zero vector is not a projective point")
        object.__setattr__(self, "coords", c)

    def vector(self) -> np.ndarray:
        return np.array(self.coords)

    def normalized(self) -> np.ndarray:
        """Scaled so that the first coordinate of largest modulus is 1."""
        v = self.vector()
        return v / v[int(np.argmax(np.abs(v)))]

    def equivalent(self, other: "ProjectivePoint3", tol: float = 1e-9) -> bool:
        p = self.vector()
        q = other.vector()
        k = int(np.argmax(np.abs(p)))
        if abs(q[k]) <= tol * np.abs(q).max():
            return False
        return bool(np.abs(p / p[k] - q / q[k]).max() <= tol * np.abs(p / p[k]).max())


def squaring_map(p: ProjectivePoint3) -> ProjectivePoint3:
    """[x0, x1, x2, x3] -> [x0^2, x1^2, x2^2, x3^2]."""
    return ProjectivePoint3(tuple(x * x for x in p.coords))


def preimages(q: ProjectivePoint3, tol: float = 1e-9) -> list[ProjectivePoint3]:
    """Distinct projective preimages of q under the squaring map."""
    roots = np.sqrt(q.vector())
    out: list[ProjectivePoint3] = []
    for signs in product((1, -1), repeat=3):
        p = ProjectivePoint3(tuple(roots * np.array((1,) + signs)))
        if not any(p.equivalent(x, tol) for x in out):
            out.append(p)
    return out


def fiber_check(seed: int, count: int = 100) -> dict:
    """Preimage counts for random targets with all coordinates nonzero."""
    rng = np.random.default_rng(seed)
    counts, consistent = [], True
    for _ in range(count):
        q = ProjectivePoint3(tuple(rng.normal(size=4) + 1j * rng.normal(size=4)))
        pre = preimages(q)
        consistent &= all(squaring_map(p).equivalent(q) for p in pre)
        counts.append(len(pre))
    return {"targets": count, "counts": sorted(set(counts)), "preimages_map_back": consistent,
            "all_eight": consistent and all(c == 8 for c in counts)}


def igusa_quartic(x: Sequence[complex]) -> complex:
    """(x0 x1 + x0 x2 + x1 x2 - x3^2)^2 - 4 x0 x1 x2 (x0 + x1 + x2 + x3 + x4)."""
    x0, x1, x2, x3, x4 = x
    return (x0 * x1 + x0 * x2 + x1 * x2 - x3 ** 2) ** 2 - 4 * x0 * x1 * x2 * (x0 + x1 + x2 + x3 + x4)


# -- sign action and the integer-weight subring ------------------------------------------

def verify_signs(seed: int, samples: int = 5, tol: float = DEFAULT_TOL) -> dict:
    """Exact phases of M_i on (f_a) against the table, plus numerical ratios."""
    exact = True
    for i in (1, 2, 3):
        P = second_order_monomial(M(i))
        want = tuple(Cyclotomic8.from_int(sign_action(i, a)) for a in LABELS)
        exact &= P.perm == (0, 1, 2, 3) and P.phases == want
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        tau = SiegelPoint.random(rng, 2)
        f = second_order_all(tau, tol)
        for i in (1, 2, 3):
            fi = second_order_all(SiegelPoint(M(i).act(tau.tau)), tol)
            signs = np.array([sign_action(i, a) for a in LABELS])
            worst = max(worst, float(np.abs(fi / f - signs).max()))
    return {"exact": bool(exact), "max_ratio_error": worst, "ok": bool(exact) and worst < 1e-8}


def verify_integer_weight_subring(seed: int, samples: int = 5, tol: float = DEFAULT_TOL) -> dict:
    """F_2^3 = Gamma^2(2,4)/Gamma(2,4) fixes every f_a^2 and theta_b^2; signs separate the f_a."""
    rng = np.random.default_rng(seed)
    f2_err = th2_err = riemann_err = 0.0
    for _ in range(samples):
        tau = SiegelPoint.random(rng, 2)
        f = second_order_all(tau, tol)
        th = theta_b(tau, tol)
        for i in (1, 2, 3):
            t2 = SiegelPoint(M(i).act(tau.tau))
            fi = second_order_all(t2, tol)
            thi = theta_b(t2, tol)
            f2_err = max(f2_err, float(np.abs(fi ** 2 / f ** 2 - 1).max()))
            th2_err = max(th2_err, float(np.abs(thi ** 2 / th ** 2 - 1).max()))
            riemann_err = max(riemann_err, _relative(HADAMARD @ fi ** 2, th ** 2))
    # the three sign characters on (f01, f10, f11) as F_2 vectors
    chars = np.array([[0 if sign_action(i, a) == 1 else 1 for a in LABELS[1:]] for i in (1, 2, 3)])
    rank = _rank_f2(chars)
    patterns = {tuple(sign_action(1, a) ** e1 * sign_action(2, a) ** e2 * sign_action(3, a) ** e3
                      for a in LABELS)
                for e1, e2, e3 in product((0, 1), repeat=3)}
    trivial_on_f00 = all(sign_action(i, (0, 0)) == 1 for i in (1, 2, 3))
    ok = max(f2_err, th2_err, riemann_err) < 1e-8 and rank == 3 and len(patterns) == 8 and trivial_on_f00
    return {
        "f_squared_ratio_error": f2_err,
        "theta_squared_ratio_error": th2_err,
        "riemann_m1_residual": riemann_err,
        "sign_character_rank_f2": rank,
        "distinct_sign_patterns": len(patterns),
        "trivial_on_f00": trivial_on_f00,
        "ok": bool(ok),
    }


# -- the G-module isomorphism --------------------------------------------------------------

def gamma00_representative(t: SymplecticMatrix, phi: QuotientMap | None = None) -> SymplecticMatrix:
    """An integral element of the class phi([t]) in Gamma_0^0(2)."""
    try:
        return phi_integral(t)
    except RepresentativeError:
        if phi is None:
            raise
        i = phi.domain.locate(t)
        return phi.codomain.lift(phi(i))


def _second_order_residual(gamma: SymplecticMatrix, tau: SiegelPoint, P: MonomialMatrix,
                           power: int, tol: float) -> float:
    """Residual of Theta^power(gamma.tau) = (v_Theta det^{1/2})^power P Theta^power(tau)."""
    lam = v_theta(gamma, tau, tol) * sqrt_det_principal(gamma, tau)
    lhs = second_order_all(SiegelPoint(gamma.act(tau.tau)), tol) ** power
    rhs = lam ** power * (P.dense() @ second_order_all(tau, tol) ** power)
    return _relative(lhs, rhs)


def verify_G_module_iso(generators: Sequence[SymplecticMatrix] | None = None, seed: int = 0,
                        samples: int = 3, phi: QuotientMap | None = None,
                        tol: float = DEFAULT_TOL) -> dict:
    """Monomial action of phi(t) on (f_a) equals that of t on (f_a^2), exactly and numerically.

    ``generators`` are elements of Gamma_0(2); by default the three generator
    families of Gamma_0(2).
    """
    if generators is None:
        generators = [t for fam in standard_generator_families(2).values() for t in fam]
    G0 = group("Gamma_0(2)", 2)
    rng = np.random.default_rng(seed)
    rows = []
    for t in generators:
        if not member(t, G0):
            raise ValueError(f"{t.tolist()} is not in Gamma_0(2)")
        s = gamma00_representative(t, phi)
        P1 = second_order_monomial(s)
        P2 = second_order_monomial(t).entrywise_power(2)
        res = 0.0
        for _ in range(samples):
            tau = SiegelPoint.random(rng, 2)
            res = max(res, _second_order_residual(s, tau, P1, 1, tol),
                      _second_order_residual(t, tau, P2, 2, tol))
        rows.append({
            "generator": t.to_json(),
            "image": s.to_json(),
            "f_action": P1.to_json(),
            "f2_action": P2.to_json(),
            "exact_equal": P1 == P2,
            "numeric_residual": res,
        })
    ok = all(r["exact_equal"] and r["numeric_residual"] < 1e-8 for r in rows)
    return {"generators": rows, "ok": ok}


def slash_table_check() -> dict:
    """Slash action of the three generator families: index maps and phases.

    For gamma' = diag(A, A^{-T}) the rows send f_a to f_{A^T a}; written as
    f_{Aa} this is the same statement under the opposite index convention.
    """
    out = {"lower_2S": True, "block_diag": True, "upper_S": True}
    fam = standard_generator_families(2)
    index = {a: k for k, a in enumerate(LABELS)}
    for t in fam["lower_2S"]:
        S = np.array(t.C.tolist()) // 2
        d = np.diagonal(S) % 2
        P = second_order_monomial(t)
        want = tuple(index[tuple(int(x) for x in (np.array(a) - d) % 2)] for a in LABELS)
        out["lower_2S"] &= P.perm == want and all(p == Cyclotomic8.from_int(1) for p in P.phases)
    for t in fam["block_diag"]:
        A = np.array(t.A.tolist())
        P = second_order_monomial(t)
        want = tuple(index[tuple(int(x) for x in (A.T @ np.array(a)) % 2)] for a in LABELS)
        out["block_diag"] &= P.perm == want
    for t in fam["upper_S"]:
        S = np.array(t.B.tolist())
        P2 = second_order_monomial(t).entrywise_power(2)
        P1 = second_order_monomial(translation(2 * S))
        want = tuple(Cyclotomic8.zeta(2 * int(np.array(a) @ (2 * S) @ np.array(a))) for a in LABELS)
        out["upper_S"] &= P1.phases == want and P2.phases == want
    out["ok"] = all(out.values())
    return out


# -- Fricke involution ---------------------------------------------------------------------

TAU0 = 1j * np.eye(2)


def v_theta_J2(tol: float = DEFAULT_TOL) -> complex:
    """v_Theta(J2) := kappa(J) at tau0 = i 1_2, relative to the holomorphic det(tau)^{1/2}.

    For J, C tau + D = -tau and det(-tau) = det(tau) in genus 2.  At tau0 the
    principal root of det = -1 sits on its branch cut, so the branch that is
    continuous on H_2 is used here, the same one as in fricke_slash.
    """
    J = SymplecticMatrix.J(2)
    tau = SiegelPoint(TAU0)
    m = ThetaCharacteristic((0, 0), (0, 0))
    lhs = theta_many([act_integral(J, m)], SiegelPoint(J.act(tau.tau)), None, tol)[0]
    rhs = sqrt_det_holomorphic(tau) * complex(e_phi(m, J)) * theta_many([m], tau, None, tol)[0]
    return complex(lhs / rhs)


def fricke_slash(f, tau, v: complex | None = None, tol: float = DEFAULT_TOL) -> np.ndarray:
    """f|_{J2, 1/2, v_Theta}(tau) = v^{-1} det(tau)^{-1/2} f(J2 . tau).

    ``f`` maps a SiegelPoint to a value or vector.
    """
    tau = as_point(tau)
    v = v_theta_J2(tol) if v is None else v
    return np.asarray(f(SiegelPoint(fricke_act(tau.tau)))) / (v * sqrt_det_holomorphic(tau))


def verify_fricke_identities(seed: int, samples: int = 5, tol: float = DEFAULT_TOL) -> dict:
    rng = np.random.default_rng(seed)
    v = v_theta_J2(tol)
    ratios, slash_err, hadamard_err, fricke_span_err, involution_err = [], 0.0, 0.0, 0.0, 0.0
    for _ in range(samples):
        tau = SiegelPoint.random(rng, 2)
        jt = SiegelPoint(fricke_act(tau.tau))
        f_j = second_order_all(jt, tol)
        th = theta_b(tau, tol)
        f = second_order_all(tau, tol)
        ratios.extend(f_j / (sqrt_det_holomorphic(tau) * th))
        slash_err = max(slash_err, _relative(fricke_slash(lambda p: second_order_all(p, tol), tau, v, tol), th))
        hadamard_err = max(hadamard_err, _relative(f ** 2, HADAMARD @ th ** 2 / 4),
                           _relative(th ** 2, HADAMARD @ f ** 2))
        # (f_a^2)(J2 tau) lies in the span of (f_b^2)(tau) through the Hadamard matrix
        fricke_span_err = max(fricke_span_err,
                              _relative(f_j ** 2, (v * sqrt_det_holomorphic(tau)) ** 2 * (HADAMARD @ f ** 2)))
        involution_err = max(involution_err, float(np.abs(fricke_act(jt.tau) - tau.tau).max()))
    ratios = np.array(ratios)
    spread = float(np.abs(ratios - ratios[0]).max())
    hadamard_exact = bool(np.array_equal(HADAMARD @ HADAMARD, 4 * np.eye(4, dtype=int)))
    ok = (spread < 1e-8 and abs(ratios[0] - v) < 1e-8 and abs(v ** 8 - 1) < 1e-6
          and slash_err < 1e-8 and hadamard_err < 1e-8 and fricke_span_err < 1e-8 and hadamard_exact
          and involution_err < 1e-10)
    return {
        "v_theta_J2": [v.real, v.imag],
        "v8_error": float(abs(v ** 8 - 1)),
        "ratio": [complex(ratios[0]).real, complex(ratios[0]).imag],
        "ratio_spread": spread,
        "slash_residual": slash_err,
        "hadamard_residual": hadamard_err,
        "hadamard_squared_is_4I": hadamard_exact,
        "fricke_span_residual": fricke_span_err,
        "involution_residual": involution_err,
        "ok": bool(ok),
    }


def verify_fricke_groups(seed: int, samples: int = 100, word_length: int = 8) -> dict:
    """Gamma^2(2,4), Gamma_0(2) fixed by conjugation; Gamma_0^0(2) and Gamma_0(4) swapped."""
    rng = np.random.default_rng(seed)

    def elems(name):
        G = group(name, 2)
        return G.generators() + [random_element(G, int(rng.integers(2**63)), word_length)
                                 for _ in range(samples)]

    g24 = group("Gamma^2(2,4)", 2)
    g02 = group("Gamma_0(2)", 2)
    g00 = group("Gamma_0^0(2)", 2)
    g04 = group("Gamma_0(4)", 2)
    out = {
        "Gamma^2(2,4)": all(member(fricke_conjugate(x), g24) for x in elems("Gamma^2(2,4)")),
        "Gamma_0(2)": all(member(fricke_conjugate(x), g02) for x in elems("Gamma_0(2)")),
        "Gamma_0^0(2)->Gamma_0(4)": all(member(fricke_conjugate(x), g04) for x in elems("Gamma_0^0(2)")),
        "Gamma_0(4)->Gamma_0^0(2)": all(member(fricke_conjugate(x), g00) for x in elems("Gamma_0(4)")),
        "Gamma(2,4)->Gamma(2,4)^J2": all(member(fricke_conjugate(x), group("Gamma(2,4)^J2", 2))
                                         for x in elems("Gamma(2,4)")),
    }
    out["ok"] = all(out.values())
    return out


def _restricted_monomial(gamma: SymplecticMatrix, chars: Sequence[ThetaCharacteristic]) -> MonomialMatrix:
    """theta_r(gamma.tau) proportional to phase * theta_m(tau), rows r in ``chars``."""
    index = {m: k for k, m in enumerate(chars)}
    perm, phases = [], []
    for r in chars:
        m = inverse_act(gamma, r)
        red, sign = reduce_with_sign(act_integral(gamma, m))
        if m not in index or red != r:
            raise ValueError("gamma does not permute the given characteristics")
        perm.append(index[m])
        phases.append(e_phi(m, gamma) * sign)
    return MonomialMatrix(tuple(perm), tuple(phases))


def verify_G04_module(generators: Sequence[SymplecticMatrix] | None = None) -> dict:
    """phi'(t) = phi(t)^{J2} acts on (theta_b) exactly as t acts on (theta_b^2)."""
    if generators is None:
        generators = [t for fam in standard_generator_families(2).values() for t in fam]
    chars = [ThetaCharacteristic((0, 0), b) for b in LABELS]
    g04 = group("Gamma_0(4)", 2)
    rows = []
    for t in generators:
        s = phi_prime_integral(t)
        P1 = _restricted_monomial(s, chars)
        P2 = _restricted_monomial(t, chars).entrywise_power(2)
        rows.append({"in_Gamma_0(4)": member(s, g04), "exact_equal": P1 == P2})
    return {"generators": len(rows), "ok": all(r["in_Gamma_0(4)"] and r["exact_equal"] for r in rows)}


# -- degree-8 compatibility on a subgroup H ------------------------------------------------

def subgroup_witness(phi: QuotientMap, H: Sequence[int], seed: int, samples: int = 3,
                      tol: float = DEFAULT_TOL) -> dict:
    """Squaring intertwines the H-actions on sampled evaluations.

    For h in H: the point (f_a(h . tau)^2) equals P(phi(h)) applied to
    (f_a(tau)^2) in P^3, where P(phi(h)) is the exact action of phi(h) on (f_a).
    """
    G: FiniteQuotient = phi.domain
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        tau = SiegelPoint.random(rng, 2)
        f2 = second_order_all(tau, tol) ** 2
        for i in H:
            h = G.lift(i)
            P = second_order_monomial(phi.codomain.lift(phi(i)))
            p = ProjectivePoint3(tuple(P.dense() @ f2))
            q = squaring_map(ProjectivePoint3(tuple(second_order_all(SiegelPoint(h.act(tau.tau)), tol))))
            k = int(np.argmax(np.abs(p.vector())))
            worst = max(worst, _relative(p.vector() / p.vector()[k], q.vector() / q.vector()[k]))
    return {"elements": len(H), "max_residual": worst, "ok": worst < 1e-8}
