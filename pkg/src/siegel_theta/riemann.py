"""Riemann's addition formula and the two quadratic relations between
theta constants and second-order theta constants."""
from __future__ import annotations

from itertools import product

import numpy as np

from .theta import DEFAULT_TOL, SiegelPoint, as_point, second_order_all, theta_many


def _labels(g: int) -> list[tuple[int, ...]]:
    return list(product((0, 1), repeat=g))


def sign_matrix(g: int) -> np.ndarray:
    """(-1)^{sigma . eps'} with rows sigma and columns eps' in lexicographic order."""
    L = np.array(_labels(g))
    return (-1) ** (L @ L.T % 2)


def _shift(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple((x + y) % 2 for x, y in zip(a, b))


def products_table(tau, tol: float = DEFAULT_TOL) -> np.ndarray:
    """P[eps, sigma] = Theta[sigma] Theta[sigma + eps]."""
    tau = as_point(tau)
    labels = _labels(tau.g)
    idx = {a: i for i, a in enumerate(labels)}
    f = second_order_all(tau, tol)
    return np.array([[f[idx[s]] * f[idx[_shift(s, e)]] for s in labels] for e in labels])


def squares_table(tau, tol: float = DEFAULT_TOL) -> np.ndarray:
    """T[eps, eps'] = theta[eps; eps'](tau)^2."""
    tau = as_point(tau)
    labels = _labels(tau.g)
    chars = [list(e) + list(ep) for e in labels for ep in labels]
    return (theta_many(chars, tau, None, tol) ** 2).reshape(len(labels), len(labels))


def relation_residuals(tau, tol: float = DEFAULT_TOL) -> tuple[float, float]:
    """Relative residuals of

        Theta[s] Theta[s + e] = 2^{-g} sum_{e'} (-1)^{s.e'} theta[e; e']^2
        theta[e; e']^2 = sum_s (-1)^{s.e'} Theta[s] Theta[s + e]

    each scaled by its largest term.
    """
    tau = as_point(tau)
    H = sign_matrix(tau.g)
    P = products_table(tau, tol)
    T = squares_table(tau, tol)
    r1 = np.abs(P - T @ H.T / 2 ** tau.g).max() / np.abs(T).max()
    r2 = np.abs(T - P @ H).max() / np.abs(P).max()
    return float(r1), float(r2)


def addition_formula(eps, delta, tau, z, w, tol: float = DEFAULT_TOL) -> tuple[complex, complex]:
    """Both sides of Riemann's addition formula for characteristics eps = (e; e'), delta = (d; d').

    lhs = theta[eps](tau, (z+w)/2) theta[delta](tau, (z-w)/2)
    rhs = sum_s theta[(e+d)/2 - s; e'+d'](2 tau, z) theta[(e-d)/2 + s; e'-d'](2 tau, w)
    The right side uses rational tops.
    """
    tau = as_point(tau)
    g = tau.g
    eps = np.asarray(eps, dtype=float)
    delta = np.asarray(delta, dtype=float)
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    e, ep, d, dp = eps[:g], eps[g:], delta[:g], delta[g:]
    lhs = theta_many([eps], tau, (z + w) / 2, tol)[0] * theta_many([delta], tau, (z - w) / 2, tol)[0]
    tau2 = SiegelPoint(2 * tau.tau)
    sig = np.array(_labels(g), dtype=float)
    left = [np.concatenate([(e + d) / 2 - s, ep + dp]) for s in sig]
    right = [np.concatenate([(e - d) / 2 + s, ep - dp]) for s in sig]
    rhs = np.sum(theta_many(left, tau2, z, tol) * theta_many(right, tau2, w, tol))
    return complex(lhs), complex(rhs)


def verify_relations(seed: int, samples: int = 10, genera=(2, 3), tol: float = DEFAULT_TOL) -> dict:
    rng = np.random.default_rng(seed)
    out = {}
    for g in genera:
        res = [relation_residuals(SiegelPoint.random(rng, g), tol) for _ in range(samples)]
        out[f"g{g}"] = {"relation": max(r[0] for r in res), "inverse_relation": max(r[1] for r in res)}
    out["ok"] = all(v["relation"] < 1e-8 and v["inverse_relation"] < 1e-8 for k, v in out.items() if k != "ok")
    return out


def verify_addition(seed: int, samples: int = 10, g: int = 2, tol: float = DEFAULT_TOL) -> dict:
    """Addition formula at random (tau, z, w) and random integer characteristics."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        tau = SiegelPoint.random(rng, g)
        z = rng.uniform(-0.5, 0.5, g) + 1j * rng.uniform(-0.3, 0.3, g)
        w = rng.uniform(-0.5, 0.5, g) + 1j * rng.uniform(-0.3, 0.3, g)
        eps = rng.integers(0, 2, 2 * g)
        delta = rng.integers(0, 2, 2 * g)
        lhs, rhs = addition_formula(eps, delta, tau, z, w, tol)
        worst = max(worst, abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300))
    return {"max_residual": worst, "ok": worst < 1e-8}
