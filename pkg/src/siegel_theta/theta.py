"""Riemann theta functions with half-integer characteristics.

theta[m](tau, z) = sum_n e(1/2 (n + m'/2)^T tau (n + m'/2) + (n + m'/2)^T (z + m''/2))

with e(t) = exp(2 pi i t).  The sum runs over the box |n - n0|_inf <= R centred
at the dominant lattice point; R comes from a Gaussian shell bound, so every
returned value carries a certified ``tail_bound``.

Characteristics may be given as ThetaCharacteristic, or as any real vector of
length 2g (integer lifts, and the rational tops in Riemann's addition formula).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .characteristics import ThetaCharacteristic

DEFAULT_TOL = 1e-12
MAX_RADIUS = 4000
_CHUNK = 1 << 18


class NotPositiveDefiniteError(ValueError):
    pass


class SiegelPoint:
    """A point of the Siegel upper half space: tau = X + iY, Y > 0."""

    __slots__ = ("tau", "g", "_lam")

    def __init__(self, tau):
        tau = np.array(tau, dtype=complex)
        if tau.ndim == 0:
            tau = tau.reshape(1, 1)
        if tau.ndim != 2 or tau.shape[0] != tau.shape[1]:
            raise ValueError(f"tau must be square, got shape {tau.shape}")
        tau = 0.5 * (tau + tau.T)
        try:
            np.linalg.cholesky(tau.imag)
        except np.linalg.LinAlgError as exc:
            raise NotPositiveDefiniteError("Im tau is not positive definite") from exc
        tau.flags.writeable = False
        self.tau = tau
        self.g = tau.shape[0]
        self._lam = float(np.linalg.eigvalsh(tau.imag)[0])

    @property
    def X(self) -> np.ndarray:
        return self.tau.real

    @property
    def Y(self) -> np.ndarray:
        return self.tau.imag

    @property
    def min_eigenvalue(self) -> float:
        return self._lam

    @classmethod
    def random(cls, rng: np.random.Generator, g: int) -> "SiegelPoint":
        """X uniform in [-1,1] (symmetrised), Y = L L^T + I/2 with L uniform in [-1,1]."""
        X = rng.uniform(-1.0, 1.0, (g, g))
        X = np.triu(X) + np.triu(X, 1).T
        L = rng.uniform(-1.0, 1.0, (g, g))
        return cls(X + 1j * (L @ L.T + 0.5 * np.eye(g)))

    def to_json(self) -> dict:
        return {"re": self.X.tolist(), "im": self.Y.tolist()}

    @classmethod
    def from_json(cls, data) -> "SiegelPoint":
        if isinstance(data, dict):
            return cls(np.array(data["re"], dtype=float) + 1j * np.array(data["im"], dtype=float))
        return cls(np.array(data, dtype=complex))

    def __repr__(self) -> str:
        return f"SiegelPoint({self.tau.tolist()})"


def as_point(tau) -> SiegelPoint:
    return tau if isinstance(tau, SiegelPoint) else SiegelPoint(tau)


@dataclass(frozen=True)
class ThetaValue:
    value: complex
    radius: int
    tail_bound: float


def _char_array(m, g: int) -> np.ndarray:
    if isinstance(m, ThetaCharacteristic):
        v = np.array(m.top + m.bottom, dtype=float)
    else:
        v = np.asarray(m, dtype=float).ravel()
    if v.shape != (2 * g,):
        raise ValueError(f"characteristic of length {v.size} does not match genus {g}")
    return v


def _shell_count(k: int, g: int) -> int:
    return (2 * k + 1) ** g - (2 * k - 1) ** g


def tail_bound(lam: float, g: int, R: int, rho: float = 1.0, derivative_scale: float | None = None) -> float:
    """Bound for sum_{|n|_inf > R} w(n) exp(-pi lam (|n|_2 - rho)^2).

    w = 1, or w = 2 pi (sqrt(g) |n|_inf + derivative_scale) for gradients.  The
    shell terms t_k have a decreasing ratio once k > rho, so the tail is at
    most t_{R+1} / (1 - t_{R+2}/t_{R+1}).
    """
    def term(k):
        w = 1.0 if derivative_scale is None else 2 * np.pi * (np.sqrt(g) * k + derivative_scale)
        return _shell_count(k, g) * w * np.exp(-np.pi * lam * (k - rho) ** 2)

    if R + 1 <= rho:
        return np.inf
    t1, t2 = term(R + 1), term(R + 2)
    if t1 == 0.0:
        return 0.0
    ratio = t2 / t1
    if ratio >= 1.0:
        return np.inf
    return float(t1 / (1.0 - ratio))


def truncation_radius(Y, tol: float, rho: float = 1.0, derivative_scale: float | None = None) -> int:
    """Smallest R >= 1 whose Gaussian tail bound is below ``tol``."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    g = Y.shape[0]
    lam = float(np.linalg.eigvalsh(Y)[0])
    if lam <= 0:
        raise NotPositiveDefiniteError("Y is not positive definite")
    R = max(1, int(np.ceil(rho)))
    while tail_bound(lam, g, R, rho, derivative_scale) >= tol:
        R += 1
        if R > MAX_RADIUS:
            raise OverflowError("truncation radius exceeds MAX_RADIUS")
    return R


def _box_chunks(g: int, R: int):
    """Lattice points of the box |n|_inf <= R in lexicographic order, in slabs."""
    side = 2 * R + 1
    inner = side ** (g - 1)
    per_chunk = max(1, _CHUNK // inner)
    axes = [np.arange(-R, R + 1, dtype=float)] * (g - 1)
    tail = np.stack([x.ravel() for x in np.meshgrid(*axes, indexing="ij")], axis=1) if g > 1 else np.zeros((1, 0))
    for start in range(-R, R + 1, per_chunk):
        heads = np.arange(start, min(start + per_chunk, R + 1), dtype=float)
        head_col = np.repeat(heads, inner)[:, None]
        yield np.hstack([head_col, np.tile(tail, (len(heads), 1))])


def _plan(tau: SiegelPoint, top: np.ndarray, z: np.ndarray, tol: float, gradient: bool):
    """Centre, radius and bound for one characteristic top."""
    Y = tau.Y
    u = np.linalg.solve(Y, z.imag)
    centre = top / 2 + u
    shift = np.rint(centre)
    rho = float(np.linalg.norm(centre - shift))
    growth = float(np.exp(np.pi * u @ Y @ u))
    scale = None
    if gradient:
        scale = rho + float(np.linalg.norm(u))
    R = truncation_radius(Y, tol / growth, rho=rho, derivative_scale=scale)
    bound = growth * tail_bound(tau.min_eigenvalue, tau.g, R, rho, scale)
    return shift, R, bound


def _sum_terms(tau: np.ndarray, g: int, R: int, offset: np.ndarray, z: np.ndarray,
               bottoms: np.ndarray, gradient: bool) -> np.ndarray:
    """Per bottom characteristic: sum of terms (or gradient terms) over the box.

    x runs over box + offset.  Slabs are visited in a fixed order and combined
    left to right, so results are reproducible for given inputs.
    """
    nb = len(bottoms)
    acc = np.zeros((nb, g) if gradient else nb, dtype=complex)
    for pts in _box_chunks(g, R):
        x = pts + offset
        quad = np.einsum("ki,ij,kj->k", x, tau, x)
        base = 1j * np.pi * quad + 2j * np.pi * (x @ z)
        phases = np.exp(base[None, :] + 1j * np.pi * (bottoms @ x.T))
        if gradient:
            acc += 2j * np.pi * (phases @ x)
        else:
            acc += phases.sum(axis=1)
    return acc


def _evaluate(chars, tau, z, tol, gradient=False, radius=None):
    tau = as_point(tau)
    g = tau.g
    z = np.zeros(g, dtype=complex) if z is None else np.asarray(z, dtype=complex).ravel()
    if z.shape != (g,):
        raise ValueError("z has the wrong length")
    if not tol > 0:
        raise ValueError("tol must be positive")
    vecs = [_char_array(m, g) for m in chars]
    groups: dict[tuple, list[int]] = {}
    for i, v in enumerate(vecs):
        groups.setdefault(tuple(v[:g]), []).append(i)
    out: list = [None] * len(vecs)
    for top_key, idx in groups.items():
        top = np.array(top_key)
        shift, R, bound = _plan(tau, top, z, tol, gradient)
        if radius is not None:
            if radius < R:
                bound = np.inf
            R = radius
        bottoms = np.array([vecs[i][g:] for i in idx])
        sums = _sum_terms(tau.tau, g, R, top / 2 - shift, z, bottoms, gradient)
        for j, i in enumerate(idx):
            out[i] = (sums[j], R, bound)
    return out


def theta(m, tau, z=None, tol: float = DEFAULT_TOL, radius: int | None = None) -> ThetaValue:
    """theta[m](tau, z) with a certified truncation bound.

    ``radius`` forces the box size; a radius below the certified one reports
    an infinite bound.
    """
    (value, R, bound), = _evaluate([m], tau, z, tol, radius=radius)
    return ThetaValue(complex(value), R, bound)


def theta_many(chars: Sequence, tau, z=None, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Vector of theta[m](tau, z) over ``chars``; shares lattice work per top."""
    return np.array([v for v, _, _ in _evaluate(list(chars), tau, z, tol)], dtype=complex)


def theta_constant(m, tau, tol: float = DEFAULT_TOL) -> complex:
    return theta(m, tau, None, tol).value


def second_order(a: Sequence[int], tau, tol: float = DEFAULT_TOL) -> complex:
    """Theta[a](tau) = theta[a; 0](2 tau)."""
    tau = as_point(tau)
    a = tuple(int(x) for x in a)
    if len(a) != tau.g:
        raise ValueError("a has the wrong length")
    return theta_constant(ThetaCharacteristic(a, (0,) * tau.g), SiegelPoint(2 * tau.tau), tol)


def second_order_all(tau, tol: float = DEFAULT_TOL) -> np.ndarray:
    """(Theta[a](tau))_a for a in F_2^g, lexicographic."""
    from itertools import product

    tau = as_point(tau)
    chars = [ThetaCharacteristic(a, (0,) * tau.g) for a in product((0, 1), repeat=tau.g)]
    return theta_many(chars, SiegelPoint(2 * tau.tau), None, tol)


def theta_gradient(m: ThetaCharacteristic, tau, tol: float = DEFAULT_TOL) -> np.ndarray:
    """grad_z theta[m](tau, z) at z = 0 for odd m, by termwise differentiation."""
    if isinstance(m, ThetaCharacteristic) and m.is_even:
        raise ValueError("gradient at z=0 is only meaningful for odd characteristics")
    (grad, _, _), = _evaluate([m], tau, None, tol, gradient=True)
    return np.asarray(grad, dtype=complex)


def theta_gradients(chars: Iterable[ThetaCharacteristic], tau, tol: float = DEFAULT_TOL) -> np.ndarray:
    chars = list(chars)
    if any(isinstance(m, ThetaCharacteristic) and m.is_even for m in chars):
        raise ValueError("gradient at z=0 is only meaningful for odd characteristics")
    return np.array([v for v, _, _ in _evaluate(chars, tau, None, tol, gradient=True)])


def sqrt_det_holomorphic(tau) -> complex:
    """det(tau)^{1/2} on the branch continuous on H_g.

    det(tau) = i^g det(-i tau); the eigenvalues of -i tau have positive real
    part, and the product of their principal roots is the branch that is
    positive on tau = iY.
    """
    tau = as_point(tau).tau
    ev = np.linalg.eigvals(-1j * tau)
    return complex(np.exp(0.25j * np.pi * tau.shape[0]) * np.prod(np.sqrt(ev)))
