"""Theta characteristics in F_2^{2g} and the affine action of Sp(2g, Z) on them."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Literal, Sequence

import numpy as np

from .symplectic import GenusMismatchError, SymplecticMatrix

Parity = Literal["even", "odd"]


@dataclass(frozen=True, order=True)
class ThetaCharacteristic:
    """m = [m'; m''] with entries in {0, 1}.

    Serialised as ``"m'|m''"``, e.g. ``"001|011"``.
    """

    top: tuple[int, ...]
    bottom: tuple[int, ...]

    def __post_init__(self):
        if len(self.top) != len(self.bottom):
            raise ValueError("m' and m'' must have the same length")
        if any(b not in (0, 1) for b in self.top + self.bottom):
            raise ValueError("characteristic entries must be bits")

    @property
    def g(self) -> int:
        return len(self.top)

    @classmethod
    def from_vector(cls, v: Sequence[int]) -> "ThetaCharacteristic":
        v = [int(x) % 2 for x in v]
        g = len(v) // 2
        return cls(tuple(v[:g]), tuple(v[g:]))

    @classmethod
    def parse(cls, s: str) -> "ThetaCharacteristic":
        top, bottom = s.split("|")
        return cls(tuple(int(c) for c in top), tuple(int(c) for c in bottom))

    def vector(self) -> np.ndarray:
        return np.array(self.top + self.bottom, dtype=np.int64)

    def parity(self) -> int:
        return -1 if sum(a * b for a, b in zip(self.top, self.bottom)) % 2 else 1

    @property
    def is_even(self) -> bool:
        return self.parity() == 1

    def __str__(self) -> str:
        return "".join(map(str, self.top)) + "|" + "".join(map(str, self.bottom))


def parity(m: ThetaCharacteristic) -> int:
    """(-1)^{m' . m''}."""
    return m.parity()


def enumerate_characteristics(g: int, parity: Parity | None = None) -> list[ThetaCharacteristic]:
    """All 2^{2g} characteristics in lexicographic order of (m', m''), optionally filtered."""
    if g < 1:
        raise ValueError("genus must be positive")
    out = []
    for top in product((0, 1), repeat=g):
        for bottom in product((0, 1), repeat=g):
            m = ThetaCharacteristic(top, bottom)
            if parity is None or (parity == "even") == m.is_even:
                out.append(m)
    return out


def census(g: int) -> tuple[int, int]:
    """(number of even, number of odd) characteristics."""
    chars = enumerate_characteristics(g)
    even = sum(1 for m in chars if m.is_even)
    return even, len(chars) - even


def _check_genus(gamma: SymplecticMatrix, g: int) -> None:
    if gamma.g != g:
        raise GenusMismatchError(f"matrix genus {gamma.g} vs characteristic genus {g}")


def act_integral(gamma: SymplecticMatrix, m) -> np.ndarray:
    """gamma . m without reducing mod 2, as an integer vector of length 2g.

    [D m' - C m'' + diag(C D^T); -B m' + A m'' + diag(A B^T)].  ``m`` may be a
    ThetaCharacteristic or any integer vector.
    """
    v = m.vector() if isinstance(m, ThetaCharacteristic) else np.asarray(m)
    g = len(v) // 2
    _check_genus(gamma, g)
    v = v.astype(object)
    mp, mpp = v[:g], v[g:]
    A, B, C, D = gamma.A, gamma.B, gamma.C, gamma.D
    top = D.dot(mp) - C.dot(mpp) + np.diagonal(C.dot(D.T))
    bot = -B.dot(mp) + A.dot(mpp) + np.diagonal(A.dot(B.T))
    return np.array([int(x) for x in np.concatenate([top, bot])], dtype=object)


def act(gamma: SymplecticMatrix, m: ThetaCharacteristic) -> ThetaCharacteristic:
    """gamma . m reduced mod 2; preserves parity."""
    return ThetaCharacteristic.from_vector(act_integral(gamma, m))


def inverse_act(gamma: SymplecticMatrix, m: ThetaCharacteristic) -> ThetaCharacteristic:
    """gamma^{-1} . m, the characteristic that gamma sends to m."""
    return act(gamma.inverse(), m)


def reduce_with_sign(v: Sequence[int]) -> tuple[ThetaCharacteristic, int]:
    """Split an integer characteristic as r + 2k with r in {0,1}^{2g}.

    Returns (r, s) with theta[v] = s * theta[r]; s = (-1)^{r' . k''} as a
    function of (tau, z).
    """
    v = [int(x) for x in v]
    g = len(v) // 2
    r = [x % 2 for x in v]
    k_bottom = [(x - rx) // 2 for x, rx in zip(v[g:], r[g:])]
    sign = -1 if sum(a * b for a, b in zip(r[:g], k_bottom)) % 2 else 1
    return ThetaCharacteristic(tuple(r[:g]), tuple(r[g:])), sign


def permutation_of(gamma: SymplecticMatrix, chars: Iterable[ThetaCharacteristic]) -> dict:
    return {m: act(gamma, m) for m in chars}
