"""Exact arithmetic in Z[zeta_8] and monomial matrices over it."""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

ZETA8 = cmath.exp(2j * cmath.pi / 8)


@dataclass(frozen=True)
class Cyclotomic8:
    """a0 + a1 z + a2 z^2 + a3 z^3 with z = exp(2 pi i / 8), z^4 = -1."""

    coeffs: tuple[int, int, int, int] = (0, 0, 0, 0)

    def __post_init__(self):
        if len(self.coeffs) != 4:
            raise ValueError("need exactly four coefficients")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @classmethod
    def zeta(cls, k: int) -> "Cyclotomic8":
        k %= 8
        c = [0, 0, 0, 0]
        c[k % 4] = -1 if k >= 4 else 1
        return cls(tuple(c))

    @classmethod
    def from_int(cls, n: int) -> "Cyclotomic8":
        return cls((n, 0, 0, 0))

    @classmethod
    def e(cls, t: Fraction) -> "Cyclotomic8":
        """exp(2 pi i t) for t with denominator dividing 8."""
        t = Fraction(t)
        if (8 * t).denominator != 1:
            raise ValueError(f"{t} is not a multiple of 1/8")
        return cls.zeta(int(8 * t))

    def _coerce(self, other) -> "Cyclotomic8":
        if isinstance(other, Cyclotomic8):
            return other
        if isinstance(other, (int, np.integer)):
            return Cyclotomic8.from_int(int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Cyclotomic8(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic8(tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = [0] * 4
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                k = i + j
                if k >= 4:
                    out[k - 4] -= a * b
                else:
                    out[k] += a * b
        return Cyclotomic8(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Cyclotomic8":
        if n < 0:
            if self.root_index() is None:
                raise ValueError("only roots of unity are invertible here")
            return self.conjugate() ** (-n)
        out = Cyclotomic8.from_int(1)
        for _ in range(n):
            out = out * self
        return out

    def conjugate(self) -> "Cyclotomic8":
        # z -> z^{-1} = -z^3
        a0, a1, a2, a3 = self.coeffs
        return Cyclotomic8((a0, -a3, -a2, -a1))

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_zero(self) -> bool:
        return not self

    def root_index(self) -> int | None:
        """k if self == zeta^k, else None."""
        nz = [(i, c) for i, c in enumerate(self.coeffs) if c]
        if len(nz) != 1 or abs(nz[0][1]) != 1:
            return None
        i, c = nz[0]
        return i if c == 1 else i + 4

    def __complex__(self) -> complex:
        return complex(sum(c * ZETA8 ** i for i, c in enumerate(self.coeffs)))

    def __str__(self) -> str:
        k = self.root_index()
        if k is not None:
            return f"z^{k}"
        return "(" + " + ".join(f"{c}*z^{i}" for i, c in enumerate(self.coeffs) if c) + ")" if self else "0"


ONE = Cyclotomic8.from_int(1)
ZERO = Cyclotomic8()


@dataclass(frozen=True)
class MonomialMatrix:
    """Square matrix with one nonzero entry per row: row i has ``phases[i]`` in column ``perm[i]``."""

    perm: tuple[int, ...]
    phases: tuple[Cyclotomic8, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError("perm must be a permutation")

    @property
    def size(self) -> int:
        return len(self.perm)

    def __matmul__(self, other: "MonomialMatrix") -> "MonomialMatrix":
        # (PQ)[i, Q.perm[P.perm[i]]] = P.phase[i] * Q.phase[P.perm[i]]
        perm = tuple(other.perm[j] for j in self.perm)
        phases = tuple(p * other.phases[j] for p, j in zip(self.phases, self.perm))
        return MonomialMatrix(perm, phases)

    def entrywise_power(self, k: int) -> "MonomialMatrix":
        return MonomialMatrix(self.perm, tuple(p ** k for p in self.phases))

    def scaled(self, c: Cyclotomic8) -> "MonomialMatrix":
        return MonomialMatrix(self.perm, tuple(c * p for p in self.phases))

    def normalized(self) -> "MonomialMatrix":
        """Scale so that the entry in row 0 is 1 (phases must be roots of unity)."""
        return self.scaled(self.phases[0].conjugate())

    def projectively_equal(self, other: "MonomialMatrix") -> bool:
        return self.normalized() == other.normalized()

    def dense(self) -> np.ndarray:
        out = np.zeros((self.size, self.size), dtype=complex)
        for i, (j, p) in enumerate(zip(self.perm, self.phases)):
            out[i, j] = complex(p)
        return out

    def to_json(self) -> dict:
        return {
            "perm": list(self.perm),
            "phases": [list(p.coeffs) for p in self.phases],
        }


def monomial_from_rows(rows: Sequence[tuple[int, Cyclotomic8]]) -> MonomialMatrix:
    return MonomialMatrix(tuple(j for j, _ in rows), tuple(p for _, p in rows))
