"""Integral symplectic matrices and congruence subgroups of Sp(2g, Z).

Entries are Python integers held in object-dtype arrays so that long
generator words never overflow.  Congruence predicates work on int64
residue arrays of shape ``(..., 2g, 2g)`` and are vectorised over the
leading axes, which is what the coset enumeration in ``quotients`` needs.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import reduce
from math import lcm
from typing import Callable, Sequence

import numpy as np


class DimensionError(ValueError):
    pass


class GenusMismatchError(ValueError):
    pass


class NotConjugableError(ValueError):
    """Fricke conjugation needs an even C block to stay integral."""


class NoGeneratorsError(LookupError):
    pass


def _as_int_array(rows) -> np.ndarray:
    arr = np.array(rows, dtype=object)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {arr.shape}")
    return np.vectorize(int, otypes=[object])(arr)


def symplectic_form(g: int) -> np.ndarray:
    J = np.zeros((2 * g, 2 * g), dtype=object)
    J[:g, g:] = np.eye(g, dtype=int)
    J[g:, :g] = -np.eye(g, dtype=int)
    return J


def is_symplectic(M) -> bool:
    """True iff ``M^T J M == J`` exactly."""
    arr = _as_int_array(M)
    n = arr.shape[0]
    if n % 2:
        raise DimensionError(f"symplectic matrices have even size, got {n}")
    J = symplectic_form(n // 2)
    return bool(np.array_equal(arr.T.dot(J).dot(arr), J))


class SymplecticMatrix:
    """An element of Sp(2g, Z), immutable.

    Construction asserts both families of block relations
    (A B^T = B A^T, C D^T = D C^T, A D^T - B C^T = 1 and the transposed triple).
    """

    __slots__ = ("_m", "g")

    def __init__(self, rows, check: bool = True):
        arr = _as_int_array(rows)
        n = arr.shape[0]
        if n % 2:
            raise DimensionError(f"symplectic matrices have even size, got {n}")
        self.g = n // 2
        arr.flags.writeable = False
        self._m = arr
        if check and not self._block_relations_hold():
            raise ValueError("matrix is not symplectic")

    @classmethod
    def from_blocks(cls, A, B, C, D, check: bool = True) -> "SymplecticMatrix":
        top = np.hstack([np.asarray(A, dtype=object), np.asarray(B, dtype=object)])
        bot = np.hstack([np.asarray(C, dtype=object), np.asarray(D, dtype=object)])
        return cls(np.vstack([top, bot]), check=check)

    @classmethod
    def identity(cls, g: int) -> "SymplecticMatrix":
        return cls(np.eye(2 * g, dtype=int), check=False)

    @classmethod
    def J(cls, g: int) -> "SymplecticMatrix":
        return cls(symplectic_form(g), check=False)

    def _block_relations_hold(self) -> bool:
        A, B, C, D = self.A, self.B, self.C, self.D
        one = np.eye(self.g, dtype=int)
        return (
            np.array_equal(A.dot(B.T), B.dot(A.T))
            and np.array_equal(C.dot(D.T), D.dot(C.T))
            and np.array_equal(A.dot(D.T) - B.dot(C.T), one)
            and np.array_equal(A.T.dot(C), C.T.dot(A))
            and np.array_equal(B.T.dot(D), D.T.dot(B))
            and np.array_equal(A.T.dot(D) - C.T.dot(B), one)
        )

    @property
    def entries(self) -> np.ndarray:
        return self._m

    @property
    def A(self) -> np.ndarray:
        return self._m[: self.g, : self.g]

    @property
    def B(self) -> np.ndarray:
        return self._m[: self.g, self.g:]

    @property
    def C(self) -> np.ndarray:
        return self._m[self.g:, : self.g]

    @property
    def D(self) -> np.ndarray:
        return self._m[self.g:, self.g:]

    def __matmul__(self, other: "SymplecticMatrix") -> "SymplecticMatrix":
        if not isinstance(other, SymplecticMatrix):
            return NotImplemented
        if other.g != self.g:
            raise GenusMismatchError(f"genus {self.g} vs {other.g}")
        return SymplecticMatrix(self._m.dot(other._m), check=False)

    def __pow__(self, k: int) -> "SymplecticMatrix":
        base = self if k >= 0 else self.inverse()
        out = SymplecticMatrix.identity(self.g)
        for _ in range(abs(k)):
            out = out @ base
        return out

    def inverse(self) -> "SymplecticMatrix":
        # gamma^{-1} = J^{-1} gamma^T J
        A, B, C, D = self.A, self.B, self.C, self.D
        return SymplecticMatrix.from_blocks(D.T, -B.T, -C.T, A.T, check=False)

    def transpose(self) -> "SymplecticMatrix":
        return SymplecticMatrix(self._m.T, check=False)

    def __eq__(self, other) -> bool:
        return isinstance(other, SymplecticMatrix) and np.array_equal(self._m, other._m)

    def __hash__(self) -> int:
        return hash(tuple(self._m.ravel().tolist()))

    def __repr__(self) -> str:
        return f"SymplecticMatrix({self.tolist()})"

    def tolist(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self._m]

    def residues(self, n: int) -> np.ndarray:
        return np.array([[int(x) % n for x in row] for row in self._m], dtype=np.int64)

    def as_float(self) -> np.ndarray:
        return self._m.astype(float)

    def cocycle_matrix(self, tau: np.ndarray) -> np.ndarray:
        """C tau + D."""
        return self.C.astype(float) @ tau + self.D.astype(float)

    def act(self, tau: np.ndarray) -> np.ndarray:
        """Moebius action (A tau + B)(C tau + D)^{-1}, symmetrised."""
        A, B = self.A.astype(float), self.B.astype(float)
        num = A @ tau + B
        out = np.linalg.solve(self.cocycle_matrix(tau).T, num.T).T
        return 0.5 * (out + out.T)

    def to_json(self) -> dict:
        return {"g": self.g, "rows": self.tolist()}

    @classmethod
    def from_json(cls, data: dict) -> "SymplecticMatrix":
        m = cls(data["rows"])
        if "g" in data and int(data["g"]) != m.g:
            raise GenusMismatchError(f"declared g={data['g']} but matrix has g={m.g}")
        return m


# -- standard element shapes ------------------------------------------------

def translation(S) -> SymplecticMatrix:
    """gamma_S = [[1, S], [0, 1]] for an integral symmetric S."""
    S = np.asarray(S, dtype=object)
    g = S.shape[0]
    one = np.eye(g, dtype=int)
    zero = np.zeros((g, g), dtype=int)
    return SymplecticMatrix.from_blocks(one, S, zero, one)


def lower_translation(S) -> SymplecticMatrix:
    """The transpose [[1, 0], [S, 1]] of gamma_S."""
    return translation(S).transpose()


def unimodular_inverse(A: np.ndarray) -> np.ndarray:
    Af = np.asarray(A, dtype=float)
    inv = np.rint(np.linalg.inv(Af)).astype(int).astype(object)
    if not np.array_equal(np.asarray(A, dtype=object).dot(inv), np.eye(len(Af), dtype=int)):
        raise ValueError("matrix is not unimodular")
    return inv


def block_diagonal(A) -> SymplecticMatrix:
    """[[A, 0], [0, A^{-T}]] for A in GL(g, Z)."""
    A = np.asarray(A, dtype=object)
    g = A.shape[0]
    zero = np.zeros((g, g), dtype=int)
    return SymplecticMatrix.from_blocks(A, zero, zero, unimodular_inverse(A).T)


def symmetric_basis(g: int) -> list[np.ndarray]:
    out = []
    for i in range(g):
        E = np.zeros((g, g), dtype=int)
        E[i, i] = 1
        out.append(E)
    for i in range(g):
        for j in range(i + 1, g):
            E = np.zeros((g, g), dtype=int)
            E[i, j] = E[j, i] = 1
            out.append(E)
    return out


def _diag_basis(g: int) -> list[np.ndarray]:
    return symmetric_basis(g)[:g]


def _offdiag_basis(g: int) -> list[np.ndarray]:
    return symmetric_basis(g)[g:]


def gl_generators(g: int) -> list[np.ndarray]:
    gens = []
    for i in range(g - 1):
        P = np.eye(g, dtype=int)
        P[[i, i + 1]] = P[[i + 1, i]]
        gens.append(P)
    for i in range(g):
        for j in range(g):
            if i != j:
                E = np.eye(g, dtype=int)
                E[i, j] = 1
                gens.append(E)
    R = np.eye(g, dtype=int)
    R[0, 0] = -1
    gens.append(R)
    return gens


def _gl_level2_generators(g: int, include_reflection: bool = True) -> list[np.ndarray]:
    """Elements of GL(g, Z) congruent to 1 mod 2."""
    gens = []
    for i in range(g):
        for j in range(g):
            if i != j:
                E = np.eye(g, dtype=int)
                E[i, j] = 2
                gens.append(E)
    if include_reflection:
        for i in range(g):
            R = np.eye(g, dtype=int)
            R[i, i] = -1
            gens.append(R)
    return gens


# -- congruence predicates on residue arrays -----------------------------------

def _blocks(X: np.ndarray, g: int):
    return X[..., :g, :g], X[..., :g, g:], X[..., g:, :g], X[..., g:, g:]


def _diag(X: np.ndarray) -> np.ndarray:
    return np.diagonal(X, axis1=-2, axis2=-1)


def _all(cond: np.ndarray, k: int = 2) -> np.ndarray:
    return np.all(cond, axis=tuple(range(-k, 0)))


def _eye_like(g: int) -> np.ndarray:
    return np.eye(g, dtype=np.int64)


def _is_identity_mod(X, g, n):
    return _all(np.mod(X - np.eye(2 * g, dtype=np.int64), n) == 0)


def _principal(n):
    def pred(X, g):
        return _is_identity_mod(X, g, n)
    return pred


def _principal_n_2n(n):
    def pred(X, g):
        A, B, C, D = _blocks(X, g)
        tAC = np.einsum("...ki,...ki->...i", A, C)
        tBD = np.einsum("...ki,...ki->...i", B, D)
        return (
            _is_identity_mod(X, g, n)
            & _all(np.mod(tAC, 2 * n) == 0, 1)
            & _all(np.mod(tBD, 2 * n) == 0, 1)
        )
    return pred


def _gamma2_24(X, g):
    A, B, C, D = _blocks(X, g)
    one = _eye_like(g)
    return (
        _all(np.mod(A - one, 2) == 0)
        & _all(np.mod(D - one, 2) == 0)
        & _all(np.mod(C, 2) == 0)
        & _all(np.mod(_diag(B), 2) == 0, 1)
        & _all(np.mod(_diag(C), 4) == 0, 1)
    )


def _gamma0_2(X, g):
    return _all(np.mod(X[..., g:, :g], 2) == 0)


def _gamma00_2(X, g):
    return _gamma0_2(X, g) & _all(np.mod(X[..., :g, g:], 2) == 0)


def _gamma1_2(X, g):
    A, B, C, D = _blocks(X, g)
    one = _eye_like(g)
    return (
        _all(np.mod(A - one, 2) == 0)
        & _all(np.mod(D - one, 2) == 0)
        & _all(np.mod(C, 2) == 0)
    )


def _gamma0_4(X, g):
    return _all(np.mod(X[..., g:, :g], 4) == 0)


def _gamma24_fricke(X, g):
    A, B, C, D = _blocks(X, g)
    one = _eye_like(g)
    return (
        _all(np.mod(A - one, 2) == 0)
        & _all(np.mod(D - one, 2) == 0)
        & _all(np.mod(C, 4) == 0)
        & _all(np.mod(_diag(C), 8) == 0, 1)
        & _all(np.mod(_diag(B), 2) == 0, 1)
    )


def _gamma_star_24(X, g):
    A = X[..., :g, :g]
    half_trace = np.sum(np.mod(_diag(A) - 1, 4) // 2, axis=-1)
    return _principal_n_2n(2)(X, g) & (np.mod(half_trace, 2) == 0)


# -- generating sets (membership is always re-checked, exactness is not assumed) --

def _gens_full(g):
    out = [SymplecticMatrix.J(g)]
    out += [translation(S) for S in symmetric_basis(g)]
    out += [block_diagonal(A) for A in gl_generators(g)]
    return out


def _gens_principal(n):
    def gens(g):
        if n == 1:
            return _gens_full(g)
        out = [translation(n * S) for S in symmetric_basis(g)]
        out += [lower_translation(n * S) for S in symmetric_basis(g)]
        if n == 2:
            out += [block_diagonal(A) for A in _gl_level2_generators(g)]
        else:
            out += [block_diagonal(np.eye(g, dtype=int) + n * (A - np.eye(g, dtype=int)) // 2)
                    for A in _gl_level2_generators(g, include_reflection=False)]
        return out
    return gens


def _gens_principal_n_2n(n):
    def gens(g):
        Ss = [n * S for S in _offdiag_basis(g)] + [2 * n * S for S in _diag_basis(g)]
        out = [translation(S) for S in Ss] + [lower_translation(S) for S in Ss]
        if n == 2:
            out += [block_diagonal(A) for A in _gl_level2_generators(g)]
            out.append(block_diagonal(-np.eye(g, dtype=int)))
        else:
            out += [block_diagonal(np.eye(g, dtype=int) + n * (A - np.eye(g, dtype=int)) // 2)
                    for A in _gl_level2_generators(g, include_reflection=False)]
        return out
    return gens


def _gens_gamma2_24(g):
    out = _gens_principal_n_2n(2)(g)
    out += [translation(S) for S in _offdiag_basis(g)]
    out += [translation(2 * S) for S in _diag_basis(g)]
    return out


def _gens_gamma0_2(g):
    out = [translation(S) for S in symmetric_basis(g)]
    out += [lower_translation(2 * S) for S in symmetric_basis(g)]
    out += [block_diagonal(A) for A in gl_generators(g)]
    return out


def _gens_gamma00_2(g):
    out = [lower_translation(2 * S) for S in symmetric_basis(g)]
    out += [block_diagonal(A) for A in gl_generators(g)]
    out += [translation(2 * S) for S in symmetric_basis(g)]
    return out


def _gens_gamma1_2(g):
    out = [translation(S) for S in symmetric_basis(g)]
    out += [lower_translation(2 * S) for S in symmetric_basis(g)]
    out += [block_diagonal(A) for A in _gl_level2_generators(g)]
    return out


def _gens_gamma0_4(g):
    out = [translation(S) for S in symmetric_basis(g)]
    out += [lower_translation(4 * S) for S in symmetric_basis(g)]
    out += [block_diagonal(A) for A in gl_generators(g)]
    return out


def _gens_gamma24_fricke(g):
    return [fricke_conjugate(x) for x in _gens_principal_n_2n(2)(g)]


def _gens_gamma_star_24(g):
    out = []
    for x in _gens_principal_n_2n(2)(g):
        half_trace = sum((int(a) - 1) // 2 for a in np.diagonal(x.A))
        if half_trace % 2 == 0:
            out.append(x)
    # products of two reflections keep kappa^2 = 1
    if g >= 2:
        R = np.eye(g, dtype=int)
        R[0, 0] = R[1, 1] = -1
        out.append(block_diagonal(R))
    return out


# -- descriptors ---------------------------------------------------------------

@dataclass(frozen=True)
class GroupDescriptor:
    """A congruence subgroup given by a residue-decidable predicate.

    ``modulus`` is the M* such that membership depends only on entries mod M*.
    """

    name: str
    genus: int
    modulus: int
    predicate: Callable[[np.ndarray, int], np.ndarray] = field(compare=False, repr=False)
    generator_factory: Callable[[int], list[SymplecticMatrix]] | None = field(
        default=None, compare=False, repr=False
    )

    def contains_residues(self, X: np.ndarray) -> np.ndarray:
        """Vectorised membership on integer arrays of shape (..., 2g, 2g).

        The arrays must be (residues of) symplectic matrices.
        """
        return self.predicate(np.asarray(X, dtype=np.int64), self.genus)

    def generators(self) -> list[SymplecticMatrix]:
        if self.generator_factory is None:
            raise NoGeneratorsError(f"no generating set registered for {self.name}")
        return list(self.generator_factory(self.genus))

    def to_json(self) -> dict:
        return {"group": self.name, "g": self.genus}


_FIXED = {
    "Gamma": (1, _principal(1), _gens_full),
    "Gamma^2(2,4)": (4, _gamma2_24, _gens_gamma2_24),
    "Gamma_0(2)": (2, _gamma0_2, _gens_gamma0_2),
    "Gamma_0^0(2)": (2, _gamma00_2, _gens_gamma00_2),
    "Gamma_1(2)": (2, _gamma1_2, _gens_gamma1_2),
    "Gamma_0(4)": (4, _gamma0_4, _gens_gamma0_4),
    "Gamma(2,4)^J2": (8, _gamma24_fricke, _gens_gamma24_fricke),
    "Gamma*(2,4)": (4, _gamma_star_24, _gens_gamma_star_24),
}

_ALIASES = {
    "Gamma_{g,0}(2)": "Gamma_0(2)",
    "Gamma_g": "Gamma",
    "Sp": "Gamma",
}

GROUP_NAMES = tuple(_FIXED) + ("Gamma(n)", "Gamma(n,2n)")


def group(name: str, g: int) -> GroupDescriptor:
    """Look up a descriptor by name, e.g. ``group("Gamma(2,4)", 2)``."""
    if g < 1:
        raise ValueError("genus must be positive")
    name = _ALIASES.get(name, name)
    if name in _FIXED:
        modulus, pred, gens = _FIXED[name]
        return GroupDescriptor(name, g, modulus, pred, gens)
    m = re.fullmatch(r"Gamma\((\d+)\)", name)
    if m:
        n = int(m.group(1))
        return GroupDescriptor(name, g, n, _principal(n), _gens_principal(n))
    m = re.fullmatch(r"Gamma\((\d+),(\d+)\)", name)
    if m:
        n, n2 = int(m.group(1)), int(m.group(2))
        if n2 != 2 * n:
            raise ValueError(f"only Gamma(n,2n) is supported, got {name}")
        return GroupDescriptor(name, g, 2 * n, _principal_n_2n(n), _gens_principal_n_2n(n))
    raise KeyError(f"unknown group {name!r}")


def group_from_json(data: dict) -> GroupDescriptor:
    return group(data["group"], int(data["g"]))


def member(M: SymplecticMatrix, G: GroupDescriptor) -> bool:
    if M.g != G.genus:
        raise GenusMismatchError(f"matrix genus {M.g} vs group genus {G.genus}")
    return bool(G.contains_residues(M.residues(G.modulus)))


def common_modulus(*groups: GroupDescriptor) -> int:
    return reduce(lcm, (G.modulus for G in groups), 1)


def fricke_conjugate(M: SymplecticMatrix) -> SymplecticMatrix:
    """J2 M J2^{-1} = [[D, -C/2], [-2B, A]]; defined over Z iff C is even."""
    C = M.C
    if any(int(x) % 2 for x in C.ravel()):
        raise NotConjugableError("C block has an odd entry")
    half_C = np.vectorize(lambda x: int(x) // 2, otypes=[object])(C)
    return SymplecticMatrix.from_blocks(M.D, -half_C, -2 * M.B, M.A)


def fricke_act(tau: np.ndarray) -> np.ndarray:
    """J2 . tau = -(2 tau)^{-1}."""
    out = -0.5 * np.linalg.inv(tau)
    return 0.5 * (out + out.T)


def random_element(G: GroupDescriptor, seed: int, word_length: int,
                   generators: Sequence[SymplecticMatrix] | None = None) -> SymplecticMatrix:
    """Deterministic random word of ``word_length`` generators or inverses (PCG64)."""
    gens = list(generators) if generators is not None else G.generators()
    if not gens:
        raise NoGeneratorsError(f"empty generating set for {G.name}")
    rng = np.random.default_rng(seed)
    out = SymplecticMatrix.identity(G.genus)
    for _ in range(word_length):
        t = gens[int(rng.integers(len(gens)))]
        if rng.integers(2):
            t = t.inverse()
        out = out @ t
    return out


def random_elements(G: GroupDescriptor, seed: int, count: int, max_length: int,
                    min_length: int = 0) -> list[SymplecticMatrix]:
    """``count`` words with lengths drawn uniformly in [min_length, max_length]."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        length = int(rng.integers(min_length, max_length + 1))
        out.append(random_element(G, int(rng.integers(2**63)), length))
    return out


def dumps_matrix(M: SymplecticMatrix) -> str:
    return json.dumps(M.to_json(), sort_keys=True)
