"""Finite quotients of congruence subgroups by coset enumeration modulo M*.

Cosets are left cosets x K of a normal kernel K.  Elements are stored as
residue matrices mod the working modulus N together with a generator word,
so every class also has an exact integral lift.  Two residues x, y lie in the
same class iff y^{-1} x passes the kernel predicate.
"""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from itertools import combinations
from math import lcm
from typing import Callable, Iterable, Sequence

import numpy as np

from .symplectic import (
    GroupDescriptor,
    SymplecticMatrix,
    block_diagonal,
    fricke_conjugate,
    gl_generators,
    group,
    lower_translation,
    member,
    random_element,
    symmetric_basis,
    translation,
    unimodular_inverse,
)


class EnumerationError(RuntimeError):
    """BFS exceeded its element bound, or a generator is outside the ambient group."""


class NotSubgroupError(ValueError):
    pass


class RepresentativeError(ArithmeticError):
    """No coset representative with the required shape was found."""


# -- residue arithmetic -----------------------------------------------------------

def inverse_residues(X: np.ndarray, g: int, N: int) -> np.ndarray:
    """Symplectic inverse [[D^T, -B^T], [-C^T, A^T]] of stacked residues, mod N."""
    A, B = X[..., :g, :g], X[..., :g, g:]
    C, D = X[..., g:, :g], X[..., g:, g:]
    top = np.concatenate([np.swapaxes(D, -1, -2), -np.swapaxes(B, -1, -2)], axis=-1)
    bot = np.concatenate([-np.swapaxes(C, -1, -2), np.swapaxes(A, -1, -2)], axis=-1)
    return np.mod(np.concatenate([top, bot], axis=-2), N)


def _gl_inverse_mod(A: np.ndarray, N: int) -> np.ndarray:
    """Inverse of an integer matrix modulo N (det must be a unit mod N)."""
    A = np.asarray(A, dtype=np.int64)
    g = A.shape[0]
    det = int(round(np.linalg.det(A))) % N
    adj = np.zeros_like(A)
    for i in range(g):
        for j in range(g):
            minor = np.delete(np.delete(A, i, 0), j, 1)
            cof = int(round(np.linalg.det(minor))) if g > 1 else 1
            adj[j, i] = (-1) ** (i + j) * cof
    return np.mod(pow(det, -1, N) * adj, N)


def phi_residue(X: np.ndarray, g: int, N: int) -> np.ndarray:
    """Residue of [[A, 2B], [C, 2D - A^{-T}]] mod N from gamma mod N.

    This is the product of the factorisation with B replaced by 2B.  Only
    det A odd is needed, which holds whenever C is even.
    """
    X = np.mod(np.asarray(X, dtype=np.int64), N)
    A, B = X[:g, :g], X[:g, g:]
    C, D = X[g:, :g], X[g:, g:]
    At_inv = _gl_inverse_mod(A, N).T
    out = np.block([[A, 2 * B], [C, 2 * D - At_inv]])
    return np.mod(out, N)


def fricke_residue(X: np.ndarray, g: int, N: int) -> np.ndarray:
    """[[D, -C/2], [-2B, A]] mod N from gamma mod 2N (C even)."""
    X = np.mod(np.asarray(X, dtype=np.int64), 2 * N)
    A, B = X[:g, :g], X[:g, g:]
    C, D = X[g:, :g], X[g:, g:]
    if np.any(C % 2):
        raise ValueError("C must be even")
    return np.mod(np.block([[D, -(C // 2)], [-2 * B, A]]), N)


def phi_prime_residue(X: np.ndarray, g: int, N: int) -> np.ndarray:
    """Residue of phi(gamma^{J2})^{J2} = [[2A - D^{-T}, B], [2C, D]] mod N.

    Roughly C -> 2C; needs only gamma mod N and det D odd.
    """
    X = np.mod(np.asarray(X, dtype=np.int64), N)
    A, B = X[:g, :g], X[:g, g:]
    C, D = X[g:, :g], X[g:, g:]
    Dt_inv = _gl_inverse_mod(D, N).T
    return np.mod(np.block([[2 * A - Dt_inv, B], [2 * C, D]]), N)


def phi_integral(gamma: SymplecticMatrix) -> SymplecticMatrix:
    """The factorisation map B -> 2B on an integral gamma with det A = +-1."""
    A = np.array(gamma.A.tolist(), dtype=np.int64)
    if abs(int(round(np.linalg.det(A)))) != 1:
        raise RepresentativeError("A is not unimodular")
    At_inv = np.array(unimodular_inverse(A), dtype=object).T
    return SymplecticMatrix.from_blocks(gamma.A, 2 * gamma.B, gamma.C, 2 * gamma.D - At_inv)


def phi_prime_integral(gamma: SymplecticMatrix) -> SymplecticMatrix:
    """phi(gamma^{J2})^{J2} on an integral gamma in Gamma_0(2) with det D = +-1."""
    return fricke_conjugate(phi_integral(fricke_conjugate(gamma)))


# -- finite quotients ----------------------------------------------------------------

@dataclass
class FiniteQuotient:
    """big / small as a finite group with multiplication table.

    ``reps[i]`` is a residue mod ``modulus``; ``words[i]`` lists generator
    indices whose product lies in class i.  Class 0 is the identity.
    """

    ambient: GroupDescriptor
    kernel: GroupDescriptor
    modulus: int
    generators: list[SymplecticMatrix]
    reps: np.ndarray
    words: list[tuple[int, ...]]
    table: np.ndarray = field(repr=False)
    inverse: np.ndarray = field(repr=False)
    _rep_inv: np.ndarray = field(repr=False, default=None)

    @property
    def g(self) -> int:
        return self.ambient.genus

    @property
    def order(self) -> int:
        return len(self.reps)

    def locate(self, X) -> int:
        """Class index of a residue (or SymplecticMatrix)."""
        if isinstance(X, SymplecticMatrix):
            X = X.residues(self.modulus)
        hits = np.flatnonzero(_class_test(self._rep_inv, X, self.kernel, self.modulus))
        if len(hits) != 1:
            raise EnumerationError(f"residue matches {len(hits)} classes")
        return int(hits[0])

    def lift(self, i: int) -> SymplecticMatrix:
        out = SymplecticMatrix.identity(self.g)
        for k in self.words[i]:
            out = out @ self.generators[k]
        return out

    def generator_classes(self) -> list[int]:
        return [self.locate(t) for t in self.generators]

    def mul(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def power(self, i: int, n: int) -> int:
        out = 0
        for _ in range(n):
            out = self.mul(out, i)
        return out

    def element_order(self, i: int) -> int:
        x, n = i, 1
        while x != 0:
            x = self.mul(x, i)
            n += 1
        return n

    def element_orders(self) -> list[int]:
        return [self.element_order(i) for i in range(self.order)]

    def exponent(self) -> int:
        return lcm(*self.element_orders())

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def conjugate(self, x: int, y: int) -> int:
        """y x y^{-1}."""
        return self.mul(self.mul(y, x), int(self.inverse[y]))

    def conjugacy_classes(self) -> list[list[int]]:
        seen, out = set(), []
        for x in range(self.order):
            if x in seen:
                continue
            cls = sorted({self.conjugate(x, y) for y in range(self.order)})
            seen.update(cls)
            out.append(cls)
        return out

    def closure(self, gens: Iterable[int]) -> list[int]:
        """Subgroup generated by the given classes, sorted."""
        elems = {0}
        frontier = [0]
        gens = list(gens)
        while frontier:
            nxt = []
            for x in frontier:
                for t in gens:
                    y = self.mul(x, t)
                    if y not in elems:
                        elems.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(elems)

    def is_subgroup(self, elems: Iterable[int]) -> bool:
        s = set(elems)
        if 0 not in s:
            return False
        return all(self.mul(x, y) in s for x in s for y in s)

    def is_normal(self, elems: Iterable[int]) -> bool:
        s = set(elems)
        return all(self.conjugate(x, y) in s for x in s for y in range(self.order))

    def fingerprint(self, elems: Iterable[int] | None = None) -> dict:
        """Order, element-order census, abelianness (of the subgroup if given)."""
        elems = list(range(self.order)) if elems is None else sorted(elems)
        s = set(elems)
        orders = Counter(self.element_order(x) for x in elems)
        abelian = all(self.mul(x, y) == self.mul(y, x) for x in s for y in s)
        return {
            "order": len(elems),
            "element_orders": {str(k): orders[k] for k in sorted(orders)},
            "abelian": abelian,
        }

    def to_json(self) -> dict:
        return {
            "ambient": self.ambient.to_json(),
            "kernel": self.kernel.to_json(),
            "modulus": self.modulus,
            "order": self.order,
            "generators": [t.to_json() for t in self.generators],
            "elements": [
                {"residue": self.reps[i].tolist(), "word": list(self.words[i])}
                for i in range(self.order)
            ],
        }


def _class_test(rep_inv: np.ndarray, X: np.ndarray, kernel: GroupDescriptor, N: int) -> np.ndarray:
    Y = np.mod(rep_inv @ np.asarray(X, dtype=np.int64), N)
    return kernel.contains_residues(Y)


def enumerate_quotient(big: GroupDescriptor, small: GroupDescriptor,
                       generators: Sequence[SymplecticMatrix] | None = None,
                       modulus: int | None = None, max_order: int = 5000) -> FiniteQuotient:
    """BFS over generator products in Sp(2g, Z/N), identifying kernel cosets.

    N defaults to the lcm of both descriptor moduli; a larger multiple can be
    requested when a map needs finer residues of the representatives.
    """
    if big.genus != small.genus:
        raise ValueError("genus mismatch")
    g = big.genus
    gens = list(generators) if generators is not None else big.generators()
    for t in gens:
        if not member(t, big):
            raise EnumerationError(f"generator {t.tolist()} is not in {big.name}")
    N = lcm(big.modulus, small.modulus)
    if modulus is not None:
        if modulus % N:
            raise ValueError(f"modulus {modulus} is not a multiple of {N}")
        N = modulus
    gen_res = [t.residues(N) for t in gens]
    reps = [np.eye(2 * g, dtype=np.int64)]
    words: list[tuple[int, ...]] = [()]
    rep_inv = inverse_residues(reps[0], g, N)[None]
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for k, t in enumerate(gen_res):
            X = np.mod(reps[i] @ t, N)
            if _class_test(rep_inv, X, small, N).any():
                continue
            if len(reps) >= max_order:
                raise EnumerationError(f"more than {max_order} cosets")
            reps.append(X)
            words.append(words[i] + (k,))
            rep_inv = np.concatenate([rep_inv, inverse_residues(X, g, N)[None]])
            queue.append(len(reps) - 1)
    R = np.array(reps)
    n = len(R)
    table = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        prods = np.mod(R[i] @ R, N)
        hits = small.contains_residues(np.mod(rep_inv[:, None] @ prods[None], N))
        if not np.all(hits.sum(axis=0) == 1):
            raise EnumerationError("class test is not a partition; is the kernel normal?")
        table[i] = np.argmax(hits, axis=0)
    inverse = np.argmax(table == 0, axis=1)
    return FiniteQuotient(big, small, N, gens, R, words, table, inverse, rep_inv)


def same_cosets(Q1: FiniteQuotient, Q2: FiniteQuotient) -> bool:
    """True iff both enumerations produce the same set of classes."""
    if Q1.order != Q2.order:
        return False
    N = lcm(Q1.modulus, Q2.modulus)
    if N != Q2.modulus:
        return False
    hits = {Q2.locate(np.mod(Q1.reps[i], Q2.modulus)) for i in range(Q1.order)} if Q1.modulus % Q2.modulus == 0 else None
    return hits == set(range(Q2.order))


def shuffle_independent(big: GroupDescriptor, small: GroupDescriptor, seed: int, shuffles: int = 5) -> bool:
    """Enumerations for shuffled generator orders all give the same coset set."""
    base = enumerate_quotient(big, small)
    rng = np.random.default_rng(seed)
    gens = big.generators()
    for _ in range(shuffles):
        perm = rng.permutation(len(gens))
        Q = enumerate_quotient(big, small, [gens[int(p)] for p in perm])
        if not same_cosets(Q, base):
            return False
    return True


def kernel_is_normal(big: GroupDescriptor, small: GroupDescriptor, seed: int, samples: int = 20,
                     word_length: int = 6) -> bool:
    """t k t^{-1} in small for every generator t of big and sampled k in small."""
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        k = random_element(small, int(rng.integers(2**63)), word_length)
        for t in big.generators():
            if not member(t @ k @ t.inverse(), small):
                return False
    return True


# -- maps between quotients ------------------------------------------------------------

@dataclass
class QuotientMap:
    domain: FiniteQuotient
    codomain: FiniteQuotient
    images: np.ndarray
    representative_independent: bool = True

    def __call__(self, i: int) -> int:
        return int(self.images[i])

    def is_homomorphism(self) -> bool:
        """Checks f(xy) = f(x) f(y) on the whole table."""
        f = self.images
        lhs = f[self.domain.table]
        rhs = self.codomain.table[f[:, None], f[None, :]]
        return bool(np.array_equal(lhs, rhs))

    def is_bijective(self) -> bool:
        return self.domain.order == self.codomain.order and len(set(self.images.tolist())) == self.domain.order

    def to_json(self) -> dict:
        return {"images": self.images.tolist(), "representative_independent": self.representative_independent}


def _residue_map(dom: FiniteQuotient, cod: FiniteQuotient, f: Callable[[np.ndarray], np.ndarray],
                 kernel_gens: Sequence[SymplecticMatrix]) -> QuotientMap:
    images = np.array([cod.locate(f(dom.reps[i])) for i in range(dom.order)], dtype=np.int64)
    ks = [k.residues(dom.modulus) for k in kernel_gens]
    independent = True
    for i in range(dom.order):
        for k in ks:
            if cod.locate(f(np.mod(dom.reps[i] @ k, dom.modulus))) != images[i]:
                independent = False
    return QuotientMap(dom, cod, images, independent)


def genus2_G(modulus: int = 4) -> FiniteQuotient:
    """G = Gamma_0(2) / Gamma^2(2, 4), g = 2."""
    return enumerate_quotient(group("Gamma_0(2)", 2), group("Gamma^2(2,4)", 2), modulus=modulus)


def genus2_G00() -> FiniteQuotient:
    """Gamma_0^0(2) / Gamma(2, 4), g = 2."""
    return enumerate_quotient(group("Gamma_0^0(2)", 2), group("Gamma(2,4)", 2))


def genus2_G04() -> FiniteQuotient:
    """Gamma_0(4) / Gamma(2, 4)^{J2}, g = 2, enumerated mod 8."""
    return enumerate_quotient(group("Gamma_0(4)", 2), group("Gamma(2,4)^J2", 2))


def phi_iso(dom: FiniteQuotient | None = None, cod: FiniteQuotient | None = None) -> QuotientMap:
    """B -> 2B from Gamma_0(2)/Gamma^2(2,4) to Gamma_0^0(2)/Gamma(2,4)."""
    dom = dom or genus2_G()
    cod = cod or genus2_G00()
    g, N = dom.g, cod.modulus
    if dom.modulus % N:
        raise ValueError("domain residues are too coarse")
    return _residue_map(dom, cod, lambda X: phi_residue(np.mod(X, N), g, N),
                        dom.kernel.generators())


def fricke_iso(dom: FiniteQuotient | None = None, cod: FiniteQuotient | None = None) -> QuotientMap:
    """gamma -> phi(gamma^{J2})^{J2} from G to Gamma_0(4)/Gamma(2,4)^{J2}, both mod 8."""
    cod = cod or genus2_G04()
    N = cod.modulus
    dom = dom or genus2_G(modulus=N)
    if dom.modulus % N:
        raise ValueError("domain residues are too coarse")
    g = dom.g
    return _residue_map(dom, cod, lambda X: phi_prime_residue(np.mod(X, N), g, N),
                        dom.kernel.generators())


def standard_generator_families(g: int = 2) -> dict[str, list[SymplecticMatrix]]:
    """Transposed translations by 2S, block-diagonal [[A,0],[0,A^{-T}]], translations by S."""
    return {
        "lower_2S": [lower_translation(2 * S) for S in symmetric_basis(g)],
        "block_diag": [block_diagonal(A) for A in gl_generators(g)],
        "upper_S": [translation(S) for S in symmetric_basis(g)],
    }


# -- structure ----------------------------------------------------------------------

def _search_elementary_normal(Q: FiniteQuotient, size: int) -> list[int] | None:
    """A normal subgroup of exponent 2 with ``size`` elements, as a union of classes."""
    involution_classes = [c for c in Q.conjugacy_classes()
                          if c[0] != 0 and Q.element_order(c[0]) == 2]
    for r in range(1, len(involution_classes) + 1):
        for combo in combinations(involution_classes, r):
            if sum(len(c) for c in combo) != size - 1:
                continue
            elems = [0] + [x for c in combo for x in c]
            if Q.is_subgroup(elems):
                return sorted(elems)
    return None


def _complement(Q: FiniteQuotient, N: list[int]) -> list[int] | None:
    target = Q.order // len(N)
    Nset = set(N)
    outside = [x for x in range(Q.order) if x not in Nset]
    for x in outside:
        for y in outside:
            H = Q.closure([x, y])
            if len(H) == target and not (set(H) & Nset) - {0}:
                return H
    return None


def structure_report(Q: FiniteQuotient) -> dict:
    """Order, abelianness, exponent; search for a normal F_2^4 with nonabelian order-6 quotient."""
    out = {
        "order": Q.order,
        "abelian": Q.is_abelian(),
        "exponent": Q.exponent(),
        "class_sizes": sorted(len(c) for c in Q.conjugacy_classes()),
        "normal_f2_4": False,
        "quotient_order": None,
        "quotient_nonabelian": None,
        "complement_order": None,
    }
    if Q.order % 16 == 0:
        N = _search_elementary_normal(Q, 16)
        if N is not None:
            Nset = set(N)
            nonabelian = any(
                Q.mul(Q.mul(x, y), Q.mul(int(Q.inverse[x]), int(Q.inverse[y]))) not in Nset
                for x in range(Q.order) for y in range(Q.order)
            )
            comp = _complement(Q, N)
            out.update(normal_f2_4=True, normal_subgroup=N, quotient_order=Q.order // 16,
                       quotient_nonabelian=nonabelian,
                       complement_order=len(comp) if comp else None)
    if out["normal_f2_4"] and out["quotient_order"] == 6 and out["quotient_nonabelian"]:
        out["description"] = "F2^4 x| S3"
    elif out["abelian"] and out["exponent"] <= 2:
        out["description"] = f"F2^{Q.order.bit_length() - 1}"
    else:
        out["description"] = f"order {Q.order}"
    return out


# -- subgroup matching ------------------------------------------------------------------

def preimage_descriptor(Q: FiniteQuotient, elems: Iterable[int], name: str,
                        generators: Sequence[SymplecticMatrix] | None = None) -> GroupDescriptor:
    """The preimage of a set of classes, as a residue-decidable descriptor."""
    keep = np.zeros(Q.order, dtype=bool)
    keep[list(elems)] = True
    N = Q.modulus

    def pred(X, g):
        X = np.asarray(X, dtype=np.int64)
        flat = np.mod(X.reshape(-1, 2 * g, 2 * g), N)
        ambient = Q.ambient.contains_residues(flat)
        out = np.zeros(len(flat), dtype=bool)
        for n, Y in enumerate(flat):
            if ambient[n]:
                hits = np.flatnonzero(_class_test(Q._rep_inv, Y, Q.kernel, N))
                out[n] = len(hits) == 1 and keep[hits[0]]
        return out.reshape(X.shape[:-2])

    factory = (lambda g: list(generators)) if generators is not None else None
    return GroupDescriptor(name, Q.g, N, pred, factory)


MATCH_CANDIDATES = ("Gamma(2)", "Gamma_1(2)", "Gamma_0(2)", "Gamma_0^0(2)", "Gamma^2(2,4)",
                    "Gamma(2,4)", "Gamma(4)", "Gamma_0(4)", "Gamma*(2,4)")


def identify(Q: FiniteQuotient, elems: Iterable[int], candidates: Sequence[str] = MATCH_CANDIDATES) -> list[str]:
    """Registered descriptors D with kernel <= D <= ambient whose classes are exactly ``elems``."""
    elems = set(elems)
    lifts = [Q.lift(i) for i in range(Q.order)]
    out = []
    for name in candidates:
        D = group(name, Q.g)
        if not all(member(k, D) for k in Q.kernel.generators()):
            continue
        if not all(member(t, Q.ambient) for t in D.generators()):
            continue
        inside = {i for i, L in enumerate(lifts) if member(L, D)}
        if inside == elems:
            out.append(name)
    return out


@dataclass
class SubgroupMatch:
    H: list[int]
    H_image: list[int]
    gamma: GroupDescriptor
    gamma_prime: GroupDescriptor
    gamma_generators: list[SymplecticMatrix]
    gamma_prime_generators: list[SymplecticMatrix]
    gamma_names: list[str]
    gamma_prime_names: list[str]
    fingerprints_agree: bool
    induced_map_iso: bool

    def to_json(self) -> dict:
        return {
            "H_order": len(self.H),
            "gamma": self.gamma_names,
            "gamma_prime": self.gamma_prime_names,
            "gamma_generators": [x.to_json() for x in self.gamma_generators],
            "gamma_prime_generators": [x.to_json() for x in self.gamma_prime_generators],
            "fingerprints_agree": self.fingerprints_agree,
            "induced_map_iso": self.induced_map_iso,
        }


def match_subgroups(phi: QuotientMap, H_gens: Sequence[int], side: str = "domain") -> SubgroupMatch:
    """Gamma' = preimage of H in Gamma_0(2), Gamma = preimage of phi(H) in Gamma_0^0(2).

    ``H_gens`` are class indices in phi.domain, or in phi.codomain when
    ``side="codomain"`` (they are pulled back through phi).  Both groups are
    re-enumerated from generator lifts and compared with H.
    """
    G, G00 = phi.domain, phi.codomain
    if side == "codomain":
        back = {int(y): x for x, y in enumerate(phi.images)}
        H_gens = [back[int(h)] for h in H_gens]
    elif side != "domain":
        raise ValueError("side must be 'domain' or 'codomain'")
    H = G.closure(H_gens)
    if not G.is_subgroup(H):
        raise NotSubgroupError("generated set is not closed")
    H_img = sorted(phi(i) for i in H)
    if not G00.is_subgroup(H_img):
        raise NotSubgroupError("image is not a subgroup")
    K_prime, K = G.kernel.generators(), G00.kernel.generators()
    prime_gens = K_prime + [G.lift(i) for i in H_gens]
    gamma_gens = K + [G00.lift(phi(i)) for i in H_gens]
    gp = preimage_descriptor(G, H, "preimage(H) in Gamma_0(2)", prime_gens)
    gm = preimage_descriptor(G00, H_img, "preimage(phi(H)) in Gamma_0^0(2)", gamma_gens)
    Qp = enumerate_quotient(gp, G.kernel, modulus=G.modulus)
    Qm = enumerate_quotient(gm, G00.kernel, modulus=G00.modulus)
    fp_H = G.fingerprint(H)
    agree = Qp.fingerprint() == fp_H == Qm.fingerprint()
    induced = _residue_map(Qp, Qm, lambda X: phi_residue(np.mod(X, G00.modulus), G.g, G00.modulus), [])
    return SubgroupMatch(
        H=H, H_image=H_img, gamma=gm, gamma_prime=gp,
        gamma_generators=gamma_gens, gamma_prime_generators=prime_gens,
        gamma_names=identify(G00, H_img), gamma_prime_names=identify(G, H),
        fingerprints_agree=agree,
        induced_map_iso=induced.is_homomorphism() and induced.is_bijective(),
    )


def H_generators(G00: FiniteQuotient) -> list[int]:
    """Classes of M1, M2 and their transposes in Gamma_0^0(2)/Gamma(2,4).

    M1, M2 lie in Gamma^2(2,4), so this H only has order 16 on this side.
    """
    B1 = np.array([[2, 0], [0, 0]])
    B2 = np.array([[0, 0], [0, 2]])
    mats = [translation(B1), translation(B2), lower_translation(B1), lower_translation(B2)]
    return [G00.locate(m) for m in mats]


# -- genus 3 ----------------------------------------------------------------------------

GENUS3_B = tuple(
    np.array(b) for b in (
        [[2, 0, 0], [0, 0, 0], [0, 0, 0]],
        [[0, 0, 0], [0, 2, 0], [0, 0, 0]],
        [[0, 0, 0], [0, 0, 0], [0, 0, 2]],
        [[0, 1, 0], [1, 0, 0], [0, 0, 0]],
        [[0, 0, 1], [0, 0, 0], [1, 0, 0]],
        [[0, 0, 0], [0, 0, 1], [0, 1, 0]],
    )
)


def genus3_quotient() -> FiniteQuotient:
    """Gamma_3^2(2,4) / Gamma_3(2,4) by BFS."""
    return enumerate_quotient(group("Gamma^2(2,4)", 3), group("Gamma(2,4)", 3))


def genus3_word_set() -> list[tuple[tuple[int, ...], SymplecticMatrix]]:
    """The 64 translations gamma_B, B = sum eps_i B_i, eps in F_2^6 (lexicographic)."""
    from itertools import product

    out = []
    for eps in product((0, 1), repeat=len(GENUS3_B)):
        B = sum(e * b for e, b in zip(eps, GENUS3_B))
        out.append((eps, translation(B)))
    return out


def fricke_fixed_check(name: str, g: int, seed: int, samples: int = 100, word_length: int = 8) -> dict:
    """Membership of gamma^{J2} vs gamma for generators and sampled elements."""
    G = group(name, g)
    rng = np.random.default_rng(seed)
    elems = G.generators() + [random_element(G, int(rng.integers(2**63)), word_length) for _ in range(samples)]
    ok = all(member(fricke_conjugate(x), G) for x in elems)
    return {"group": name, "checked": len(elems), "fixed": ok}
