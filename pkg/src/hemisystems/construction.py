"""The cyclotomic hemisystem: index set I in Z_{4N}, vector set D, point set M, dual set J.

D is the union of the cyclotomic classes gamma^i <gamma^(4N)>, i in I, of
F_{q^6}^*.  Every scalar of F_q^* is a power of gamma^((q^6-1)/(q-1)), an
exponent divisible by 4N, so D is a union of punctured projective points and
M = {c mod (q^6-1)/(q-1) : c mod 4N in I}.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .conic import ConicData, build_conic
from .errors import BadCongruence, CollisionDetected, ScalarOrbitNotClosed, ZeroInput
from .field import FElem, FieldCtx

J1 = (0, 3)
J2 = (1, 2)
K1 = (0, 1)
K2 = (2, 3)


def _combine_residues(N, q, first, s_first, second, s_second):
    mod = 4 * N
    out = [(N * i - (q + 1) * j) % mod for i in first for j in s_first]
    out += [(N * i - (q + 1) * j) % mod for i in second for j in s_second]
    if len(set(out)) != len(out):
        raise CollisionDetected(f"repeated residues mod {mod}: {sorted(out)}")
    return tuple(sorted(out))


def build_index_set(conic: ConicData) -> tuple:
    """I = {N i - (q+1) j mod 4N : (i, j) in J1 x S1 or J2 x S2}."""
    if conic.q % 4 != 3:
        raise BadCongruence(f"q = {conic.q}: q = 3 (mod 4) required")
    return _combine_residues(conic.N, conic.q, J1, conic.S1, J2, conic.S2)


def build_dual_index_set(conic: ConicData) -> tuple:
    """Same recipe with K1 = {0, 1}, K2 = {2, 3}."""
    if conic.q % 4 != 3:
        raise BadCongruence(f"q = {conic.q}: q = 3 (mod 4) required")
    return _combine_residues(conic.N, conic.q, K1, conic.S1, K2, conic.S2)


@dataclass(frozen=True)
class HemisystemDescriptor:
    p: int
    f: int
    q: int
    N: int
    polynomial: tuple
    d0: int
    I: tuple  # noqa: E741
    J: tuple
    conic: ConicData | None = None
    J1: tuple = J1
    J2: tuple = J2

    @property
    def m(self) -> int:
        return (self.q + 1) // 2

    @property
    def modulus(self) -> int:
        return 4 * self.N

    @property
    def sizes(self) -> dict:
        q, m = self.q, self.m
        return {
            "I": len(self.I),
            "J": len(self.J),
            "D": (q**3 + 1) * (q**2 - 1) // 2,
            "M": m * (q**3 + 1),
            "m": m,
        }

    @cached_property
    def index_mask(self) -> np.ndarray:
        return residue_mask(self.I, self.modulus)

    @cached_property
    def dual_mask(self) -> np.ndarray:
        return residue_mask(self.J, self.modulus)

    def with_index_set(self, new_i) -> "HemisystemDescriptor":
        """Copy with a different I (used for tampering experiments)."""
        return HemisystemDescriptor(
            self.p, self.f, self.q, self.N, self.polynomial, self.d0,
            tuple(sorted(int(i) for i in new_i)), self.J, self.conic, self.J1, self.J2,
        )


def residue_mask(residues, modulus) -> np.ndarray:
    mask = np.zeros(modulus, dtype=bool)
    mask[np.asarray(residues, dtype=np.int64) % modulus] = True
    mask.setflags(write=False)
    return mask


def build_descriptor(ctx: FieldCtx, d0: int | None = None) -> HemisystemDescriptor:
    if ctx.q % 4 != 3:
        raise BadCongruence(f"q = {ctx.q}: q = 3 (mod 4) required")
    conic = build_conic(ctx, d0)
    return HemisystemDescriptor(
        ctx.p, ctx.params.f, ctx.q, ctx.N, ctx.polynomial, conic.d0,
        build_index_set(conic), build_dual_index_set(conic), conic,
    )


def membership_D(ctx: FieldCtx, desc: HemisystemDescriptor, x: FElem) -> bool:
    if x.is_zero:
        raise ZeroInput("D is a set of nonzero vectors")
    return bool(desc.index_mask[x.exp % desc.modulus])


def d_exponents(ctx: FieldCtx, residues, modulus: int) -> np.ndarray:
    """All exponents e in Z_{q^6-1} with e mod ``modulus`` in ``residues``."""
    order = ctx.order
    base = np.arange(0, order, modulus, dtype=np.int64)
    res = np.asarray(sorted(residues), dtype=np.int64)
    return (base[:, None] + res[None, :]).ravel()


@dataclass(frozen=True)
class PointSet:
    mask: np.ndarray  # bool over projective point ids
    ids: np.ndarray

    @classmethod
    def from_ids(cls, ids, num_points) -> "PointSet":
        ids = np.unique(np.asarray(ids, dtype=np.int64))
        mask = np.zeros(num_points, dtype=bool)
        mask[ids] = True
        mask.setflags(write=False)
        ids.setflags(write=False)
        return cls(mask, ids)

    @classmethod
    def from_mask(cls, mask) -> "PointSet":
        return cls.from_ids(np.flatnonzero(mask), len(mask))

    def __len__(self):
        return len(self.ids)

    def __contains__(self, point) -> bool:
        return bool(self.mask[point])

    def complement_in(self, universe) -> "PointSet":
        universe = np.asarray(universe, dtype=np.int64)
        return PointSet.from_ids(universe[~self.mask[universe]], len(self.mask))


def scalar_orbit_failures(ctx: FieldCtx, desc: HemisystemDescriptor, samples: int = 1000, seed: int = 0):
    """Residue arithmetic plus sampled field multiplications: lambda x in D for x in D."""
    fails = []
    scalar_step = ctx.params.num_points
    if scalar_step % desc.modulus:
        fails.append(f"(q^6-1)/(q-1) = {scalar_step} is not divisible by 4N = {desc.modulus}")
    rng = random.Random(seed)
    d = d_exponents(ctx, desc.I, desc.modulus)
    if len(d) == 0:
        return fails
    for _ in range(samples):
        x = FElem(int(d[rng.randrange(len(d))]))
        for c in range(1, ctx.q):
            lam = FElem(c * scalar_step)
            if not membership_D(ctx, desc, ctx.mul(lam, x)):
                fails.append(f"{lam} * {x} left D")
                return fails
    return fails


def build_point_set(ctx: FieldCtx, desc: HemisystemDescriptor) -> PointSet:
    npts = ctx.params.num_points
    if npts % desc.modulus:
        raise ScalarOrbitNotClosed(f"F_q^* exponents are not multiples of {desc.modulus}")
    c = np.arange(npts, dtype=np.int64)
    return PointSet.from_mask(desc.index_mask[c % desc.modulus])


def negation_residue(ctx: FieldCtx, modulus: int) -> int:
    """Exponent of -1 reduced mod ``modulus``."""
    return (ctx.order // 2) % modulus


def descriptor_invariant_failures(ctx: FieldCtx, desc: HemisystemDescriptor) -> list[str]:
    """Exact residue-level checks on I and J."""
    q, mod = desc.q, desc.modulus
    I, J = set(desc.I), set(desc.J)
    fails = []
    if len(I) != 2 * (q + 1):
        fails.append(f"|I| = {len(I)}, expected {2 * (q + 1)}")
    if {q * q * i % mod for i in I} != I:
        fails.append("q^2 I != I (mod 4N)")
    if {q**3 * i % mod for i in I} != J:
        fails.append("q^3 I != J (mod 4N)")
    r = negation_residue(ctx, mod)
    if {(i + r) % mod for i in I} != I:
        fails.append(f"-D != D: I + {r} != I (mod 4N)")
    return fails


__all__ = [
    "HemisystemDescriptor",
    "J1",
    "J2",
    "K1",
    "K2",
    "PointSet",
    "build_descriptor",
    "build_dual_index_set",
    "build_index_set",
    "build_point_set",
    "d_exponents",
    "descriptor_invariant_failures",
    "membership_D",
    "negation_residue",
    "residue_mask",
    "scalar_orbit_failures",
]
