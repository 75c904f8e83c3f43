"""Gauss sums, Gauss periods and the classical identities they satisfy, by direct summation.

A multiplicative character of the subfield at ``level`` is given by its order k
and index j: g^e -> exp(2 pi i j e / k), where g = gamma^((q^6-1)/(|level|-1)).
Because Norm(gamma) is exactly that generator for every subfield, lifting a
character up the tower keeps (k, j).

Sums are evaluated by counting, for every pair (j e mod k, Tr(g^e)), how many
exponents e land there; the final combination uses math.fsum, so the only
rounding comes from k*p unit-circle points.
"""

from __future__ import annotations

import cmath
import math
import random
import time
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import BadCongruence, BudgetExceeded, InvalidInput, NotADivisor, NotApplicable
from .field import FElem, FieldCtx, Level
from .numbers import divisors, multiplicative_order
from .report import CheckResult

DEFAULT_MAX_TERMS = 50_000_000


@dataclass(frozen=True)
class MultChar:
    level: Level
    order: int
    index: int = 1
    lifted_from: Level | None = None

    def __post_init__(self):
        if self.order < 1:
            raise InvalidInput("character order must be positive")
        object.__setattr__(self, "index", self.index % self.order)

    def check(self, ctx: FieldCtx) -> "MultChar":
        size = ctx.p ** ctx.params.degree(self.level) - 1
        if size % self.order:
            raise NotADivisor(f"order {self.order} does not divide {size}")
        return self

    @property
    def is_trivial(self) -> bool:
        return self.index == 0

    def reduced(self) -> "MultChar":
        """Same character written with its exact order."""
        g = math.gcd(self.index, self.order)
        return MultChar(self.level, self.order // g, self.index // g, self.lifted_from)

    @property
    def exact_order(self) -> int:
        return self.order // math.gcd(self.index, self.order)

    def __pow__(self, a: int) -> "MultChar":
        return MultChar(self.level, self.order, self.index * a, self.lifted_from)

    def __mul__(self, other: "MultChar") -> "MultChar":
        if self.level is not other.level:
            raise InvalidInput("characters live on different fields")
        k = math.lcm(self.order, other.order)
        j = self.index * (k // self.order) + other.index * (k // other.order)
        return MultChar(self.level, k, j)

    def conj(self) -> "MultChar":
        return self ** -1

    def lift(self, to: Level) -> "MultChar":
        """chi o Norm on the larger field ``to``."""
        return MultChar(to, self.order, self.index, lifted_from=self.level)

    def exponent(self, ctx: FieldCtx, x: FElem) -> int:
        step = ctx.level_step(self.level)
        if x.exp % step:
            raise InvalidInput(f"{x} is not in the {self.level.name} field")
        return x.exp // step

    def at(self, ctx: FieldCtx, x: FElem) -> complex:
        if x.is_zero:
            return 0j
        e = self.exponent(ctx, x)
        return _root(self.index * e, self.order)

    def to_json(self) -> dict:
        d = {"level": self.level.name, "order": self.order, "index": self.index}
        if self.lifted_from is not None:
            d["lifted_from"] = self.lifted_from.name
        return d


def _root(a: int, k: int) -> complex:
    a %= k
    # exact values at the quarter turns keep trivial cases noise-free
    if (4 * a) % k == 0:
        return (1, 1j, -1, -1j)[4 * a // k]
    return cmath.exp(2j * math.pi * a / k)


@dataclass(frozen=True)
class ComplexVal:
    value: complex
    error_bound: float
    terms: int

    def __complex__(self):
        return self.value

    @property
    def real(self):
        return self.value.real

    @property
    def imag(self):
        return self.value.imag


@lru_cache(maxsize=8)
def _exponents(size: int) -> np.ndarray:
    e = np.arange(size, dtype=np.int64)
    e.setflags(write=False)
    return e


def _field_size(ctx: FieldCtx, level: Level) -> int:
    return ctx.p ** ctx.params.degree(level)


def _combine(counts: np.ndarray, k: int, p: int) -> ComplexVal:
    """sum counts[a, b] zeta_k^a zeta_p^b with fsum."""
    a, b = np.nonzero(counts)
    c = counts[a, b].astype(np.float64)
    ang = 2 * np.pi * (a / k + b / p)
    re = math.fsum(c * np.cos(ang))
    im = math.fsum(c * np.sin(ang))
    n = int(counts.sum())
    bound = 4 * np.finfo(float).eps * (float(c.sum()) + len(c))
    return ComplexVal(complex(re, im), float(bound), n)


def gauss_sum(ctx: FieldCtx, chi: MultChar, *, max_terms: int = DEFAULT_MAX_TERMS) -> ComplexVal:
    """G(chi) = sum over nonzero x of chi(x) psi(x) on chi's field."""
    chi.check(ctx)
    size = _field_size(ctx, chi.level) - 1
    if size > max_terms:
        raise BudgetExceeded(f"Gauss sum over {size} terms exceeds the budget of {max_terms}")
    r = chi.reduced()
    p = ctx.p
    tr = ctx.level_trace_p(chi.level)
    e = _exponents(size)
    idx = (e * r.index % r.order) * p + tr
    counts = np.bincount(idx, minlength=r.order * p).reshape(r.order, p)
    return _combine(counts, r.order, p)


def gauss_sums_all(ctx: FieldCtx, k: int, level: Level = Level.Q6) -> np.ndarray:
    """G(chi^j) for j = 0..k-1, chi of order k and index 1 (one pass plus a DFT)."""
    MultChar(level, k).check(ctx)
    p = ctx.p
    size = _field_size(ctx, level) - 1
    e = _exponents(size)
    counts = np.bincount((e % k) * p + ctx.level_trace_p(level), minlength=k * p).reshape(k, p)
    per_class = counts @ np.exp(2j * np.pi * np.arange(p) / p)
    a = np.arange(k)
    return np.exp(2j * np.pi * np.outer(a, a) / k) @ per_class


def gauss_periods(ctx: FieldCtx, k: int, level: Level = Level.Q6):
    """All k Gauss periods psi(C_i), directly and through the Gauss-sum expansion.

    Returns (direct, expansion) as complex arrays indexed by i.
    """
    MultChar(level, k).check(ctx)
    p = ctx.p
    size = _field_size(ctx, level) - 1
    e = _exponents(size)
    counts = np.bincount((e % k) * p + ctx.level_trace_p(level), minlength=k * p).reshape(k, p)
    direct = counts @ np.exp(2j * np.pi * np.arange(p) / p)
    g = gauss_sums_all(ctx, k, level)
    a = np.arange(k)
    expansion = (np.exp(-2j * np.pi * np.outer(a, a) / k) @ g) / k
    return direct, expansion


def gauss_period(ctx: FieldCtx, i: int, k: int, level: Level = Level.Q6):
    direct, expansion = gauss_periods(ctx, k, level)
    return complex(direct[i % k]), complex(expansion[i % k])


# ---------------------------------------------------------------------------
# identities


@dataclass
class IdentityResult:
    name: str
    parameters: dict
    lhs: complex
    rhs: complex
    tolerance: float
    note: str = ""

    @property
    def deviation(self) -> float:
        return abs(complex(self.lhs) - complex(self.rhs))

    @property
    def passed(self) -> bool:
        return self.deviation < self.tolerance

    def to_dict(self) -> dict:
        lhs, rhs = complex(self.lhs), complex(self.rhs)
        d = {
            "name": self.name,
            "parameters": self.parameters,
            "lhs": [lhs.real, lhs.imag],
            "rhs": [rhs.real, rhs.imag],
            "abs_deviation": self.deviation,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }
        if self.note:
            d["note"] = self.note
        return d


def _tol(ctx, level, scale=1e-6):
    return scale * math.sqrt(_field_size(ctx, level))


def rho(q: int) -> int:
    """Sign of G_{q^6}(chi_4) for q = 3 (mod 4): -1 when q = 3 (mod 8), +1 when q = 7 (mod 8)."""
    if q % 4 != 3:
        raise BadCongruence(f"q = {q}: q = 3 (mod 4) required")
    return -1 if q % 8 == 3 else 1


def semiprimitive_sign(p: int, degree: int, m: int):
    """(sign, s, t) for a character of order m > 2 on F_{p^degree}, or NotApplicable."""
    if m <= 2:
        raise NotApplicable("semi-primitive evaluation needs order m > 2")
    if math.gcd(p, m) != 1:
        raise NotApplicable(f"p = {p} divides m = {m}")
    s = None
    for cand in range(1, multiplicative_order(p, m) + 1):
        if pow(p, cand, m) == m - 1:
            s = cand
            break
    if s is None:
        raise NotApplicable(f"p = {p} is not semi-primitive modulo {m}")
    if degree % (2 * s):
        raise NotApplicable(f"2s = {2 * s} does not divide the degree {degree}")
    t = degree // (2 * s)
    if p == 2:
        return (-1) ** (t - 1), s, t
    return (-1) ** (t - 1 + (p**s + 1) * t // m), s, t


def verify_semiprimitive(ctx: FieldCtx, m: int, level: Level = Level.Q6, index: int = 1) -> IdentityResult:
    degree = ctx.params.degree(level)
    sign, s, t = semiprimitive_sign(ctx.p, degree, m)
    chi = MultChar(level, m, index)
    g = gauss_sum(ctx, chi).value
    expected = sign * ctx.p ** (degree // 2) if degree % 2 == 0 else sign * math.sqrt(ctx.p**degree)
    return IdentityResult(
        "semiprimitive",
        {"m": m, "level": level.name, "index": index, "s": s, "t": t, "sign": sign},
        g,
        expected,
        _tol(ctx, level),
    )


def verify_lifting(ctx: FieldCtx, chi_small: MultChar, to: Level = Level.Q6) -> IdentityResult:
    """G(chi o Norm) = (-1)^(s-1) G(chi)^s for the degree-s extension ``to``."""
    if chi_small.is_trivial:
        raise InvalidInput("the lifting identity needs a nontrivial character")
    s = ctx.params.degree(to) // ctx.params.degree(chi_small.level)
    big = gauss_sum(ctx, chi_small.lift(to)).value
    small = gauss_sum(ctx, chi_small).value
    return IdentityResult(
        "lifting",
        {"chi": chi_small.to_json(), "to": to.name, "s": s},
        big,
        (-1) ** (s - 1) * small**s,
        _tol(ctx, to),
    )


def verify_product_formula(ctx: FieldCtx, chi: MultChar, ell: int) -> IdentityResult:
    """G(chi) = G(chi^ell) / chi^ell(ell) * prod_{i<ell} G(eta^i) / G(chi eta^i)."""
    if chi.is_trivial:
        raise InvalidInput("the product formula needs a nontrivial character")
    eta = MultChar(chi.level, ell, 1).check(ctx)
    if ell % ctx.p == 0:
        raise InvalidInput("ell must be invertible in the field")
    lhs = gauss_sum(ctx, chi).value
    chi_l = chi**ell
    rhs = gauss_sum(ctx, chi_l).value / chi_l.at(ctx, ctx.scalar(ell))
    for i in range(1, ell):
        rhs *= gauss_sum(ctx, eta**i).value / gauss_sum(ctx, chi * eta**i).value
    return IdentityResult(
        "product_formula",
        {"chi": chi.to_json(), "ell": ell},
        lhs,
        rhs,
        _tol(ctx, chi.level),
    )


def main_identity_characters(m: int):
    chi4 = MultChar(Level.Q6, 4, 1)
    chim_small = MultChar(Level.Q3, m, 1)
    return chi4, chim_small, chim_small.lift(Level.Q6)


def verify_main_identity(ctx: FieldCtx, m: int) -> list[IdentityResult]:
    """The chi_4 chi_m identity, its chi_4^3 twin, the squared form and the quadratic-character form."""
    q = ctx.q
    if q % 4 != 3:
        raise BadCongruence(f"q = {q}: q = 3 (mod 4) required")
    if m <= 1 or m % 2 == 0 or ctx.N % m:
        raise NotADivisor(f"m = {m} must be an odd divisor > 1 of N = {ctx.N}")
    sign = rho(q)
    tol = 1e-6 * q**3
    chi4, chim_small, chim = main_identity_characters(m)
    g = lambda c: gauss_sum(ctx, c).value  # noqa: E731
    g_main = g(chi4 * chim)
    params = {"q": q, "m": m, "rho": sign}
    chi2_small = MultChar(Level.Q3, 2, 1)
    return [
        IdentityResult("main_identity_twin", params, g_main, g(chi4**3 * chim), tol),
        IdentityResult(
            "main_identity",
            params,
            g_main,
            sign * g(chim_small**4) * g(chim_small**-2),
            tol,
        ),
        IdentityResult(
            "main_identity_squared",
            params,
            g_main**2,
            g(chim**4) * g(chim**-2),
            tol * q**3,
        ),
        IdentityResult(
            "main_identity_quadratic_form",
            params,
            g_main,
            sign * q**3 * g(chi2_small * chim_small**2) / g(chi2_small),
            tol,
        ),
    ]


def verify_singer_gauss(ctx: FieldCtx, j: int, singer_set) -> IdentityResult:
    """G_{q^3}(chi) = q sum_{s in S} chi(omega^s) for chi of order N, index -j."""
    N = ctx.N
    if j % N == 0:
        raise InvalidInput("j must be nonzero mod N")
    chi = MultChar(Level.Q3, N, -j)
    lhs = gauss_sum(ctx, chi).value
    rhs = ctx.q * sum(_root(chi.index * s, N) for s in singer_set)
    return IdentityResult("singer_gauss", {"j": j}, lhs, rhs, _tol(ctx, Level.Q3))


def verify_basic(ctx: FieldCtx, chi: MultChar) -> IdentityResult:
    """|G|^2 = field size for nontrivial chi, G = -1 for trivial chi."""
    g = gauss_sum(ctx, chi).value
    size = _field_size(ctx, chi.level)
    if chi.is_trivial:
        return IdentityResult("trivial_character", {"chi": chi.to_json()}, g, -1, _tol(ctx, chi.level))
    return IdentityResult(
        "absolute_value", {"chi": chi.to_json()}, abs(g) ** 2, size, 1e-6 * size
    )


def verify_conjugation(ctx: FieldCtx, chi: MultChar) -> IdentityResult:
    """G(chi^-1) = chi(-1) conj(G(chi))."""
    lhs = gauss_sum(ctx, chi.conj()).value
    rhs = chi.at(ctx, ctx.scalar(-1)) * gauss_sum(ctx, chi).value.conjugate()
    return IdentityResult("conjugation", {"chi": chi.to_json()}, lhs, rhs, _tol(ctx, chi.level))


def verify_galois(ctx: FieldCtx, chi: MultChar) -> IdentityResult:
    """G(chi^p) = G(chi)."""
    lhs = gauss_sum(ctx, chi ** ctx.p).value
    rhs = gauss_sum(ctx, chi).value
    return IdentityResult("galois", {"chi": chi.to_json()}, lhs, rhs, _tol(ctx, chi.level))


def random_character(ctx: FieldCtx, rng: random.Random, level: Level | None = None) -> MultChar:
    if level is None:
        level = rng.choice([Level.Q, Level.Q3, Level.Q6])
    k = rng.choice([d for d in divisors(_field_size(ctx, level) - 1) if d > 1])
    return MultChar(level, k, rng.randrange(1, k))


@dataclass
class CharsumReport:
    q: int
    identities: list[IdentityResult] = field(default_factory=list)
    skipped: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.identities)

    @property
    def max_deviation(self) -> float:
        return max((r.deviation for r in self.identities), default=0.0)

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "pass": self.passed,
            "max_abs_deviation": self.max_deviation,
            "identities": [r.to_dict() for r in self.identities],
            "skipped": self.skipped,
        }


def run_charsum_suite(
    ctx: FieldCtx,
    *,
    singer_set=None,
    property_samples: int = 50,
    galois_samples: int = 20,
    seed: int = 0,
    tol_scale: float = 1e-6,
) -> CharsumReport:
    """Every identity that applies at this q, over all odd divisors m > 1 of N.

    Tolerances are ``tol_scale`` times each identity's natural magnitude
    (sqrt of the field size, or q^3 for the chi_4 chi_m identities).
    """
    q = ctx.q
    rep = CharsumReport(q)
    if q % 4 != 3:
        raise BadCongruence(f"q = {q}: q = 3 (mod 4) required")
    add = rep.identities.append
    for m in divisors(ctx.N):
        if m > 1 and m % 2:
            rep.identities.extend(verify_main_identity(ctx, m))
    add(verify_semiprimitive(ctx, 4))
    rep.identities[-1].parameters["rho"] = rho(q)
    # quadratic character of F_{q^3}: G^2 = -q^3 since -1 is a nonsquare there
    g2 = gauss_sum(ctx, MultChar(Level.Q3, 2, 1)).value
    add(IdentityResult("quadratic_q3_square", {"q": q}, g2**2, -(q**3), 1e-6 * q**3))
    for m in (d for d in divisors(ctx.N) if d > 1):
        add(verify_lifting(ctx, MultChar(Level.Q3, m, 1)))
    add(verify_lifting(ctx, MultChar(Level.Q3, 2, 1)))
    add(verify_product_formula(ctx, MultChar(Level.Q6, 4, 1), 2))
    for m in (d for d in divisors(ctx.N) if d > 1 and d % 2):
        chi4, _, chim = main_identity_characters(m)
        add(verify_product_formula(ctx, chi4 * chim, 4))
        add(verify_product_formula(ctx, MultChar(Level.Q3, 2, 1) * MultChar(Level.Q3, m, 2), 2))
    if singer_set is not None:
        js = range(1, ctx.N) if ctx.N <= 200 else range(1, 200)
        for j in js:
            add(verify_singer_gauss(ctx, j, singer_set))
    rng = random.Random(seed)
    for _ in range(property_samples):
        chi = random_character(ctx, rng)
        add(verify_conjugation(ctx, chi))
        add(verify_basic(ctx, chi))
    for _ in range(galois_samples):
        add(verify_galois(ctx, random_character(ctx, rng)))
    for level in (Level.Q, Level.Q3, Level.Q6):
        add(verify_basic(ctx, MultChar(level, 1, 0)))
    for r in rep.identities:
        r.tolerance *= tol_scale / 1e-6
    return rep


def charsum_check(ctx: FieldCtx, **kwargs) -> CheckResult:
    t0 = time.perf_counter()
    rep = run_charsum_suite(ctx, **kwargs)
    bad = [r for r in rep.identities if not r.passed]
    details = {
        "identities": len(rep.identities),
        "max_abs_deviation": rep.max_deviation,
        "failed": [r.to_dict() for r in bad[:10]],
    }
    if bad:
        details["witness"] = bad[0].to_dict()
    return CheckResult(
        "gauss",
        not bad,
        details,
        "; ".join(f"{r.name} {r.parameters}: deviation {r.deviation:.3g}" for r in bad[:3]),
        time.perf_counter() - t0,
    )
