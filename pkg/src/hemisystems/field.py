"""Arithmetic in F_{q^6} in discrete-log form.

Elements are stored as exponents of a fixed primitive element ``gamma``
(the companion root of the lexicographically smallest primitive polynomial
of degree 6f over F_p).  Addition goes through a Zech table; the vector
form (an integer whose base-p digits are the coordinates in the basis
1, gamma, ..., gamma^(n-1)) is only used to build tables and to apply
F_p-linear maps such as traces in bulk.

The subfield tower is F_p < F_q < F_{q^3} < F_{q^6}, addressed by `Level`.
"""

from __future__ import annotations

import cmath
import enum
import itertools
import logging
import struct
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np

from . import kernels
from .errors import (
    DivisionByZero,
    LevelMismatch,
    NonPrime,
    NoPrimitivePolynomialFound,
    NotInSubfield,
    TableBudgetExceeded,
)
from .numbers import is_prime, multiplicative_order, prime_factors

log = logging.getLogger(__name__)

SENTINEL = 0xFFFFFFFF
DEFAULT_MAX_ORDER = 50_000_000
CACHE_MAGIC = b"FF6C"
CACHE_VERSION = 1
_CHUNK = 1 << 18


class Level(enum.Enum):
    P = "p"
    Q = "q"
    Q3 = "q3"
    Q6 = "q6"


@dataclass(frozen=True)
class FieldParams:
    p: int
    f: int

    @property
    def q(self):
        return self.p**self.f

    @property
    def n(self):
        """Degree of F_{q^6} over F_p."""
        return 6 * self.f

    @property
    def N(self):
        q = self.q
        return q * q + q + 1

    @property
    def order(self):
        """Multiplicative order q^6 - 1 of gamma."""
        return self.q**6 - 1

    @property
    def num_points(self):
        """Number of points of PG(5, q)."""
        return self.order // (self.q - 1)

    @property
    def moduli(self):
        q, N = self.q, self.N
        return (q - 1, q**3 - 1, q**6 - 1, N, 2 * N, 4 * N)

    @property
    def is_construction_field(self):
        return self.q % 4 == 3

    def degree(self, level: Level) -> int:
        return {Level.P: 1, Level.Q: self.f, Level.Q3: 3 * self.f, Level.Q6: 6 * self.f}[level]


@dataclass(frozen=True, slots=True)
class FElem:
    """A field element: ``exp`` is the exponent of gamma, or None for zero."""

    exp: int | None = None

    @property
    def is_zero(self):
        return self.exp is None

    def __repr__(self):
        return "FElem(0)" if self.exp is None else f"FElem(g^{self.exp})"


ZERO = FElem(None)


# ---------------------------------------------------------------------------
# primitive polynomials


def _poly_mulmod(a, b, low, p):
    """Multiply residues a, b modulo the monic polynomial x^n + sum(low[i] x^i)."""
    n = len(low)
    prod = [0] * (2 * n - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    for k in range(2 * n - 2, n - 1, -1):
        c = prod[k] % p
        if c:
            for i in range(n):
                prod[k - n + i] -= c * low[i]
    return [c % p for c in prod[:n]]


def _poly_powmod_x(e, low, p):
    n = len(low)
    result = [1] + [0] * (n - 1)
    base = [0, 1] + [0] * (n - 2) if n > 1 else [(-low[0]) % p]
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, low, p)
        base = _poly_mulmod(base, base, low, p)
        e >>= 1
    return result


def is_primitive(low, p):
    """Whether x^n + sum(low[i] x^i) is primitive over F_p."""
    n = len(low)
    if low[0] % p == 0:
        return False
    order = p**n - 1
    one = [1] + [0] * (n - 1)
    if _poly_powmod_x(order, low, p) != one:
        return False
    return all(_poly_powmod_x(order // r, low, p) != one for r in prime_factors(order))


def find_primitive_polynomial(p, n):
    """Lexicographically smallest monic primitive polynomial of degree n over F_p.

    Candidates are ordered by the tuple (c_0, c_1, ..., c_{n-1}) of their
    non-leading coefficients.  Returns all n+1 coefficients, low to high.
    """
    # the norm (-1)^n c_0 of a primitive element must generate F_p^*
    roots = {g for g in range(1, p) if multiplicative_order(g, p) == p - 1}
    for low in itertools.product(range(p), repeat=n):
        if (-1) ** n * low[0] % p not in roots:
            continue
        if is_primitive(list(low), p):
            return list(low) + [1]
    raise NoPrimitivePolynomialFound(f"no primitive polynomial of degree {n} over F_{p}")


# ---------------------------------------------------------------------------
# the field context


class FieldCtx:
    """Immutable arithmetic context for F_{q^6}, q = p^f."""

    def __init__(self, params: FieldParams, polynomial, antilog, zech, logt=None):
        self.params = params
        self.polynomial = tuple(int(c) for c in polynomial)
        self.antilog = antilog
        self.zech = zech
        if logt is None:
            logt = _log_table(antilog, params)
        self.log = logt
        for arr in (self.antilog, self.zech, self.log):
            arr.setflags(write=False)
        self._pw = params.p ** np.arange(params.n, dtype=np.int64)

    def __repr__(self):
        return f"FieldCtx(p={self.params.p}, f={self.params.f}, poly={list(self.polynomial)})"

    # -- shorthands ---------------------------------------------------------
    @property
    def p(self):
        return self.params.p

    @property
    def q(self):
        return self.params.q

    @property
    def N(self):
        return self.params.N

    @property
    def order(self):
        return self.params.order

    @property
    def one(self):
        return FElem(0)

    @property
    def gamma(self):
        return FElem(1 % self.order)

    @property
    def omega(self):
        """Primitive element gamma^(q^3+1) of F_{q^3}."""
        return FElem((self.q**3 + 1) % self.order)

    def elem(self, e: int) -> FElem:
        return FElem(e % self.order)

    def scalar(self, c: int) -> FElem:
        """The prime-field element c mod p."""
        c %= self.p
        return ZERO if c == 0 else FElem(int(self.log[c]))

    def to_vector(self, x: FElem) -> int:
        return 0 if x.exp is None else int(self.antilog[x.exp])

    def from_vector(self, v: int) -> FElem:
        e = int(self.log[v])
        return ZERO if e == SENTINEL else FElem(e)

    # -- arithmetic ---------------------------------------------------------
    def mul(self, x: FElem, y: FElem) -> FElem:
        if x.exp is None or y.exp is None:
            return ZERO
        return FElem((x.exp + y.exp) % self.order)

    def add(self, x: FElem, y: FElem) -> FElem:
        if x.exp is None:
            return y
        if y.exp is None:
            return x
        z = int(self.zech[(y.exp - x.exp) % self.order])
        if z == SENTINEL:
            return ZERO
        return FElem((x.exp + z) % self.order)

    def neg(self, x: FElem) -> FElem:
        if x.exp is None:
            return ZERO
        half = self.order // 2 if self.p != 2 else 0
        return FElem((x.exp + half) % self.order)

    def sub(self, x: FElem, y: FElem) -> FElem:
        return self.add(x, self.neg(y))

    def inv(self, x: FElem) -> FElem:
        if x.exp is None:
            raise DivisionByZero("inverse of zero")
        return FElem(-x.exp % self.order)

    def pow(self, x: FElem, k: int) -> FElem:
        if x.exp is None:
            if k < 0:
                raise DivisionByZero("negative power of zero")
            return self.one if k == 0 else ZERO
        return FElem(x.exp * k % self.order)

    def frobenius(self, x: FElem, k: int) -> FElem:
        """x^(q^k)."""
        if x.exp is None:
            return ZERO
        return FElem(x.exp * pow(self.q, k % 6, self.order) % self.order)

    def _frobenius_p(self, x: FElem, k: int) -> FElem:
        if x.exp is None:
            return ZERO
        return FElem(x.exp * pow(self.p, k, self.order) % self.order)

    # -- subfields ----------------------------------------------------------
    def level_step(self, level: Level) -> int:
        """Exponent of the generator of the subfield at ``level`` as a power of gamma."""
        return self.order // (self.p ** self.params.degree(level) - 1)

    def in_level(self, x: FElem, level: Level) -> bool:
        return x.exp is None or x.exp % self.level_step(level) == 0

    def trace(self, x: FElem, top: Level = Level.Q6, bottom: Level = Level.Q) -> FElem:
        dt, db = self.params.degree(top), self.params.degree(bottom)
        if dt % db:
            raise LevelMismatch(f"{bottom.name} is not a subfield of {top.name}")
        if not self.in_level(x, top):
            raise LevelMismatch(f"{x} does not lie in the {top.name} field")
        acc = ZERO
        for i in range(dt // db):
            acc = self.add(acc, self._frobenius_p(x, db * i))
        return acc

    def sgn(self, x: FElem) -> int:
        """+1, -1, 0 for a nonzero square, a nonsquare, or zero of F_{q^3}."""
        if x.exp is None:
            return 0
        step = self.q**3 + 1
        if x.exp % step:
            raise NotInSubfield(f"{x} is not in F_{{q^3}}")
        return 1 if (x.exp // step) % 2 == 0 else -1

    def prime_field_int(self, x: FElem) -> int:
        """Integer lift in [0, p) of an element of F_p."""
        v = self.to_vector(x)
        if v >= self.p:
            raise NotInSubfield(f"{x} is not in F_p")
        return v

    def additive_char(self, a: FElem, x: FElem, level: Level = Level.Q6) -> complex:
        """Canonical additive character of the ``level`` field evaluated at a*x."""
        t = self.prime_field_int(self.trace(self.mul(a, x), level, Level.P))
        return cmath.exp(2j * cmath.pi * t / self.p)

    # -- bulk linear algebra over F_p ---------------------------------------
    def digits(self, vecs: np.ndarray) -> np.ndarray:
        vecs = np.asarray(vecs, dtype=np.int64)
        return (vecs[:, None] // self._pw[None, :]) % self.p

    def from_digits(self, digits: np.ndarray) -> np.ndarray:
        return digits @ self._pw

    def partial_trace_matrix(self, step_degree: int, terms: int) -> np.ndarray:
        """Matrix of x -> sum_{i<terms} x^(p^(step_degree*i)) on the basis gamma^j."""
        n = self.params.n
        cols = []
        for j in range(n):
            x = FElem(j)
            acc = ZERO
            for i in range(terms):
                acc = self.add(acc, self._frobenius_p(x, step_degree * i))
            cols.append(self.digits(np.array([self.to_vector(acc)]))[0])
        return np.array(cols, dtype=np.int64).T

    def apply_linear(self, matrix: np.ndarray, exps: np.ndarray) -> np.ndarray:
        """Vector forms of L(gamma^e) for each exponent e (chunked)."""
        exps = np.asarray(exps, dtype=np.int64)
        out = np.empty(len(exps), dtype=np.int64)
        mt = matrix.T
        for lo in range(0, len(exps), _CHUNK):
            d = self.digits(self.antilog[exps[lo:lo + _CHUNK]])
            out[lo:lo + _CHUNK] = self.from_digits((d @ mt) % self.p)
        return out

    def _trace_table(self, level: Level, bottom: Level) -> np.ndarray:
        """Vector forms of Tr_{level/bottom}(g^e) for the generator g of ``level``."""
        deg_top, deg_bot = self.params.degree(level), self.params.degree(bottom)
        mat = self.partial_trace_matrix(deg_bot, deg_top // deg_bot)
        size = self.p**deg_top - 1
        return self.apply_linear(mat, np.arange(size, dtype=np.int64) * self.level_step(level))

    @cached_property
    def tr_p(self) -> np.ndarray:
        """Tr_{q^6/p}(gamma^e) as uint8, for every e in Z_{q^6-1}."""
        t = self._trace_table(Level.Q6, Level.P).astype(np.uint8)
        t.setflags(write=False)
        return t

    def level_trace_p(self, level: Level) -> np.ndarray:
        """Tr_{level/p}(g^e) for the generator g of the subfield at ``level``."""
        if level is Level.Q6:
            return self.tr_p
        return self._level_trace_p_cache(level)

    def _level_trace_p_cache(self, level):
        cache = self.__dict__.setdefault("_ltp", {})
        if level not in cache:
            t = self._trace_table(level, Level.P).astype(np.uint8)
            t.setflags(write=False)
            cache[level] = t
        return cache[level]

    @cached_property
    def tr_q_zero(self) -> np.ndarray:
        """Boolean table: Tr_{q^6/q}(gamma^e) == 0."""
        if self.params.f == 1:
            z = self.tr_p == 0
        else:
            z = self._trace_table(Level.Q6, Level.Q) == 0
        z.setflags(write=False)
        return z

    @cached_property
    def omega_trace_q(self) -> np.ndarray:
        """Vector forms of Tr_{q^3/q}(omega^k) for k in Z_{q^3-1}."""
        t = self._trace_table(Level.Q3, Level.Q)
        t.setflags(write=False)
        return t

    # -- persistence --------------------------------------------------------
    def save(self, path) -> None:
        p, f = self.params.p, self.params.f
        header = CACHE_MAGIC + struct.pack("<IIII", CACHE_VERSION, p, f, len(self.polynomial))
        header += struct.pack(f"<{len(self.polynomial)}I", *self.polynomial)
        path = Path(path)
        tmp = path.with_suffix(path.suffix + ".tmp")
        with open(tmp, "wb") as fh:
            fh.write(header)
            fh.write(self.antilog.astype("<u4").tobytes())
            fh.write(self.zech.astype("<u4").tobytes())
        tmp.replace(path)

    @classmethod
    def load(cls, path) -> "FieldCtx":
        data = Path(path).read_bytes()
        if data[:4] != CACHE_MAGIC:
            raise ValueError(f"{path}: not a field table cache")
        version, p, f, ncoef = struct.unpack_from("<IIII", data, 4)
        if version != CACHE_VERSION:
            raise ValueError(f"{path}: unsupported cache version {version}")
        off = 20
        poly = struct.unpack_from(f"<{ncoef}I", data, off)
        off += 4 * ncoef
        params = FieldParams(p, f)
        m = params.order
        body = np.frombuffer(data, dtype="<u4", count=2 * m, offset=off)
        antilog = body[:m].astype(np.uint32)
        zech = body[m:].astype(np.uint32)
        return cls(params, poly, antilog, zech)


def _log_table(antilog, params):
    logt = np.full(params.p**params.n, SENTINEL, dtype=np.uint32)
    logt[antilog] = np.arange(params.order, dtype=np.uint32)
    return logt


def cache_path(cache_dir, p, f, polynomial) -> Path:
    tag = "-".join(str(c) for c in polynomial)
    return Path(cache_dir) / f"gf_{p}_{f}_{tag}.ff6c"


def build_field(p: int, f: int = 1, *, max_order: int = DEFAULT_MAX_ORDER, cache_dir=None) -> FieldCtx:
    """Build (or load from ``cache_dir``) the arithmetic context for F_{(p^f)^6}."""
    if not is_prime(p):
        raise NonPrime(f"{p} is not prime")
    if f < 1:
        raise NonPrime(f"extension degree must be positive, got {f}")
    params = FieldParams(p, f)
    if params.q**6 > max_order:
        raise TableBudgetExceeded(
            f"q^6 = {params.q ** 6} exceeds the table budget of {max_order} elements"
        )
    poly = find_primitive_polynomial(p, params.n)
    path = cache_path(cache_dir, p, f, poly) if cache_dir is not None else None
    if path is not None and path.exists():
        try:
            ctx = FieldCtx.load(path)
            if ctx.polynomial == tuple(poly):
                return ctx
        except (ValueError, struct.error):
            log.warning("ignoring unreadable cache file %s", path)
    antilog = kernels.antilog_table(p, poly[:-1])
    logt = _log_table(antilog, params)
    zech = kernels.zech_table(antilog, logt, p)
    ctx = FieldCtx(params, poly, antilog, zech, logt)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        ctx.save(path)
    return ctx


def field_for_q(q: int, **kwargs) -> FieldCtx:
    """Build the context for a prime power q given directly."""
    p, f = split_prime_power(q)
    return build_field(p, f, **kwargs)


def split_prime_power(q: int):
    if q < 2:
        raise NonPrime(f"{q} is not a prime power")
    factors = prime_factors(q)
    if len(factors) != 1:
        raise NonPrime(f"{q} is not a prime power")
    p = factors[0]
    f = 0
    while q % p == 0:
        q //= p
        f += 1
    return p, f
