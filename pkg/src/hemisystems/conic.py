"""The conic Tr_{q^3/q}(x^2) = 0 of PG(2, q) and the partition of a Singer line it induces.

PG(2, q) is modelled on F_{q^3}: points are <omega^i>, i in Z_N, N = q^2+q+1,
and the line L_c is {<x> : Tr_{q^3/q}(omega^c x) = 0}.  All sets below are
sorted tuples of residues.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, asdict

import numpy as np

from . import kernels
from .errors import InvalidD0
from .field import SENTINEL, FElem, FieldCtx, Level
from .report import CheckResult


@dataclass(frozen=True)
class ConicData:
    q: int
    N: int
    S: tuple
    IQ: tuple
    Is: tuple
    In: tuple
    d0: int
    X: tuple
    S1pp: tuple
    S2pp: tuple
    S1p: tuple
    S2p: tuple
    S1: tuple
    S2: tuple
    eps: int

    def to_json(self) -> dict:
        d = asdict(self)
        return {
            "N": self.N,
            "d0": self.d0,
            "S": list(d["S"]),
            "IQ": list(d["IQ"]),
            "Is": list(d["Is"]),
            "In": list(d["In"]),
            "X": list(d["X"]),
            "S1": list(d["S1"]),
            "S2": list(d["S2"]),
        }


def _omega_log(ctx: FieldCtx, vec) -> np.ndarray:
    """log_omega of F_{q^3} elements given in vector form (zero must not occur)."""
    e = ctx.log[np.asarray(vec, dtype=np.int64)].astype(np.int64)
    if (e == SENTINEL).any():
        raise ValueError("zero has no logarithm")
    step = ctx.q**3 + 1
    if (e % step).any():
        raise ValueError("element outside F_{q^3}")
    return e // step


def _trace_q3_q(ctx, k) -> np.ndarray:
    """Vector forms of Tr_{q^3/q}(omega^k)."""
    return ctx.omega_trace_q[np.asarray(k, dtype=np.int64) % (ctx.q**3 - 1)]


def compute_singer_set(ctx: FieldCtx) -> tuple:
    N = ctx.N
    return tuple(int(i) for i in np.flatnonzero(_trace_q3_q(ctx, np.arange(N)) == 0))


def compute_conic_indices(ctx: FieldCtx):
    """(I_Q, I_s, I_n): Tr_{q^3/q}(omega^(2i)) zero, a nonzero square, a nonsquare of F_q."""
    N = ctx.N
    i = np.arange(N, dtype=np.int64)
    vec = _trace_q3_q(ctx, 2 * i)
    zero = vec == 0
    e = ctx.log[np.where(zero, 1, vec)].astype(np.int64)
    square = (e // ctx.params.num_points) % 2 == 0
    iq = tuple(int(x) for x in i[zero])
    i_s = tuple(int(x) for x in i[~zero & square])
    i_n = tuple(int(x) for x in i[~zero & ~square])
    return iq, i_s, i_n


def compute_X(ctx: FieldCtx, d0: int, iq=None) -> tuple:
    """log_omega of {omega^d Tr(omega^(d0+d)) : d in I_Q, d != d0} and 2 omega^d0, mod 2N."""
    N = ctx.N
    if iq is None:
        iq = compute_conic_indices(ctx)[0]
    if d0 not in iq:
        raise InvalidD0(f"d0 = {d0} is not in I_Q = {list(iq)}")
    others = np.array([d for d in iq if d != d0], dtype=np.int64)
    tr_log = _omega_log(ctx, _trace_q3_q(ctx, d0 + others))
    two = ctx.scalar(2)
    two_log = two.exp // (ctx.q**3 + 1)
    xs = np.concatenate([(others + tr_log) % (2 * N), [(d0 + two_log) % (2 * N)]])
    out = tuple(sorted(int(x) for x in xs))
    if len(set(out)) != len(iq):
        raise AssertionError(f"X has repeated residues: {out}")
    return out


def partition_from_X(X, N):
    """Split X into even / odd parts and push them to S_1, S_2 (mod N)."""
    s1pp = sorted({(x // 2) % N for x in X if x % 2 == 0})
    s2pp = sorted({((x - N) // 2) % N for x in X if x % 2 == 1})
    s1p = sorted({2 * s % N for s in s1pp})
    s2p = sorted({2 * s % N for s in s2pp})
    s1 = sorted({2 * s % N for s in s1p})
    s2 = sorted({2 * s % N for s in s2p})
    return tuple(s1pp), tuple(s2pp), tuple(s1p), tuple(s2p), tuple(s1), tuple(s2)


def build_conic(ctx: FieldCtx, d0: int | None = None) -> ConicData:
    """All conic index sets; d0 defaults to the smallest element of I_Q."""
    q, N = ctx.q, ctx.N
    S = compute_singer_set(ctx)
    iq, i_s, i_n = compute_conic_indices(ctx)
    if d0 is None:
        d0 = iq[0]
    X = compute_X(ctx, d0, iq)
    s1pp, s2pp, s1p, s2p, s1, s2 = partition_from_X(X, N)
    eps = 1 if q % 4 == 1 else -1
    return ConicData(q, N, S, iq, i_s, i_n, int(d0), X, s1pp, s2pp, s1p, s2p, s1, s2, eps)


# ---------------------------------------------------------------------------
# checks


def _sgn_f(ctx, c) -> np.ndarray:
    """sgn(Tr_{q^3/q}(omega^(2c))) for an array of c."""
    vec = _trace_q3_q(ctx, 2 * np.asarray(c, dtype=np.int64))
    out = np.zeros(len(vec), dtype=np.int64)
    nz = vec != 0
    e = ctx.log[vec[nz]].astype(np.int64) // (ctx.q**3 + 1)
    out[nz] = np.where(e % 2 == 0, 1, -1)
    return out


def conic_invariant_failures(ctx: FieldCtx, conic: ConicData) -> list[str]:
    """Exhaustive structural checks on the conic data; returns failure messages."""
    q, N = conic.q, conic.N
    fails = []
    S, IQ = set(conic.S), set(conic.IQ)
    if len(S) != q + 1 or len(IQ) != q + 1 or len(conic.X) != q + 1:
        fails.append("|S|, |I_Q|, |X| must all equal q+1")
    diffs = sorted((a - b) % N for a in S for b in S if a != b)
    if diffs != list(range(1, N)):
        fails.append("S is not a planar difference set")
    if {q * s % N for s in S} != S:
        fails.append("q S != S mod N")
    parts = [set(conic.IQ), set(conic.Is), set(conic.In)]
    if sum(map(len, parts)) != N or set().union(*parts) != set(range(N)):
        fails.append("I_Q, I_s, I_n do not partition Z_N")
    inv2 = pow(2, -1, N)
    if {inv2 * s % N for s in S} != IQ:
        fails.append("I_Q != 2^-1 S mod N")
    if {x % N for x in conic.X} != IQ:
        fails.append("X mod N != I_Q")
    if {q * x % (2 * N) for x in conic.X} != set(conic.X):
        fails.append("q X != X mod 2N")
    if conic.S != compute_singer_set(ctx) or (conic.IQ, conic.Is, conic.In) != compute_conic_indices(ctx):
        fails.append("S or I_Q, I_s, I_n differ from the field")
    elif conic.d0 not in IQ or set(conic.X) != set(compute_X(ctx, conic.d0, conic.IQ)):
        fails.append(f"X is not the set determined by d0 = {conic.d0}")
    if partition_from_X(conic.X, N) != (conic.S1pp, conic.S2pp, conic.S1p, conic.S2p, conic.S1, conic.S2):
        fails.append("S1'', S2'', S1', S2', S1, S2 do not follow from X")
    if len(conic.S1pp) + len(conic.S2pp) != q + 1:
        fails.append("|S1''| + |S2''| != q+1")
    if set(conic.S1) & set(conic.S2) or set(conic.S1) | set(conic.S2) != S:
        fails.append("S1, S2 do not partition S")
    for name, si, spp in (("S1", conic.S1, conic.S1pp), ("S2", conic.S2, conic.S2pp)):
        if set(si) != {4 * s % N for s in spp}:
            fails.append(f"{name} != 4 {name}'' mod N")
        if {q * s % N for s in si} != set(si):
            fails.append(f"q {name} != {name} mod N")
    # tangent / exterior / secant lines
    sg = _sgn_f(ctx, np.arange(N))
    eps = conic.eps
    expected = {0: 1, -eps: 0, eps: 2}
    for c in range(N):
        meets = len({(s - c) % N for s in S} & IQ)
        if meets != expected[int(sg[c])]:
            fails.append(f"line L_{c} meets the conic in {meets} points but sgn = {sg[c]}")
            break
    off = np.array([c for c in range(N) if c not in IQ])
    ext = int((sg[off] == eps).sum())
    if ext != q * (q + 1) // 2 or len(off) - ext != q * (q - 1) // 2:
        fails.append(f"{ext} exterior / {len(off) - ext} interior points")
    return fails


def conic_char_values(ctx: FieldCtx, conic: ConicData):
    """Exact counts for psi(omega^c D_1), c in Z_N, and psi(omega^c D_{1,1}), c in Z_2N.

    Returns (values_D1: int array, counts_D11: int array of shape (2N, p)).
    """
    N, q3m1, p = conic.N, ctx.q**3 - 1, ctx.p
    trq3 = ctx.level_trace_p(Level.Q3)
    k = np.arange(q3m1, dtype=np.int64)
    iq_mask = np.zeros(N, dtype=bool)
    iq_mask[list(conic.IQ)] = True
    x_mask = np.zeros(2 * N, dtype=bool)
    x_mask[list(conic.X)] = True
    d1 = k[iq_mask[k % N]]
    d11 = k[x_mask[k % (2 * N)]]
    c1 = kernels.character_counts(d1, np.arange(N), trq3, q3m1, p)
    if (c1[:, 1:] != c1[:, 1:2]).any():
        raise AssertionError("D_1 character value is not rational")
    values = c1[:, 0] - c1[:, 1]
    c11 = kernels.character_counts(d11, np.arange(2 * N), trq3, q3m1, p)
    return values, c11


def check_conic(ctx: FieldCtx, conic: ConicData, tol: float = 1e-6) -> CheckResult:
    """Structural invariants plus the three-valued and four-valued character spectra."""
    from .charsums import MultChar, gauss_sum

    t0 = time.perf_counter()
    q, N, eps, p = conic.q, conic.N, conic.eps, ctx.p
    fails = conic_invariant_failures(ctx, conic)

    values, c11 = conic_char_values(ctx, conic)
    cls = np.empty(N, dtype=object)
    cls[list(conic.IQ)] = "IQ"
    cls[list(conic.Is)] = "Is"
    cls[list(conic.In)] = "In"
    want = {"IQ": -1, "Is": -1 + eps * q, "In": -1 - eps * q}
    for c in range(N):
        if values[c] != want[cls[c]]:
            fails.append(f"psi(omega^{c} D_1) = {values[c]}, expected {want[cls[c]]}")
            break

    g_eta = gauss_sum(ctx, MultChar(Level.Q, 2, 1)).value
    eta2 = MultChar(Level.Q, 2, 1).at(ctx, ctx.scalar(2))
    zeta = np.exp(2j * np.pi * np.arange(p) / p)
    xs = set(conic.X)
    four = {
        "X": (-1 + eta2 * q * g_eta) / 2,
        "X+N": (-1 - eta2 * q * g_eta) / 2,
        "Is": (-1 + eps * q) / 2,
        "In": (-1 - eps * q) / 2,
    }
    seen = {}
    max_dev = 0.0
    for c in range(2 * N):
        val = complex(np.dot(c11[c], zeta))
        if cls[c % N] == "IQ":
            key = "X" if c in xs else "X+N"
        else:
            key = cls[c % N]
        dev = abs(val - four[key])
        max_dev = max(max_dev, dev)
        seen.setdefault(key, val)
        if dev > tol:
            fails.append(f"psi(omega^{c} D_11) = {val:.6f}, expected {four[key]:.6f}")
            break
    details = {
        "S": list(conic.S),
        "IQ": list(conic.IQ),
        "X": list(conic.X),
        "D1_values": sorted({int(v) for v in values}),
        "D11_values": {k: [v.real, v.imag] for k, v in four.items()},
        "D11_max_abs_deviation": max_dev,
        "gauss_sum_eta": [g_eta.real, g_eta.imag],
        "eta_2": int(round(eta2.real)),
    }
    return CheckResult(
        "conic",
        not fails,
        details,
        "; ".join(fails),
        time.perf_counter() - t0,
    )


def x_for_each_base_point(ctx: FieldCtx, conic: ConicData) -> dict:
    """For each d in I_Q: whether X built from d equals X or X + N (mod 2N)."""
    N = conic.N
    base = set(conic.X)
    shifted = {(x + N) % (2 * N) for x in base}
    out = {}
    for d in conic.IQ:
        xd = set(compute_X(ctx, d, conic.IQ))
        out[d] = "X" if xd == base else "X+N" if xd == shifted else "other"
    return out


__all__ = [
    "ConicData",
    "FElem",
    "build_conic",
    "check_conic",
    "compute_X",
    "compute_conic_indices",
    "compute_singer_set",
    "conic_char_values",
    "conic_invariant_failures",
    "partition_from_X",
    "x_for_each_base_point",
]
