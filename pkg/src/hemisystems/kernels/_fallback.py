"""Pure numpy implementations of the hot kernels.

Every function here has a twin with the same signature in ``_ckernels.pyx``.
Exponents are int64 throughout; tables are the uint32 / uint8 / bool arrays
held by `FieldCtx`.
"""

import numpy as np

SENTINEL = 0xFFFFFFFF
_CELLS = 1 << 22


def antilog_table(p, low):
    """Vector forms of gamma^e for e in [0, p^n - 1), gamma a root of x^n + sum(low[i] x^i).

    Doubles the known block with a matrix power of the companion matrix, so
    the work is vectorised instead of a length-p^n recurrence.
    """
    n = len(low)
    order = p**n - 1
    comp = np.zeros((n, n), dtype=np.int64)
    for i in range(1, n):
        comp[i, i - 1] = 1
    comp[:, n - 1] = [(-c) % p for c in low]
    digits = np.zeros((order, n), dtype=np.int64)
    digits[0, 0] = 1
    known = 1
    step = comp.copy()
    while known < order:
        take = min(known, order - known)
        digits[known:known + take] = (digits[:take] @ step.T) % p
        known += take
        step = (step @ step) % p
    pw = p ** np.arange(n, dtype=np.int64)
    return (digits @ pw).astype(np.uint32)


def zech_table(antilog, logt, p):
    vec = antilog.astype(np.int64)
    d0 = vec % p
    plus_one = vec - d0 + (d0 + 1) % p
    return logt[plus_one].astype(np.uint32)


def enumerate_lines(points, orth_zero, zech, order, npoints, q, q3):
    """All totally singular lines through the given sorted singular points.

    Each line is emitted once, from its smallest point a and second-smallest
    point b; the remaining q-1 points are <gamma^b + lambda gamma^a>.
    Returns an int64 array of shape (L, q+1), rows sorted ascending.
    """
    points = np.asarray(points, dtype=np.int64)
    bq3 = points * q3 % order
    lam = np.arange(q - 1, dtype=np.int64) * npoints
    blocks = []
    for i in range(len(points) - 1):
        a = int(points[i])
        tail = points[i + 1:]
        b = tail[orth_zero[(a + bq3[i + 1:]) % order]]
        if len(b) == 0:
            continue
        z = zech[(a + lam[None, :] - b[:, None]) % order].astype(np.int64)
        if (z == SENTINEL).any():
            raise AssertionError("line through two distinct points collapsed")
        others = (b[:, None] + z) % order % npoints
        keep = others.min(axis=1) > b
        if not keep.any():
            continue
        rows = np.empty((int(keep.sum()), q + 1), dtype=np.int64)
        rows[:, 0] = a
        rows[:, 1] = b[keep]
        rows[:, 2:] = np.sort(others[keep], axis=1)
        blocks.append(rows)
    if not blocks:
        return np.empty((0, q + 1), dtype=np.int64)
    return np.concatenate(blocks)


def perp_counts(points, members, orth_zero, order, q3):
    """For each point a: number of b in ``members`` with B(gamma^a, gamma^b) = 0."""
    points = np.asarray(points, dtype=np.int64)
    mq3 = np.asarray(members, dtype=np.int64) * q3 % order
    out = np.empty(len(points), dtype=np.int64)
    rows = max(1, _CELLS // max(1, len(mq3)))
    for lo in range(0, len(points), rows):
        a = points[lo:lo + rows]
        out[lo:lo + rows] = orth_zero[(a[:, None] + mq3[None, :]) % order].sum(axis=1)
    return out


def character_counts(d_exps, reps, tr_p, order, p):
    """counts[r, t] = #{x in D : Tr_{q^6/p}(gamma^reps[r] * x) = t}."""
    d_exps = np.asarray(d_exps, dtype=np.int64)
    out = np.empty((len(reps), p), dtype=np.int64)
    for k, r in enumerate(np.asarray(reps, dtype=np.int64)):
        out[k] = np.bincount(tr_p[(d_exps + r) % order], minlength=p)
    return out


def common_neighbor_counts(d_exps, g_exps, zech, order, in_class, modulus):
    """For each g: #{d in D : d + g in D}, where D = {x : log(x) mod modulus in class}."""
    d_exps = np.asarray(d_exps, dtype=np.int64)
    out = np.empty(len(g_exps), dtype=np.int64)
    for k, g in enumerate(np.asarray(g_exps, dtype=np.int64)):
        z = zech[(g - d_exps) % order].astype(np.int64)
        ok = z != SENTINEL
        e = (d_exps[ok] + z[ok]) % order
        out[k] = int(in_class[e % modulus].sum())
    return out
