# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled twins of the kernels in ``_fallback.py`` (same signatures, same results)."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint32_t, uint8_t

cnp.import_array()

cdef uint32_t SENTINEL = 0xFFFFFFFF


def antilog_table(int p, low):
    cdef int n = len(low)
    cdef int64_t order = int(p) ** n - 1
    cdef const int64_t[:] lw = np.asarray(low, dtype=np.int64)
    cdef int64_t[:] dig = np.zeros(n, dtype=np.int64)
    cdef int64_t[:] pw = np.int64(p) ** np.arange(n, dtype=np.int64)
    out_arr = np.empty(order, dtype=np.uint32)
    cdef uint32_t[:] out = out_arr
    cdef int64_t e, v, top
    cdef int i
    dig[0] = 1
    for e in range(order):
        v = 0
        for i in range(n):
            v += dig[i] * pw[i]
        out[e] = <uint32_t>v
        top = dig[n - 1]
        for i in range(n - 1, 0, -1):
            dig[i] = dig[i - 1]
        dig[0] = 0
        if top:
            for i in range(n):
                dig[i] = (dig[i] + (p - top) * lw[i]) % p
    return out_arr


def zech_table(const uint32_t[:] antilog, const uint32_t[:] logt, int p):
    cdef Py_ssize_t m = antilog.shape[0], e
    out_arr = np.empty(m, dtype=np.uint32)
    cdef uint32_t[:] out = out_arr
    cdef int64_t v, d0
    for e in range(m):
        v = antilog[e]
        d0 = v % p
        out[e] = logt[v - d0 + (d0 + 1) % p]
    return out_arr


def enumerate_lines(points, orth_zero, const uint32_t[:] zech, int64_t order,
                    int64_t npoints, int q, int64_t q3):
    cdef const int64_t[:] pts = np.ascontiguousarray(points, dtype=np.int64)
    cdef const uint8_t[:] orth = np.ascontiguousarray(orth_zero).view(np.uint8)
    cdef Py_ssize_t npts = pts.shape[0], i, j, k, t
    cdef int64_t[:] bq3 = np.empty(npts, dtype=np.int64)
    cdef int64_t[:] others = np.empty(q + 1, dtype=np.int64)
    cdef int64_t a, b, z, mn, x, cap = 1024, count = 0
    for i in range(npts):
        bq3[i] = pts[i] * q3 % order
    out_arr = np.empty((cap, q + 1), dtype=np.int64)
    cdef int64_t[:, :] out = out_arr
    for i in range(npts - 1):
        a = pts[i]
        for j in range(i + 1, npts):
            if not orth[(a + bq3[j]) % order]:
                continue
            b = pts[j]
            mn = npoints
            for k in range(q - 1):
                z = zech[((a + k * npoints - b) % order + order) % order]
                if z == SENTINEL:
                    raise AssertionError("line through two distinct points collapsed")
                x = (b + z) % order % npoints
                others[k] = x
                if x < mn:
                    mn = x
            if mn <= b:
                continue
            if count == cap:
                cap *= 2
                out_arr = np.resize(out_arr, (cap, q + 1))
                out = out_arr
            out[count, 0] = a
            out[count, 1] = b
            # insertion sort of the q-1 remaining points
            for k in range(1, q - 1):
                x = others[k]
                t = k - 1
                while t >= 0 and others[t] > x:
                    others[t + 1] = others[t]
                    t -= 1
                others[t + 1] = x
            for k in range(q - 1):
                out[count, 2 + k] = others[k]
            count += 1
    return np.array(out_arr[:count])


def perp_counts(points, members, orth_zero, int64_t order, int64_t q3):
    cdef const int64_t[:] pts = np.ascontiguousarray(points, dtype=np.int64)
    cdef int64_t[:] mq3 = np.asarray(members, dtype=np.int64) * q3 % order
    cdef const uint8_t[:] orth = np.ascontiguousarray(orth_zero).view(np.uint8)
    cdef Py_ssize_t i, j, npts = pts.shape[0], nm = mq3.shape[0]
    out_arr = np.zeros(npts, dtype=np.int64)
    cdef int64_t[:] out = out_arr
    cdef int64_t a, c
    for i in range(npts):
        a = pts[i]
        c = 0
        for j in range(nm):
            c += orth[(a + mq3[j]) % order]
        out[i] = c
    return out_arr


def character_counts(d_exps, reps, const uint8_t[:] tr_p, int64_t order, int p):
    cdef const int64_t[:] d = np.ascontiguousarray(d_exps, dtype=np.int64)
    cdef const int64_t[:] r = np.ascontiguousarray(reps, dtype=np.int64)
    cdef Py_ssize_t i, j, nr = r.shape[0], nd = d.shape[0]
    out_arr = np.zeros((nr, p), dtype=np.int64)
    cdef int64_t[:, :] out = out_arr
    cdef int64_t s
    for i in range(nr):
        s = r[i] % order
        for j in range(nd):
            out[i, tr_p[(d[j] + s) % order]] += 1
    return out_arr


def common_neighbor_counts(d_exps, g_exps, const uint32_t[:] zech, int64_t order,
                           in_class, int64_t modulus):
    cdef const int64_t[:] d = np.ascontiguousarray(d_exps, dtype=np.int64)
    cdef const int64_t[:] g = np.ascontiguousarray(g_exps, dtype=np.int64)
    # membership by exponent, so the inner loop needs no modulo
    cdef const uint8_t[:] cls = np.ascontiguousarray(
        np.asarray(in_class)[np.arange(order, dtype=np.int64) % modulus]).view(np.uint8)
    cdef Py_ssize_t i, j, ng = g.shape[0], nd = d.shape[0]
    out_arr = np.zeros(ng, dtype=np.int64)
    cdef int64_t[:] out = out_arr
    cdef int64_t c, gi, t, e
    cdef uint32_t z
    for i in range(ng):
        c = 0
        gi = g[i] % order
        if gi < 0:
            gi += order
        for j in range(nd):
            t = gi - d[j]
            if t < 0:
                t += order
            z = zech[t]
            if z == SENTINEL:
                continue
            e = d[j] + z
            if e >= order:
                e -= order
            c += cls[e]
        out[i] = c
    return out_arr
