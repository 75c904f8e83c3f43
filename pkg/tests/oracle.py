"""Independent reference computations built on the `galois` package.

Nothing here touches the log/Zech tables or kernels of the package under
test: arithmetic is galois's polynomial arithmetic, and projective points are
handled as explicit sets of vectors.
"""

import itertools
import warnings
from functools import lru_cache

import numpy as np

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    import galois


def naive_min_primitive(p, n):
    """Smallest (c_0, ..., c_{n-1}) with x^n + sum c_i x^i primitive, by brute-force order of x."""
    order = p**n - 1
    for low in itertools.product(range(p), repeat=n):
        if low[0] == 0:
            continue
        # multiply by x repeatedly, tracking the residue as a coefficient list
        cur = [1] + [0] * (n - 1)
        k = 0
        while True:
            top = cur[-1]
            cur = [0] + cur[:-1]
            cur = [(c - top * l) % p for c, l in zip(cur, low)]
            k += 1
            if cur == [1] + [0] * (n - 1):
                break
            if k > order:
                break
        if k == order:
            return list(low) + [1]
    return None


@lru_cache(maxsize=None)
def gf(p, coeffs_low_to_high):
    poly = galois.Poly(list(coeffs_low_to_high)[::-1], field=galois.GF(p))
    # primitivity of the polynomial is tested separately; skip galois's own search
    return galois.GF(p ** (len(coeffs_low_to_high) - 1), irreducible_poly=poly, primitive_element=p, verify=False)


class Oracle:
    """F_{q^6} with q = p (prime) through galois, plus brute-force geometry."""

    def __init__(self, p, coeffs):
        self.p = self.q = p
        self.GF = gf(p, tuple(coeffs))
        self.gamma = self.GF(p)  # the polynomial x
        self.order = p**6 - 1
        self.all = self.GF.elements
        self.nonzero = self.all[1:]

    def el(self, vec):
        return self.GF(int(vec))

    def frob(self, x, k):
        return x ** (self.q**k)

    def tr_q3_q(self, x):
        return x + self.frob(x, 1) + self.frob(x, 2)

    def tr_q6_q(self, x):
        return sum((self.frob(x, k) for k in range(1, 6)), x)

    def Q(self, x):
        return self.tr_q3_q(x ** (self.q**3 + 1))

    def B(self, x, y):
        return self.tr_q6_q(x * self.frob(y, 3))

    def log(self, x):
        return int(np.asarray(x.log(self.gamma)))

    def point_id(self, x):
        """Canonical exponent mod (q^6-1)/(q-1)."""
        return self.log(x) % (self.order // (self.q - 1))

    def projective_points(self, vectors):
        """Group nonzero vectors into projective points: frozensets of ints."""
        seen, pts = set(), []
        scalars = [self.GF(c) for c in range(1, self.p)]
        for v in vectors:
            iv = int(v)
            if iv == 0 or iv in seen:
                continue
            orbit = frozenset(int(c * v) for c in scalars)
            seen |= orbit
            pts.append(orbit)
        return pts

    def singular_points(self):
        xs = self.nonzero
        qv = self.Q(xs)
        return self.projective_points(xs[qv == 0])

    def totally_singular_lines(self):
        pts = self.singular_points()
        reps = self.GF([min(pt) for pt in pts])
        npts = self.order // (self.q - 1)
        logs = np.asarray(self.nonzero.log(self.gamma)).astype(np.int64)
        log_of = np.zeros(self.p**6, dtype=np.int64)
        log_of[np.asarray(self.nonzero).astype(np.int64)] = logs
        scal = self.GF(np.arange(self.p))
        lines = set()
        for i in range(len(reps)):
            a = reps[i]
            rest = reps[i + 1:]
            orth = rest[self.B(a, rest) == 0]
            for b in orth:
                combos = (scal[:, None] * a + scal[None, :] * b).ravel()
                vecs = np.asarray(combos).astype(np.int64)
                vecs = vecs[vecs != 0]
                lines.add(frozenset((log_of[vecs] % npts).tolist()))
        return lines

    def psi(self, xs):
        """Canonical additive character of F_{q^6} on an array of elements."""
        t = np.asarray(xs.field_trace()).astype(np.int64)
        return np.exp(2j * np.pi * t / self.p)

    def subfield_trace_to_p(self, xs, degree):
        acc, t = xs, xs
        for _ in range(degree - 1):
            t = t**self.p
            acc = acc + t
        return np.asarray(acc).astype(np.int64)

    def gauss_sum(self, level_degree, order, index):
        """G(chi) on the subfield of degree ``level_degree`` by plain summation."""
        size = self.p**level_degree - 1
        g = self.gamma ** (self.order // size)
        e = np.arange(size)
        xs = g**e
        tr = self.subfield_trace_to_p(xs, level_degree)
        if (tr >= self.p).any():
            raise AssertionError("subfield trace left F_p")
        terms = np.exp(2j * np.pi * (index * e / order + tr / self.p))
        return complex(terms.sum())
