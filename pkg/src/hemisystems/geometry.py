"""PG(5, q) on F_{q^6} and the elliptic quadric Q(x) = Tr_{q^3/q}(x^(q^3+1)).

A projective point <gamma^c> is identified by its canonical exponent
c mod (q^6-1)/(q-1); F_q^* is generated by gamma^((q^6-1)/(q-1)), so two
exponents give the same point exactly when they agree modulo that number.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import kernels
from .field import FElem, FieldCtx, Level


def quadric_form(ctx: FieldCtx, x: FElem) -> FElem:
    return ctx.trace(ctx.pow(x, ctx.q**3 + 1), Level.Q3, Level.Q)


def bilinear_form(ctx: FieldCtx, x: FElem, y: FElem) -> FElem:
    """B(x, y) = Tr_{q^6/q}(x y^(q^3)); B(x, x) = 2 Q(x)."""
    return ctx.trace(ctx.mul(x, ctx.frobenius(y, 3)), Level.Q6, Level.Q)


def point_of(ctx: FieldCtx, x: FElem) -> int:
    if x.is_zero:
        raise ValueError("the zero vector spans no projective point")
    return x.exp % ctx.params.num_points


def span_line(ctx: FieldCtx, a: int, b: int) -> tuple[int, ...]:
    """Sorted point ids of the line through points a != b: <x>, <y>, <y + lambda x>."""
    npts = ctx.params.num_points
    x, y = FElem(a), FElem(b)
    pts = {a, b}
    for j in range(ctx.q - 1):
        pts.add(point_of(ctx, ctx.add(y, ctx.mul(x, FElem(j * npts)))))
    return tuple(sorted(pts))


@dataclass(frozen=True)
class QuadricLine:
    points: tuple[int, ...]

    @property
    def key(self):
        return tuple(sorted(self.points))


class QuadricGeometry:
    """Bulk point / line data for Q^-(5, q) in the field model."""

    def __init__(self, ctx: FieldCtx):
        self.ctx = ctx
        self.q = ctx.q
        self.q3 = ctx.q**3
        self.num_points = ctx.params.num_points

    @cached_property
    def quadric_mask(self) -> np.ndarray:
        """Bitset over point ids: True on singular points."""
        c = np.arange(self.num_points, dtype=np.int64)
        mask = self.ctx.omega_trace_q[c % (self.q3 - 1)] == 0
        mask.setflags(write=False)
        return mask

    @cached_property
    def points(self) -> np.ndarray:
        pts = np.flatnonzero(self.quadric_mask).astype(np.int64)
        pts.setflags(write=False)
        return pts

    def is_singular(self, point: int) -> bool:
        return bool(self.quadric_mask[point])

    def perp_contains(self, a: int, b: int) -> bool:
        """Whether <gamma^b> lies in the polar hyperplane of <gamma^a>."""
        order = self.ctx.order
        return bool(self.ctx.tr_q_zero[(a + b * self.q3) % order])

    def perp(self, a: int, among=None) -> np.ndarray:
        """Point ids of P^perp for P = <gamma^a>, optionally restricted to ``among``."""
        cand = np.arange(self.num_points, dtype=np.int64) if among is None else np.asarray(among)
        return cand[self.ctx.tr_q_zero[(a + cand * self.q3) % self.ctx.order]]

    @cached_property
    def lines(self) -> np.ndarray:
        """(q^2+1)(q^3+1) x (q+1) array of point ids, each row sorted ascending."""
        ctx = self.ctx
        out = kernels.enumerate_lines(
            self.points, ctx.tr_q_zero, ctx.zech, ctx.order, self.num_points, self.q, self.q3
        )
        out = out[np.lexsort(out.T[::-1])]
        out.setflags(write=False)
        return out

    def perp_counts(self, points, members) -> np.ndarray:
        """|P^perp intersect members| for every P in ``points``."""
        return kernels.perp_counts(points, members, self.ctx.tr_q_zero, self.ctx.order, self.q3)

    def lines_through(self, point: int) -> np.ndarray:
        return self.lines[(self.lines == point).any(axis=1)]


def write_lines(path, lines) -> None:
    """One line per row, point ids separated by spaces."""
    with open(path, "w") as fh:
        for row in lines:
            fh.write(" ".join(str(int(v)) for v in row))
            fh.write("\n")


def read_lines(path) -> np.ndarray:
    rows = [list(map(int, ln.split())) for ln in open(path) if ln.strip() and not ln.startswith("#")]
    return np.array(rows, dtype=np.int64)


__all__ = [
    "QuadricGeometry",
    "QuadricLine",
    "bilinear_form",
    "point_of",
    "quadric_form",
    "read_lines",
    "span_line",
    "write_lines",
]
