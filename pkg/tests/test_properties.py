"""Property-based checks of the algebraic and geometric invariants."""

import json
import math

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from hemisystems.charsums import MultChar, verify_conjugation
from hemisystems.conic import build_conic, conic_invariant_failures, partition_from_X
from hemisystems.construction import build_descriptor, descriptor_invariant_failures, membership_D
from hemisystems.field import ZERO, FElem, Level
from hemisystems.geometry import bilinear_form, point_of, quadric_form
from hemisystems.serialize import descriptor_from_dict, descriptor_to_dict

from .conftest import ctx_for, desc_for, geom_for

QS = st.sampled_from([3, 7])
SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def elem(ctx, draw_int):
    return ZERO if draw_int < 0 else FElem(draw_int % ctx.order)


field_ints = st.integers(min_value=-1, max_value=10**9)


@SETTINGS
@given(QS, field_ints, field_ints, field_ints)
def test_field_axioms(q, a, b, c):
    ctx = ctx_for(q)
    x, y, z = elem(ctx, a), elem(ctx, b), elem(ctx, c)
    assert ctx.add(x, y) == ctx.add(y, x)
    assert ctx.add(ctx.add(x, y), z) == ctx.add(x, ctx.add(y, z))
    assert ctx.mul(x, ctx.add(y, z)) == ctx.add(ctx.mul(x, y), ctx.mul(x, z))
    assert ctx.sub(ctx.add(x, y), y) == x
    assert ctx.frobenius(ctx.add(x, y), 1) == ctx.add(ctx.frobenius(x, 1), ctx.frobenius(y, 1))


@SETTINGS
@given(QS, st.integers(0, 10**9))
def test_exponent_and_frobenius_subfield_criteria(q, e):
    ctx = ctx_for(q)
    x = FElem(e % ctx.order)
    assert ctx.pow(x, ctx.order) == ctx.one
    assert (ctx.frobenius(x, 3) == x) == (x.exp % (q**3 + 1) == 0)
    assert (ctx.frobenius(x, 1) == x) == (x.exp % ctx.params.num_points == 0)


@SETTINGS
@given(QS, field_ints)
def test_trace_transitivity(q, a):
    ctx = ctx_for(q)
    x = elem(ctx, a)
    direct = ctx.trace(x, Level.Q6, Level.Q)
    assert direct == ctx.trace(ctx.trace(x, Level.Q6, Level.Q3), Level.Q3, Level.Q)


@SETTINGS
@given(QS, field_ints, field_ints, st.integers(1, 10))
def test_forms(q, a, b, lam_i):
    ctx = ctx_for(q)
    x, y = elem(ctx, a), elem(ctx, b)
    lam = ctx.scalar(lam_i % q or 1)
    assert quadric_form(ctx, ctx.mul(lam, x)) == ctx.mul(ctx.mul(lam, lam), quadric_form(ctx, x))
    assert bilinear_form(ctx, x, y) == bilinear_form(ctx, y, x)
    assert bilinear_form(ctx, ctx.mul(lam, x), y) == ctx.mul(lam, bilinear_form(ctx, x, y))
    assert bilinear_form(ctx, x, x) == ctx.mul(ctx.scalar(2), quadric_form(ctx, x))


@SETTINGS
@given(QS, st.integers(0, 10**9), st.integers(0, 10**9))
def test_polarity_is_symmetric(q, a, b):
    geom = geom_for(q)
    P, R = a % geom.num_points, b % geom.num_points
    assert geom.perp_contains(P, R) == geom.perp_contains(R, P)


@SETTINGS
@given(QS, st.integers(0, 10**9), st.integers(0, 10**9))
def test_gq_axiom(q, pi, li):
    geom = geom_for(q)
    P = int(geom.points[pi % len(geom.points)])
    line = geom.lines[li % len(geom.lines)]
    assume(P not in set(line.tolist()))
    collinear = sum(geom.perp_contains(P, int(R)) for R in line)
    assert collinear == 1


@SETTINGS
@given(QS, st.integers(0, 10**9), st.integers(1, 10))
def test_point_ids_ignore_scalars(q, e, c):
    ctx = ctx_for(q)
    x = FElem(e % ctx.order)
    lam = ctx.scalar(c % q or 1)
    assert point_of(ctx, ctx.mul(lam, x)) == point_of(ctx, x)


@SETTINGS
@given(QS, st.integers(0, 10**9), st.integers(1, 10))
def test_D_is_closed_under_scalars_and_automorphisms(q, e, c):
    ctx, desc = ctx_for(q), desc_for(q)
    x = FElem(e % ctx.order)
    lam = ctx.scalar(c % q or 1)
    inside = membership_D(ctx, desc, x)
    assert membership_D(ctx, desc, ctx.mul(lam, x)) == inside
    assert membership_D(ctx, desc, ctx.frobenius(x, 2)) == inside
    assert membership_D(ctx, desc, ctx.mul(FElem(desc.modulus), x)) == inside
    if inside:
        assert quadric_form(ctx, x) == ZERO


@settings(max_examples=12, deadline=None)
@given(QS, st.data())
def test_every_d0_gives_a_valid_construction(q, data):
    ctx = ctx_for(q)
    d0 = data.draw(st.sampled_from(build_conic(ctx).IQ))
    conic = build_conic(ctx, d0)
    assert conic_invariant_failures(ctx, conic) == []
    desc = build_descriptor(ctx, d0)
    assert descriptor_invariant_failures(ctx, desc) == []
    assert descriptor_from_dict(json.loads(json.dumps(descriptor_to_dict(desc)))) == desc


@SETTINGS
@given(st.sampled_from([13, 57, 133]), st.data())
def test_partition_from_X_shapes(N, data):
    X = data.draw(st.sets(st.integers(0, 2 * N - 1), min_size=1, max_size=12))
    s1pp, s2pp, s1p, s2p, s1, s2 = partition_from_X(X, N)
    assert len(s1pp) + len(s2pp) == len(X)
    assert sorted(4 * s % N for s in s1pp) == sorted(s1)
    assert sorted(2 * s % N for s in s2p) == sorted(s2)
    shifted = partition_from_X({(x + N) % (2 * N) for x in X}, N)
    assert (shifted[4], shifted[5]) == (s2, s1)


@SETTINGS
@given(st.sampled_from([Level.Q, Level.Q3, Level.Q6]), st.data())
def test_conjugation_random_characters(level, data):
    ctx = ctx_for(3)
    size = 3 ** {Level.Q: 1, Level.Q3: 3, Level.Q6: 6}[level] - 1
    order = data.draw(st.sampled_from([d for d in range(2, size + 1) if size % d == 0]))
    chi = MultChar(level, order, data.draw(st.integers(1, order - 1)))
    assert verify_conjugation(ctx, chi).passed


@SETTINGS
@given(st.integers(1, 200), st.integers(-500, 500), st.integers(-500, 500))
def test_character_multiplication(order, i, j):
    a, b = MultChar(Level.Q6, order, i), MultChar(Level.Q6, order, j)
    assert (a * b).reduced() == MultChar(Level.Q6, order, i + j).reduced()
    assert (a * a.conj()).is_trivial
    assert a.exact_order == order // math.gcd(order, i)
