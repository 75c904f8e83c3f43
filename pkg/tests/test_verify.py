import numpy as np
import pytest

from hemisystems.construction import PointSet, d_exponents
from hemisystems.errors import InvalidInput
from hemisystems.verify import (
    adjacency_matrix,
    character_values,
    check_character_spectrum,
    check_cross_validation,
    check_group_invariance,
    check_line_intersections,
    check_perp_counts,
    check_srg,
    perp_targets,
    random_half_point_set,
    remove_class,
    spectrum_targets,
    srg_parameters_from_spectrum,
    verify_all,
)

from .conftest import ctx_for, desc_for, geom_for, pset_for
from .oracle import Oracle


@pytest.mark.parametrize("q,lines,m", [(3, 280, 2), (7, 17200, 4)])
def test_every_line_meets_M_in_m_points(q, lines, m):
    res = check_line_intersections(geom_for(q), pset_for(q), m)
    assert res.passed, res.message
    assert res.details["histogram"] == {str(m): lines}


def test_random_half_fails_lines():
    geom = geom_for(3)
    for seed in range(5):
        res = check_line_intersections(geom, random_half_point_set(geom, 56, seed), 2)
        assert not res.passed
        assert "witness" in res.details


def test_complement_is_also_a_hemisystem(small_q):
    geom, pset = geom_for(small_q), pset_for(small_q)
    comp = pset.complement_in(geom.points)
    m = (small_q + 1) // 2
    assert check_line_intersections(geom, comp, m).passed


@pytest.mark.parametrize("q,on,off", [(3, 11, 20), (7, 151, 200)])
def test_perp_counts(q, on, off):
    m = (q + 1) // 2
    assert perp_targets(q, m) == (on, off)
    res = check_perp_counts(geom_for(q), pset_for(q), m)
    assert res.passed, res.message
    quad = res.details["quadric"]
    size = len(pset_for(q))
    assert quad["in_set"] == {str(on): size}
    assert quad["off_set"] == {str(off): len(geom_for(q).points) - size}


def test_perp_counts_by_oracle_q3(ctx3):
    # brute force over galois vectors: B(a, x) = 0 for a representative x of each point of M
    o = Oracle(3, ctx3.polynomial)
    pset = pset_for(3)
    reps = o.gamma ** pset.ids.astype(np.int64)
    geom = geom_for(3)
    for a in geom.points[:40]:
        va = o.gamma ** int(a)
        n = int((np.asarray(o.B(va, reps)) == 0).sum())
        assert n == (11 if a in pset else 20)


@pytest.mark.parametrize("q", [3, 7, 11])
def test_character_spectrum(q):
    ctx, desc = ctx_for(q), desc_for(q)
    m = desc.m
    values = character_values(ctx, desc.I, desc.modulus)
    low, high = spectrum_targets(q, m)
    assert sorted(set(values.tolist())) == sorted({low, high})
    assert int((values == low).sum()) == 2 * (q + 1)
    assert set(np.flatnonzero(values == low).tolist()) == set(desc.J)
    assert check_character_spectrum(ctx, desc, values).passed


def test_character_values_q3_exact():
    ctx, desc = ctx_for(3), desc_for(3)
    values = character_values(ctx, desc.I, desc.modulus)
    assert spectrum_targets(3, 2) == (-23, 4)
    assert int((values == -23).sum()) == 8 and int((values == 4).sum()) == 44


def test_character_values_match_oracle_q3(ctx3):
    desc = desc_for(3)
    o = Oracle(3, ctx3.polynomial)
    d = o.gamma ** d_exponents(ctx3, desc.I, desc.modulus)
    values = character_values(ctx3, desc.I, desc.modulus)
    for b in range(desc.modulus):
        s = o.psi((o.gamma**b) * d).sum()
        assert abs(s - values[b]) < 1e-9


def test_cross_validation(small_q):
    ctx, desc = ctx_for(small_q), desc_for(small_q)
    values = character_values(ctx, desc.I, desc.modulus)
    res = check_cross_validation(geom_for(small_q), desc, values, pset_for(small_q), sample=3000)
    assert res.passed, res.message


def test_srg_parameters():
    v, k, lam, mu = srg_parameters_from_spectrum(3, 2)
    assert (v, k, lam, mu) == (729, 112, 1, 20)
    assert mu * (v - k - 1) == k * (k - lam - 1) == 12320
    assert srg_parameters_from_spectrum(7, 4)[2:] == (305, 600)


def test_srg_full_q3(ctx3):
    res = check_srg(ctx3, desc_for(3))
    assert res.passed, res.message
    assert res.details["method"] == "full"
    assert res.details["observed"]["edges"] == 40824


def test_srg_adjacency_matches_oracle(ctx3):
    desc = desc_for(3)
    o = Oracle(3, ctx3.polynomial)
    d = o.gamma ** d_exponents(ctx3, desc.I, desc.modulus)
    in_d = np.zeros(729, dtype=bool)
    in_d[np.asarray(d).astype(np.int64)] = True
    allv = o.all
    diff = np.asarray(allv[:, None] - allv[None, :]).astype(np.int64)
    want = in_d[diff]
    assert np.array_equal(adjacency_matrix(ctx3, desc), want)
    a = want.astype(np.int64)
    a2 = a @ a
    assert set(a2[want].tolist()) == {1}
    assert set(a2[~want & ~np.eye(729, dtype=bool)].tolist()) == {20}


def test_srg_sampled_q7(ctx7):
    res = check_srg(ctx7, desc_for(7), sample=600)
    assert res.passed, res.message
    assert res.details["method"] == "spectrum+sampling"


def test_tampered_descriptor_fails_lines_and_chars(ctx3):
    desc = desc_for(3)
    bad = remove_class(desc)
    geom = geom_for(3)
    from hemisystems.construction import build_point_set

    bad_set = build_point_set(ctx3, bad)
    assert not check_line_intersections(geom, bad_set, 2).passed
    assert not check_character_spectrum(ctx3, bad).passed


@pytest.mark.parametrize("q,order", [(3, 21), (7, 258)])
def test_group_invariance(q, order):
    res = check_group_invariance(ctx_for(q), desc_for(q), pset_for(q), samples=200)
    assert res.passed, res.message
    assert res.details["group_order"] == order
    assert sum(int(k) * v for k, v in res.details["orbits_on_M"].items()) == len(pset_for(q))


def test_group_detects_unstable_set(ctx3):
    geom = geom_for(3)
    rnd = random_half_point_set(geom, 56, 1)
    res = check_group_invariance(ctx3, desc_for(3), rnd, samples=50)
    assert not res.passed


def test_verify_all_q3(ctx3):
    report = verify_all(ctx3, desc_for(3), checks=("lines", "perp", "chars", "srg", "group", "conic", "gauss"))
    assert report.passed, [c.message for c in report.checks if not c.passed]
    names = [c.name for c in report.checks]
    assert names[0] == "descriptor" and "cross" in names
    again = verify_all(ctx3, desc_for(3), checks=("lines", "chars"))
    assert again["chars"].details == report["chars"].details


def test_verify_all_rejects_unknown_check(ctx3):
    with pytest.raises(InvalidInput):
        verify_all(ctx3, desc_for(3), checks=("lines", "bogus"))


def test_verify_with_foreign_point_set(ctx3):
    geom = geom_for(3)
    report = verify_all(ctx3, desc_for(3), checks=("lines",), point_set=random_half_point_set(geom, 56, 2))
    assert not report.passed
    empty = PointSet.from_ids([], geom.num_points)
    assert not verify_all(ctx3, desc_for(3), checks=("lines",), point_set=empty).passed
