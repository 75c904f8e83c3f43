"""Checks of the m-ovoid property and everything that follows from it.

Each ``check_*`` function returns a `CheckResult`; `verify_all` runs a
selection and collects them into a `VerificationReport`.
"""

from __future__ import annotations

import random
import time

import numpy as np

from . import kernels
from .construction import (
    HemisystemDescriptor,
    PointSet,
    build_point_set,
    d_exponents,
    descriptor_invariant_failures,
    negation_residue,
    scalar_orbit_failures,
)
from .errors import InvalidInput, NonIntegerCharacterValue
from .field import FElem, FieldCtx
from .geometry import QuadricGeometry
from .report import CheckResult, VerificationReport, histogram

ALL_CHECKS = ("lines", "perp", "chars", "srg", "group", "conic", "gauss")
DEFAULT_CHECKS = ("lines", "perp", "chars", "srg", "group")
EXHAUSTIVE_PERP_BUDGET = 200_000_000
FULL_SRG_MAX_ORDER = 1000


def _result(name, fails, details, t0):
    if fails and "witness" not in details:
        details["witness"] = fails[0]
    return CheckResult(name, not fails, details, "; ".join(map(str, fails[:3])), time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# lines and perps


def check_line_intersections(geom: QuadricGeometry, pset: PointSet, m: int, name="lines") -> CheckResult:
    """Every totally singular line meets the set in exactly m points."""
    t0 = time.perf_counter()
    lines = geom.lines
    meets = pset.mask[lines].sum(axis=1)
    bad = np.flatnonzero(meets != m)
    details = {
        "lines": int(len(lines)),
        "m": m,
        "set_size": len(pset),
        "histogram": histogram(meets),
        "off_quadric_points": int((~geom.quadric_mask[pset.ids]).sum()),
    }
    fails = []
    if len(bad):
        row = lines[bad[0]]
        details["witness"] = {"line": row.tolist(), "meets": int(meets[bad[0]])}
        fails.append(f"{len(bad)} lines miss the target; first {row.tolist()} meets {int(meets[bad[0]])}")
    return _result(name, fails, details, t0)


def perp_targets(q: int, m: int):
    """(value on the set, value off the set)."""
    return (m - 1) * (q * q + 1) + 1, m * (q * q + 1)


def check_perp_counts(
    geom: QuadricGeometry,
    pset: PointSet,
    m: int,
    *,
    sample: int = 20_000,
    seed: int = 0,
) -> CheckResult:
    """|P^perp cap M| over quadric points, and over all points of PG(5, q).

    The all-points scope is exhaustive while (#points x |M|) fits the budget,
    otherwise a deterministic random sample of ``sample`` points is used.
    """
    t0 = time.perf_counter()
    q = geom.q
    on_val, off_val = perp_targets(q, m)
    fails = []
    details = {"expected": {"in_set": on_val, "off_set": off_val}}

    qpts = geom.points
    counts = geom.perp_counts(qpts, pset.ids)
    inside = pset.mask[qpts]
    details["quadric"] = {
        "in_set": histogram(counts[inside]),
        "off_set": histogram(counts[~inside]),
    }
    want = np.where(inside, on_val, off_val)
    bad = np.flatnonzero(counts != want)
    if len(bad):
        fails.append(f"quadric point {int(qpts[bad[0]])}: {int(counts[bad[0]])} != {int(want[bad[0]])}")

    npts = geom.num_points
    if npts * len(pset) <= EXHAUSTIVE_PERP_BUDGET:
        pts = np.arange(npts, dtype=np.int64)
        scope = "exhaustive"
    else:
        rng = np.random.default_rng(seed)
        pts = np.sort(rng.choice(npts, size=min(sample, npts), replace=False)).astype(np.int64)
        scope = f"sample of {len(pts)}"
    counts_all = geom.perp_counts(pts, pset.ids)
    inside_all = pset.mask[pts]
    details["all_points"] = {
        "scope": scope,
        "in_set": histogram(counts_all[inside_all]),
        "off_set": histogram(counts_all[~inside_all]),
    }
    want_all = np.where(inside_all, on_val, off_val)
    bad = np.flatnonzero(counts_all != want_all)
    if len(bad):
        fails.append(f"point {int(pts[bad[0]])}: {int(counts_all[bad[0]])} != {int(want_all[bad[0]])}")
    return _result("perp", fails, details, t0)


# ---------------------------------------------------------------------------
# characters


def character_values(ctx: FieldCtx, residues, modulus: int) -> np.ndarray:
    """Exact psi(gamma^b D) for b = 0..modulus-1, D the union of the given classes."""
    d = d_exponents(ctx, residues, modulus)
    counts = kernels.character_counts(d, np.arange(modulus), ctx.tr_p, ctx.order, ctx.p)
    if (counts[:, 1:] != counts[:, 1:2]).any():
        b = int(np.flatnonzero((counts[:, 1:] != counts[:, 1:2]).any(axis=1))[0])
        raise NonIntegerCharacterValue(f"class {b}: trace counts {counts[b].tolist()}")
    return counts[:, 0] - counts[:, 1]


def spectrum_targets(q: int, m: int):
    """(value on the dual classes, value elsewhere)."""
    return -(q**3) + m * (q - 1), m * (q - 1)


def check_character_spectrum(ctx: FieldCtx, desc: HemisystemDescriptor, values=None) -> CheckResult:
    t0 = time.perf_counter()
    q, m, mod = desc.q, desc.m, desc.modulus
    low, high = spectrum_targets(q, m)
    if values is None:
        values = character_values(ctx, desc.I, mod)
    b = np.arange(mod)
    dual = desc.dual_mask[b]
    via_q3 = desc.index_mask[(q**3 * b) % mod]
    want = np.where(dual, low, high)
    fails = []
    if not np.array_equal(dual, via_q3):
        fails.append("b in J disagrees with q^3 b in I")
    bad = np.flatnonzero(values != want)
    if len(bad):
        fails.append(f"class {int(bad[0])}: value {int(values[bad[0]])}, expected {int(want[bad[0]])}")
    details = {
        "expected": {"dual_classes": low, "other_classes": high},
        "histogram": histogram(values),
        "low_classes": [int(x) for x in np.flatnonzero(values == low)],
        "J": list(desc.J),
    }
    return _result("chars", fails, details, t0)


def check_cross_validation(
    geom: QuadricGeometry, desc: HemisystemDescriptor, values, pset: PointSet, *, sample: int = 5000, seed: int = 0
) -> CheckResult:
    """Perp counts predicted from the character values, point by point.

    For P = <a> the hyperplane P^perp is the kernel of x -> Tr(a^(q^3) x), so
    |P^perp cap M| = (|D| + (q-1) psi(a^(q^3) D)) / (q (q-1)).
    """
    t0 = time.perf_counter()
    q, mod = desc.q, desc.modulus
    npts = geom.num_points
    rng = np.random.default_rng(seed)
    pts = np.arange(npts) if npts <= sample else np.sort(rng.choice(npts, size=sample, replace=False))
    pts = pts.astype(np.int64)
    dsize = len(pset) * (q - 1)
    psi = values[(pts * q**3) % mod]
    num = dsize + (q - 1) * psi
    predicted = num // (q * (q - 1))
    fails = []
    if (num % (q * (q - 1))).any():
        fails.append("character value does not give an integral hyperplane count")
    counts = geom.perp_counts(pts, pset.ids)
    bad = np.flatnonzero(counts != predicted)
    if len(bad):
        fails.append(f"point {int(pts[bad[0]])}: perp count {int(counts[bad[0]])}, characters predict {int(predicted[bad[0]])}")
    details = {"points": int(len(pts)), "histogram": histogram(counts)}
    return _result("cross", fails, details, t0)


# ---------------------------------------------------------------------------
# strongly regular graph


def srg_parameters_from_spectrum(q: int, m: int):
    """(v, k, lambda, mu) from |D| and the two restricted eigenvalues."""
    v = q**6
    k = m * (q**3 + 1) * (q - 1)
    r, s = spectrum_targets(q, m)[::-1]
    return v, k, k + r + s + r * s, k + r * s


def adjacency_matrix(ctx: FieldCtx, desc: HemisystemDescriptor) -> np.ndarray:
    """Cayley graph on vector forms 0..q^6-1: x ~ y iff x - y in D."""
    v = ctx.order + 1
    dig = ctx.digits(np.arange(v))
    diff = (dig[:, None, :] - dig[None, :, :]) % ctx.p
    vec = ctx.from_digits(diff)
    e = ctx.log[vec].astype(np.int64)
    nonzero = vec != 0
    adj = np.zeros((v, v), dtype=bool)
    adj[nonzero] = desc.index_mask[e[nonzero] % desc.modulus]
    return adj


def check_srg(
    ctx: FieldCtx,
    desc: HemisystemDescriptor,
    *,
    sample: int = 10_000,
    seed: int = 0,
    values=None,
) -> CheckResult:
    """Full common-neighbour counting for small fields, spectrum plus sampling otherwise."""
    t0 = time.perf_counter()
    q, m = desc.q, desc.m
    v, k, lam, mu = srg_parameters_from_spectrum(q, m)
    fails = []
    details = {"predicted": {"v": v, "k": k, "lambda": lam, "mu": mu}}
    if mu * (v - k - 1) != k * (k - lam - 1):
        fails.append("predicted parameters violate mu (v-k-1) = k (k-lambda-1)")
    r = negation_residue(ctx, desc.modulus)
    if {(i + r) % desc.modulus for i in desc.I} != set(desc.I):
        fails.append("D != -D, the Cayley graph is directed")

    if ctx.order <= FULL_SRG_MAX_ORDER:
        adj = adjacency_matrix(ctx, desc)
        a = adj.astype(np.float64)
        a2 = np.rint(a @ a).astype(np.int64)
        deg = adj.sum(axis=1)
        off = ~np.eye(len(adj), dtype=bool)
        lam_obs = a2[adj]
        mu_obs = a2[~adj & off]
        details["method"] = "full"
        details["observed"] = {
            "v": int(len(adj)),
            "degrees": histogram(deg),
            "lambda": histogram(lam_obs),
            "mu": histogram(mu_obs),
            "edges": int(adj.sum() // 2),
            "symmetric": bool((adj == adj.T).all()),
        }
        if not (adj == adj.T).all():
            fails.append("adjacency is not symmetric")
        if (deg != k).any():
            fails.append(f"degrees {histogram(deg)} != {k}")
        if len(lam_obs) and (lam_obs != lam).any():
            fails.append(f"adjacent common neighbours {histogram(lam_obs)} != {lam}")
        if len(mu_obs) and (mu_obs != mu).any():
            fails.append(f"non-adjacent common neighbours {histogram(mu_obs)} != {mu}")
    else:
        details["method"] = "spectrum+sampling"
        if values is None:
            values = character_values(ctx, desc.I, desc.modulus)
        eigen = sorted({int(x) for x in values})
        details["restricted_eigenvalues"] = eigen
        if eigen != sorted(spectrum_targets(q, m)):
            fails.append(f"restricted eigenvalues {eigen}")
        rng = np.random.default_rng(seed)
        d = d_exponents(ctx, desc.I, desc.modulus)
        half = sample // 2
        g_adj = rng.choice(d, size=half)
        g_non = rng.integers(0, ctx.order, size=4 * (sample - half))
        g_non = g_non[~desc.index_mask[g_non % desc.modulus]][: sample - half]
        neg = ctx.order // 2
        # common neighbours of 0 and g are the d in D with d - g in D
        lam_obs = kernels.common_neighbor_counts(d, (g_adj + neg) % ctx.order, ctx.zech, ctx.order, desc.index_mask, desc.modulus)
        mu_obs = kernels.common_neighbor_counts(d, (g_non + neg) % ctx.order, ctx.zech, ctx.order, desc.index_mask, desc.modulus)
        details["observed"] = {
            "sampled_pairs": int(len(g_adj) + len(g_non)),
            "lambda": histogram(lam_obs),
            "mu": histogram(mu_obs),
        }
        if (lam_obs != lam).any():
            fails.append(f"adjacent sample common neighbours {histogram(lam_obs)} != {lam}")
        if (mu_obs != mu).any():
            fails.append(f"non-adjacent sample common neighbours {histogram(mu_obs)} != {mu}")
    return _result("srg", fails, details, t0)


# ---------------------------------------------------------------------------
# group invariance


def induced_group(desc: HemisystemDescriptor, num_points: int):
    """Affine maps c -> a c + b on point ids generated by c + 4N and c -> q^2 c."""
    q, mod = desc.q, desc.modulus
    mults = sorted({pow(q * q, i, num_points) for i in range(3)})
    shifts = np.arange(0, num_points, mod, dtype=np.int64)
    return mults, shifts


def check_group_invariance(
    ctx: FieldCtx, desc: HemisystemDescriptor, pset: PointSet, *, samples: int = 1000, seed: int = 0
) -> CheckResult:
    t0 = time.perf_counter()
    q, mod, npts = desc.q, desc.modulus, ctx.params.num_points
    I = set(desc.I)
    fails = []
    details = {}

    # residue level: the shift by 4N is the identity on Z_4N
    if {(i + mod) % mod for i in I} != I:
        fails.append("gamma^(4N) does not fix I")
    frob_ok = {q * q * i % mod for i in I} == I
    details["q2_I_equals_I"] = frob_ok
    if not frob_ok:
        fails.append("q^2 I != I (mod 4N)")

    # field level, on sampled elements of D
    rng = random.Random(seed)
    d = d_exponents(ctx, desc.I, mod)
    shift = FElem(mod)
    mul_ok = frob_sampled = True
    for _ in range(min(samples, len(d))):
        x = FElem(int(d[rng.randrange(len(d))]))
        if not desc.index_mask[ctx.mul(x, shift).exp % mod]:
            mul_ok = False
        if not desc.index_mask[ctx.frobenius(x, 2).exp % mod]:
            frob_sampled = False
    details["sampled_multiplication"] = mul_ok
    details["sampled_frobenius"] = frob_sampled
    if not mul_ok:
        fails.append("gamma^(4N) x left D for a sampled x")
    if not frob_sampled:
        fails.append("x^(q^2) left D for a sampled x")

    # point level: both generators map M onto M
    ids = pset.ids
    g1 = (ids + mod) % npts
    g2 = (ids * q * q) % npts
    details["g1_preserves_M"] = bool(pset.mask[g1].all())
    details["g2_preserves_M"] = bool(pset.mask[g2].all())
    if not details["g1_preserves_M"]:
        fails.append("c -> c + 4N does not preserve M")
    if not details["g2_preserves_M"]:
        fails.append("c -> q^2 c does not preserve M")

    mults, shifts = induced_group(desc, npts)
    images = set()
    for a in mults:
        base = ids * a
        for b in shifts:
            images.add(((base + b) % npts).tobytes())
    order = len(images)
    expected_order = 3 * (q**3 + 1) // 4
    details["group_order"] = order
    details["expected_group_order"] = expected_order
    if order != expected_order:
        fails.append(f"induced group has order {order}, expected {expected_order}")

    orbit = _orbit_sizes(ids, npts, mod, q)
    details["orbits_on_M"] = histogram(orbit)
    return _result("group", fails, details, t0)


def _orbit_sizes(ids, npts, mod, q):
    """Orbit sizes of <c + 4N, q^2 c> on the given point ids."""
    # the shift orbit of c is its class c mod 4N; q^2 permutes those classes
    classes = sorted({int(c) % mod for c in ids})
    seen, sizes = set(), []
    per_class = npts // mod
    for c in classes:
        if c in seen:
            continue
        orb = {c}
        x = c
        while True:
            x = x * q * q % mod
            if x in orb:
                break
            orb.add(x)
        seen |= orb
        sizes.append(len(orb) * per_class)
    return sizes


# ---------------------------------------------------------------------------
# negative controls


def random_half_point_set(geom: QuadricGeometry, size: int, seed: int = 0) -> PointSet:
    rng = np.random.default_rng(seed)
    ids = rng.choice(geom.points, size=size, replace=False)
    return PointSet.from_ids(ids, geom.num_points)


def remove_class(desc: HemisystemDescriptor, index: int = 0) -> HemisystemDescriptor:
    """Tampered copy of ``desc`` with one residue dropped from I."""
    i = list(desc.I)
    del i[index]
    return desc.with_index_set(i)


# ---------------------------------------------------------------------------
# orchestration


def verify_all(
    ctx: FieldCtx,
    desc: HemisystemDescriptor,
    checks=DEFAULT_CHECKS,
    *,
    sample: int = 10_000,
    seed: int = 0,
    tolerance: float = 1e-6,
    geometry: QuadricGeometry | None = None,
    point_set: PointSet | None = None,
) -> VerificationReport:
    unknown = set(checks) - set(ALL_CHECKS)
    if unknown:
        raise InvalidInput(f"unknown checks: {sorted(unknown)}")
    report = VerificationReport(ctx.p, ctx.params.f, ctx.q, ctx.polynomial)
    geom = geometry or QuadricGeometry(ctx)
    pset = point_set if point_set is not None else build_point_set(ctx, desc)

    t0 = time.perf_counter()
    fails = descriptor_invariant_failures(ctx, desc) + scalar_orbit_failures(ctx, desc, seed=seed)
    sizes = desc.sizes
    if len(pset) != sizes["M"]:
        fails.append(f"|M| = {len(pset)}, expected {sizes['M']}")
    details = {"I": list(desc.I), "J": list(desc.J), "M": len(pset), "D": len(pset) * (ctx.q - 1), "expected": sizes}
    report.add(_result("descriptor", fails, details, t0))

    values = None
    if "conic" in checks:
        from .conic import build_conic, check_conic

        report.add(check_conic(ctx, desc.conic or build_conic(ctx, desc.d0), tol=tolerance))
    if "lines" in checks:
        report.add(check_line_intersections(geom, pset, desc.m))
    if "perp" in checks:
        report.add(check_perp_counts(geom, pset, desc.m, seed=seed))
    if "chars" in checks:
        t_chars = time.perf_counter()
        values = character_values(ctx, desc.I, desc.modulus)
        chars = check_character_spectrum(ctx, desc, values)
        chars.elapsed = time.perf_counter() - t_chars  # include the counting itself
        report.add(chars)
        if "perp" in checks:
            report.add(check_cross_validation(geom, desc, values, pset, seed=seed))
    if "srg" in checks:
        report.add(check_srg(ctx, desc, sample=sample, seed=seed, values=values))
    if "group" in checks:
        report.add(check_group_invariance(ctx, desc, pset, seed=seed))
    if "gauss" in checks:
        from .charsums import charsum_check

        conic = desc.conic
        report.add(charsum_check(ctx, singer_set=conic.S if conic else None, seed=seed, tol_scale=tolerance))
    return report


__all__ = [
    "ALL_CHECKS",
    "DEFAULT_CHECKS",
    "adjacency_matrix",
    "character_values",
    "check_character_spectrum",
    "check_cross_validation",
    "check_group_invariance",
    "check_line_intersections",
    "check_perp_counts",
    "check_srg",
    "perp_targets",
    "random_half_point_set",
    "remove_class",
    "spectrum_targets",
    "srg_parameters_from_spectrum",
    "verify_all",
]
