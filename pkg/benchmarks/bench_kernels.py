"""Compiled kernels against the numpy fallback on the real q = 3, 7, 11 workloads.

    python benchmarks/bench_kernels.py [--q 3 7] [--repeat 3]

Each row reports the best wall time of ``--repeat`` runs per backend and
whether both backends returned identical arrays.
"""

import argparse
import sys
import time

import numpy as np

from hemisystems import kernels
from hemisystems.construction import build_descriptor, build_point_set, d_exponents
from hemisystems.field import field_for_q
from hemisystems.geometry import QuadricGeometry


def best_of(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def workloads(q):
    ctx = field_for_q(q)
    desc = build_descriptor(ctx)
    geom = QuadricGeometry(ctx)
    pset = build_point_set(ctx, desc)
    d = d_exponents(ctx, desc.I, desc.modulus)
    rng = np.random.default_rng(0)
    low = list(ctx.polynomial[:-1])
    perp_pts = geom.points[: min(len(geom.points), 2000)]
    g = rng.integers(0, ctx.order, 500)
    return {
        "antilog_table": lambda k: k.antilog_table(ctx.p, low),
        "zech_table": lambda k: k.zech_table(ctx.antilog, ctx.log, ctx.p),
        "enumerate_lines": lambda k: k.enumerate_lines(
            geom.points, ctx.tr_q_zero, ctx.zech, ctx.order, geom.num_points, ctx.q, ctx.q**3
        ),
        "perp_counts": lambda k: k.perp_counts(perp_pts, pset.ids, ctx.tr_q_zero, ctx.order, ctx.q**3),
        "character_counts": lambda k: k.character_counts(d, np.arange(desc.modulus), ctx.tr_p, ctx.order, ctx.p),
        "common_neighbor_counts": lambda k: k.common_neighbor_counts(
            d, g, ctx.zech, ctx.order, desc.index_mask, desc.modulus
        ),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, nargs="+", default=[3, 7, 11])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--skip-slow-fallback", action="store_true", help="skip fallback runs estimated above a minute")
    args = ap.parse_args(argv)
    if kernels.compiled is None:
        print("compiled extension not built; run `pip install -e . --no-build-isolation` first", file=sys.stderr)
        return 1

    print(f"{'q':>3}  {'kernel':<24}{'cython s':>10}{'numpy s':>10}{'speedup':>9}  same")
    for q in args.q:
        for name, run in workloads(q).items():
            tc, out_c = best_of(lambda: run(kernels.compiled), args.repeat)
            if args.skip_slow_fallback and name == "enumerate_lines" and q >= 11:
                print(f"{q:>3}  {name:<24}{tc:>10.3f}{'-':>10}{'-':>9}  -")
                continue
            tf, out_f = best_of(lambda: run(kernels.fallback), max(1, args.repeat if tc < 1 else 1))
            same = np.array_equal(out_c, out_f)
            print(f"{q:>3}  {name:<24}{tc:>10.3f}{tf:>10.3f}{tf / tc:>8.1f}x  {'yes' if same else 'NO'}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
