"""The compiled kernels and the numpy fallback must agree bit for bit."""

import os
import subprocess
import sys

import numpy as np
import pytest

from hemisystems import kernels
from hemisystems.construction import d_exponents

from .conftest import ctx_for, desc_for, geom_for, pset_for

needs_compiled = pytest.mark.skipif(kernels.compiled is None, reason="extension not built")
BACKENDS = [kernels.fallback] + ([kernels.compiled] if kernels.compiled is not None else [])


@needs_compiled
def test_compiled_extension_is_selected_by_default():
    assert kernels.BACKEND == "cython"


def test_pure_python_switch():
    code = "from hemisystems import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, HEMISYSTEMS_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
def test_antilog_and_zech_match_context(impl, small_q):
    ctx = ctx_for(small_q)
    low = list(ctx.polynomial[:-1])
    antilog = impl.antilog_table(ctx.p, low)
    assert np.array_equal(antilog, ctx.antilog)
    assert np.array_equal(impl.zech_table(ctx.antilog, ctx.log, ctx.p), ctx.zech)


@needs_compiled
def test_line_enumeration_agrees(small_q):
    ctx, geom = ctx_for(small_q), geom_for(small_q)
    args = (geom.points, ctx.tr_q_zero, ctx.zech, ctx.order, geom.num_points, ctx.q, ctx.q**3)
    a = kernels.fallback.enumerate_lines(*args)
    b = kernels.compiled.enumerate_lines(*args)
    assert np.array_equal(a, b)


@needs_compiled
def test_perp_and_character_kernels_agree(small_q):
    ctx, geom, desc, pset = ctx_for(small_q), geom_for(small_q), desc_for(small_q), pset_for(small_q)
    pts = geom.points[:500]
    args = (pts, pset.ids, ctx.tr_q_zero, ctx.order, ctx.q**3)
    assert np.array_equal(kernels.fallback.perp_counts(*args), kernels.compiled.perp_counts(*args))
    d = d_exponents(ctx, desc.I, desc.modulus)
    reps = np.arange(desc.modulus)
    a = kernels.fallback.character_counts(d, reps, ctx.tr_p, ctx.order, ctx.p)
    b = kernels.compiled.character_counts(d, reps, ctx.tr_p, ctx.order, ctx.p)
    assert np.array_equal(a, b)


@needs_compiled
def test_common_neighbour_kernels_agree(small_q):
    ctx, desc = ctx_for(small_q), desc_for(small_q)
    d = d_exponents(ctx, desc.I, desc.modulus)
    g = np.random.default_rng(0).integers(0, ctx.order, 50)
    args = (d, g, ctx.zech, ctx.order, desc.index_mask, desc.modulus)
    assert np.array_equal(kernels.fallback.common_neighbor_counts(*args), kernels.compiled.common_neighbor_counts(*args))
