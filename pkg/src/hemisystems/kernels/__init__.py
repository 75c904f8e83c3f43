"""Hot kernels: the compiled extension when it was built, numpy otherwise.

Set ``HEMISYSTEMS_PURE_PYTHON=1`` to force the numpy fallback.  Both
implementations stay importable as `fallback` and `compiled` (None when
the extension is missing) for tests and benchmarks.
"""

import os

from . import _fallback as fallback

try:
    from . import _ckernels as compiled
except ImportError:
    compiled = None

if compiled is not None and os.environ.get("HEMISYSTEMS_PURE_PYTHON", "") not in ("1", "true"):
    _impl = compiled
    BACKEND = "cython"
else:
    _impl = fallback
    BACKEND = "numpy"

antilog_table = _impl.antilog_table
zech_table = _impl.zech_table
enumerate_lines = _impl.enumerate_lines
perp_counts = _impl.perp_counts
character_counts = _impl.character_counts
common_neighbor_counts = _impl.common_neighbor_counts

__all__ = [
    "BACKEND",
    "antilog_table",
    "character_counts",
    "common_neighbor_counts",
    "compiled",
    "enumerate_lines",
    "fallback",
    "perp_counts",
    "zech_table",
]
