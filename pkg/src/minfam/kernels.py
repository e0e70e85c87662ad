"""Backend selection for the hot kernels.

The compiled extension is used when it imports; setting the environment
variable ``MINFAM_PURE_PYTHON=1`` forces the pure-Python fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
if os.environ.get("MINFAM_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels
else:
    _impl = _pykernels

short_vectors = _impl.short_vectors
count_simple_systems = _impl.count_simple_systems
collect_simple_systems = _impl.collect_simple_systems

__all__ = ["BACKEND", "short_vectors", "count_simple_systems", "collect_simple_systems"]
