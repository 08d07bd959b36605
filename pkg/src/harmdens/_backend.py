"""Kernel backend selection.

The GMP kernel (``_ckernels``) is used when it was compiled; otherwise the
pure-Python kernels take over. ``HARMDENS_PURE=1`` forces the fallback.
"""

import os

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    BACKENDS["cython"] = _ckernels

if os.environ.get("HARMDENS_PURE") or _ckernels is None:
    name = "python"
else:
    name = "cython"
kernels = BACKENDS[name]


def set_backend(which):
    """Switch kernels at runtime (benchmarks and equivalence tests)."""
    global kernels, name
    if which not in BACKENDS:
        raise ValueError(f"backend {which!r} unavailable; have {sorted(BACKENDS)}")
    name = which
    kernels = BACKENDS[which]
