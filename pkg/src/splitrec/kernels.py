"""Backend selection for the sequential inner loops.

The compiled ``_ckernels`` extension is used when it was built; otherwise the
pure-Python ``_pykernels`` module is loaded.  Setting ``SPLITREC_PURE_PYTHON=1``
forces the fallback.
"""

import os

from . import _pykernels as python_backend

try:
    from . import _ckernels as compiled_backend
except ImportError:  # extension not built
    compiled_backend = None

if compiled_backend is not None and os.environ.get("SPLITREC_PURE_PYTHON", "") in ("", "0"):
    backend = compiled_backend
    BACKEND = "cython"
else:
    backend = python_backend
    BACKEND = "python"

cauchy_sweep = backend.cauchy_sweep
transfer_sweep = backend.transfer_sweep
riccati_forward_sweep = backend.riccati_forward_sweep
riccati_inverse_sweep = backend.riccati_inverse_sweep
cascade_prefix = backend.cascade_prefix
scatter_backsub = backend.scatter_backsub

__all__ = [
    "BACKEND",
    "backend",
    "cascade_prefix",
    "cauchy_sweep",
    "compiled_backend",
    "python_backend",
    "riccati_forward_sweep",
    "riccati_inverse_sweep",
    "scatter_backsub",
    "transfer_sweep",
]
