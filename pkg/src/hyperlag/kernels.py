"""Backend selection for the evaluation kernels.

The numba build is the default.  Set HYPERLAG_NO_NUMBA=1 (or any value
other than 0/false/no/"") before import to force the pure-numpy path;
the same fallback happens automatically when numba is unavailable.
"""
from __future__ import annotations

import os


def _numpy_forced() -> bool:
    flag = os.environ.get("HYPERLAG_NO_NUMBA", "").strip().lower()
    return flag not in ("", "0", "false", "no")


if _numpy_forced():
    from . import kernels_numpy as _impl

    BACKEND = "numpy"
else:
    try:
        from . import kernels_numba as _impl

        BACKEND = "numba"
    except ImportError:
        from . import kernels_numpy as _impl

        BACKEND = "numpy"

eval_level = _impl.eval_level
accumulate_grad_level = _impl.accumulate_grad_level
accumulate_hess_level = _impl.accumulate_hess_level
eval_level_batch = _impl.eval_level_batch
