"""Kernel backend selection.

The Groebner and linear-algebra hot loops exist twice: numba @njit kernels
(_kernels_numba) and pure-numpy fallbacks (_kernels_numpy).  The numba path
is used when available; set DETSTAIR_PURE_NUMPY=1 to force the fallback.
Both paths are exact and bit-identical; benchmarks/bench_kernels.py compares
their speed.
"""
from __future__ import annotations

import os

_FORCE_NUMPY = os.environ.get("DETSTAIR_PURE_NUMPY", "").strip().lower() in {"1", "true", "yes"}

if _FORCE_NUMPY:
    from . import _kernels_numpy as _impl

    BACKEND = "numpy"
else:
    try:
        from . import _kernels_numba as _impl

        BACKEND = "numba"
    except ImportError:  # numba missing on this platform
        from . import _kernels_numpy as _impl

        BACKEND = "numpy"

merge_scaled = _impl.merge_scaled
mul_full = _impl.mul_full
nf_reduce = _impl.nf_reduce
matvec_mod = _impl.matvec_mod
krylov_minpoly = _impl.krylov_minpoly
solve_in_row_space = _impl.solve_in_row_space
polymul_mod = _impl.polymul_mod
polyrem_mod = _impl.polyrem_mod
