"""Cyclic-convolution kernels for the counting oracle.

Two int64 backends exist: a numba-compiled loop (default) and a pure-numpy
fallback. Setting the environment variable SQCOUNT_NO_NUMBA=1 selects the
numpy path; the numba import failing falls back the same way. Callers must
guarantee int64 safety before using either backend (see oracle.py).
"""
from __future__ import annotations

import os

import numpy as np

NUMBA_ENABLED = os.environ.get("SQCOUNT_NO_NUMBA", "").lower() not in (
    "1",
    "true",
    "yes",
)

if NUMBA_ENABLED:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover
        NUMBA_ENABLED = False


def cyclic_convolve_numpy(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Cyclic convolution over Z_n: linear convolution folded back mod n."""
    n = a.shape[0]
    full = np.convolve(a, b)
    out = full[:n].copy()
    out[: n - 1] += full[n:]
    return out


if NUMBA_ENABLED:

    @njit(cache=True)
    def _cyclic_convolve_jit(a, b):  # pragma: no cover - compiled
        n = a.shape[0]
        out = np.zeros(n, dtype=np.int64)
        for i in range(n):
            ai = a[i]
            if ai == 0:
                continue
            for j in range(n):
                k = i + j
                if k >= n:
                    k -= n
                out[k] += ai * b[j]
        return out

    def cyclic_convolve_numba(a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return _cyclic_convolve_jit(a, b)

    cyclic_convolve = cyclic_convolve_numba
else:
    cyclic_convolve_numba = None
    cyclic_convolve = cyclic_convolve_numpy
