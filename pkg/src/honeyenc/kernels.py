"""Kernel dispatch: compiled Cython core when built, pure Python otherwise.

Set ``HONEYENC_PURE_PYTHON=1`` to force the fallback (used by the
benchmark and by the backend-parity tests).
"""

from __future__ import annotations

import os

import numpy as np

from honeyenc import _fallback

_compiled = None
if not os.environ.get("HONEYENC_PURE_PYTHON"):
    try:
        from honeyenc import _kernels as _compiled
    except ImportError:
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"


def assignment(cost):
    cost = np.ascontiguousarray(cost, dtype=float)
    if _compiled is not None:
        return _compiled.assignment(cost)
    return _fallback.assignment(cost)


def permanent(a) -> float:
    a = np.ascontiguousarray(a, dtype=float)
    if _compiled is not None:
        return _compiled.permanent(a)
    return _fallback.permanent(a)


def permanents_over_outputs(rows, outputs):
    rows = np.ascontiguousarray(rows, dtype=float)
    outputs = np.ascontiguousarray(outputs, dtype=np.intp)
    if _compiled is not None:
        return _compiled.permanents_over_outputs(rows, outputs)
    return _fallback.permanents_over_outputs(rows, outputs)
