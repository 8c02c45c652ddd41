"""Kernel dispatch: compiled ``_kernels`` when available, else pure Python.

Set ``CREMONA_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py as _py

BACKEND = "python"
_fast = None
if not os.environ.get("CREMONA_PURE_PYTHON"):
    try:
        from . import _kernels as _fast  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on build
        _fast = None


def _guarded(name):
    py_fn = getattr(_py, name)
    if _fast is None:
        return py_fn
    fast_fn = getattr(_fast, name)

    def call(*args):
        try:
            return fast_fn(*args)
        except OverflowError:
            return py_fn(*args)

    call.__name__ = name
    call.__doc__ = py_fn.__doc__
    return call


reduce_raw = _guarded("reduce_raw")
mul_reduce = _guarded("mul_reduce")
cayley_table = getattr(_fast, "cayley_table", _py.cayley_table) if _fast else _py.cayley_table
extend_hom = getattr(_fast, "extend_hom", _py.extend_hom) if _fast else _py.extend_hom

__all__ = ["BACKEND", "reduce_raw", "mul_reduce", "cayley_table", "extend_hom"]
