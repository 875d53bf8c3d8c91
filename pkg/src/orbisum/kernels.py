"""Ordering kernels, compiled when available.

The Cython extension ``orbisum._kernels`` is used if it was built; otherwise
(or when ``ORBISUM_PURE_PYTHON`` is set to a non-empty value) the pure-Python
module ``orbisum._kernels_py`` is used. Both expose the same two functions.
"""
import os

if os.environ.get("ORBISUM_PURE_PYTHON"):
    from . import _kernels_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl

        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as _impl

        BACKEND = "python"

flagged_joins = _impl.flagged_joins
flagged_join_range = _impl.flagged_join_range

__all__ = ["BACKEND", "flagged_joins", "flagged_join_range"]
