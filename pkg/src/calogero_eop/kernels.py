"""Kernel selection: the compiled ``_core`` when importable, else ``_core_py``.

Set ``CALOGERO_EOP_PURE_PYTHON=1`` to force the fallback.
"""

import os

BACKEND = "python"
if os.environ.get("CALOGERO_EOP_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _core as _impl
        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = None
else:
    _impl = None

if _impl is None:
    from . import _core_py as _impl

sturm_count = _impl.sturm_count
bisect_lowest = _impl.bisect_lowest
solve_shifted = _impl.solve_shifted


def get_backend(name):
    """Return the kernel module for 'cython' or 'python' (for benchmarks/tests)."""
    if name == "python":
        from . import _core_py
        return _core_py
    if name == "cython":
        from . import _core
        return _core
    raise ValueError(f"unknown backend {name!r}")
