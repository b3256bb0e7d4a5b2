"""Sweep kernels with backend selection.

The compiled backend (_native, Cython) is used when importable; the
pure-Python twin (pure) otherwise. Both produce bitwise-identical output.
Set EBOVAX_BACKEND=python or =native to force one; forcing native raises
if the extension is missing.
"""

import os

_requested = os.environ.get("EBOVAX_BACKEND", "").strip().lower()
if _requested not in ("", "native", "python"):
    raise ImportError(f"EBOVAX_BACKEND must be 'native' or 'python', got {_requested!r}")

BACKEND = "python"
if _requested != "python":
    try:
        from ._native import backward_sweep, forward_sweep
        BACKEND = "native"
    except ImportError:
        if _requested == "native":
            raise

if BACKEND == "python":
    from .pure import backward_sweep, forward_sweep


def available_backends():
    """Names of importable backends, native first when present."""
    names = []
    try:
        from . import _native  # noqa: F401
        names.append("native")
    except ImportError:
        pass
    names.append("python")
    return names
