"""Backend selection for the enumeration kernels.

The compiled extension is preferred.  Setting ``HYPERSTAB_PURE_PYTHON=1``
or a failed build falls back to the NumPy implementation.
"""

import importlib
import os

from . import _kernels_py


def load_backend(name: str):
    """Return the kernel module for ``"compiled"`` or ``"python"``."""
    if name == "python":
        return _kernels_py
    if name == "compiled":
        return importlib.import_module("hyperstab._kernels")
    raise ValueError(f"unknown kernel backend {name!r}")


def _select():
    if os.environ.get("HYPERSTAB_PURE_PYTHON", "") not in ("", "0"):
        return "python", _kernels_py
    try:
        return "compiled", load_backend("compiled")
    except ImportError:
        return "python", _kernels_py


BACKEND, impl = _select()


def available_backends() -> list[str]:
    names = ["python"]
    try:
        load_backend("compiled")
    except ImportError:
        return names
    return ["compiled"] + names
