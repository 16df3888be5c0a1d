"""Pick the kernel implementation at import time.

The compiled extension is used when it was built; set ``CLAB_PURE_PYTHON=1``
to force the numpy fallback.
"""
import importlib
import os

from clab import _kernels_py

BACKEND = "python"
kernels = _kernels_py

if os.environ.get("CLAB_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        kernels = importlib.import_module("clab._kernels")
        BACKEND = "compiled"
    except ImportError:
        pass


def get_kernels(name=None):
    """Return a kernel module by name ('compiled', 'python'), or the active one."""
    if name is None:
        return kernels
    if name == "python":
        return _kernels_py
    if name == "compiled":
        return importlib.import_module("clab._kernels")
    raise ValueError(f"unknown backend {name!r}")
