"""Kernel backend selection.

The compiled kernels are used when importable, unless the environment
variable ``FRECHET_RANGE_BACKEND`` is set to ``python``.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _pykernels

python: ModuleType = _pykernels
compiled: ModuleType | None
try:
    from . import _ckernels as compiled
except ImportError:  # extension not built
    compiled = None


def _select() -> ModuleType:
    choice = os.environ.get("FRECHET_RANGE_BACKEND", "").lower()
    if choice == "python" or compiled is None:
        return python
    return compiled


kernels: ModuleType = _select()
NAME: str = "compiled" if kernels is compiled else "python"


def get(name: str | None = None) -> ModuleType:
    """Return the kernel module called ``name`` (``"compiled"``/``"python"``), or the active one."""
    if name is None:
        return kernels
    if name == "python":
        return python
    if name == "compiled":
        if compiled is None:
            raise RuntimeError("compiled kernels are not built")
        return compiled
    raise ValueError(f"unknown backend {name!r}")
