"""Kernel selection: compiled extension when present, numpy otherwise.

The choice happens at import. GAES_BACKEND forces it:

  auto       compiled if importable, else numpy (default)
  compiled   require the extension, fail loudly if missing
  numpy      always use the fallback

select() re-points the active kernel at run time; the benchmark harness
uses it to time both backends in one process.
"""

from __future__ import annotations

import os

from . import _kernel_np

_BACKENDS = {"numpy": _kernel_np}

try:
    from . import _kernel as _kernel_ext
except ImportError:
    _kernel_ext = None
else:
    _BACKENDS["compiled"] = _kernel_ext

_active = None


def available() -> tuple:
    return tuple(sorted(_BACKENDS))


def select(name: str):
    """Make `name` ("auto", "compiled", "numpy") the active backend."""
    global _active
    if name == "auto":
        name = "compiled" if _kernel_ext is not None else "numpy"
    if name not in _BACKENDS:
        raise ValueError(
            f"backend {name!r} not available (have: {', '.join(available())})"
        )
    _active = _BACKENDS[name]
    return _active


def active():
    return _active


def name() -> str:
    return _active.NAME


def cbc_encrypt(*args):
    _active.cbc_encrypt(*args)


def cbc_decrypt(*args):
    _active.cbc_decrypt(*args)


select(os.environ.get("GAES_BACKEND", "auto"))
