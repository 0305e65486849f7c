"""Backend selection for the hot kernels.

The compiled ``_ckernels`` extension is used when importable; otherwise (or
when the ``GAMMAGRAPHIC_PURE_PYTHON`` environment variable is non-empty) the
pure-Python ``_pykernels`` module is used. Both expose identical functions.
"""
import os

from . import _pykernels

if os.environ.get("GAMMAGRAPHIC_PURE_PYTHON"):
    _compiled = None
else:
    try:
        from . import _ckernels as _compiled
    except ImportError:
        _compiled = None

backend = _compiled if _compiled is not None else _pykernels
BACKEND = backend.BACKEND


def available_backends():
    """Name -> module for every importable backend."""
    out = {"python": _pykernels}
    if _compiled is not None:
        out["cython"] = _compiled
    else:
        try:
            from . import _ckernels
        except ImportError:
            pass
        else:
            out["cython"] = _ckernels
    return out


def get_backend(name=None):
    if name is None:
        return backend
    try:
        return available_backends()[name]
    except KeyError:
        raise ValueError(f"kernel backend {name!r} is not available") from None
