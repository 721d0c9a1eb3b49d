"""Backend selection for the hot loops.

The compiled ``_ckernels`` extension is used when it was built; otherwise the
pure-Python ``_pykernels`` module is used. Setting ``HYDROFOLD_PURE_PYTHON=1``
forces the fallback.
"""
import os

from hydrofold import _pykernels

CONSECUTIVE_H = _pykernels.CONSECUTIVE_H
ALL_PAIRS_H = _pykernels.ALL_PAIRS_H
MASKED_ADJACENT = _pykernels.MASKED_ADJACENT
HP_CONTACT = _pykernels.HP_CONTACT

_impl = _pykernels
BACKEND = "python"
if os.environ.get("HYDROFOLD_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from hydrofold import _ckernels as _impl  # noqa: F811
        BACKEND = "cython"
    except ImportError:
        pass

energy = _impl.energy
enumerate_from = _impl.enumerate_from


def available_backends():
    """Return ``{name: module}`` for every importable backend."""
    backends = {"python": _pykernels}
    try:
        from hydrofold import _ckernels
        backends["cython"] = _ckernels
    except ImportError:
        pass
    return backends
