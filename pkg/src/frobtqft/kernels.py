"""Backend selection for the dense contraction kernels.

The compiled extension is used when it imports; otherwise the pure-Python
module is used.  Both can be imported directly for benchmarking, and
:func:`use_backend` switches the active one at runtime.
"""
from types import ModuleType

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_active: ModuleType = _ckernels if _ckernels is not None else _pykernels


def available_backends():
    return ["python"] + (["cython"] if _ckernels is not None else [])


def backend_name():
    return _active.BACKEND


def use_backend(name):
    """Select ``"python"`` or ``"cython"``; returns the previous name."""
    global _active
    previous = _active.BACKEND
    if name == "python":
        _active = _pykernels
    elif name == "cython":
        if _ckernels is None:
            raise RuntimeError("compiled kernels are not built")
        _active = _ckernels
    else:
        raise ValueError(f"unknown backend {name!r}")
    return previous


def transpose(data, rank, dim, perm):
    return _active.transpose(data, rank, dim, perm)


def outer(a, b):
    return _active.outer(a, b)


def tensordot(a, a_rank, b, b_rank, dim, a_axes, b_axes):
    return _active.tensordot(a, a_rank, b, b_rank, dim, a_axes, b_axes)
