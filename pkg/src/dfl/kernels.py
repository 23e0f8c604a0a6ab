"""Predicate backend selection.

The compiled extension is used when it was built; otherwise the pure-Python
kernels are used. Both are exact and return identical signs. ``set_backend``
exists for benchmarking and for the agreement tests.
"""
from dfl import _pykernels

try:
    from dfl import _ckernels
except ImportError:  # extension not built
    _ckernels = None

__all__ = ["available_backends", "backend", "set_backend",
           "orient2d", "incircle", "orient3d", "insphere"]

_BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    _BACKENDS["compiled"] = _ckernels

_active = "compiled" if _ckernels is not None else "python"


def available_backends():
    return sorted(_BACKENDS)


def backend():
    return _active


def set_backend(name):
    """Switch the module-level predicates to backend ``name``."""
    global _active, orient2d, incircle, orient3d, insphere
    try:
        impl = _BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown or unavailable backend {name!r}; "
                         f"choose from {available_backends()}") from None
    _active = name
    orient2d = impl.orient2d
    incircle = impl.incircle
    orient3d = impl.orient3d
    insphere = impl.insphere


orient2d = incircle = orient3d = insphere = None
set_backend(_active)
