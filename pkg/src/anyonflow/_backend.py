"""Kernel backend selection.

The hot inner loops (sector enumeration, Metropolis walks) are compiled
with numba's @njit by default.  Setting the environment variable
``ANYONFLOW_BACKEND=numpy`` forces the pure numpy/Python fallback; the
fallback is also used automatically when numba cannot be imported.
Both paths produce bit-identical results for identical inputs.
"""
import os
import warnings

ENV_VAR = "ANYONFLOW_BACKEND"
_CHOICES = ("numba", "numpy")


def _numba_available() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def resolve_backend(requested: str | None = None) -> str:
    """Pick the active backend name ("numba" or "numpy").

    `requested` overrides the environment variable; an explicit request
    for numba raises if numba is missing, while the default preference
    degrades silently to numpy.
    """
    name = requested if requested is not None else os.environ.get(ENV_VAR, "").strip().lower()
    if name and name not in _CHOICES:
        warnings.warn(f"{ENV_VAR}={name!r} not recognized; expected one of {_CHOICES}, "
                      "falling back to default selection")
        name = ""
    if name == "numpy":
        return "numpy"
    if name == "numba":
        if not _numba_available():
            raise ImportError("backend 'numba' requested but numba is not importable")
        return "numba"
    return "numba" if _numba_available() else "numpy"


BACKEND = resolve_backend()


def jit(func):
    """Compile `func` with numba when available, else return it unchanged."""
    if not _numba_available():
        return func
    from numba import njit

    return njit(cache=True)(func)
