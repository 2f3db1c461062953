"""Optional numba acceleration.

Set ``TAUTILE_NO_NUMBA=1`` to force the pure-numpy kernels even when numba
is importable.  The flag is read once at import time; tests and the
benchmark flip it through :func:`set_numba`.
"""
import os

try:
    from numba import njit as _numba_njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def _numba_njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]):
            return args[0]
        return lambda f: f


def _env_disabled() -> bool:
    return os.environ.get("TAUTILE_NO_NUMBA", "").strip().lower() in ("1", "true", "yes")


_use_numba = HAVE_NUMBA and not _env_disabled()


def njit(*args, **kwargs):
    """``numba.njit(cache=True)`` when numba is installed, identity otherwise."""
    kwargs.setdefault("cache", True)
    return _numba_njit(*args, **kwargs)


def using_numba() -> bool:
    return _use_numba


def set_numba(flag: bool) -> bool:
    """Switch kernel selection at runtime; returns the previous setting."""
    global _use_numba
    previous = _use_numba
    _use_numba = bool(flag) and HAVE_NUMBA
    return previous
