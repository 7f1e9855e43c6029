"""Optional numba acceleration for the hot numeric kernels.

Set the environment variable CROWDGAME_NO_NUMBA=1 to force the pure
numpy/Python fallback path (also used automatically when numba is not
installed).  The flag is read once, at import time.
"""
import os


def _disabled() -> bool:
    return os.environ.get("CROWDGAME_NO_NUMBA", "").strip().lower() in ("1", "true", "yes")


USING_NUMBA = False
if not _disabled():
    try:
        from numba import njit as _numba_njit
        USING_NUMBA = True
    except ImportError:
        pass

if USING_NUMBA:
    def njit(*args, **kwargs):
        kwargs.setdefault("cache", True)
        return _numba_njit(*args, **kwargs)
else:
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        def wrap(func):
            return func
        return wrap
