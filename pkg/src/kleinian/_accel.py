"""Numba switch.

Set ``KLEINIAN_DISABLE_NUMBA=1`` to force the pure-numpy kernels (useful for
debugging and for platforms without llvmlite).  ``KLEINIAN_THREADS`` caps the
number of worker threads used by parallel kernels.
"""

import os
import warnings

_flag = os.environ.get("KLEINIAN_DISABLE_NUMBA", "0").strip().lower()
DISABLED = _flag in ("1", "true", "yes", "on")

try:
    import numba as _numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    _numba = None

HAVE_NUMBA = _numba is not None
# the parallel runtime falls back to omp/workqueue; the notice is noise
warnings.filterwarnings("ignore", message="The TBB threading layer")
USE_NUMBA = HAVE_NUMBA and not DISABLED

njit_opts = {"cache": True, "nogil": True}


def njit(*args, **kwargs):
    """``numba.njit`` when available, else the identity decorator."""
    opts = dict(njit_opts)
    opts.update(kwargs)
    if HAVE_NUMBA:
        if args and callable(args[0]):
            return _numba.njit(**opts)(args[0])
        return _numba.njit(*args, **opts)
    if args and callable(args[0]):
        return args[0]
    return lambda f: f


def set_threads(n=None):
    """Cap numba worker threads; reads ``KLEINIAN_THREADS`` when ``n`` is None."""
    if not HAVE_NUMBA:
        return
    if n is None:
        raw = os.environ.get("KLEINIAN_THREADS")
        if not raw:
            return
        n = int(raw)
    n = max(1, min(int(n), _numba.config.NUMBA_NUM_THREADS))
    _numba.set_num_threads(n)
