"""numba switch.

Set ``CMVIRIAL_DISABLE_NUMBA=1`` before import to force the pure-numpy
kernels even when numba is installed.
"""
import logging
import os

_flag = os.environ.get("CMVIRIAL_DISABLE_NUMBA", "").strip().lower()
DISABLED = _flag not in ("", "0", "false", "no")

try:
    import numba

    logging.getLogger("numba").setLevel(logging.WARNING)
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not DISABLED


def njit(func):
    """Compile ``func`` with numba when available, else return it unchanged.

    Compilation happens regardless of the env flag so the benchmark can
    always compare both paths; the flag only controls which one the public
    kernels dispatch to.
    """
    if not HAVE_NUMBA:
        return func
    return numba.njit(cache=True)(func)
