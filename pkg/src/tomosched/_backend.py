"""Kernel backend selection.

The exhaustive verification loops (quadruple coverage, outcome accumulation,
clique search) are the hot paths of this package.  They are compiled with
numba when available; a pure numpy/python implementation of every kernel is
kept alongside so the package runs identically without a working numba.

The environment variable ``TOMOSCHED_BACKEND`` picks the path:

* ``auto`` (default) - numba if it imports, numpy otherwise
* ``numba``          - require numba, raise if missing
* ``numpy``          - force the pure fallback
"""

from __future__ import annotations

import functools
import os

_choice = os.environ.get("TOMOSCHED_BACKEND", "auto").strip().lower()
if _choice not in ("auto", "numba", "numpy"):
    raise ValueError(
        "TOMOSCHED_BACKEND must be one of 'auto', 'numba', 'numpy'; "
        f"got {_choice!r}"
    )

NUMBA_ENABLED = False
if _choice in ("auto", "numba"):
    try:
        import numba  # noqa: F401

        NUMBA_ENABLED = True
    except ImportError:
        if _choice == "numba":
            raise
        NUMBA_ENABLED = False


def njit(*args, **kwargs):
    """``numba.njit`` when the numba backend is active, no-op otherwise."""
    if NUMBA_ENABLED:
        import numba

        return numba.njit(*args, **kwargs)

    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*a, **kw):
            return fn(*a, **kw)

        return wrapper

    if args and callable(args[0]) and len(args) == 1 and not kwargs:
        return decorate(args[0])
    return decorate
