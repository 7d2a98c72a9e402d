"""Kernel backend selection.

The compiled Cython kernels (_bitops) are used when they were built and the
carrier fits in a 64-bit mask; otherwise the pure-Python reference kernels
take over.  Both expose the same functions with identical results, which the
test suite checks differentially.
"""

from . import pure

try:
    from . import _bitops as _compiled  # type: ignore[attr-defined]
except ImportError:
    _compiled = None

BACKEND = "compiled" if _compiled is not None else "pure"


def backend_for(n: int):
    """Module implementing the kernels for an n-element carrier."""
    if _compiled is not None and n <= 64:
        return _compiled
    return pure


def downclose(mask, down, n):
    return backend_for(n).downclose(mask, down)


def join_of(mask, join_flat, n, bottom):
    return backend_for(n).join_of(mask, join_flat, n, bottom)


def meet_of(mask, meet_flat, n, top):
    return backend_for(n).meet_of(mask, meet_flat, n, top)


def is_distributive_join(smask, n, meet_flat, join_flat, bottom):
    return backend_for(n).is_distributive_join(smask, n, meet_flat, join_flat, bottom)


def di_close(amask, n, down, meet_flat, join_flat, bottom):
    return backend_for(n).di_close(amask, n, down, meet_flat, join_flat, bottom)


def downsets(n, down, order):
    return backend_for(n).downsets(n, down, order)


def is_dideal(mask, n, down, meet_flat, join_flat, bottom):
    return backend_for(n).is_dideal(mask, n, down, meet_flat, join_flat, bottom)


def dideals(n, down, meet_flat, join_flat, bottom, order):
    return backend_for(n).dideals(n, down, meet_flat, join_flat, bottom, order)
