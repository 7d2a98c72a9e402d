# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled bitset kernels for carriers of at most 64 elements.

Same functions and semantics as oqlkit._kernels.pure; see that module for
documentation.  The test suite runs both backends differentially.
"""

from libc.stdlib cimport free, malloc


cdef inline int _ctz(unsigned long long x):
    cdef int c = 0
    while not (x & 1):
        x >>= 1
        c += 1
    return c


cdef inline unsigned long long _downclose(
    unsigned long long mask, unsigned long long[:] down
):
    cdef unsigned long long out = 0, m = mask
    while m:
        out |= down[_ctz(m)]
        m &= m - 1
    return out


cdef inline int _join_of(
    unsigned long long mask, long long[:] join_flat, int n, int bottom
):
    cdef int r = bottom
    cdef unsigned long long m = mask
    while m:
        r = <int> join_flat[r * n + _ctz(m)]
        m &= m - 1
    return r


cdef inline int _meet_of(
    unsigned long long mask, long long[:] meet_flat, int n, int top
):
    cdef int r = top
    cdef unsigned long long m = mask
    while m:
        r = <int> meet_flat[r * n + _ctz(m)]
        m &= m - 1
    return r


cdef inline bint _is_distributive_join(
    unsigned long long smask,
    int n,
    long long[:] meet_flat,
    long long[:] join_flat,
    int bottom,
):
    cdef int j = _join_of(smask, join_flat, n, bottom)
    cdef int b, rhs
    cdef unsigned long long m
    for b in range(n):
        rhs = bottom
        m = smask
        while m:
            rhs = <int> join_flat[rhs * n + meet_flat[b * n + _ctz(m)]]
            m &= m - 1
        if meet_flat[b * n + j] != rhs:
            return False
    return True


cdef inline bint _is_dideal(
    unsigned long long mask,
    int n,
    unsigned long long[:] down,
    long long[:] meet_flat,
    long long[:] join_flat,
    int bottom,
):
    cdef unsigned long long sub = mask
    cdef int j
    while sub:
        j = _join_of(sub, join_flat, n, bottom)
        if not (mask >> j) & 1 and _is_distributive_join(
            sub, n, meet_flat, join_flat, bottom
        ):
            return False
        sub = (sub - 1) & mask
    return True


def downclose(mask, unsigned long long[:] down):
    return _downclose(mask, down)


def join_of(mask, long long[:] join_flat, int n, int bottom):
    return _join_of(mask, join_flat, n, bottom)


def meet_of(mask, long long[:] meet_flat, int n, int top):
    return _meet_of(mask, meet_flat, n, top)


def is_distributive_join(smask, int n, long long[:] meet_flat,
                         long long[:] join_flat, int bottom):
    return bool(_is_distributive_join(smask, n, meet_flat, join_flat, bottom))


def di_close(amask, int n, unsigned long long[:] down, long long[:] meet_flat,
             long long[:] join_flat, int bottom):
    cdef unsigned long long closed = _downclose(amask, down) | (<unsigned long long> 1 << bottom)
    cdef unsigned long long sub
    cdef int j
    cdef bint changed = True
    while changed:
        changed = False
        sub = closed
        while sub:
            j = _join_of(sub, join_flat, n, bottom)
            if not (closed >> j) & 1 and _is_distributive_join(
                sub, n, meet_flat, join_flat, bottom
            ):
                closed |= down[j]
                changed = True
            sub = (sub - 1) & closed
    return closed


def downsets(int n, unsigned long long[:] down, long long[:] order):
    cdef list out = []
    cdef int depth = n + 2
    # DFS over include/exclude decisions in linear-extension order; the
    # stack never exceeds one pending branch per level.
    cdef int *ks = <int *> malloc(2 * depth * sizeof(int))
    cdef unsigned long long *masks = <unsigned long long *> malloc(
        2 * depth * sizeof(unsigned long long)
    )
    if ks == NULL or masks == NULL:
        free(ks)
        free(masks)
        raise MemoryError()
    cdef int top = 0, k, i
    cdef unsigned long long mask
    ks[0] = 0
    masks[0] = 0
    try:
        while top >= 0:
            k = ks[top]
            mask = masks[top]
            top -= 1
            if k == n:
                out.append(mask)
                continue
            i = <int> order[k]
            if down[i] & ~(mask | (<unsigned long long> 1 << i)) == 0:
                top += 1
                ks[top] = k + 1
                masks[top] = mask | (<unsigned long long> 1 << i)
            top += 1
            ks[top] = k + 1
            masks[top] = mask
    finally:
        free(ks)
        free(masks)
    out.sort()
    return out


def is_dideal(mask, int n, unsigned long long[:] down, long long[:] meet_flat,
              long long[:] join_flat, int bottom):
    return bool(_is_dideal(mask, n, down, meet_flat, join_flat, bottom))


def dideals(int n, unsigned long long[:] down, long long[:] meet_flat,
            long long[:] join_flat, int bottom, long long[:] order):
    cdef list out = []
    cdef unsigned long long mask
    for mask in downsets(n, down, order):
        if mask and _is_dideal(mask, n, down, meet_flat, join_flat, bottom):
            out.append(mask)
    return out
