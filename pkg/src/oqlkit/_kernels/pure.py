"""Pure-Python bitset kernels.

These are the hot loops of the package: subset enumeration over lattice
carriers represented as bitmasks.  oqlkit._kernels._bitops is a Cython
translation with the same functions and semantics for carriers of at most 64
elements; this module is the reference implementation and works for any size.

Conventions: elements are indices 0..n-1, a set of elements is an int bitmask,
`down[i]` is the mask of everything <= i (including i), and meet/join tables
are flattened row-major (entry i*n+j).
"""

from __future__ import annotations


def downclose(mask: int, down) -> int:
    out = 0
    m = mask
    while m:
        i = (m & -m).bit_length() - 1
        out |= down[i]
        m &= m - 1
    return out


def join_of(mask: int, join_flat, n: int, bottom: int) -> int:
    r = bottom
    m = mask
    while m:
        i = (m & -m).bit_length() - 1
        r = join_flat[r * n + i]
        m &= m - 1
    return r


def meet_of(mask: int, meet_flat, n: int, top: int) -> int:
    r = top
    m = mask
    while m:
        i = (m & -m).bit_length() - 1
        r = meet_flat[r * n + i]
        m &= m - 1
    return r


def is_distributive_join(smask: int, n: int, meet_flat, join_flat, bottom: int) -> bool:
    """Does b /\\ join(S) == join(b /\\ a for a in S) hold for every b?"""
    j = join_of(smask, join_flat, n, bottom)
    for b in range(n):
        rhs = bottom
        m = smask
        while m:
            i = (m & -m).bit_length() - 1
            rhs = join_flat[rhs * n + meet_flat[b * n + i]]
            m &= m - 1
        if meet_flat[b * n + j] != rhs:
            return False
    return True


def di_close(amask: int, n: int, down, meet_flat, join_flat, bottom: int) -> int:
    """Least superset of `amask` that is down-closed and closed under
    distributive joins.  Fixpoint iteration over all submasks; exponential in
    the size of the result, so callers cap n."""
    closed = downclose(amask, down) | (1 << bottom)
    while True:
        changed = False
        sub = closed
        while sub:
            j = join_of(sub, join_flat, n, bottom)
            if not (closed >> j) & 1 and is_distributive_join(
                sub, n, meet_flat, join_flat, bottom
            ):
                closed |= down[j]
                changed = True
            sub = (sub - 1) & closed
        if not changed:
            return closed


def downsets(n: int, down, order) -> list[int]:
    """All down-closed masks (including the empty one), in a deterministic
    order.  `order` must be a linear extension: lesser elements first."""
    out: list[int] = []
    # explicit stack mirrors the compiled version
    stack = [(0, 0)]
    while stack:
        k, mask = stack.pop()
        if k == len(order):
            out.append(mask)
            continue
        i = order[k]
        if down[i] & ~(mask | (1 << i)) == 0:
            stack.append((k + 1, mask | (1 << i)))
        stack.append((k + 1, mask))
    out.sort()
    return out


def is_dideal(mask: int, n: int, down, meet_flat, join_flat, bottom: int) -> bool:
    """Is a nonempty down-closed mask closed under distributive joins?"""
    sub = mask
    while sub:
        j = join_of(sub, join_flat, n, bottom)
        if not (mask >> j) & 1 and is_distributive_join(
            sub, n, meet_flat, join_flat, bottom
        ):
            return False
        sub = (sub - 1) & mask
    return True


def dideals(n: int, down, meet_flat, join_flat, bottom: int, order) -> list[int]:
    """All distributive-ideal masks, by filtering every nonempty down-set."""
    out: list[int] = []
    for mask in downsets(n, down, order):
        if mask and is_dideal(mask, n, down, meet_flat, join_flat, bottom):
            out.append(mask)
    return out
