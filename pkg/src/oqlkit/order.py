"""Finite lattices, monotone maps, and Galois adjoints.

Carriers are tuples of element names.  Internally an element is its index,
a set of elements is an int bitmask, and meets/joins are dense n x n tables
built once at construction, so everything downstream gets O(1) lattice
operations.  Empty meets are the top element, empty joins the bottom.

Joins in a finite lattice are determined by the order: join(A) is the meet of
the common upper bounds of A.  Adjoints come from the usual Galois recipe:
a join-preserving f has the right adjoint g(b) = join{a | f(a) <= b}, and
f(a) <= b iff a <= g(b); dually for meet-preserving maps.
"""

from __future__ import annotations

from array import array
from typing import Callable, Iterable, Sequence

from . import _kernels
from .caps import Caps, get_caps
from .errors import (
    NotALattice,
    NotAPoset,
    NotJoinPreserving,
    NotMeetPreserving,
    NotMonotone,
    SizeCapExceeded,
    UnknownElement,
)
from .report import Check


class FiniteLattice:
    """A finite lattice over named elements.

    Instances are immutable once built; construct them with build_lattice or
    lattice_from_closure_system rather than directly.
    """

    __slots__ = (
        "elements",
        "index",
        "up",
        "down",
        "meet_table",
        "join_table",
        "bottom_i",
        "top_i",
        "_derived",
    )

    def __init__(self, elements, up, down, meet_table, join_table, bottom_i, top_i):
        self.elements: tuple[str, ...] = elements
        self.index: dict[str, int] = {x: i for i, x in enumerate(elements)}
        self.up: tuple[int, ...] = up
        self.down: tuple[int, ...] = down
        self.meet_table: tuple[tuple[int, ...], ...] = meet_table
        self.join_table: tuple[tuple[int, ...], ...] = join_table
        self.bottom_i: int = bottom_i
        self.top_i: int = top_i
        self._derived: dict = {}

    # -- identity ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteLattice):
            return NotImplemented
        return self.elements == other.elements and self.up == other.up

    def __hash__(self) -> int:
        return hash((self.elements, self.up))

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        names = ", ".join(self.elements[:8])
        if len(self.elements) > 8:
            names += ", ..."
        return f"{type(self).__name__}({len(self.elements)} elements: {names})"

    # -- element access ---------------------------------------------------

    def idx(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise UnknownElement(name) from None

    def el(self, i: int) -> str:
        return self.elements[i]

    @property
    def bottom(self) -> str:
        return self.elements[self.bottom_i]

    @property
    def top(self) -> str:
        return self.elements[self.top_i]

    def mask_of(self, names: Iterable[str]) -> int:
        m = 0
        for x in names:
            m |= 1 << self.idx(x)
        return m

    def names_of(self, mask: int) -> tuple[str, ...]:
        return tuple(self.elements[i] for i in range(len(self.elements)) if mask >> i & 1)

    # -- order and operations ----------------------------------------------

    def leq_i(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def leq(self, a: str, b: str) -> bool:
        return self.leq_i(self.idx(a), self.idx(b))

    def meet_i(self, i: int, j: int) -> int:
        return self.meet_table[i][j]

    def join_i(self, i: int, j: int) -> int:
        return self.join_table[i][j]

    def meet(self, a: str, b: str) -> str:
        return self.elements[self.meet_i(self.idx(a), self.idx(b))]

    def join(self, a: str, b: str) -> str:
        return self.elements[self.join_i(self.idx(a), self.idx(b))]

    def meet_mask(self, mask: int) -> int:
        return _kernels.meet_of(mask, self._flat()[0], len(self.elements), self.top_i)

    def join_mask(self, mask: int) -> int:
        return _kernels.join_of(mask, self._flat()[1], len(self.elements), self.bottom_i)

    def atom_indices(self) -> tuple[int, ...]:
        got = self._derived.get("atoms")
        if got is None:
            bot = self.bottom_i
            got = tuple(
                i
                for i in range(len(self.elements))
                if i != bot and self.down[i] == (1 << i | 1 << bot)
            )
            self._derived["atoms"] = got
        return got

    def atoms_below(self, i: int) -> int:
        """Mask of atoms <= element i (the Cartan image of i)."""
        table = self._derived.get("atoms_below")
        if table is None:
            amask = 0
            for a in self.atom_indices():
                amask |= 1 << a
            table = tuple(self.down[i] & amask for i in range(len(self.elements)))
            self._derived["atoms_below"] = table
        return table[i]

    # -- kernel plumbing ----------------------------------------------------

    def _flat(self):
        """(meet_flat, join_flat, down_seq) in kernel-ready containers."""
        got = self._derived.get("flat")
        if got is None:
            n = len(self.elements)
            meet_flat = [self.meet_table[i][j] for i in range(n) for j in range(n)]
            join_flat = [self.join_table[i][j] for i in range(n) for j in range(n)]
            down_seq: Sequence[int] = self.down
            if n <= 64:
                meet_flat = array("q", meet_flat)
                join_flat = array("q", join_flat)
                down_seq = array("Q", self.down)
            got = (meet_flat, join_flat, down_seq)
            self._derived["flat"] = got
        return got

    def _linear_extension(self) -> Sequence[int]:
        got = self._derived.get("linext")
        if got is None:
            n = len(self.elements)
            got = sorted(range(n), key=lambda i: (self.down[i].bit_count(), i))
            if n <= 64:
                got = array("q", got)
            self._derived["linext"] = got
        return got


def build_lattice(
    elements: Sequence[str],
    order_pairs: Iterable[tuple[str, str]],
    caps: Caps | None = None,
) -> FiniteLattice:
    """Build a FiniteLattice from element names and a <= b generating pairs.

    The reflexive-transitive closure of the pairs is taken first; cover pairs
    suffice.  Raises NotAPoset on a cycle through distinct elements,
    NotALattice when some pair lacks a meet or join, UnknownElement for a pair
    naming an undeclared element, and SizeCapExceeded past the element cap.
    """
    caps = caps or get_caps()
    elements = tuple(elements)
    if not elements:
        raise NotALattice("<empty>", "<empty>", "carrier")
    if len(set(elements)) != len(elements):
        dup = next(x for i, x in enumerate(elements) if x in elements[:i])
        raise ValueError(f"duplicate element name: {dup!r}")
    if len(elements) > caps.max_elements:
        raise SizeCapExceeded(
            "lattice carrier", len(elements), caps.max_elements,
            "raise the cap with OQLKIT_CAP or --cap",
        )
    index = {x: i for i, x in enumerate(elements)}
    n = len(elements)
    up = [1 << i for i in range(n)]
    for a, b in order_pairs:
        ia = index.get(a)
        ib = index.get(b)
        if ia is None:
            raise UnknownElement(a)
        if ib is None:
            raise UnknownElement(b)
        up[ia] |= 1 << ib
    # reflexive-transitive closure by bitmask propagation
    changed = True
    while changed:
        changed = False
        for i in range(n):
            acc = up[i]
            m = acc
            while m:
                j = (m & -m).bit_length() - 1
                acc |= up[j]
                m &= m - 1
            if acc != up[i]:
                up[i] = acc
                changed = True
    for i in range(n):
        for j in range(i + 1, n):
            if up[i] >> j & 1 and up[j] >> i & 1:
                raise NotAPoset(elements[i], elements[j])
    return _from_order(elements, tuple(up))


def _from_order(elements: tuple[str, ...], up: tuple[int, ...]) -> FiniteLattice:
    """Finish construction from a valid reflexive-transitive-antisymmetric
    order given as up-masks."""
    n = len(elements)
    down = tuple(
        sum(1 << j for j in range(n) if up[j] >> i & 1) for i in range(n)
    )
    meet_rows = []
    join_rows = []
    for i in range(n):
        mrow = []
        jrow = []
        for j in range(n):
            low = down[i] & down[j]
            g = _greatest(low, down)
            if g < 0:
                raise NotALattice(elements[i], elements[j], "meet")
            mrow.append(g)
            high = up[i] & up[j]
            l = _greatest(high, up)
            if l < 0:
                raise NotALattice(elements[i], elements[j], "join")
            jrow.append(l)
        meet_rows.append(tuple(mrow))
        join_rows.append(tuple(jrow))
    bottom_i = next(i for i in range(n) if down[i] == 1 << i)
    top_i = next(i for i in range(n) if up[i] == 1 << i)
    return FiniteLattice(
        elements, up, down, tuple(meet_rows), tuple(join_rows), bottom_i, top_i
    )


def _greatest(mask: int, down) -> int:
    """Index of the greatest element of `mask` (one containing all others in
    its down-set), or -1 if none exists."""
    m = mask
    while m:
        i = (m & -m).bit_length() - 1
        if mask & ~down[i] == 0:
            return i
        m &= m - 1
    return -1


def lattice_from_closure_system(
    points: Sequence[str],
    closed_masks: Iterable[int],
    caps: Caps | None = None,
) -> tuple[FiniteLattice, dict[str, int]]:
    """Lattice of a family of point-sets closed under intersection and
    containing the full set, ordered by inclusion.

    Elements are named after their members: the empty set is "0", the full
    set "1", anything else the members joined by "_" in point order.  Returns
    the lattice and a name -> member-mask table.
    """
    caps = caps or get_caps()
    points = tuple(points)
    full = (1 << len(points)) - 1
    fam = sorted(set(closed_masks), key=lambda m: (m.bit_count(), _bits(m)))
    if full not in fam:
        raise ValueError("closure system must contain the full point set")
    for a in fam:
        for b in fam:
            if a & b not in fam:
                raise ValueError("family is not closed under intersection")
    if len(fam) > caps.max_elements:
        raise SizeCapExceeded("closure-system lattice", len(fam), caps.max_elements)

    def name(m: int) -> str:
        if m == 0:
            return "0"
        if m == full:
            return "1"
        return "_".join(points[i] for i in _bits(m))

    names = tuple(name(m) for m in fam)
    if len(set(names)) != len(names):
        raise ValueError("point names produce colliding element names")
    up = tuple(
        sum(1 << j for j, b in enumerate(fam) if a & ~b == 0) for a in fam
    )
    lat = _from_order(names, up)
    return lat, {names[i]: fam[i] for i in range(len(fam))}


def _bits(mask: int) -> tuple[int, ...]:
    out = []
    m = mask
    while m:
        i = (m & -m).bit_length() - 1
        out.append(i)
        m &= m - 1
    return tuple(out)


# -- set operations ---------------------------------------------------------


def meet_set(lat: FiniteLattice, names: Iterable[str]) -> str:
    """Greatest lower bound of a set of elements; top for the empty set."""
    return lat.el(lat.meet_mask(lat.mask_of(names)))


def join_set(lat: FiniteLattice, names: Iterable[str]) -> str:
    """Least upper bound of a set of elements; bottom for the empty set."""
    return lat.el(lat.join_mask(lat.mask_of(names)))


def atoms(lat: FiniteLattice) -> tuple[str, ...]:
    """Minimal nonzero elements."""
    return tuple(lat.elements[i] for i in lat.atom_indices())


def is_atomistic(lat: FiniteLattice) -> bool:
    """Is every element the join of the atoms below it?"""
    got = lat._derived.get("atomistic")
    if got is None:
        got = all(
            lat.join_mask(lat.atoms_below(i)) == i for i in range(len(lat.elements))
        )
        lat._derived["atomistic"] = got
    return got


def is_distributive_join(lat: FiniteLattice, names: Iterable[str]) -> bool:
    """Does join(A) distribute: b /\\ join(A) == join{b /\\ a | a in A} for
    every b?  (Empty A: join is bottom, which always distributes.)"""
    meet_flat, join_flat, _ = lat._flat()
    return _kernels.is_distributive_join(
        lat.mask_of(names), len(lat.elements), meet_flat, join_flat, lat.bottom_i
    )


def is_distributive_lattice(lat: FiniteLattice) -> Check:
    """Binary distributivity a /\\ (b \\/ c) == (a /\\ b) \\/ (a /\\ c) over
    all triples."""
    n = len(lat.elements)
    mt, jt = lat.meet_table, lat.join_table
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if mt[a][jt[b][c]] != jt[mt[a][b]][mt[a][c]]:
                    return Check(
                        "distributivity",
                        False,
                        (lat.elements[a], lat.elements[b], lat.elements[c]),
                    )
    return Check("distributivity", True)


def is_complemented(lat: FiniteLattice) -> Check:
    """Does every element have some complement (meet bottom, join top)?"""
    n = len(lat.elements)
    for a in range(n):
        if not any(
            lat.meet_table[a][b] == lat.bottom_i and lat.join_table[a][b] == lat.top_i
            for b in range(n)
        ):
            return Check("complemented", False, (lat.elements[a],))
    return Check("complemented", True)


def is_boolean_lattice(lat: FiniteLattice) -> bool:
    return bool(is_distributive_lattice(lat)) and bool(is_complemented(lat))


def cover_pairs(lat: FiniteLattice) -> list[tuple[str, str]]:
    """The covering relation: pairs a < b with nothing strictly between.
    Enough to regenerate the lattice with build_lattice."""
    n = len(lat.elements)
    out = []
    for j in range(n):
        below = lat.down[j] & ~(1 << j)
        m = below
        while m:
            i = (m & -m).bit_length() - 1
            between = lat.up[i] & below & ~(1 << i)
            if between == 0:
                out.append((lat.elements[i], lat.elements[j]))
            m &= m - 1
    return out


# -- monotone maps and adjoints ----------------------------------------------


class MonotoneMap:
    """An order-preserving map between finite lattices, stored as an index
    table.  Construction verifies monotonicity."""

    __slots__ = ("source", "target", "table")

    def __init__(self, source: FiniteLattice, target: FiniteLattice, table: Sequence[int]):
        table = tuple(table)
        if len(table) != len(source.elements):
            raise ValueError("table length does not match source carrier")
        for i in table:
            if not 0 <= i < len(target.elements):
                raise ValueError(f"table entry {i} out of range for target")
        n = len(source.elements)
        for i in range(n):
            ups = source.up[i]
            m = ups
            while m:
                j = (m & -m).bit_length() - 1
                if not target.leq_i(table[i], table[j]):
                    raise NotMonotone(source.elements[i], source.elements[j])
                m &= m - 1
        self.source = source
        self.target = target
        self.table = table

    @classmethod
    def from_function(
        cls, source: FiniteLattice, target: FiniteLattice, fn: Callable[[str], str]
    ) -> "MonotoneMap":
        return cls(source, target, [target.idx(fn(x)) for x in source.elements])

    def __call__(self, name: str) -> str:
        return self.target.elements[self.table[self.source.idx(name)]]

    def apply_i(self, i: int) -> int:
        return self.table[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, MonotoneMap):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.table == other.table
        )

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.table))

    def __repr__(self) -> str:
        pairs = ", ".join(
            f"{x}->{self.target.elements[self.table[i]]}"
            for i, x in enumerate(self.source.elements[:6])
        )
        return f"MonotoneMap({pairs}{', ...' if len(self.table) > 6 else ''})"


def compose(g: MonotoneMap, f: MonotoneMap) -> MonotoneMap:
    """g after f."""
    if f.target != g.source:
        raise ValueError("composition mismatch")
    return MonotoneMap(f.source, g.target, [g.table[i] for i in f.table])


def is_join_preserving(f: MonotoneMap) -> Check:
    """Check f(bottom) == bottom and binary join preservation (which in a
    finite lattice implies preservation of all joins); small carriers get a
    full subset sweep too."""
    src, tgt = f.source, f.target
    if f.table[src.bottom_i] != tgt.bottom_i:
        return Check("join-preserving", False, ((), src.bottom))
    n = len(src.elements)
    for i in range(n):
        for j in range(i + 1, n):
            lhs = f.table[src.join_i(i, j)]
            rhs = tgt.join_i(f.table[i], f.table[j])
            if lhs != rhs:
                return Check(
                    "join-preserving", False, (src.elements[i], src.elements[j])
                )
    if n <= 10:
        for mask in range(1 << n):
            lhs = f.table[src.join_mask(mask)]
            rhs = tgt.join_mask(_image_mask(f, mask))
            if lhs != rhs:
                return Check("join-preserving", False, (src.names_of(mask),))
    return Check("join-preserving", True)


def is_meet_preserving(f: MonotoneMap) -> Check:
    src, tgt = f.source, f.target
    if f.table[src.top_i] != tgt.top_i:
        return Check("meet-preserving", False, ((), src.top))
    n = len(src.elements)
    for i in range(n):
        for j in range(i + 1, n):
            lhs = f.table[src.meet_i(i, j)]
            rhs = tgt.meet_i(f.table[i], f.table[j])
            if lhs != rhs:
                return Check(
                    "meet-preserving", False, (src.elements[i], src.elements[j])
                )
    if n <= 10:
        for mask in range(1 << n):
            lhs = f.table[src.meet_mask(mask)]
            rhs = tgt.meet_mask(_image_mask(f, mask))
            if lhs != rhs:
                return Check("meet-preserving", False, (src.names_of(mask),))
    return Check("meet-preserving", True)


def _image_mask(f: MonotoneMap, mask: int) -> int:
    out = 0
    m = mask
    while m:
        i = (m & -m).bit_length() - 1
        out |= 1 << f.table[i]
        m &= m - 1
    return out


def right_adjoint(f: MonotoneMap) -> MonotoneMap:
    """The map g with f(a) <= b iff a <= g(b); exists exactly when f
    preserves joins.  The adjunction is verified over all pairs before
    returning."""
    check = is_join_preserving(f)
    if not check:
        raise NotJoinPreserving(check.witness)
    src, tgt = f.source, f.target
    n_src = len(src.elements)
    table = []
    for b in range(len(tgt.elements)):
        mask = 0
        for a in range(n_src):
            if tgt.leq_i(f.table[a], b):
                mask |= 1 << a
        table.append(src.join_mask(mask))
    g = MonotoneMap(tgt, src, table)
    _verify_adjunction(f, g)
    return g


def left_adjoint(g: MonotoneMap) -> MonotoneMap:
    """The map f with f(a) <= b iff a <= g(b); exists exactly when g
    preserves meets."""
    check = is_meet_preserving(g)
    if not check:
        raise NotMeetPreserving(check.witness)
    tgt, src = g.source, g.target  # g: tgt -> src, f: src -> tgt
    table = []
    for a in range(len(src.elements)):
        mask = 0
        for b in range(len(tgt.elements)):
            if src.leq_i(a, g.table[b]):
                mask |= 1 << b
        table.append(tgt.meet_mask(mask))
    f = MonotoneMap(src, tgt, table)
    _verify_adjunction(f, g)
    return f


def _verify_adjunction(f: MonotoneMap, g: MonotoneMap) -> None:
    src, tgt = f.source, f.target
    for a in range(len(src.elements)):
        for b in range(len(tgt.elements)):
            if tgt.leq_i(f.table[a], b) != src.leq_i(a, g.table[b]):
                raise AssertionError(
                    "adjunction verification failed at "
                    f"({src.elements[a]}, {tgt.elements[b]})"
                )
