"""Distributive ideals and the Heyting completion DI(L).

A distributive ideal is a nonempty down-closed subset I of a lattice that
contains join(A) whenever A is a subset of I whose join distributes over
meets (b /\\ join(A) == join{b /\\ a | a in A} for every b).  Ordered by
inclusion, the distributive ideals form a complete Heyting algebra DI(L):
meets are intersections, joins are closures of unions, and relative
pseudo-complement

    (B -> C) = {a | a /\\ b in C for every b in B}.

The embedding a |-> down(a) preserves all meets and exactly the distributive
joins, which is why DI(L) is the right home for implication over a
non-distributive property lattice.

When L is atomistic the closure of A is simply every element whose atoms lie
under A ({x | mu(x) <= mu[A]}), DI(L) is isomorphic to the powerset of the
atoms, and enumeration is linear per ideal.  For general lattices the ideals
are enumerated by filtering every down-set with a submask sweep.  Both routes
are cross-checked against an independent fixpoint oracle in the test suite.
"""

from __future__ import annotations

from typing import Iterable

from . import _kernels
from .caps import Caps, get_caps
from .errors import NotAtomistic, SizeCapExceeded
from .order import FiniteLattice, is_atomistic
from .report import Check, Report


class PropertySet:
    """A distributive ideal of a specific lattice, as a member bitmask.

    The public constructor verifies the ideal property by consulting the
    lattice's enumerated ideal family; internal code that produces masks that
    are ideals by construction uses _trusted.
    """

    __slots__ = ("lattice", "mask")

    def __init__(self, lattice: FiniteLattice, members: Iterable[str]):
        mask = lattice.mask_of(members)
        dil = enumerate_di(lattice)
        if mask not in dil.index:
            closed = lattice.names_of(dil.closure_mask(mask))
            raise ValueError(
                f"{lattice.names_of(mask)} is not a distributive ideal; "
                f"its closure is {closed}"
            )
        self.lattice = lattice
        self.mask = mask

    @classmethod
    def _trusted(cls, lattice: FiniteLattice, mask: int) -> "PropertySet":
        ps = object.__new__(cls)
        ps.lattice = lattice
        ps.mask = mask
        return ps

    @property
    def members(self) -> tuple[str, ...]:
        return self.lattice.names_of(self.mask)

    def __contains__(self, name: str) -> bool:
        return bool(self.mask >> self.lattice.idx(name) & 1)

    def __le__(self, other: "PropertySet") -> bool:
        self._same(other)
        return self.mask & ~other.mask == 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, PropertySet):
            return NotImplemented
        return self.lattice == other.lattice and self.mask == other.mask

    def __hash__(self) -> int:
        return hash((self.lattice, self.mask))

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __repr__(self) -> str:
        return "PropertySet{" + ",".join(self.members) + "}"

    @property
    def is_whole(self) -> bool:
        """Does this ideal contain every element (the truth value 'valid')?"""
        return self.mask == (1 << len(self.lattice.elements)) - 1

    def _same(self, other: "PropertySet") -> None:
        if self.lattice != other.lattice:
            raise ValueError("property sets live over different lattices")


class DILattice:
    """The lattice DI(L) of all distributive ideals of a parent lattice.

    Ideal masks are sorted by (size, member indices) so indices are
    deterministic.  as_lattice() materializes DI(L) itself as a FiniteLattice
    whose element names spell out the ideals.
    """

    __slots__ = ("parent", "masks", "index", "bottom_i", "top_i", "_cache")

    def __init__(self, parent: FiniteLattice, masks: Iterable[int]):
        self.parent = parent
        self.masks: tuple[int, ...] = tuple(
            sorted(masks, key=lambda m: (m.bit_count(), _bits(m)))
        )
        self.index: dict[int, int] = {m: i for i, m in enumerate(self.masks)}
        self.bottom_i = self.index[1 << parent.bottom_i]
        self.top_i = self.index[(1 << len(parent.elements)) - 1]
        self._cache: dict = {}

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self):
        return (self.ideal(i) for i in range(len(self.masks)))

    def __repr__(self) -> str:
        return f"DILattice({len(self.masks)} ideals over {len(self.parent)} elements)"

    def ideal(self, i: int) -> PropertySet:
        return PropertySet._trusted(self.parent, self.masks[i])

    def index_of(self, ps: PropertySet) -> int:
        return self.index[ps.mask]

    def closure_mask(self, mask: int) -> int:
        """Smallest ideal containing `mask`: intersect every enumerated ideal
        that contains it."""
        out = (1 << len(self.parent.elements)) - 1
        for m in self.masks:
            if mask & ~m == 0:
                out &= m
        return out

    def meet_mask(self, a: int, b: int) -> int:
        return a & b  # ideals are intersection-closed

    def join_mask(self, a: int, b: int) -> int:
        return self.closure_mask(a | b)

    def principal_index(self, elem_i: int) -> int:
        """Index of the principal ideal down(x)."""
        table = self._cache.get("principal")
        if table is None:
            table = tuple(self.index[self.parent.down[i]]
                          for i in range(len(self.parent.elements)))
            self._cache["principal"] = table
        return table[elem_i]

    def atom_mask(self) -> int:
        """Mask of the parent's atoms (atomistic parents only)."""
        got = self._cache.get("atommask")
        if got is None:
            got = 0
            for a in self.parent.atom_indices():
                got |= 1 << a
            self._cache["atommask"] = got
        return got

    def index_by_atoms(self) -> dict[int, int]:
        """Atom-set mask -> ideal index (atomistic parents only, where an
        ideal is determined by the atoms it contains)."""
        got = self._cache.get("byatoms")
        if got is None:
            if not is_atomistic(self.parent):
                raise NotAtomistic()
            am = self.atom_mask()
            got = {m & am: i for i, m in enumerate(self.masks)}
            self._cache["byatoms"] = got
        return got

    def as_lattice(self, caps: Caps | None = None) -> FiniteLattice:
        """DI(L) itself as a FiniteLattice; element names spell the ideals.
        Index i of this lattice is ideal i of the enumeration."""
        got = self._cache.get("lattice")
        if got is None:
            caps = caps or get_caps()
            m = len(self.masks)
            if m > caps.max_elements:
                raise SizeCapExceeded(
                    "DI lattice carrier", m, caps.max_elements,
                    "raise the cap with OQLKIT_CAP or --cap",
                )
            names = tuple(
                "{" + ",".join(self.parent.names_of(mk)) + "}" for mk in self.masks
            )
            up = tuple(
                sum(1 << j for j in range(m) if self.masks[i] & ~self.masks[j] == 0)
                for i in range(m)
            )
            down = tuple(
                sum(1 << j for j in range(m) if self.masks[j] & ~self.masks[i] == 0)
                for i in range(m)
            )
            atomistic = is_atomistic(self.parent)
            byatoms = self.index_by_atoms() if atomistic else None
            am = self.atom_mask() if atomistic else 0
            meet_rows = []
            join_rows = []
            for i in range(m):
                mi = self.masks[i]
                mrow = []
                jrow = []
                for j in range(m):
                    mj = self.masks[j]
                    mrow.append(self.index[mi & mj])
                    if byatoms is not None:
                        jrow.append(byatoms[(mi | mj) & am])
                    else:
                        jrow.append(self.index[self.closure_mask(mi | mj)])
                meet_rows.append(tuple(mrow))
                join_rows.append(tuple(jrow))
            got = FiniteLattice(
                names, up, down, tuple(meet_rows), tuple(join_rows),
                self.bottom_i, self.top_i,
            )
            self._cache["lattice"] = got
        return got


def _bits(mask: int) -> tuple[int, ...]:
    out = []
    m = mask
    while m:
        i = (m & -m).bit_length() - 1
        out.append(i)
        m &= m - 1
    return tuple(out)


def enumerate_di(
    lat: FiniteLattice, caps: Caps | None = None, method: str = "auto"
) -> DILattice:
    """All distributive ideals of `lat`.

    method "atoms" uses the powerset-of-atoms construction (atomistic
    lattices only), "subsets" filters every down-set by a submask sweep,
    "auto" picks "atoms" when the lattice is atomistic and caches the result
    on the lattice.
    """
    if method == "auto":
        got = lat._derived.get("di")
        if got is not None:
            return got
    caps = caps or get_caps()
    if method not in ("auto", "atoms", "subsets"):
        raise ValueError(f"unknown enumeration method: {method!r}")
    if method == "atoms" and not is_atomistic(lat):
        raise NotAtomistic()
    use_atoms = method == "atoms" or (method == "auto" and is_atomistic(lat))
    if use_atoms:
        atoms = lat.atom_indices()
        if 1 << len(atoms) > caps.max_ideals:
            raise SizeCapExceeded(
                "distributive ideal enumeration", 1 << len(atoms), caps.max_ideals
            )
        n = len(lat.elements)
        below = [lat.atoms_below(i) for i in range(n)]
        masks = []
        for s_bits in range(1 << len(atoms)):
            smask = 0
            for k, a in enumerate(atoms):
                if s_bits >> k & 1:
                    smask |= 1 << a
            ideal = 0
            for i in range(n):
                if below[i] & ~smask == 0:
                    ideal |= 1 << i
            masks.append(ideal)
    else:
        n = len(lat.elements)
        if n > caps.max_subset_exhaustive:
            raise SizeCapExceeded(
                "down-set enumeration", n, caps.max_subset_exhaustive,
                "general-lattice enumeration is exponential in carrier size",
            )
        meet_flat, join_flat, down_seq = lat._flat()
        masks = _kernels.dideals(
            n, down_seq, meet_flat, join_flat, lat.bottom_i, lat._linear_extension()
        )
    dil = DILattice(lat, masks)
    if method == "auto":
        lat._derived["di"] = dil
    return dil


def di_closure(
    lat: FiniteLattice, members: Iterable[str], caps: Caps | None = None
) -> PropertySet:
    """Least distributive ideal containing the given elements, computed by
    intersecting the enumerated ideals that contain them."""
    dil = enumerate_di(lat, caps=caps)
    return PropertySet._trusted(lat, dil.closure_mask(lat.mask_of(members)))


def di_closure_fixpoint(
    lat: FiniteLattice, members: Iterable[str], caps: Caps | None = None
) -> PropertySet:
    """Independent oracle for di_closure: iterate 'down-close, then add every
    distributive join of a submask' to a fixpoint."""
    caps = caps or get_caps()
    n = len(lat.elements)
    if n > caps.max_subset_exhaustive:
        raise SizeCapExceeded("fixpoint closure", n, caps.max_subset_exhaustive)
    meet_flat, join_flat, down_seq = lat._flat()
    mask = _kernels.di_close(
        lat.mask_of(members), n, down_seq, meet_flat, join_flat, lat.bottom_i
    )
    return PropertySet._trusted(lat, mask)


# -- Heyting connectives ------------------------------------------------------


def heyting_implication(dil: DILattice, b: PropertySet, c: PropertySet) -> PropertySet:
    """(B -> C) = {a | a /\\ b in C for all b in B}: the right adjoint of
    B /\\_DI - in DI(L)."""
    lat = dil.parent
    n = len(lat.elements)
    bmembers = _bits(b.mask)
    out = 0
    for a in range(n):
        row = lat.meet_table[a]
        if all(c.mask >> row[i] & 1 for i in bmembers):
            out |= 1 << a
    if out not in dil.index:
        raise AssertionError("implication fell outside DI(L)")
    return PropertySet._trusted(lat, out)


def heyting_implication_joinform(
    dil: DILattice, b: PropertySet, c: PropertySet
) -> PropertySet:
    """Companion definition: the DI-join of every ideal A with A /\\ B <= C.
    Equal to heyting_implication; kept separate as a cross-check."""
    union = 0
    for m in dil.masks:
        if m & b.mask & ~c.mask == 0:
            union |= m
    return PropertySet._trusted(dil.parent, dil.closure_mask(union))


def resolution(dil: DILattice, a: PropertySet) -> PropertySet:
    """R(A) = down(join of A's members): collapse an ideal to the principal
    ideal of its join."""
    lat = dil.parent
    return PropertySet._trusted(lat, lat.down[lat.join_mask(a.mask)])


def static_negation(dil: DILattice, a: PropertySet) -> PropertySet:
    """~A = (A -> down(0)), the Heyting pseudo-complement in DI(L)."""
    bottom = PropertySet._trusted(dil.parent, dil.masks[dil.bottom_i])
    return heyting_implication(dil, a, bottom)


def verify_heyting(dil: DILattice) -> Report:
    """The complete-Heyting-algebra laws of DI(L), swept exhaustively:
    residuation (C /\\ A <= B iff C <= A -> B), the strengthened entailment
    (A -> B is the whole lattice iff A <= B), and meet-over-join
    distributivity.  Witnesses are member-name triples, first failure in
    enumeration order."""
    lat = dil.parent
    masks = dil.masks
    m = len(masks)
    whole = masks[dil.top_i]
    names = tuple(lat.names_of(mk) for mk in masks)

    imp = [
        [heyting_implication(dil, dil.ideal(a), dil.ideal(b)).mask for b in range(m)]
        for a in range(m)
    ]

    # dense join table so the triple sweeps below stay table lookups
    if is_atomistic(lat):
        am_all = dil.atom_mask()
        byatoms = dil.index_by_atoms()
        joins = [
            [masks[byatoms[(masks[b] | masks[c]) & am_all]] for c in range(m)]
            for b in range(m)
        ]
    else:
        joins = [
            [dil.closure_mask(masks[b] | masks[c]) for c in range(m)]
            for b in range(m)
        ]

    adjunction = Check("implication-adjunction", True)
    for a in range(m):
        if not adjunction.holds:
            break
        ma, row = masks[a], imp[a]
        for b in range(m):
            mb, ib = masks[b], row[b]
            bad = next(
                (c for c in range(m)
                 if (masks[c] & ma & ~mb == 0) != (masks[c] & ~ib == 0)),
                None,
            )
            if bad is not None:
                adjunction = Check(
                    "implication-adjunction", False, (names[a], names[b], names[bad])
                )
                break

    entailment = Check("strengthened-entailment", True)
    for a in range(m):
        for b in range(m):
            if (imp[a][b] == whole) != (masks[a] & ~masks[b] == 0):
                entailment = Check(
                    "strengthened-entailment", False, (names[a], names[b])
                )
                break
        else:
            continue
        break

    index = dil.index
    distrib = Check("meet-join-distributive", True)
    for a in range(m):
        if not distrib.holds:
            break
        ma = masks[a]
        for b in range(m):
            mab = index[ma & masks[b]]
            bad = next(
                (c for c in range(m)
                 if ma & joins[b][c] != joins[mab][index[ma & masks[c]]]),
                None,
            )
            if bad is not None:
                distrib = Check(
                    "meet-join-distributive", False, (names[a], names[b], names[bad])
                )
                break

    return Report((adjunction, entailment, distrib))


# -- states-as-atoms isomorphism ----------------------------------------------


class DIAtomIso:
    """The bijection DI(L) <-> powerset of atoms for atomistic L:
    an ideal corresponds to the set of atoms it contains."""

    def __init__(self, dil: DILattice):
        if not is_atomistic(dil.parent):
            raise NotAtomistic()
        self.dil = dil
        lat = dil.parent
        self._atom_mask = 0
        for a in lat.atom_indices():
            self._atom_mask |= 1 << a

    def atoms_of(self, ps: PropertySet) -> tuple[str, ...]:
        return self.dil.parent.names_of(ps.mask & self._atom_mask)

    def ideal_of(self, atom_names: Iterable[str]) -> PropertySet:
        lat = self.dil.parent
        mask = lat.mask_of(atom_names)
        if mask & ~self._atom_mask:
            raise ValueError("ideal_of expects atom names only")
        return PropertySet._trusted(lat, self.dil.closure_mask(mask))

    def verify(self) -> Report:
        """Round-trip identities and order preservation, swept over all of
        DI(L) and all atom subsets."""
        lat = self.dil.parent
        atoms = lat.atom_indices()
        back = Check("iso-ideal-roundtrip", True)
        for i, m in enumerate(self.dil.masks):
            ideal = self.dil.ideal(i)
            if self.ideal_of(self.atoms_of(ideal)).mask != m:
                back = Check("iso-ideal-roundtrip", False, (lat.names_of(m),))
                break
        fwd = Check("iso-atomset-roundtrip", True)
        for s_bits in range(1 << len(atoms)):
            smask = 0
            for k, a in enumerate(atoms):
                if s_bits >> k & 1:
                    smask |= 1 << a
            names = lat.names_of(smask)
            got = self.atoms_of(self.ideal_of(names))
            if got != names:
                fwd = Check("iso-atomset-roundtrip", False, (names, got))
                break
        order = Check("iso-order", True)
        for ma in self.dil.masks:
            for mb in self.dil.masks:
                inc = ma & ~mb == 0
                atoms_inc = (ma & self._atom_mask) & ~(mb & self._atom_mask) == 0
                if inc != atoms_inc:
                    order = Check(
                        "iso-order", False, (lat.names_of(ma), lat.names_of(mb))
                    )
                    break
            else:
                continue
            break
        ok_count = len(self.dil.masks) == 1 << len(atoms)
        count = Check(
            "iso-count",
            ok_count,
            None if ok_count else (len(self.dil.masks), 1 << len(atoms)),
        )
        return Report((back, fwd, order, count))


def di_atom_iso(dil: DILattice) -> DIAtomIso:
    return DIAtomIso(dil)
