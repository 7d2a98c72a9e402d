"""Orthocomplemented lattices and state spaces.

An orthocomplementation is an antitone involution ' with a /\\ a' = 0 (it is
then automatically surjective, and a \\/ a' = 1 by De Morgan).  The
orthomodular law is the conditional a <= b  =>  b = a \\/ (a' /\\ b); the
Sasaki hook a ->s b = a' \\/ (a /\\ b) and Sasaki projection
phi_a(b) = a /\\ (a' \\/ b) form an adjoint pair phi_a(c) <= b iff
c <= (a ->s b) exactly when the lattice is orthomodular.

A state space is a set with a symmetric antireflexive orthogonality relation.
A^perp collects the points orthogonal to everything in A; the biorthogonally
closed subsets (A = A^perp^perp) form a complete ortholattice under
inclusion, with intersection as meet and double-perp of union as join.  The
Cartan map sends a lattice element to the set of atoms below it; a point
(state) forces a property when it lies below it.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .caps import Caps
from .errors import (
    ComplementLawFails,
    NotAntitone,
    NotAtomistic,
    NotInvolution,
    UnknownState,
)
from .order import FiniteLattice, lattice_from_closure_system
from .report import Check, Report


class OrthoLattice(FiniteLattice):
    """A finite lattice carrying a verified orthocomplementation, stored as
    an index table `ortho`."""

    __slots__ = ("ortho",)

    def __init__(self, base: FiniteLattice, ortho: tuple[int, ...]):
        super().__init__(
            base.elements,
            base.up,
            base.down,
            base.meet_table,
            base.join_table,
            base.bottom_i,
            base.top_i,
        )
        self.ortho = ortho

    def o_i(self, i: int) -> int:
        return self.ortho[i]

    def o(self, a: str) -> str:
        """The orthocomplement a'."""
        return self.elements[self.ortho[self.idx(a)]]

    def __eq__(self, other) -> bool:
        if not isinstance(other, OrthoLattice):
            return NotImplemented
        return super().__eq__(other) and self.ortho == other.ortho

    def __hash__(self) -> int:
        return hash((self.elements, self.up, self.ortho))


def attach_ortho(
    lat: FiniteLattice, pairs: Iterable[tuple[str, str]]
) -> OrthoLattice:
    """Attach an orthocomplementation given as (a, a') pairs.

    The pair list must cover every element (each pair counts both ways).
    Raises NotInvolution for conflicting or incomplete pairs, NotAntitone if
    the assignment fails to reverse the order, ComplementLawFails if some
    a /\\ a' != 0.
    """
    n = len(lat.elements)
    table: list[int | None] = [None] * n
    for a, b in pairs:
        ia, ib = lat.idx(a), lat.idx(b)
        for x, y in ((ia, ib), (ib, ia)):
            if table[x] is not None and table[x] != y:
                raise NotInvolution(
                    f"conflicting complements for {lat.elements[x]}: "
                    f"{lat.elements[table[x]]} and {lat.elements[y]}"
                )
            table[x] = y
    missing = [lat.elements[i] for i in range(n) if table[i] is None]
    if missing:
        raise NotInvolution(f"no complement declared for: {', '.join(missing)}")
    ortho = tuple(table)  # type: ignore[arg-type]
    for i in range(n):
        if ortho[ortho[i]] != i:
            raise NotInvolution(f"complement of complement moved {lat.elements[i]}")
    for i in range(n):
        for j in range(n):
            if lat.leq_i(i, j) and not lat.leq_i(ortho[j], ortho[i]):
                raise NotAntitone(lat.elements[i], lat.elements[j])
    for i in range(n):
        if lat.meet_i(i, ortho[i]) != lat.bottom_i:
            raise ComplementLawFails(lat.elements[i])
    return OrthoLattice(lat, ortho)


def de_morgan_check(ol: OrthoLattice) -> Check:
    """(a /\\ b)' == a' \\/ b' over all pairs (holds in any ortholattice)."""
    n = len(ol.elements)
    for i in range(n):
        for j in range(n):
            if ol.ortho[ol.meet_i(i, j)] != ol.join_i(ol.ortho[i], ol.ortho[j]):
                return Check("de-morgan", False, (ol.elements[i], ol.elements[j]))
    return Check("de-morgan", True)


def is_orthomodular(ol: OrthoLattice) -> Check:
    """a <= b  =>  b == a \\/ (a' /\\ b), checked over all pairs; the witness
    is the first failing pair in element order."""
    n = len(ol.elements)
    for i in range(n):
        for j in range(n):
            if ol.leq_i(i, j):
                rebuilt = ol.join_i(i, ol.meet_i(ol.ortho[i], j))
                if rebuilt != j:
                    return Check(
                        "orthomodular", False, (ol.elements[i], ol.elements[j])
                    )
    return Check("orthomodular", True)


def sasaki_hook(ol: OrthoLattice, a: str, b: str) -> str:
    """a ->s b = a' \\/ (a /\\ b)."""
    ia, ib = ol.idx(a), ol.idx(b)
    return ol.elements[ol.join_i(ol.ortho[ia], ol.meet_i(ia, ib))]


def sasaki_projection(ol: OrthoLattice, a: str, b: str) -> str:
    """phi_a(b) = a /\\ (a' \\/ b)."""
    ia, ib = ol.idx(a), ol.idx(b)
    return ol.elements[ol.meet_i(ia, ol.join_i(ol.ortho[ia], ib))]


def check_sasaki_adjunction(ol: OrthoLattice, a: str) -> Check:
    """phi_a(c) <= b iff c <= (a ->s b), swept over all b, c."""
    ia = ol.idx(a)
    n = len(ol.elements)
    for c in range(n):
        proj = ol.meet_i(ia, ol.join_i(ol.ortho[ia], c))
        for b in range(n):
            hook = ol.join_i(ol.ortho[ia], ol.meet_i(ia, b))
            if ol.leq_i(proj, b) != ol.leq_i(c, hook):
                return Check(
                    f"sasaki-adjunction[{a}]",
                    False,
                    (a, ol.elements[b], ol.elements[c]),
                )
    return Check(f"sasaki-adjunction[{a}]", True)


def sasaki_equiv_orthomodular(ol: OrthoLattice) -> Report:
    """Per-element Sasaki adjunction checks, the orthomodularity check, and
    the equivalence between the two, as one report."""
    checks = [check_sasaki_adjunction(ol, a) for a in ol.elements]
    omod = is_orthomodular(ol)
    all_adjoint = all(c.holds for c in checks)
    equiv = Check(
        "sasaki-adjunction-iff-orthomodular",
        all_adjoint == omod.holds,
        None if all_adjoint == omod.holds else (all_adjoint, omod.holds),
    )
    return Report(tuple(checks) + (omod, equiv))


# -- state spaces -------------------------------------------------------------


class StateSpace:
    """A finite set of states with a symmetric antireflexive orthogonality
    relation, stored as per-state masks."""

    __slots__ = ("states", "index", "orth")

    def __init__(self, states: Sequence[str], orth_pairs: Iterable[tuple[str, str]]):
        self.states: tuple[str, ...] = tuple(states)
        if len(set(self.states)) != len(self.states):
            dup = next(
                x for i, x in enumerate(self.states) if x in self.states[:i]
            )
            raise ValueError(f"duplicate state name: {dup!r}")
        self.index: dict[str, int] = {x: i for i, x in enumerate(self.states)}
        orth = [0] * len(self.states)
        for a, b in orth_pairs:
            ia, ib = self.idx(a), self.idx(b)
            if ia == ib:
                raise ValueError(f"orthogonality must be antireflexive: {a} -- {a}")
            orth[ia] |= 1 << ib
            orth[ib] |= 1 << ia
        self.orth: tuple[int, ...] = tuple(orth)

    def idx(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise UnknownState(name) from None

    def __len__(self) -> int:
        return len(self.states)

    def __eq__(self, other) -> bool:
        if not isinstance(other, StateSpace):
            return NotImplemented
        return self.states == other.states and self.orth == other.orth

    def __hash__(self) -> int:
        return hash((self.states, self.orth))

    def __repr__(self) -> str:
        return f"StateSpace({len(self.states)} states)"

    def mask_of(self, names: Iterable[str]) -> int:
        m = 0
        for x in names:
            m |= 1 << self.idx(x)
        return m

    def names_of(self, mask: int) -> tuple[str, ...]:
        return tuple(s for i, s in enumerate(self.states) if mask >> i & 1)

    def perp_mask(self, mask: int) -> int:
        """States orthogonal to everything in `mask`; the full set when
        `mask` is empty."""
        out = (1 << len(self.states)) - 1
        m = mask
        while m:
            i = (m & -m).bit_length() - 1
            out &= self.orth[i]
            m &= m - 1
        return out


def biorthogonal(space: StateSpace, names: Iterable[str]) -> tuple[str, ...]:
    """The biorthogonal closure A^perp^perp of a set of states."""
    return space.names_of(space.perp_mask(space.perp_mask(space.mask_of(names))))


def _closed_masks(space: StateSpace) -> set[int]:
    """Masks of all biorthogonally closed subsets: intersections of
    single-state orthogonals, plus the full set."""
    full = (1 << len(space.states)) - 1
    fam = {full}
    frontier = [full]
    while frontier:
        m = frontier.pop()
        for i in range(len(space.states)):
            got = m & space.orth[i]
            if got not in fam:
                fam.add(got)
                frontier.append(got)
    return fam


def closed_set_family(space: StateSpace) -> tuple[frozenset[str], ...]:
    """All biorthogonally closed subsets, smallest first."""
    return tuple(
        frozenset(space.names_of(m))
        for m in sorted(_closed_masks(space), key=lambda m: (m.bit_count(), m))
    )


def closed_subsets_lattice(
    space: StateSpace, caps: Caps | None = None
) -> OrthoLattice:
    """The ortholattice of biorthogonally closed subsets, ordered by
    inclusion, with A |-> A^perp as the orthocomplementation."""
    lat, masks = lattice_from_closure_system(
        space.states, _closed_masks(space), caps=caps
    )
    byname = {m: name for name, m in masks.items()}
    pairs = [(name, byname[space.perp_mask(m)]) for name, m in masks.items()]
    return attach_ortho(lat, pairs)


def is_separating(space: StateSpace) -> bool:
    """Is every singleton biorthogonally closed?  (Distinct states then get
    distinct property sets.)"""
    for i in range(len(space.states)):
        if space.perp_mask(space.perp_mask(1 << i)) != 1 << i:
            return False
    return True


# -- states as atoms ----------------------------------------------------------


def cartan_map(lat: FiniteLattice, a: str) -> tuple[str, ...]:
    """mu(a): the atoms below a, read as the states that make a actual.
    Requires an atomistic lattice."""
    if not _atomistic(lat):
        raise NotAtomistic()
    return lat.names_of(lat.atoms_below(lat.idx(a)))


def forces(lat: FiniteLattice, p: str, a: str) -> bool:
    """Does state (atom) p force property a, i.e. p <= a?"""
    ip = lat.idx(p)
    if ip not in lat.atom_indices():
        raise UnknownState(p)
    return lat.leq_i(ip, lat.idx(a))


def actual_properties(lat: FiniteLattice, p: str) -> tuple[str, ...]:
    """All properties forced by state p: the principal filter above p."""
    ip = lat.idx(p)
    if ip not in lat.atom_indices():
        raise UnknownState(p)
    return lat.names_of(lat.up[ip])


def verify_cartan(lat: FiniteLattice) -> Report:
    """mu is injective and turns meets into intersections (checked over all
    pairs; full subset sweep on small carriers)."""
    if not _atomistic(lat):
        raise NotAtomistic()
    n = len(lat.elements)
    inj = Check("cartan-injective", True)
    seen: dict[int, int] = {}
    for i in range(n):
        m = lat.atoms_below(i)
        if m in seen:
            inj = Check(
                "cartan-injective", False, (lat.elements[seen[m]], lat.elements[i])
            )
            break
        seen[m] = i
    meetcont = Check("cartan-meet-continuous", True)
    for i in range(n):
        for j in range(n):
            if lat.atoms_below(lat.meet_i(i, j)) != lat.atoms_below(i) & lat.atoms_below(j):
                meetcont = Check(
                    "cartan-meet-continuous", False, (lat.elements[i], lat.elements[j])
                )
                break
        else:
            continue
        break
    if meetcont.holds and n <= 12:
        for mask in range(1 << n):
            inter = (1 << n) - 1
            m = mask
            while m:
                k = (m & -m).bit_length() - 1
                inter &= lat.atoms_below(k)
                m &= m - 1
            inter &= (1 << n) - 1
            if lat.atoms_below(lat.meet_mask(mask)) != (
                inter if mask else lat.atoms_below(lat.top_i)
            ):
                meetcont = Check(
                    "cartan-meet-continuous", False, (lat.names_of(mask),)
                )
                break
    return Report((inj, meetcont))


def _atomistic(lat: FiniteLattice) -> bool:
    from .order import is_atomistic

    return is_atomistic(lat)
