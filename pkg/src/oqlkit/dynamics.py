"""Inductions and their adjoint propagation/causation pairs.

An induction assigns to every atom p of an atomistic property lattice the
ideal of properties the system can come to possess after the induction is
performed on a system in state p.  Forward propagation over DI(L),

    prop(A) = DI-join of the images of the atoms in A,

preserves all joins by construction, so it has a Galois right adjoint caus:

    prop(A) <= B   iff   A <= caus(B),

read: performing the induction on any state in A is certain to actualise B
iff A lies inside caus(B).  Both maps descend to monotone endomaps of L
itself (join the members); the descended pair is a genuine adjunction
exactly when the induction is continuous, i.e. ideals with the same carrier
join propagate to ideals with the same carrier join.  Constructors accept
non-continuous inductions on purpose: continuity is a reportable law, not a
well-formedness condition, and counterexamples need to be expressible.

Dynamic connectives live here too: the forward tensor A (x)e B, propagating
the conjunction, with its right adjoint implication A -[e]-> B, and the
backward tensor A e(x) B (A conjoined with caus(B)) with A <-[e]- B.
Concatenation and choice of inductions generate finite algebras acting on
the lattice by causation.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .caps import Caps, get_caps
from .errors import InvalidImage, NotAtomistic, SizeCapExceeded
from .ideals import DILattice, PropertySet, di_closure, enumerate_di
from .order import MonotoneMap, _bits, is_atomistic, is_join_preserving, right_adjoint
from .order import FiniteLattice
from .report import Check, Report


class Induction:
    """An induction on an atomistic lattice together with its four tables.

    prop and caus index into dil.masks (the DI carrier); prop_elem and
    caus_elem are element-level tables for the descended maps.  Two
    inductions are equal when they act identically (same lattice, same
    forward propagation); names are labels only.  Build instances with
    make_induction, freeze, concat or choice.
    """

    __slots__ = (
        "lattice", "dil", "name", "img_atoms",
        "prop", "caus", "prop_elem", "caus_elem",
    )

    def __init__(self, lattice, dil, name, img_atoms, prop, caus,
                 prop_elem, caus_elem):
        self.lattice: FiniteLattice = lattice
        self.dil: DILattice = dil
        self.name: str = name
        # atom element index -> atom mask of the image ideal
        self.img_atoms: dict[int, int] = img_atoms
        self.prop: tuple[int, ...] = prop
        self.caus: tuple[int, ...] = caus
        self.prop_elem: tuple[int, ...] = prop_elem
        self.caus_elem: tuple[int, ...] = caus_elem

    def __eq__(self, other) -> bool:
        if not isinstance(other, Induction):
            return NotImplemented
        return self.lattice == other.lattice and self.prop == other.prop

    def __hash__(self) -> int:
        return hash((self.lattice, self.prop))

    def __repr__(self) -> str:
        return f"Induction({self.name!r} on {len(self.lattice)} elements)"

    def atom_image(self, atom: str) -> PropertySet:
        i = self.lattice.idx(atom)
        if i not in self.img_atoms:
            raise ValueError(f"{atom!r} is not an atom")
        return self.dil.ideal(self.prop[self.dil.principal_index(i)])

    def verify(self) -> Report:
        """Every law an induction is expected to satisfy.

        The first two are structural and hold for any induction built here;
        the continuity forms and causal duality are physical laws that a
        deliberately pathological induction may break.
        """
        dlat = self.dil.as_lattice()
        jp = is_join_preserving(MonotoneMap(dlat, dlat, self.prop))
        checks = [Check("propagation-join-preserving", jp.holds, jp.witness)]
        w = None
        m = len(self.dil)
        for i in range(m):
            for j in range(m):
                lhs = dlat.leq_i(self.prop[i], j)
                rhs = dlat.leq_i(i, self.caus[j])
                if lhs != rhs:
                    w = (dlat.el(i), dlat.el(j))
                    break
            if w:
                break
        checks.append(Check("propagation-adjunction", w is None, w))
        checks.extend(_continuity_checks(self))
        checks.append(check_causal_duality(self))
        return Report(tuple(checks))


def make_induction(
    lat: FiniteLattice,
    name: str,
    atom_map: Mapping[str, object],
    caps: Caps | None = None,
) -> Induction:
    """Build an induction from its action on atoms.

    atom_map must give every atom of lat an image: a PropertySet of lat or
    an iterable of element names (closed to the smallest ideal containing
    them).  The zero ideal {0} is a legitimate image: nothing guarantees an
    induction leaves any actual property behind.
    """
    caps = caps or get_caps()
    if not is_atomistic(lat):
        raise NotAtomistic()
    dil = enumerate_di(lat, caps)
    am = dil.atom_mask()
    atom_is = lat.atom_indices()
    for p in atom_map:
        i = lat.idx(p)
        if i not in atom_is:
            raise InvalidImage(p, "not an atom")
    img_atoms: dict[int, int] = {}
    for i in atom_is:
        p = lat.el(i)
        if p not in atom_map:
            raise InvalidImage(p, "no image declared")
        img = atom_map[p]
        if isinstance(img, PropertySet):
            if img.lattice != lat:
                raise InvalidImage(p, "image belongs to a different lattice")
            mask = img.mask
        else:
            mask = di_closure(lat, img, caps).mask
        img_atoms[i] = mask & am
    return _assemble(lat, dil, name, img_atoms)


def _assemble(lat: FiniteLattice, dil: DILattice, name: str,
              img_atoms: dict[int, int]) -> Induction:
    """Tables from a validated atom-level action."""
    am = dil.atom_mask()
    byatoms = dil.index_by_atoms()
    m = len(dil)
    prop = []
    for i in range(m):
        u = 0
        for b in _bits(dil.masks[i] & am):
            u |= img_atoms[b]
        prop.append(byatoms[u])
    prop = tuple(prop)
    dlat = dil.as_lattice()
    caus = right_adjoint(MonotoneMap(dlat, dlat, prop)).table
    n = len(lat)
    prop_elem = tuple(
        lat.join_mask(dil.masks[prop[dil.principal_index(d)]]) for d in range(n)
    )
    caus_elem = []
    for b in range(n):
        below = 0
        for a in range(n):
            if lat.leq_i(prop_elem[a], b):
                below |= 1 << a
        caus_elem.append(lat.join_mask(below))
    return Induction(lat, dil, name, img_atoms, prop, caus,
                     prop_elem, tuple(caus_elem))


def freeze(lat: FiniteLattice, caps: Caps | None = None) -> Induction:
    """The do-nothing induction: every atom keeps exactly its own ideal.

    Propagation and causation are both the identity, the dynamic
    connectives collapse to their static counterparts, and freeze is the
    unit for concatenation.
    """
    atom_map = {
        lat.el(i): PropertySet._trusted(lat, lat.down[i])
        for i in lat.atom_indices()
    }
    return make_induction(lat, "freeze", atom_map, caps)


# -- propagation / causation ------------------------------------------------


def _same_lattice(e: Induction, *sets: PropertySet) -> None:
    for s in sets:
        if s.lattice != e.lattice:
            raise ValueError("property set belongs to a different lattice")


def propagate(e: Induction, a: PropertySet) -> PropertySet:
    """Strongest ideal certain to be actual after e is performed on any
    state in a."""
    _same_lattice(e, a)
    return e.dil.ideal(e.prop[e.dil.index[a.mask]])


def causate(e: Induction, b: PropertySet) -> PropertySet:
    """Weakest ideal whose states are all certain to actualise b under e."""
    _same_lattice(e, b)
    return e.dil.ideal(e.caus[e.dil.index[b.mask]])


def causal_relation(e: Induction, a: PropertySet, b: PropertySet) -> bool:
    """a ~e~> b: performing e anywhere in a is certain to actualise b."""
    _same_lattice(e, a, b)
    return e.dil.masks[e.prop[e.dil.index[a.mask]]] & ~b.mask == 0


def backward_relation(e: Induction, a: PropertySet, b: PropertySet) -> bool:
    """Every state certain to actualise b under e already lies in a."""
    _same_lattice(e, a, b)
    return e.dil.masks[e.caus[e.dil.index[b.mask]]] & ~a.mask == 0


def check_causal_duality(e: Induction) -> Check:
    """Element-level adjunction prop_elem -| caus_elem; equivalent to
    continuity, and the honest reading of 'propagation determines
    causation' down on L itself."""
    lat = e.lattice
    n = len(lat)
    for a in range(n):
        for b in range(n):
            if lat.leq_i(e.prop_elem[a], b) != lat.leq_i(a, e.caus_elem[b]):
                return Check("causal-duality", False, (lat.el(a), lat.el(b)))
    return Check("causal-duality", True)


def _continuity_checks(e: Induction) -> tuple[Check, Check]:
    """Continuity in join form (equal carrier joins propagate to equal
    carrier joins) and in resolution form (equal resolutions propagate to
    equal resolutions).  The witness is the first offending pair of ideals,
    named by their atoms, in canonical ideal order."""
    lat, dil = e.lattice, e.dil
    am = dil.atom_mask()
    first_j: dict[int, tuple[int, int]] = {}
    first_r: dict[int, tuple[int, int]] = {}
    w_j = w_r = None
    for i in range(len(dil)):
        carrier_join = lat.join_mask(dil.masks[i])
        image_join = lat.join_mask(dil.masks[e.prop[i]])
        if carrier_join in first_j:
            i0, pj0 = first_j[carrier_join]
            if pj0 != image_join and w_j is None:
                w_j = (lat.names_of(dil.masks[i0] & am),
                       lat.names_of(dil.masks[i] & am))
        else:
            first_j[carrier_join] = (i, image_join)
        res = lat.down[carrier_join]
        image_res = lat.down[image_join]
        if res in first_r:
            i0, pr0 = first_r[res]
            if pr0 != image_res and w_r is None:
                w_r = (lat.names_of(dil.masks[i0] & am),
                       lat.names_of(dil.masks[i] & am))
        else:
            first_r[res] = (i, image_res)
    return (Check("continuity-join-form", w_j is None, w_j),
            Check("continuity-resolution-form", w_r is None, w_r))


def check_continuity(e: Induction) -> Report:
    return Report(_continuity_checks(e))


# -- dynamic connectives ----------------------------------------------------


def dyn_impl_fwd(e: Induction, a: PropertySet, b: PropertySet) -> PropertySet:
    """A -[e]-> B: all c such that every d <= c lying in A is certain to
    actualise B.  Right adjoint to the forward tensor in its second
    argument."""
    _same_lattice(e, a, b)
    lat = e.lattice
    good = e.dil.masks[e.caus[e.dil.index[b.mask]]]
    out = 0
    for c in range(len(lat)):
        if lat.down[c] & a.mask & ~good == 0:
            out |= 1 << c
    if out not in e.dil.index:
        raise AssertionError("forward implication fell outside DI")
    return PropertySet._trusted(lat, out)


def dyn_impl_bwd(e: Induction, a: PropertySet, b: PropertySet) -> PropertySet:
    """A <-[e]- B: all c such that every d <= c certain to actualise B
    already lies in A.  Right adjoint to the backward tensor in its first
    argument."""
    _same_lattice(e, a, b)
    lat = e.lattice
    good = e.dil.masks[e.caus[e.dil.index[b.mask]]]
    bad = good & ~a.mask
    out = 0
    for c in range(len(lat)):
        if lat.down[c] & bad == 0:
            out |= 1 << c
    if out not in e.dil.index:
        raise AssertionError("backward implication fell outside DI")
    return PropertySet._trusted(lat, out)


def dyn_tensor_fwd(e: Induction, a: PropertySet, b: PropertySet) -> PropertySet:
    """A (x)[e] B: propagate the conjunction forward."""
    _same_lattice(e, a, b)
    return e.dil.ideal(e.prop[e.dil.index[a.mask & b.mask]])


def dyn_tensor_bwd(e: Induction, a: PropertySet, b: PropertySet) -> PropertySet:
    """A [e](x) B: A together with certainty of actualising B."""
    _same_lattice(e, a, b)
    good = e.dil.masks[e.caus[e.dil.index[b.mask]]]
    return PropertySet._trusted(e.lattice, a.mask & good)


def validity(a: PropertySet) -> bool:
    """A dynamic formula holds outright when it denotes the whole lattice."""
    return a.is_whole


# -- composition ------------------------------------------------------------


def concat(e1: Induction, e2: Induction) -> Induction:
    """Perform e1 then e2.  Propagation composes covariantly
    (prop = prop2 . prop1), causation contravariantly, so the induced
    action satisfies (e1 & e2).a == e1.(e2.a)."""
    if e1.lattice != e2.lattice:
        raise ValueError("inductions live on different lattices")
    lat = e1.lattice
    atom_map = {}
    for i in lat.atom_indices():
        first = e1.dil.masks[e1.prop[e1.dil.principal_index(i)]]
        second = e2.dil.masks[e2.prop[e2.dil.index[first]]]
        atom_map[lat.el(i)] = PropertySet._trusted(lat, second)
    return make_induction(lat, f"({e1.name}&{e2.name})", atom_map)


def choice(*inductions: Induction) -> Induction:
    """Nondeterministic choice: atom images join pointwise."""
    if not inductions:
        raise ValueError("choice needs at least one induction")
    lat = inductions[0].lattice
    for e in inductions[1:]:
        if e.lattice != lat:
            raise ValueError("inductions live on different lattices")
    dil = inductions[0].dil
    byatoms = dil.index_by_atoms()
    atom_map = {}
    for i in lat.atom_indices():
        u = 0
        for e in inductions:
            u |= e.img_atoms[i]
        atom_map[lat.el(i)] = PropertySet._trusted(lat, dil.masks[byatoms[u]])
    name = "(" + "|".join(e.name for e in inductions) + ")"
    return make_induction(lat, name, atom_map)


class InductionAlgebra:
    """Closure of a generating set under concatenation and choice.

    Members are identified extensionally (same action, one representative,
    first name wins).  The closure acts on the lattice by causation; the
    action laws are checked by the quantale module."""

    __slots__ = ("lattice", "members")

    def __init__(self, generators: Sequence[Induction], caps: Caps | None = None):
        if not generators:
            raise ValueError("need at least one generator")
        lat = generators[0].lattice
        for e in generators[1:]:
            if e.lattice != lat:
                raise ValueError("generators live on different lattices")
        caps = caps or get_caps()
        seen: dict[tuple[int, ...], Induction] = {}
        for e in generators:
            seen.setdefault(e.prop, e)
        frontier = list(seen.values())
        while frontier:
            fresh = []
            for e1 in list(seen.values()):
                for e2 in frontier:
                    for cand in (concat(e1, e2), concat(e2, e1), choice(e1, e2)):
                        if cand.prop not in seen:
                            seen[cand.prop] = cand
                            fresh.append(cand)
                            if len(seen) > caps.max_inductions:
                                raise SizeCapExceeded(
                                    "induction algebra closure", len(seen),
                                    caps.max_inductions,
                                    "fewer generators, or raise max_inductions",
                                )
            frontier = fresh
        self.lattice = lat
        self.members: tuple[Induction, ...] = tuple(seen.values())

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __repr__(self) -> str:
        names = ", ".join(e.name for e in self.members[:6])
        if len(self.members) > 6:
            names += ", ..."
        return f"InductionAlgebra({len(self.members)} members: {names})"


# -- relational inverse vs Galois adjoint ------------------------------------


def relational_inverse(e: Induction) -> dict[str, tuple[str, ...]]:
    """Atom-level inverse of the propagation relation: q maps to every atom
    whose image contains q.  Extending unions of these fibres over a set of
    atoms gives the naive 'where could this have come from' map."""
    lat = e.lattice
    out = {}
    for q in lat.atom_indices():
        fibre = 0
        for p, img in e.img_atoms.items():
            if img >> q & 1:
                fibre |= 1 << p
        out[lat.el(q)] = lat.names_of(fibre)
    return out


def inverse_induction(e: Induction) -> Induction:
    """The relational inverse packaged as an induction, so the continuity
    checks apply to it verbatim."""
    lat = e.lattice
    inv = relational_inverse(e)
    atom_map = {q: di_closure(lat, names) for q, names in inv.items()}
    return make_induction(lat, f"inv({e.name})", atom_map)


def compare_inverse_vs_adjoint(e: Induction) -> Report:
    """How the relational inverse and the Galois adjoint caus differ.

    All three checks are informational: whether the two maps agree
    pointwise on ideals, whether the union-extended relational inverse
    satisfies the join-continuity law, and whether the adjoint is licensed
    as the physical converse.  A right adjoint earns that licence through
    its left partner: backward reasoning along caus is meaningful exactly
    when the forward map is continuous, so the adjoint verdict is the
    continuity of prop, not a join test run on the intersection-preserving
    caus itself (which an adjoint of a continuous map can still fail)."""
    lat, dil = e.lattice, e.dil
    am = dil.atom_mask()
    inv = relational_inverse(e)
    fibre = {lat.idx(q): lat.mask_of(names) for q, names in inv.items()}
    agree_w = None
    first_inv: dict[int, tuple[int, int]] = {}
    w_inv = None
    for i in range(len(dil)):
        s = dil.masks[i] & am
        pre = 0
        for q in _bits(s):
            pre |= fibre[q]
        adj = dil.masks[e.caus[i]] & am
        if pre != adj and agree_w is None:
            agree_w = (lat.names_of(s), lat.names_of(pre), lat.names_of(adj))
        carrier_join = lat.join_mask(dil.masks[i])
        ji = lat.join_mask(pre)
        if carrier_join in first_inv:
            i0, j0 = first_inv[carrier_join]
            if j0 != ji and w_inv is None:
                w_inv = (lat.names_of(dil.masks[i0] & am), lat.names_of(s))
        else:
            first_inv[carrier_join] = (i, ji)
    fwd = _continuity_checks(e)[0]
    return Report((
        Check("inverse-equals-adjoint", agree_w is None, agree_w, required=False),
        Check("inverse-continuity", w_inv is None, w_inv, required=False),
        Check("adjoint-continuity", fwd.holds, fwd.witness, required=False),
    ))
