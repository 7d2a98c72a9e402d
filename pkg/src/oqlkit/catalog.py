"""Built-in standard models with frozen expected facts.

Each entry pairs a programmatic constructor with the metadata it is supposed
to have (element count, atom count, distributivity, orthomodularity, ideal
count).  ``self_test`` recomputes everything from scratch and diffs it
against the frozen values, so a regression in any core module shows up as a
golden-data mismatch here.

The four-state dynamic counterexample ("note13") ships as a bundle: its
seven-set closure family cannot be produced by any orthogonality relation on
four states, and the seven-element lattice admits no orthocomplementation
(four atoms, two coatoms), so the bundle carries a plain lattice plus the
closure family and the canonical induction, with a flag recording that the
exhaustive relation search came up empty.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Callable

from .caps import Caps, get_caps
from .dynamics import Induction, make_induction
from .errors import SizeCapExceeded
from .ideals import enumerate_di
from .order import FiniteLattice, build_lattice, is_distributive_lattice
from .ortho import (
    OrthoLattice,
    StateSpace,
    attach_ortho,
    closed_set_family,
    is_orthomodular,
)
from .report import Check, Report

__all__ = [
    "CatalogEntry",
    "Note13Bundle",
    "entry",
    "load",
    "make_boolean",
    "make_chain",
    "make_m3",
    "make_mo",
    "make_n5",
    "make_note13",
    "make_o6",
    "make_photon",
    "names",
    "photon_state_space",
    "self_test",
    "self_test_all",
]

_LETTERS = "abcdefghijklm"


# -- constructors --------------------------------------------------------------


def make_boolean(n: int, caps: Caps | None = None) -> OrthoLattice:
    """The Boolean lattice 2^n with set complement as orthocomplementation.

    Elements are named 0, x1, x2, x12, ..., 1 by the indices they contain.
    """
    caps = caps or get_caps()
    if n < 1:
        raise ValueError("Boolean lattice needs n >= 1")
    if 1 << n > caps.max_elements:
        raise SizeCapExceeded("Boolean lattice", 1 << n, caps.max_elements)
    full = (1 << n) - 1

    def name(m: int) -> str:
        if m == 0:
            return "0"
        if m == full:
            return "1"
        return "x" + "".join(str(i + 1) for i in range(n) if m >> i & 1)

    elements = sorted(range(1 << n), key=lambda m: (m.bit_count(), m))
    covers = [
        (name(m), name(m | 1 << i))
        for m in elements
        for i in range(n)
        if not m >> i & 1
    ]
    lat = build_lattice([name(m) for m in elements], covers, caps=caps)
    return attach_ortho(lat, [(name(m), name(full & ~m)) for m in elements])


def make_mo(n: int, caps: Caps | None = None) -> OrthoLattice:
    """MO(n): 2n pairwise incomparable atoms a, b, ... with partners
    a', b', ... as their orthocomplements, plus bottom and top."""
    caps = caps or get_caps()
    if not 1 <= n <= len(_LETTERS):
        raise ValueError(f"MO family supports 1 <= n <= {len(_LETTERS)}")
    if 2 * n + 2 > caps.max_elements:
        raise SizeCapExceeded("MO lattice", 2 * n + 2, caps.max_elements)
    atoms = [_LETTERS[i] for i in range(n)]
    primes = [a + "'" for a in atoms]
    elements = ["0", *atoms, *primes, "1"]
    covers = [("0", a) for a in atoms + primes] + [(a, "1") for a in atoms + primes]
    lat = build_lattice(elements, covers, caps=caps)
    return attach_ortho(lat, [("0", "1")] + list(zip(atoms, primes)))


def make_photon() -> OrthoLattice:
    """The polarizer example: two incompatible filter orientations and their
    complements, i.e. MO(2)."""
    return make_mo(2)


def photon_state_space() -> StateSpace:
    """Four polarization states, orthogonal exactly across each filter pair.
    Its closed subsets reproduce the photon lattice."""
    return StateSpace(("a", "b", "a'", "b'"), [("a", "a'"), ("b", "b'")])


def make_o6() -> OrthoLattice:
    """The hexagon 0 < x < y < 1, 0 < y' < x' < 1: orthocomplemented but not
    orthomodular (x <= y yet x \\/ (x' /\\ y) = x)."""
    lat = build_lattice(
        ("0", "x", "y", "y'", "x'", "1"),
        [("0", "x"), ("x", "y"), ("y", "1"), ("0", "y'"), ("y'", "x'"), ("x'", "1")],
    )
    return attach_ortho(lat, [("0", "1"), ("x", "x'"), ("y", "y'")])


def make_m3() -> FiniteLattice:
    """The diamond: three incomparable atoms under a common top.  Modular but
    not distributive, and with no orthocomplementation (an order-reversing
    involution on three middle elements needs a fixed point)."""
    return build_lattice(
        ("0", "x", "y", "z", "1"),
        [("0", "x"), ("0", "y"), ("0", "z"), ("x", "1"), ("y", "1"), ("z", "1")],
    )


def make_n5() -> FiniteLattice:
    """The pentagon 0 < a < c < 1, 0 < b < 1: the minimal non-modular
    lattice."""
    return build_lattice(
        ("0", "a", "c", "b", "1"),
        [("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")],
    )


def make_chain(n: int, caps: Caps | None = None) -> FiniteLattice:
    """The n-element chain 0 < m1 < ... < 1 (single middle named just m)."""
    if n < 2:
        raise ValueError("chain needs n >= 2")
    if n == 2:
        mids: list[str] = []
    elif n == 3:
        mids = ["m"]
    else:
        mids = [f"m{i}" for i in range(1, n - 1)]
    elements = ["0", *mids, "1"]
    covers = list(zip(elements, elements[1:]))
    return build_lattice(elements, covers, caps=caps)


@dataclass(frozen=True)
class Note13Bundle:
    """The four-state counterexample to continuity of relational inverses."""

    lattice: FiniteLattice
    closed_sets: tuple[frozenset[str], ...]
    induction: Induction
    # no orthogonality on {p,q,r,s} has exactly these seven closed sets
    orthogonality_realizable: bool = field(default=False)


NOTE13_IMAGES: dict[str, tuple[str, ...]] = {
    "p": ("p", "q"),
    "q": ("q",),
    "r": ("r",),
    "s": ("s",),
}


def make_note13() -> Note13Bundle:
    """Four atoms p, q, r, s where q, r, s share the cover qrs but p joins
    anything straight to the top, with the induction leaking p into q."""
    lat = build_lattice(
        ("0", "p", "q", "r", "s", "qrs", "1"),
        [
            ("0", "p"), ("0", "q"), ("0", "r"), ("0", "s"),
            ("q", "qrs"), ("r", "qrs"), ("s", "qrs"),
            ("qrs", "1"), ("p", "1"),
        ],
    )
    closed = tuple(
        frozenset(lat.names_of(lat.atoms_below(i))) for i in range(len(lat))
    )
    e = make_induction(lat, "e", NOTE13_IMAGES)
    return Note13Bundle(lat, closed, e)


def orthogonality_search(
    points: tuple[str, ...], target: frozenset[frozenset[str]]
) -> tuple[tuple[str, str], ...] | None:
    """Exhaust all symmetric irreflexive relations on `points` for one whose
    biorthogonally closed sets are exactly `target`; None when there is none.

    This is how the note13 bundle earns its unrealizable flag: the search
    over all 2^C(4,2) = 64 relations finds no match for the seven-set family.
    """
    pairs = list(combinations(points, 2))
    for bits in range(1 << len(pairs)):
        chosen = tuple(p for i, p in enumerate(pairs) if bits >> i & 1)
        space = StateSpace(points, chosen)
        fam = frozenset(closed_set_family(space))
        if fam == frozenset(target):
            return chosen
    return None


# -- the registry ---------------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    """A named construction plus the facts it is expected to satisfy."""

    name: str
    builder: Callable[[], Any]
    expected: dict[str, Any]
    summary: str


def _lattice_of(obj: Any) -> FiniteLattice:
    return obj.lattice if isinstance(obj, Note13Bundle) else obj


def computed_facts(obj: Any) -> dict[str, Any]:
    """Freshly measure the quantities the catalog freezes."""
    lat = _lattice_of(obj)
    return {
        "elements": len(lat),
        "atoms": len(lat.atom_indices()),
        "distributive": bool(is_distributive_lattice(lat)),
        "orthomodular": (
            bool(is_orthomodular(lat)) if isinstance(lat, OrthoLattice) else None
        ),
        "di_count": len(enumerate_di(lat)),
    }


CATALOG: dict[str, CatalogEntry] = {
    e.name: e
    for e in (
        CatalogEntry(
            "photon", make_photon,
            {"elements": 6, "atoms": 4, "distributive": False,
             "orthomodular": True, "di_count": 16},
            "polarizer lattice MO(2)",
        ),
        CatalogEntry(
            "mo2", make_photon,
            {"elements": 6, "atoms": 4, "distributive": False,
             "orthomodular": True, "di_count": 16},
            "MO(2), alias of photon",
        ),
        CatalogEntry(
            "mo3", lambda: make_mo(3),
            {"elements": 8, "atoms": 6, "distributive": False,
             "orthomodular": True, "di_count": 64},
            "MO(3), six incomparable atoms",
        ),
        CatalogEntry(
            "boolean2", lambda: make_boolean(2),
            {"elements": 4, "atoms": 2, "distributive": True,
             "orthomodular": True, "di_count": 4},
            "Boolean 2^2",
        ),
        CatalogEntry(
            "boolean3", lambda: make_boolean(3),
            {"elements": 8, "atoms": 3, "distributive": True,
             "orthomodular": True, "di_count": 8},
            "Boolean 2^3",
        ),
        CatalogEntry(
            "o6", make_o6,
            {"elements": 6, "atoms": 2, "distributive": False,
             "orthomodular": False, "di_count": 9},
            "hexagon, the non-orthomodular control",
        ),
        CatalogEntry(
            "m3", make_m3,
            {"elements": 5, "atoms": 3, "distributive": False,
             "orthomodular": None, "di_count": 8},
            "diamond, modular non-distributive control",
        ),
        CatalogEntry(
            "n5", make_n5,
            {"elements": 5, "atoms": 2, "distributive": False,
             "orthomodular": None, "di_count": 6},
            "pentagon, non-modular control",
        ),
        CatalogEntry(
            "chain3", lambda: make_chain(3),
            {"elements": 3, "atoms": 1, "distributive": True,
             "orthomodular": None, "di_count": 3},
            "three-element chain",
        ),
        CatalogEntry(
            "note13", make_note13,
            {"elements": 7, "atoms": 4, "distributive": False,
             "orthomodular": None, "di_count": 16},
            "four-state dynamic counterexample with induction e",
        ),
    )
}


def names() -> tuple[str, ...]:
    return tuple(CATALOG)


def entry(name: str) -> CatalogEntry:
    try:
        return CATALOG[name]
    except KeyError:
        known = ", ".join(CATALOG)
        raise ValueError(f"no catalog entry {name!r}; choose from: {known}") from None


def load(name: str, validate: bool = True) -> Any:
    """Build a catalog model; with validate, re-derive its frozen facts and
    raise AssertionError on the first mismatch."""
    ent = entry(name)
    obj = ent.builder()
    if validate:
        rep = self_test(name, obj)
        if not rep.ok:
            bad = rep.failures()[0]
            raise AssertionError(f"catalog {name!r} failed {bad.law}: {bad.witness}")
    return obj


def self_test(name: str, obj: Any | None = None) -> Report:
    """Diff an entry's frozen facts against fresh computation, plus the
    entry-specific sanity checks."""
    ent = entry(name)
    if obj is None:
        obj = ent.builder()
    fresh = computed_facts(obj)
    checks = [
        Check(
            f"expected-{key}",
            fresh.get(key) == want,
            None if fresh.get(key) == want else (want, fresh.get(key)),
        )
        for key, want in ent.expected.items()
    ]
    checks.extend(_extra_checks(name, obj))
    return Report(tuple(checks))


def _extra_checks(name: str, obj: Any) -> list[Check]:
    if name in ("photon", "mo2"):
        lat: OrthoLattice = obj
        eq1 = lat.meet("a", lat.join("b", "a'"))
        eq2 = lat.join(lat.meet("a", "b"), lat.meet("a", "a'"))
        space_ok = _space_matches(photon_state_space(), lat)
        return [
            Check("filter-meet-join-collapse", eq1 == "a", eq1),
            Check("incompatible-filters-distribute-to-zero", eq2 == "0", eq2),
            Check("state-space-reproduces-lattice", space_ok),
        ]
    if name == "note13":
        bundle: Note13Bundle = obj
        lat = bundle.lattice
        seven = {
            frozenset(), frozenset("p"), frozenset("q"), frozenset("r"),
            frozenset("s"), frozenset("qrs"), frozenset("pqrs"),
        }
        found = orthogonality_search(("p", "q", "r", "s"), frozenset(seven))
        return [
            Check("closed-family-is-the-seven", set(bundle.closed_sets) == seven,
                  None if set(bundle.closed_sets) == seven else bundle.closed_sets),
            Check("join-of-r-s-stays-below-top", lat.join("r", "s") == "qrs",
                  lat.join("r", "s")),
            Check("join-of-p-q-hits-top", lat.join("p", "q") == "1",
                  lat.join("p", "q")),
            Check("induction-is-well-formed", bundle.induction.verify().ok),
            Check("orthogonality-unrealizable",
                  (found is None) == (not bundle.orthogonality_realizable), found),
        ]
    return []


def _space_matches(space: StateSpace, lat: OrthoLattice) -> bool:
    """Closed subsets of the space, named by their single member when a
    singleton, carry the same order and complement as the lattice."""
    fam = closed_set_family(space)
    if len(fam) != len(lat):
        return False

    def tag(s: frozenset[str]) -> str:
        if not s:
            return "0"
        if len(s) == len(space.states):
            return "1"
        if len(s) == 1:
            return next(iter(s))
        return "?"

    named = {tag(s): s for s in fam}
    if set(named) != set(lat.elements):
        return False
    for a in lat.elements:
        for b in lat.elements:
            if (named[a] <= named[b]) != lat.leq(a, b):
                return False
        perp = space.names_of(space.perp_mask(space.mask_of(named[a])))
        if frozenset(perp) != named[lat.o(a)]:
            return False
    return True


def self_test_all() -> Report:
    """Run every entry's self test; check names are prefixed by entry."""
    checks: list[Check] = []
    for name in CATALOG:
        for c in self_test(name).checks:
            checks.append(Check(f"{name}:{c.law}", c.holds, c.witness, c.required))
    return Report(tuple(checks))
