"""Shared fixtures and independent oracles.

The oracles here deliberately avoid the package's bitmask machinery: order
reachability is computed by DFS over the declared pairs, bounds by scanning,
so table construction in the package is checked against something it does not
share code with.
"""

from __future__ import annotations

import random
from itertools import combinations

import pytest

from oqlkit.order import build_lattice, lattice_from_closure_system


# -- oracle order theory (no bitmasks, no tables) ----------------------------


def oracle_leq(elements, pairs):
    """Reflexive-transitive reachability as a dict of frozensets."""
    succ = {x: set() for x in elements}
    for a, b in pairs:
        succ[a].add(b)
    reach = {}
    for x in elements:
        seen = {x}
        stack = [x]
        while stack:
            y = stack.pop()
            for z in succ[y]:
                if z not in seen:
                    seen.add(z)
                    stack.append(z)
        reach[x] = frozenset(seen)
    return reach


def oracle_glb(elements, reach, a, b):
    lower = [x for x in elements if a in reach[x] and b in reach[x]]
    glbs = [m for m in lower if all(m in reach[x] for x in lower)]
    return glbs[0] if glbs else None


def oracle_lub(elements, reach, a, b):
    upper = [x for x in elements if x in reach[a] and x in reach[b]]
    lubs = [m for m in upper if all(x in reach[m] for x in upper)]
    return lubs[0] if lubs else None


# -- small frozen carriers -----------------------------------------------------


BOOLEAN2 = (
    ("0", "x1", "x2", "1"),
    [("0", "x1"), ("0", "x2"), ("x1", "1"), ("x2", "1")],
)

BOOLEAN3 = (
    ("0", "x1", "x2", "x3", "x12", "x13", "x23", "1"),
    [
        ("0", "x1"), ("0", "x2"), ("0", "x3"),
        ("x1", "x12"), ("x1", "x13"), ("x2", "x12"), ("x2", "x23"),
        ("x3", "x13"), ("x3", "x23"),
        ("x12", "1"), ("x13", "1"), ("x23", "1"),
    ],
)

MO2 = (
    ("0", "a", "b", "a'", "b'", "1"),
    [("0", "a"), ("0", "b"), ("0", "a'"), ("0", "b'"),
     ("a", "1"), ("b", "1"), ("a'", "1"), ("b'", "1")],
)

M3 = (
    ("0", "x", "y", "z", "1"),
    [("0", "x"), ("0", "y"), ("0", "z"), ("x", "1"), ("y", "1"), ("z", "1")],
)

N5 = (
    ("0", "a", "c", "b", "1"),
    [("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")],
)

CHAIN3 = (("0", "m", "1"), [("0", "m"), ("m", "1")])

O6 = (
    ("0", "x", "y", "y'", "x'", "1"),
    [("0", "x"), ("x", "y"), ("y", "1"), ("0", "y'"), ("y'", "x'"), ("x'", "1")],
)

# four atoms; p joins any other atom straight to 1, q,r,s share the cover qrs
NOTE13 = (
    ("0", "p", "q", "r", "s", "qrs", "1"),
    [
        ("0", "p"), ("0", "q"), ("0", "r"), ("0", "s"),
        ("q", "qrs"), ("r", "qrs"), ("s", "qrs"),
        ("qrs", "1"), ("p", "1"),
    ],
)

# atom images of the canonical induction on NOTE13: p leaks into q
NOTE13_E = {"p": ("p", "q"), "q": ("q",), "r": ("r",), "s": ("s",)}


def build(spec):
    return build_lattice(*spec)


@pytest.fixture
def mo2():
    return build(MO2)


@pytest.fixture
def boolean2():
    return build(BOOLEAN2)


@pytest.fixture
def boolean3():
    return build(BOOLEAN3)


@pytest.fixture
def m3():
    return build(M3)


@pytest.fixture
def n5():
    return build(N5)


@pytest.fixture
def chain3():
    return build(CHAIN3)


@pytest.fixture
def o6():
    return build(O6)


@pytest.fixture
def note13():
    return build(NOTE13)


# -- seeded random structures -------------------------------------------------


def random_closure_family(rng: random.Random, npoints: int) -> set[int]:
    """Intersection-closed family over `npoints` points containing the full
    set, every singleton, and the empty set: an atomistic closure system."""
    full = (1 << npoints) - 1
    fam = {full, 0} | {1 << p for p in range(npoints)}
    for _ in range(rng.randrange(0, npoints)):
        size = rng.randrange(2, npoints + 1)
        fam.add(sum(1 << p for p in rng.sample(range(npoints), size)))
    while True:
        extra = {a & b for a in fam for b in fam} - fam
        if not extra:
            return fam
        fam |= extra


def random_atomistic_lattice(rng: random.Random, npoints: int):
    """A random atomistic lattice: the closure lattice of a random
    intersection-closed family in which all singletons are closed."""
    points = [f"p{i}" for i in range(npoints)]
    fam = random_closure_family(rng, npoints)
    lat, _ = lattice_from_closure_system(points, fam)
    return lat


def subsets(xs):
    for r in range(len(xs) + 1):
        yield from combinations(xs, r)
