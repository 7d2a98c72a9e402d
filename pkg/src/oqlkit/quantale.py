"""Finite quantales, residuation, and linear-logic negations.

A quantale is a complete lattice with an associative product distributing
over all joins in both arguments; a locale is the special case product =
meet with the top as unit.  In a unital quantale an element d is dualizing
when (d retro (a imp d)) == a == ((d retro a) imp d) for every a, where
imp/retro are the two residuals of the product, and cyclic when a imp d ==
d retro a throughout.  A unital quantale with a cyclic dualizing element is
a Girard quantale: the negation a -> a imp d is then an involution
satisfying the linear De Morgan laws, which is all the semantics classical
linear logic needs at desk scale.

The bridge from dynamics: for an induction e the forward tensor makes
(DI(L), join, (x)e) a commutative quantale-like structure, and the backward
tensor distributes over nonempty meets in both arguments (a co-quantale;
the empty family fails since A e(x) top == A, and associativity is a
contingent extra).  Induction algebras act on the lattice by causation;
module_action_check verifies the action laws.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import NotAQuantale, NotDualizing, NotUnital
from .order import FiniteLattice
from .report import Check, Report
from .dynamics import Induction, InductionAlgebra


class FiniteQuantale:
    """A finite complete lattice with a product table.

    The constructor only checks shape; the laws live in verify_quantale so
    that deliberately broken tables can be built and reported on.  unit may
    be given explicitly or left to auto-detection (a two-sided unit is
    unique when it exists).
    """

    __slots__ = ("lattice", "product", "unit_i", "_cache")

    def __init__(self, lattice: FiniteLattice, product: Sequence[Sequence[int]],
                 unit: str | None = None):
        n = len(lattice)
        rows = tuple(tuple(r) for r in product)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError("product table must be n x n")
        for r in rows:
            for v in r:
                if not 0 <= v < n:
                    raise ValueError(f"product entry {v} out of range")
        self.lattice = lattice
        self.product = rows
        if unit is not None:
            self.unit_i: int | None = lattice.idx(unit)
        else:
            self.unit_i = self._detect_unit()
        self._cache: dict = {}

    def _detect_unit(self) -> int | None:
        n = len(self.lattice)
        ident = tuple(range(n))
        for i in range(n):
            if self.product[i] == ident and all(
                    self.product[a][i] == a for a in range(n)):
                return i
        return None

    @property
    def unit(self) -> str | None:
        return None if self.unit_i is None else self.lattice.el(self.unit_i)

    def prod_i(self, a: int, b: int) -> int:
        return self.product[a][b]

    def prod(self, a: str, b: str) -> str:
        lat = self.lattice
        return lat.el(self.product[lat.idx(a)][lat.idx(b)])

    def __repr__(self) -> str:
        u = f", unit={self.unit!r}" if self.unit_i is not None else ""
        return f"FiniteQuantale({len(self.lattice)} elements{u})"


def locale_of(lat: FiniteLattice) -> FiniteQuantale:
    """The locale on lat: product = meet, unit = top."""
    return FiniteQuantale(lat, lat.meet_table, unit=lat.top)


def _names(lat: FiniteLattice, *idxs: int) -> tuple[str, ...]:
    return tuple(lat.el(i) for i in idxs)


def _first_mismatch(lhs: np.ndarray, rhs: np.ndarray):
    bad = np.argwhere(lhs != rhs)
    return None if bad.size == 0 else tuple(int(v) for v in bad[0])


def verify_quantale(q: FiniteQuantale) -> Report:
    """Associativity, two-sided distribution over joins (binary plus the
    empty family, which is all finite completeness needs), and the unit
    laws when a unit is present."""
    lat = q.lattice
    p = np.array(q.product)
    j = np.array(lat.join_table)
    checks = []

    w = _first_mismatch(p[p], p[:, p])
    checks.append(Check("product-associative", w is None,
                        None if w is None else _names(lat, *w)))

    # right arg: p[:,j][a,b,c] = a*(b\/c); rhs[a,b,c] = (a*b)\/(a*c)
    w = _first_mismatch(p[:, j], j[p[:, :, None], p[:, None, :]])
    checks.append(Check("join-distributive-right-arg", w is None,
                        None if w is None else _names(lat, *w)))
    # left arg: p[j][b,c,a] = (b\/c)*a; rhs[b,c,a] = (b*a)\/(c*a)
    w = _first_mismatch(p[j], j[p[:, None, :], p[None, :, :]])
    checks.append(Check("join-distributive-left-arg", w is None,
                        None if w is None else _names(lat, *w)))

    b = lat.bottom_i
    wl = next((a for a in range(len(lat)) if q.product[b][a] != b), None)
    checks.append(Check("bottom-absorbing-left-arg", wl is None,
                        None if wl is None else _names(lat, wl)))
    wr = next((a for a in range(len(lat)) if q.product[a][b] != b), None)
    checks.append(Check("bottom-absorbing-right-arg", wr is None,
                        None if wr is None else _names(lat, wr)))

    if q.unit_i is not None:
        e = q.unit_i
        wu = next((a for a in range(len(lat))
                   if q.product[e][a] != a or q.product[a][e] != a), None)
        checks.append(Check("unit-laws", wu is None,
                            None if wu is None else _names(lat, wu)))
    return Report(tuple(checks))


def verify_commutative(q: FiniteQuantale) -> bool:
    p = np.array(q.product)
    return bool(np.array_equal(p, p.T))


def verify_coquantale(lat: FiniteLattice, product: Sequence[Sequence[int]]) -> Report:
    """Co-quantale laws: the product distributes over nonempty meets.

    Binary distributivity gives every nonempty finite family; the empty
    family (top) genuinely fails for the backward tensor, so it is not
    part of the contract.  The right argument is the load-bearing law
    (backward tensors are built from meet-preserving causations); the left
    argument and associativity/commutativity are reported informationally.
    """
    q = FiniteQuantale(lat, product)
    p = np.array(q.product)
    m = np.array(lat.meet_table)
    checks = []
    w = _first_mismatch(p[:, m], m[p[:, :, None], p[:, None, :]])
    checks.append(Check("meet-distributive-right-arg", w is None,
                        None if w is None else _names(lat, *w)))
    w = _first_mismatch(p[m], m[p[:, None, :], p[None, :, :]])
    checks.append(Check("meet-distributive-left-arg", w is None,
                        None if w is None else _names(lat, *w), required=False))
    w = _first_mismatch(p[p], p[:, p])
    checks.append(Check("product-associative", w is None,
                        None if w is None else _names(lat, *w), required=False))
    checks.append(Check("product-commutative", bool(np.array_equal(p, p.T)),
                        None, required=False))
    return Report(tuple(checks))


def _require_valid(q: FiniteQuantale) -> None:
    rep = q._cache.get("verify")
    if rep is None:
        rep = verify_quantale(q)
        q._cache["verify"] = rep
    if not rep.ok:
        raise NotAQuantale(rep.failures()[0])


def residuals(q: FiniteQuantale, a: str) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """The two residual rows at a: (a imp -, - retro a).

    a imp b is the largest c with a*c <= b; b retro a the largest c with
    c*a <= b.  Both adjunctions are re-verified exhaustively on every call
    (desk scale keeps this honest and cheap)."""
    _require_valid(q)
    lat = q.lattice
    n = len(lat)
    ai = lat.idx(a)
    imp = []
    retro = []
    for b in range(n):
        cand = 0
        for c in range(n):
            if lat.leq_i(q.product[ai][c], b):
                cand |= 1 << c
        imp.append(lat.join_mask(cand))
        cand = 0
        for c in range(n):
            if lat.leq_i(q.product[c][ai], b):
                cand |= 1 << c
        retro.append(lat.join_mask(cand))
    for b in range(n):
        for c in range(n):
            if lat.leq_i(q.product[ai][c], b) != lat.leq_i(c, imp[b]):
                raise NotAQuantale(Check("left-residuation", False,
                                         _names(lat, ai, b, c)))
            if lat.leq_i(q.product[c][ai], b) != lat.leq_i(c, retro[b]):
                raise NotAQuantale(Check("right-residuation", False,
                                         _names(lat, ai, b, c)))
    return _names(lat, *imp), _names(lat, *retro)


def _residual_tables(q: FiniteQuantale) -> tuple[list[list[int]], list[list[int]]]:
    """imp[a][b] = a imp b and retro[b][a] = b retro a, as index tables."""
    got = q._cache.get("residuals")
    if got is None:
        lat = q.lattice
        n = len(lat)
        imp = [[0] * n for _ in range(n)]
        retro = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                cand = 0
                for c in range(n):
                    if lat.leq_i(q.product[a][c], b):
                        cand |= 1 << c
                imp[a][b] = lat.join_mask(cand)
                cand = 0
                for c in range(n):
                    if lat.leq_i(q.product[c][a], b):
                        cand |= 1 << c
                retro[b][a] = lat.join_mask(cand)
        got = (imp, retro)
        q._cache["residuals"] = got
    return got


def _is_dualizing(q: FiniteQuantale, d: int) -> bool:
    imp, retro = _residual_tables(q)
    n = len(q.lattice)
    return all(retro[d][imp[a][d]] == a and imp[retro[d][a]][d] == a
               for a in range(n))


def _is_cyclic(q: FiniteQuantale, d: int) -> bool:
    imp, retro = _residual_tables(q)
    return all(imp[a][d] == retro[d][a] for a in range(len(q.lattice)))


def find_cyclic_dualizing(q: FiniteQuantale) -> tuple[str, ...]:
    """Every element that is simultaneously dualizing and cyclic.
    Exhaustive scan; raises NotUnital first since dualizing only makes
    sense in a unital quantale."""
    _require_valid(q)
    if q.unit_i is None:
        raise NotUnital()
    lat = q.lattice
    return tuple(lat.el(d) for d in range(len(lat))
                 if _is_dualizing(q, d) and _is_cyclic(q, d))


def is_girard(q: FiniteQuantale) -> tuple[bool, str | None]:
    """(True, chosen bottom) when a cyclic dualizing element exists."""
    found = find_cyclic_dualizing(q)
    return (True, found[0]) if found else (False, None)


def linear_negations(q: FiniteQuantale, dualizer: str, a: str) -> tuple[str, str]:
    """(postnegation a imp d, retronegation d retro a).  The two coincide
    exactly when d is cyclic."""
    _require_valid(q)
    d = q.lattice.idx(dualizer)
    if not _is_dualizing(q, d):
        raise NotDualizing(dualizer)
    imp, retro = _residual_tables(q)
    ai = q.lattice.idx(a)
    return q.lattice.el(imp[ai][d]), q.lattice.el(retro[d][ai])


def par(q: FiniteQuantale, dualizer: str, a: str, b: str) -> str:
    """a par b = (post(b) * post(a)) postnegated: the multiplicative
    disjunction determined by the De Morgan identity."""
    lat = q.lattice
    d = lat.idx(dualizer)
    if not _is_dualizing(q, d):
        raise NotDualizing(dualizer)
    imp, _ = _residual_tables(q)
    na = imp[lat.idx(a)][d]
    nb = imp[lat.idx(b)][d]
    return lat.el(imp[q.product[nb][na]][d])


def abrusci_composites(q: FiniteQuantale, dualizer: str, a: str) -> tuple[str, str]:
    """The two double-negation composites retro(post(a)) and post(retro(a));
    both equal a when the dualizer is genuinely dualizing, by definition."""
    lat = q.lattice
    d = lat.idx(dualizer)
    imp, retro = _residual_tables(q)
    ai = lat.idx(a)
    return lat.el(retro[d][imp[ai][d]]), lat.el(imp[retro[d][ai]][d])


def girard_identities(q: FiniteQuantale, dualizer: str) -> Report:
    """The linear De Morgan package for a cyclic dualizing element:
    involutive negation, (a*b)^ = b^ par a^, a imp b = a^ par b, and
    contraposition a imp b = b^ imp a^."""
    _require_valid(q)
    lat = q.lattice
    d = lat.idx(dualizer)
    if not _is_dualizing(q, d):
        raise NotDualizing(dualizer)
    imp, retro = _residual_tables(q)
    n = len(lat)
    neg = [imp[a][d] for a in range(n)]

    def par_i(x: int, y: int) -> int:
        return neg[q.product[neg[y]][neg[x]]]

    checks = []
    w = next((a for a in range(n) if neg[neg[a]] != a), None)
    checks.append(Check("negation-involutive", w is None,
                        None if w is None else _names(lat, w)))
    w = next((a for a in range(n) if neg[a] != retro[d][a]), None)
    checks.append(Check("negation-cyclic", w is None,
                        None if w is None else _names(lat, w)))
    w = next(((a, b) for a in range(n) for b in range(n)
              if neg[q.product[a][b]] != par_i(neg[b], neg[a])), None)
    checks.append(Check("de-morgan-product-par", w is None,
                        None if w is None else _names(lat, *w)))
    w = next(((a, b) for a in range(n) for b in range(n)
              if imp[a][b] != par_i(neg[a], b)), None)
    checks.append(Check("implication-as-par", w is None,
                        None if w is None else _names(lat, *w)))
    w = next(((a, b) for a in range(n) for b in range(n)
              if imp[a][b] != imp[neg[b]][neg[a]]), None)
    checks.append(Check("implication-contraposition", w is None,
                        None if w is None else _names(lat, *w)))
    return Report(tuple(checks))


# -- bridge from dynamics -----------------------------------------------------


def quantale_of_induction(e: Induction, direction: str = "fwd") -> FiniteQuantale:
    """The tensor of an induction as a product table over DI(L).

    fwd: A (x)e B, propagating the conjunction (commutative, join
    distributive; associativity is contingent and left to verification).
    bwd: A e(x) B, meeting A with the causation of B (a co-quantale
    product; run verify_coquantale on it, not verify_quantale)."""
    if direction not in ("fwd", "bwd"):
        raise ValueError("direction must be 'fwd' or 'bwd'")
    dlat = e.dil.as_lattice()
    m = len(dlat)
    rows = []
    for i in range(m):
        row = []
        for j in range(m):
            if direction == "fwd":
                row.append(e.prop[dlat.meet_table[i][j]])
            else:
                row.append(dlat.meet_table[i][e.caus[j]])
        rows.append(tuple(row))
    return FiniteQuantale(dlat, tuple(rows))


def tensor_laws(e: Induction, direction: str = "fwd") -> Report:
    """The law set the dynamics bridge is accountable for.

    fwd: the forward tensor is commutative, distributes over joins in both
    arguments (including the empty family) and absorbs bottom; these follow
    from propagation preserving joins and meet distributing over joins in a
    Heyting algebra.  Associativity is computed and reported but not
    required: propagating the conjunction at every step composes nothing,
    and exhaustive checking finds four-atom inductions where it fails, so a
    forward tensor is a commutative prequantale product in general.
    bwd: the co-quantale laws, via verify_coquantale."""
    q = quantale_of_induction(e, direction)
    if direction == "bwd":
        return verify_coquantale(q.lattice, q.product)
    checks = []
    for c in verify_quantale(q):
        if c.law == "product-associative":
            checks.append(Check(c.law, c.holds, c.witness, required=False))
        else:
            checks.append(c)
    checks.append(Check("product-commutative", verify_commutative(q), None))
    return Report(tuple(checks))


def module_action_check(alg: InductionAlgebra) -> Report:
    """Action laws of an induction algebra on its lattice by causation:
    concatenation acts contravariantly ((e1&e2).a == e1.(e2.a)) and choice
    acts by pointwise meet ((e1|e2).a == e1.a /\\ e2.a)."""
    from .dynamics import choice, concat

    lat = alg.lattice
    n = len(lat)
    w_concat = w_choice = None
    for e1 in alg.members:
        for e2 in alg.members:
            both = concat(e1, e2)
            pick = choice(e1, e2)
            for a in range(n):
                if both.caus_elem[a] != e1.caus_elem[e2.caus_elem[a]]:
                    if w_concat is None:
                        w_concat = (e1.name, e2.name, lat.el(a))
                if pick.caus_elem[a] != lat.meet_i(e1.caus_elem[a],
                                                   e2.caus_elem[a]):
                    if w_choice is None:
                        w_choice = (e1.name, e2.name, lat.el(a))
    return Report((
        Check("action-concat-contravariant", w_concat is None, w_concat),
        Check("action-choice-pointwise-meet", w_choice is None, w_choice),
    ))
