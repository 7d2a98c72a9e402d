"""Nine end-to-end acceptance criteria, one printed verdict line each.

Each test gathers every deviation into a problem list, prints a single
PASS/FAIL line for its criterion, and only then asserts.  Run with -s to
see the verdict lines on success.
"""

import json
import random
from functools import lru_cache
from pathlib import Path

from conftest import random_atomistic_lattice, subsets

from oqlkit.catalog import (
    CATALOG,
    load,
    make_boolean,
    make_mo,
    make_note13,
    make_o6,
    make_photon,
)
from oqlkit.cli import main
from oqlkit.dsl import parse_model, unparse_model
from oqlkit.dynamics import (
    InductionAlgebra,
    backward_relation,
    causal_relation,
    causate,
    check_continuity,
    compare_inverse_vs_adjoint,
    dyn_impl_bwd,
    dyn_impl_fwd,
    dyn_tensor_bwd,
    dyn_tensor_fwd,
    freeze,
    make_induction,
    propagate,
    relational_inverse,
    validity,
)
from oqlkit.ideals import (
    di_atom_iso,
    di_closure,
    di_closure_fixpoint,
    enumerate_di,
    heyting_implication,
    static_negation,
    verify_heyting,
)
from oqlkit.order import is_atomistic, is_distributive_lattice, join_set
from oqlkit.ortho import de_morgan_check, is_orthomodular, sasaki_equiv_orthomodular
from oqlkit.quantale import (
    find_cyclic_dualizing,
    girard_identities,
    is_girard,
    locale_of,
    module_action_check,
    quantale_of_induction,
    tensor_laws,
)

FIXTURES = Path(__file__).parent / "fixtures"


def _verdict(num: int, label: str, problems: list[str]) -> None:
    status = "PASS" if not problems else "FAIL"
    print(f"criterion {num} ({label}): {status}")
    assert not problems, f"criterion {num}: " + "; ".join(problems[:5])


def _catalog_lattices():
    for name in CATALOG:
        obj = load(name, validate=False)
        yield name, obj.lattice if name == "note13" else obj


@lru_cache(maxsize=1)
def _random_inductions():
    """Fifty seeded inductions on random atomistic lattices, at most six
    atoms each; images drawn uniformly over atom subsets (the empty image,
    the zero ideal, is allowed)."""
    rng = random.Random(97)
    out = []
    while len(out) < 50:
        lat = random_atomistic_lattice(rng, rng.randint(2, 5))
        atoms = sorted(lat.el(i) for i in lat.atom_indices())
        if len(atoms) > 6:
            continue
        images = {
            a: tuple(rng.sample(atoms, rng.randint(0, len(atoms))))
            for a in atoms
        }
        out.append(make_induction(lat, f"r{len(out)}", images))
    return tuple(out)


def test_criterion_1_photon_golden():
    problems = []
    lat = make_photon()
    if lat.meet("a", lat.join("b", "a'")) != "a":
        problems.append("a /\\ (b \\/ a') is not a")
    if lat.join(lat.meet("a", "b"), lat.meet("a", "a'")) != "0":
        problems.append("(a /\\ b) \\/ (a /\\ a') is not 0")
    zero, one = lat.idx("0"), lat.idx("1")
    for i in range(len(lat)):
        o = lat.ortho[i]
        if lat.ortho[o] != i:
            problems.append(f"orthocomplement not involutive at {lat.el(i)}")
        if lat.meet_i(i, o) != zero or lat.join_i(i, o) != one:
            problems.append(f"{lat.el(i)} and its orthocomplement do not split")
        for j in range(len(lat)):
            if lat.leq_i(i, j) and not lat.leq_i(lat.ortho[j], o):
                problems.append("orthocomplement not antitone")
    if not de_morgan_check(lat).holds:
        problems.append("de Morgan fails")
    if not is_orthomodular(lat).holds:
        problems.append("not orthomodular")
    _verdict(1, "photon golden identities", problems)


def test_criterion_2_note13_reproduction():
    problems = []
    bundle = make_note13()
    lat, e = bundle.lattice, bundle.induction
    seven = frozenset(
        frozenset(s)
        for s in ((), ("p",), ("q",), ("r",), ("s",), ("q", "r", "s"),
                  ("p", "q", "r", "s"))
    )
    if frozenset(bundle.closed_sets) != seven:
        problems.append("closed-subset family is not the expected seven")
    if not check_continuity(e).ok:
        problems.append("adjoint propagation fails join continuity")
    rep = compare_inverse_vs_adjoint(e)
    if rep["inverse-continuity"].holds:
        problems.append("relational inverse unexpectedly continuous")
    if rep["inverse-continuity"].witness != (("q", "r"), ("r", "s")):
        problems.append(f"wrong witness {rep['inverse-continuity'].witness}")
    if not rep["adjoint-continuity"].holds:
        problems.append("adjoint not licensed as converse")
    inv = relational_inverse(e)
    if join_set(lat, inv["q"] + inv["r"]) != "1":
        problems.append("image join of the {q,r} side is not top")
    if join_set(lat, inv["r"] + inv["s"]) != "qrs":
        problems.append("image join of the {r,s} side is not qrs")
    _verdict(2, "note-13 inverse-map failure", problems)


def test_criterion_3_di_completion():
    problems = []
    dil = enumerate_di(make_mo(2))
    if len(dil) != 16:
        problems.append(f"|DI(MO2)| is {len(dil)}, not 16")
    dlat = dil.as_lattice()
    if not is_distributive_lattice(dlat).holds:
        problems.append("DI(MO2) not distributive")
    if not is_atomistic(dlat):
        problems.append("DI(MO2) not atomistic")
    whole, bottom = dil.masks[dil.top_i], dil.masks[dil.bottom_i]
    for a in dil:
        neg = static_negation(dil, a)
        if a.mask & neg.mask != bottom or dil.closure_mask(a.mask | neg.mask) != whole:
            problems.append(f"DI(MO2) not complemented at {a.members}")
            break
    if not di_atom_iso(dil).verify().ok:
        problems.append("atom-set isomorphism fails")
    for name, lat in _catalog_lattices():
        if len(lat) > 12:
            continue
        for sub in subsets(lat.elements):
            if di_closure(lat, sub) != di_closure_fixpoint(lat, sub):
                problems.append(f"closure mismatch on {name} subset {sub}")
                break
    _verdict(3, "distributive-ideal completion", problems)


def test_criterion_4_heyting_suite():
    problems = []
    for name, lat in _catalog_lattices():
        rep = verify_heyting(enumerate_di(lat))
        for c in rep.failures():
            problems.append(f"{name}: {c.law} witness {c.witness}")
    _verdict(4, "Heyting laws across the catalog", problems)


_PHYSICAL_LAWS = frozenset(
    ("continuity-join-form", "continuity-resolution-form", "causal-duality")
)


def _dynamics_problems(e, physical: bool) -> list[str]:
    """The structural law set; continuity and causal duality only when the
    induction claims to be physical (a random one need not be)."""
    problems = []
    rep = e.verify()
    for c in rep.failures():
        if physical or c.law not in _PHYSICAL_LAWS:
            problems.append(f"{e.name}: {c.law}")
    # triangle identities of the adjoint pair, read in either direction
    m = len(e.dil)
    if any(e.prop[e.caus[e.prop[i]]] != e.prop[i] for i in range(m)):
        problems.append(f"{e.name}: propagation triangle fails")
    if any(e.caus[e.prop[e.caus[i]]] != e.caus[i] for i in range(m)):
        problems.append(f"{e.name}: causation triangle fails")
    ideals = tuple(e.dil)
    whole = e.dil.ideal(e.dil.top_i)
    for a in ideals:
        if dyn_tensor_fwd(e, whole, a) != propagate(e, a):
            problems.append(f"{e.name}: whole-tensor is not propagation")
        if dyn_tensor_bwd(e, whole, a) != causate(e, a):
            problems.append(f"{e.name}: whole-tensor is not causation")
        for b in ideals:
            fwd = dyn_impl_fwd(e, a, b)
            bwd = dyn_impl_bwd(e, a, b)
            if validity(fwd) != causal_relation(e, a, b):
                problems.append(f"{e.name}: forward validity law fails")
            if validity(bwd) != backward_relation(e, a, b):
                problems.append(f"{e.name}: backward validity law fails")
            for x in ideals:
                if (dyn_tensor_fwd(e, a, x) <= b) != (x <= fwd):
                    problems.append(f"{e.name}: forward tensor adjunction")
                if (dyn_tensor_bwd(e, x, b) <= a) != (x <= bwd):
                    problems.append(f"{e.name}: backward tensor adjunction")
        if problems:
            break
    for c in tensor_laws(e, "fwd").failures():
        problems.append(f"{e.name}: fwd tensor {c.law}")
    return problems


def test_criterion_5_dynamics_suite():
    problems = []
    bundle = make_note13()
    fz = freeze(bundle.lattice)
    for e in (fz, bundle.induction):
        problems.extend(_dynamics_problems(e, physical=True))
    for e in _random_inductions():
        problems.extend(_dynamics_problems(e, physical=False))
    dil = enumerate_di(bundle.lattice)
    for a in dil:
        for b in dil:
            if dyn_impl_fwd(fz, a, b) != heyting_implication(dil, a, b):
                problems.append("freeze fwd implication is not Heyting")
            if dyn_impl_bwd(fz, a, b) != heyting_implication(dil, b, a):
                problems.append("freeze bwd implication is not flipped Heyting")
            if dyn_tensor_fwd(fz, a, b).mask != a.mask & b.mask:
                problems.append("freeze tensor is not meet")
    _verdict(5, "induction dynamics laws", problems)


def test_criterion_6_sasaki_theorem():
    problems = []
    family = {
        "boolean2": make_boolean(2),
        "boolean3": make_boolean(3),
        "mo2": make_mo(2),
        "mo3": make_mo(3),
        "o6": make_o6(),
    }
    for name, lat in family.items():
        rep = sasaki_equiv_orthomodular(lat)
        if not rep["sasaki-adjunction-iff-orthomodular"].holds:
            problems.append(f"{name}: equivalence fails")
        if rep["orthomodular"].holds != (name != "o6"):
            problems.append(f"{name}: wrong orthomodularity verdict")
    _verdict(6, "Sasaki adjunction iff orthomodular, O6 sole failure", problems)


def test_criterion_7_quantale_suite():
    problems = []
    bundle = make_note13()
    tested = (freeze(bundle.lattice), bundle.induction, *_random_inductions()[:10])
    for e in tested:
        for direction in ("fwd", "bwd"):
            rep = tensor_laws(e, direction)
            for c in rep.failures():
                problems.append(f"{e.name} {direction}: {c.law}")
    for n in (2, 3):
        q = locale_of(make_boolean(n))
        girard, dualizer = is_girard(q)
        if not girard or dualizer != "0":
            problems.append(f"boolean{n} locale not Girard at 0")
        else:
            for c in girard_identities(q, dualizer).failures():
                problems.append(f"boolean{n}: {c.law}")
    if find_cyclic_dualizing(locale_of(load("chain3", validate=False))) != ():
        problems.append("3-chain locale has a dualizing element")
    _verdict(7, "quantale and Girard laws", problems)


def test_criterion_8_module_action():
    problems = []
    bundle = make_note13()
    alg = InductionAlgebra([freeze(bundle.lattice), bundle.induction])
    rep = module_action_check(alg)
    for c in rep.failures():
        problems.append(f"{c.law} witness {c.witness}")
    _verdict(8, "induction algebra acts on the lattice", problems)


def test_criterion_9_cli_end_to_end(capsys):
    problems = []
    for name in ("photon", "note13", "o6"):
        text = (FIXTURES / f"{name}.oql").read_text()
        if unparse_model(parse_model(text)) != text:
            problems.append(f"{name}: parse/unparse round trip broken")
    photon, note13, o6 = (str(FIXTURES / f"{n}.oql")
                          for n in ("photon", "note13", "o6"))
    runs = [
        (["check", photon], 0),
        (["check", o6, "--omod"], 1),
        (["di", photon, "--count"], 0),
        (["eval", photon, "--formula", "dn(a) -> dn(b)", "--json"], 0),
        (["dyn", note13, "--induction", "e", "--inverse-compare"], 0),
        (["quantale", note13, "--induction", "freeze", "--girard", "--json"], 0),
        (["eval", note13, "--formula", "dn("], 2),
    ]
    outputs = []
    for argv, want in runs:
        capsys.readouterr()
        code = main(argv)
        outputs.append(capsys.readouterr().out)
        if code != want:
            problems.append(f"{' '.join(argv)} exited {code}, wanted {want}")
    if outputs[2].strip() != "16":
        problems.append("di --count did not print 16")
    evald = json.loads(outputs[3])
    if evald["members"] != ["0", "b", "a'", "b'"] or evald["status"] != "pass":
        problems.append("eval JSON report wrong")
    girard = json.loads(outputs[5])
    if girard["cyclic_dualizing"] != ["{0}"] or girard["status"] != "pass":
        problems.append("quantale JSON report wrong")
    with capsys.disabled():
        _verdict(9, "CLI fixtures, exit codes, JSON reports", problems)
