"""Model-file and formula language tests, plus end-to-end CLI runs."""

import json
import random
from pathlib import Path

import pytest

from oqlkit.catalog import (
    make_boolean,
    make_mo,
    make_note13,
    make_photon,
    names as catalog_names,
    photon_state_space,
)
from oqlkit.cli import main
from oqlkit.dsl import (
    Bot,
    BwdImpl,
    BwdTensor,
    Down,
    FwdImpl,
    FwdTensor,
    Impl,
    Join,
    Lit,
    Meet,
    Model,
    Named,
    Neg,
    Resolve,
    Top,
    check_valid,
    eval_formula,
    parse_formula,
    parse_model,
    unparse_formula,
    unparse_model,
)
from oqlkit.dynamics import dyn_impl_bwd, dyn_impl_fwd, dyn_tensor_bwd, dyn_tensor_fwd
from oqlkit.errors import (
    DslSyntaxError,
    NotAPoset,
    SemanticError,
    UnknownElement,
    UnknownInduction,
    UnknownSet,
)
from oqlkit.ideals import (
    PropertySet,
    di_closure,
    heyting_implication_joinform,
    resolution,
    static_negation,
)

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def photon_model():
    return parse_model((FIXTURES / "photon.oql").read_text())


@pytest.fixture
def note13_model():
    return parse_model((FIXTURES / "note13.oql").read_text())


# -- model files ----------------------------------------------------------------


def test_photon_fixture_parses_to_catalog_objects(photon_model):
    assert photon_model.lattice == make_photon()
    assert photon_model.space == photon_state_space()
    assert photon_model.inductions == {}


def test_note13_fixture_parses_to_catalog_objects(note13_model):
    bundle = make_note13()
    assert note13_model.lattice == bundle.lattice
    assert note13_model.inductions == {"e": bundle.induction}
    assert note13_model.space is None


def test_unparse_parse_round_trip_all_catalog_fixtures(tmp_path):
    for name in catalog_names():
        path = tmp_path / f"{name}.oql"
        assert main(["catalog", name, "-o", str(path)]) == 0
        text = path.read_text()
        model = parse_model(text)
        assert unparse_model(model) == text, name
        assert parse_model(unparse_model(model)) == model, name


def test_shipped_fixtures_are_canonical(tmp_path):
    for name in ("photon", "note13", "o6"):
        path = tmp_path / "out.oql"
        assert main(["catalog", name, "-o", str(path)]) == 0
        assert path.read_bytes() == (FIXTURES / f"{name}.oql").read_bytes()


def test_named_set_binding():
    text = (FIXTURES / "photon.oql").read_text() + "set AB = {a, b}\n"
    model = parse_model(text)
    assert model.sets["AB"] == di_closure(model.lattice, ("a", "b"))
    again = parse_model(unparse_model(model))
    assert again == model


def test_comments_and_blank_lines_ignored():
    text = "# heading\n\nlattice: 0 1  # inline\norder:\n\n  0 < 1 # cover\n"
    model = parse_model(text)
    assert model.lattice.elements == ("0", "1")


def test_syntax_errors_carry_line_numbers():
    with pytest.raises(DslSyntaxError) as ei:
        parse_model("lattice: 0 1\norder:\n  0 << 1\n")
    assert ei.value.line == 3
    with pytest.raises(DslSyntaxError, match="section header"):
        parse_model("lattice: 0 1\n0 < 1\n")
    with pytest.raises(DslSyntaxError, match="duplicate lattice"):
        parse_model("lattice: 0 1\nlattice: 0 1\n")
    with pytest.raises(DslSyntaxError, match="no lattice"):
        parse_model("order:\n  a < b\n")
    with pytest.raises(DslSyntaxError, match="bad name"):
        parse_model("lattice: 0 a 1\norder:\n  0 < a\n  a < 1\nset S = {a-}\n")


def test_cyclic_order_is_a_semantic_error():
    with pytest.raises(SemanticError) as ei:
        parse_model("lattice: a b\norder:\n  a < b\n  b < a\n")
    assert isinstance(ei.value.cause, NotAPoset)


def test_semantic_errors():
    with pytest.raises(SemanticError, match="unknown element 'c'") as ei:
        parse_model("lattice: a b\norder:\n  a < c\n")
    assert ei.value.line == 3
    with pytest.raises(SemanticError, match="no meet|no join|has no"):
        # two maximal elements: not a lattice
        parse_model("lattice: 0 a b\norder:\n  0 < a\n  0 < b\n")
    with pytest.raises(SemanticError, match="reserved"):
        parse_model("lattice: 0 1\norder:\n  0 < 1\ninduction freeze:\n")
    with pytest.raises(SemanticError, match="duplicate induction"):
        parse_model(
            "lattice: 0 1\norder:\n  0 < 1\ninduction e:\n  1 -> {1}\n"
            "induction e:\n  1 -> {1}\n"
        )
    with pytest.raises(SemanticError, match="duplicate image"):
        parse_model(
            "lattice: 0 1\norder:\n  0 < 1\ninduction e:\n  1 -> {1}\n  1 -> {}\n"
        )
    with pytest.raises(SemanticError, match="reserved"):
        parse_model("lattice: 0 1\norder:\n  0 < 1\nset top = {1}\n")
    with pytest.raises(SemanticError, match="orth section without"):
        parse_model("lattice: 0 1\norder:\n  0 < 1\north:\n  p _|_ q\n")
    with pytest.raises(SemanticError, match="unknown state"):
        parse_model(
            "lattice: 0 1\norder:\n  0 < 1\nstates: p q\north:\n  p _|_ z\n"
        )
    with pytest.raises(SemanticError, match="not an atom"):
        parse_model(
            "lattice: 0 a b 1\norder:\n  0 < a\n  0 < b\n  a < 1\n  b < 1\n"
            "induction e:\n  a -> {a}\n  b -> {b}\n  1 -> {a}\n"
        )
    with pytest.raises(SemanticError, match="not atomistic"):
        parse_model(
            "lattice: 0 m 1\norder:\n  0 < m\n  m < 1\ninduction e:\n  m -> {m}\n"
        )


def test_bad_ortho_assignment_is_semantic():
    with pytest.raises(SemanticError):
        parse_model(
            "lattice: 0 m 1\norder:\n  0 < m\n  m < 1\n"
            "ortho:\n  0 ~ 1\n  m ~ m\n"
        )


# -- formulas ---------------------------------------------------------------------


def test_static_implication_example(photon_model):
    f = parse_formula("dn(a) -> dn(b)", photon_model)
    assert eval_formula(f, photon_model).members == ("0", "b", "a'", "b'")


def test_freeze_reduces_dynamic_to_static(photon_model):
    dyn = eval_formula(parse_formula("dn(a) -[freeze]-> dn(b)", photon_model),
                       photon_model)
    static = eval_formula(parse_formula("dn(a) -> dn(b)", photon_model),
                          photon_model)
    assert dyn == static


def test_trivial_validity(note13_model):
    assert check_valid(parse_formula("top -[e]-> top", note13_model), note13_model)
    assert not check_valid(parse_formula("dn(p)", note13_model), note13_model)


def test_precedence_shapes():
    f = parse_formula("~dn(a) \\/ dn(b) /\\ dn(c)")
    assert f == Join(Neg(Down("a")), Meet(Down("b"), Down("c")))
    f = parse_formula("dn(a) -> dn(b) -> dn(c)")
    assert f == Impl(Down("a"), Impl(Down("b"), Down("c")))
    f = parse_formula("dn(p) (x)[e] dn(q) [e](x) dn(r)")
    assert f == BwdTensor(FwdTensor(Down("p"), Down("q"), "e"), Down("r"), "e")
    f = parse_formula("dn(a) /\\ dn(b) (x)[e] dn(c)")
    assert f == Meet(Down("a"), FwdTensor(Down("b"), Down("c"), "e"))
    f = parse_formula("(dn(a) \\/ dn(b)) /\\ dn(c)")
    assert f == Meet(Join(Down("a"), Down("b")), Down("c"))
    f = parse_formula("dn(a) <-[e]- dn(b) -[f]-> dn(c)")
    assert f == BwdImpl(Down("a"), FwdImpl(Down("b"), Down("c"), "f"), "e")
    assert parse_formula("R({q, r})") == Resolve(Lit(("q", "r")))
    assert parse_formula("{}") == Lit(())
    assert parse_formula("top /\\ bot") == Meet(Top(), Bot())
    assert parse_formula("S") == Named("S")


def test_formula_syntax_errors():
    for bad in ("dn(", "dn(a", "a \\/", "(a", "{a,", "a $ b", "foo(a)",
                "a -[e] b", "a [e] b", ""):
        with pytest.raises(DslSyntaxError):
            parse_formula(bad)
    try:
        parse_formula("dn(a) \\/ $")
    except DslSyntaxError as exc:
        assert exc.line == 1 and exc.col == 10


def test_formula_semantic_resolution(note13_model):
    with pytest.raises(UnknownElement):
        parse_formula("dn(zz)", note13_model)
    with pytest.raises(UnknownElement):
        parse_formula("{p, zz}", note13_model)
    with pytest.raises(UnknownInduction):
        parse_formula("top -[nope]-> top", note13_model)
    with pytest.raises(UnknownSet):
        parse_formula("NOPE", note13_model)
    with pytest.raises(UnknownSet):
        eval_formula(Named("NOPE"), note13_model)


def test_unparse_examples():
    cases = [
        "dn(a) -> dn(b) -> dn(c)",
        "(dn(a) -> dn(b)) -> dn(c)",
        "~(dn(a) \\/ dn(b)) /\\ top",
        "dn(p) (x)[e] (dn(q) (x)[e] dn(r))",
        "R(dn(a) -[e]-> bot) <-[e]- {a, b}",
    ]
    for text in cases:
        ast = parse_formula(text)
        assert unparse_formula(ast) == text
        assert parse_formula(unparse_formula(ast)) == ast


# -- seeded differential: evaluator vs direct module calls -------------------------


def _mirror(f, model):
    lat, dil = model.lattice, model.dil
    ev = lambda g: _mirror(g, model)
    if isinstance(f, Named):
        return model.sets[f.name]
    if isinstance(f, Down):
        return dil.ideal(dil.principal_index(lat.idx(f.element)))
    if isinstance(f, Lit):
        return di_closure(lat, f.elements)
    if isinstance(f, Top):
        return dil.ideal(dil.top_i)
    if isinstance(f, Bot):
        return dil.ideal(dil.bottom_i)
    if isinstance(f, Neg):
        return static_negation(dil, ev(f.arg))
    if isinstance(f, Resolve):
        return resolution(dil, ev(f.arg))
    if isinstance(f, Meet):
        return dil.ideal(dil.index[ev(f.left).mask & ev(f.right).mask])
    if isinstance(f, Join):
        return dil.ideal(dil.index[dil.closure_mask(ev(f.left).mask | ev(f.right).mask)])
    if isinstance(f, Impl):
        return heyting_implication_joinform(dil, ev(f.left), ev(f.right))
    e = model.induction(f.label)
    op = {
        FwdImpl: dyn_impl_fwd, BwdImpl: dyn_impl_bwd,
        FwdTensor: dyn_tensor_fwd, BwdTensor: dyn_tensor_bwd,
    }[type(f)]
    return op(e, ev(f.left), ev(f.right))


def _random_formula(rng, model, depth):
    lat = model.lattice
    if depth == 0:
        k = rng.randrange(6 if model.sets else 5)
        if k == 0:
            return Top()
        if k == 1:
            return Bot()
        if k == 2:
            return Down(rng.choice(lat.elements))
        if k == 3:
            return Lit(tuple(rng.sample(lat.elements, rng.randrange(0, 3))))
        if k == 4:
            return Down(rng.choice(lat.elements))
        return Named(rng.choice(sorted(model.sets)))
    sub = lambda: _random_formula(rng, model, depth - 1)
    label = rng.choice(sorted(model.inductions) + ["freeze"])
    k = rng.randrange(9)
    if k == 0:
        return Neg(sub())
    if k == 1:
        return Resolve(sub())
    if k == 2:
        return Meet(sub(), sub())
    if k == 3:
        return Join(sub(), sub())
    if k == 4:
        return Impl(sub(), sub())
    if k == 5:
        return FwdImpl(sub(), sub(), label)
    if k == 6:
        return BwdImpl(sub(), sub(), label)
    if k == 7:
        return FwdTensor(sub(), sub(), label)
    return BwdTensor(sub(), sub(), label)


def test_thousand_random_formulas_differential(photon_model, note13_model):
    b2 = Model(lattice=make_boolean(2))
    b2.sets["S"] = PropertySet(b2.lattice, ("0", "x1"))
    note13_model.sets["QR"] = di_closure(note13_model.lattice, ("q", "r"))
    models = (photon_model, note13_model, b2)
    rng = random.Random(20260815)
    for i in range(1000):
        model = models[i % len(models)]
        ast = _random_formula(rng, model, rng.randrange(1, 4))
        text = unparse_formula(ast)
        assert parse_formula(text, model) == ast
        got = eval_formula(ast, model)
        want = _mirror(ast, model)
        assert got == want, text
        assert check_valid(ast, model) == want.is_whole


# -- CLI end to end -----------------------------------------------------------------


def _fx(name):
    return str(FIXTURES / f"{name}.oql")


def test_cli_check_exit_codes(capsys):
    assert main(["check", _fx("photon"), "--omod"]) == 0
    assert main(["check", _fx("o6"), "--omod"]) == 1
    out = capsys.readouterr().out
    assert "orthomodular: FAIL" in out and '["x", "y"]' in out
    assert main(["check", _fx("photon")]) == 0
    assert main(["check", _fx("photon"), "--separating"]) == 0
    assert main(["check", _fx("note13"), "--separating"]) == 2
    assert main(["check", _fx("note13"), "--ortho"]) == 2
    assert main(["check", _fx("note13")]) == 0


def test_cli_check_json(capsys):
    assert main(["check", _fx("photon"), "--omod", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["status"] == "pass"
    assert {c["law"] for c in data["checks"]} == {
        "orthomodular", "sasaki-adjunction-iff-orthomodular",
    }
    assert all(set(c) <= {"law", "holds", "witness", "informational"}
               for c in data["checks"])


def test_cli_di(capsys):
    assert main(["di", _fx("photon"), "--count"]) == 0
    assert capsys.readouterr().out.strip() == "16"
    assert main(["di", _fx("photon"), "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["di_count"] == 16 and data["status"] == "pass"
    assert {c["law"] for c in data["checks"]} == {
        "implication-adjunction", "strengthened-entailment",
        "meet-join-distributive",
    }
    assert main(["di", _fx("note13"), "--list", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert len(data["ideals"]) == 16
    assert ["0"] in data["ideals"]


def test_cli_eval(capsys):
    assert main(["eval", _fx("photon"), "--formula", "dn(a) -> dn(b)"]) == 0
    out = capsys.readouterr().out
    assert "members: 0 b a' b'" in out
    assert main(["eval", _fx("note13"), "--formula", "top -[e]-> top",
                 "--valid"]) == 0
    assert main(["eval", _fx("note13"), "--formula", "dn(p)", "--valid"]) == 1
    assert main(["eval", _fx("note13"), "--formula", "dn("]) == 2
    assert main(["eval", _fx("note13"), "--formula", "NOPE"]) == 2
    assert main(["eval", _fx("note13"), "--formula", "dn(p) (x)[zz] dn(q)"]) == 2
    capsys.readouterr()
    assert main(["eval", _fx("note13"), "--formula", "{p} \\/ {q}", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["members"] == ["0", "p", "q"]
    assert data["formula"] == "{p} \\/ {q}"


def test_cli_dyn(capsys):
    assert main(["dyn", _fx("note13"), "--induction", "e"]) == 0
    assert main(["dyn", _fx("note13"), "--induction", "freeze"]) == 0
    assert main(["dyn", _fx("note13"), "--induction", "zz"]) == 2
    capsys.readouterr()
    assert main(["dyn", _fx("note13"), "--induction", "e",
                 "--inverse-compare", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    bylaw = {c["law"]: c for c in data["checks"]}
    assert bylaw["inverse-continuity"]["holds"] is False
    assert bylaw["inverse-continuity"]["witness"] == [["q", "r"], ["r", "s"]]
    assert bylaw["inverse-continuity"]["informational"] is True
    assert bylaw["adjoint-continuity"]["holds"] is True
    assert main(["dyn", _fx("note13"), "--induction", "e",
                 "--inverse-compare", "--strict-inverse"]) == 1
    assert main(["dyn", _fx("note13"), "--induction", "e", "--continuity"]) == 0
    capsys.readouterr()
    assert main(["dyn", _fx("note13"), "--induction", "e", "--adjoint",
                 "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["propagation"]["p"] == "1"
    assert data["causation"]["p"] == "0"


def test_cli_quantale(capsys):
    assert main(["quantale", _fx("note13"), "--induction", "e", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    bylaw = {c["law"]: c for c in data["checks"]}
    assert data["status"] == "pass"
    assert bylaw["product-associative"]["holds"] is False
    assert bylaw["product-associative"]["informational"] is True
    assert bylaw["product-commutative"]["holds"] is True
    assert main(["quantale", _fx("note13"), "--induction", "freeze",
                 "--girard", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["cyclic_dualizing"] == ["{0}"]
    bylaw = {c["law"]: c for c in data["checks"]}
    assert bylaw["de-morgan-product-par"]["holds"] is True
    assert main(["quantale", _fx("note13"), "--induction", "e", "--girard"]) == 1
    assert main(["quantale", _fx("note13"), "--induction", "e",
                 "--direction", "bwd"]) == 0


def test_cli_catalog(tmp_path, capsys):
    assert main(["catalog", "nope"]) == 2
    assert main(["catalog", "boolean3"]) == 0
    text = capsys.readouterr().out
    model = parse_model(text)
    assert len(model.lattice) == 8
    path = tmp_path / "m.oql"
    assert main(["catalog", "mo3", "-o", str(path), "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["path"] == str(path)
    assert parse_model(path.read_text()).lattice == make_mo(3)


def test_cli_cap_and_errors(capsys, monkeypatch, tmp_path):
    assert main(["di", _fx("photon"), "--cap", "4"]) == 2
    err = capsys.readouterr().err
    assert "exceeds cap" in err
    monkeypatch.setenv("OQLKIT_CAP", "4")
    assert main(["di", _fx("photon")]) == 2
    monkeypatch.setenv("OQLKIT_CAP", "banana")
    assert main(["di", _fx("photon")]) == 2
    monkeypatch.delenv("OQLKIT_CAP")
    assert main(["di", str(tmp_path / "missing.oql")]) == 2
    assert main(["di", _fx("photon"), "--json", "--cap", "4"]) == 2
    data = json.loads(capsys.readouterr().out)
    assert data["status"] == "error"
    bad = tmp_path / "bad.oql"
    bad.write_text("lattice: a b\norder:\n  a < b\n  b < a\n")
    assert main(["check", str(bad)]) == 2
    assert main(["nosuchcommand"]) == 2
