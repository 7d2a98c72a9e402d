"""Command-line interface.

Subcommands: check (structural verdicts), di (ideal enumeration and Heyting
laws), eval (formula evaluation), dyn (induction laws and tables), quantale
(tensor laws and Girard analysis), catalog (emit built-in fixtures).

Exit status: 0 all requested checks pass, 1 some law fails (or --valid on an
invalid formula, or --strict-inverse on a discontinuous inverse), 2 bad
input (unreadable file, parse error, unknown name, bad flag combination).
Every subcommand takes --json for a machine-readable report with stable
{law, holds, witness?} entries, and --cap N to override the element cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from .caps import Caps, get_caps
from .catalog import Note13Bundle, entry, load, photon_state_space
from .dsl import Model, eval_formula, parse_formula, unparse_formula, parse_model, unparse_model
from .dynamics import (
    check_continuity,
    compare_inverse_vs_adjoint,
)
from .errors import (
    DslSyntaxError,
    NotAQuantale,
    NotUnital,
    OqlError,
    SemanticError,
    SizeCapExceeded,
    UnknownElement,
    UnknownInduction,
    UnknownSet,
    UnknownState,
)
from .ideals import verify_heyting
from .order import is_atomistic
from .ortho import OrthoLattice, de_morgan_check, is_orthomodular, sasaki_equiv_orthomodular
from .quantale import (
    find_cyclic_dualizing,
    girard_identities,
    is_girard,
    quantale_of_induction,
    tensor_laws,
    verify_commutative,
)
from .report import Check, Report, _plain

_INPUT_ERRORS = (
    DslSyntaxError,
    SemanticError,
    UnknownElement,
    UnknownState,
    UnknownInduction,
    UnknownSet,
    SizeCapExceeded,
    OSError,
    ValueError,
)


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        caps = get_caps(args.cap)
        return args.func(args, caps)
    except _INPUT_ERRORS as exc:
        return _error(args, str(exc), code=2)
    except OqlError as exc:
        # a law failed mid-operation (non-quantale product, missing unit, ...)
        return _error(args, str(exc), code=1)


def cli() -> None:
    sys.exit(main())


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--cap", type=int, default=None, metavar="N",
                        help="override the element cap")

    p = argparse.ArgumentParser(prog="oqlkit", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common],
                       help="structural checks on a model file")
    c.add_argument("file")
    c.add_argument("--ortho", action="store_true",
                   help="orthocomplementation and De Morgan")
    c.add_argument("--omod", action="store_true",
                   help="orthomodularity and the Sasaki equivalence")
    c.add_argument("--atomistic", action="store_true")
    c.add_argument("--separating", action="store_true",
                   help="every singleton biorthogonally closed")
    c.set_defaults(func=_cmd_check)

    d = sub.add_parser("di", parents=[common],
                       help="distributive ideals and Heyting laws")
    d.add_argument("file")
    d.add_argument("--count", action="store_true", help="print the ideal count only")
    d.add_argument("--list", action="store_true", help="list every ideal")
    d.set_defaults(func=_cmd_di)

    e = sub.add_parser("eval", parents=[common], help="evaluate a formula")
    e.add_argument("file")
    e.add_argument("--formula", required=True)
    e.add_argument("--valid", action="store_true",
                   help="exit 0 iff the formula denotes the whole lattice")
    e.set_defaults(func=_cmd_eval)

    y = sub.add_parser("dyn", parents=[common], help="induction laws and tables")
    y.add_argument("file")
    y.add_argument("--induction", required=True, metavar="NAME")
    y.add_argument("--continuity", action="store_true",
                   help="join-form and resolution-form continuity")
    y.add_argument("--adjoint", action="store_true",
                   help="print the element-level propagation/causation tables")
    y.add_argument("--inverse-compare", action="store_true",
                   help="relational inverse vs the order-theoretic adjoint")
    y.add_argument("--strict-inverse", action="store_true",
                   help="treat inverse mismatches as failures")
    y.set_defaults(func=_cmd_dyn)

    q = sub.add_parser("quantale", parents=[common],
                       help="tensor laws over the ideal completion")
    q.add_argument("file")
    q.add_argument("--induction", required=True, metavar="NAME")
    q.add_argument("--direction", choices=("fwd", "bwd"), default="fwd")
    q.add_argument("--girard", action="store_true",
                   help="cyclic dualizing elements and the Girard identities")
    q.set_defaults(func=_cmd_quantale)

    g = sub.add_parser("catalog", parents=[common], help="emit a built-in fixture")
    g.add_argument("name")
    g.add_argument("-o", "--output", default=None, metavar="FILE")
    g.set_defaults(func=_cmd_catalog)
    return p


# -- output plumbing -----------------------------------------------------------


def _error(args: argparse.Namespace, msg: str, code: int) -> int:
    if getattr(args, "json", False):
        print(json.dumps({"command": args.command, "status": "error", "error": msg}))
    else:
        print(f"error: {msg}", file=sys.stderr)
    return code


def _emit(args: argparse.Namespace, payload: dict[str, Any],
          report: Report | None) -> int:
    if report is not None:
        payload.update(report.as_dict())
    else:
        payload.setdefault("status", "pass")
    if args.json:
        print(json.dumps(payload))
    else:
        for key, val in payload.items():
            if key == "checks":
                for c in report.checks:
                    print(_check_line(c))
            elif key == "status":
                print(f"status: {val}")
            else:
                print(f"{key}: {_text(val)}")
    return 0 if payload["status"] == "pass" else 1


def _check_line(c: Check) -> str:
    if c.required:
        verdict = "pass" if c.holds else "FAIL"
    else:
        verdict = ("yes" if c.holds else "no") + " (informational)"
    line = f"{c.law}: {verdict}"
    if c.witness is not None and not c.holds:
        line += f"  witness={json.dumps(_plain(c.witness))}"
    return line


def _text(val: Any) -> str:
    if isinstance(val, (list, tuple, dict)):
        return json.dumps(_plain(val) if isinstance(val, (list, tuple)) else val)
    return str(val)


def _load(path: str, caps: Caps) -> Model:
    with open(path, encoding="utf-8") as fh:
        return parse_model(fh.read(), caps=caps)


# -- subcommands ----------------------------------------------------------------


def _cmd_check(args: argparse.Namespace, caps: Caps) -> int:
    model = _load(args.file, caps)
    lat = model.lattice
    has_ortho = isinstance(lat, OrthoLattice)
    explicit = args.ortho or args.omod or args.atomistic or args.separating
    want_ortho = args.ortho or (not explicit and has_ortho)
    want_omod = args.omod or (not explicit and has_ortho)
    want_sep = args.separating or (not explicit and model.space is not None)
    want_atomistic = args.atomistic or not explicit

    checks: list[Check] = []
    if want_ortho or want_omod:
        if not has_ortho:
            return _error(args, "model has no ortho section", code=2)
    if want_ortho:
        checks.append(Check("orthocomplementation", True))
        checks.append(de_morgan_check(lat))
    if want_omod:
        checks.append(is_orthomodular(lat))
        checks.append(
            sasaki_equiv_orthomodular(lat)["sasaki-adjunction-iff-orthomodular"]
        )
    if want_atomistic:
        witness = next(
            (
                (lat.elements[i],)
                for i in range(len(lat))
                if lat.join_mask(lat.atoms_below(i)) != i
            ),
            None,
        )
        checks.append(Check("atomistic", is_atomistic(lat), witness))
    if want_sep:
        if model.space is None:
            return _error(args, "model has no states section", code=2)
        sp = model.space
        witness = next(
            (
                (sp.states[i],)
                for i in range(len(sp))
                if sp.perp_mask(sp.perp_mask(1 << i)) != 1 << i
            ),
            None,
        )
        checks.append(Check("separating", witness is None, witness))
    payload: dict[str, Any] = {"command": "check", "file": args.file,
                               "elements": len(lat)}
    return _emit(args, payload, Report(tuple(checks)))


def _cmd_di(args: argparse.Namespace, caps: Caps) -> int:
    model = _load(args.file, caps)
    dil = model.dil
    payload: dict[str, Any] = {"command": "di", "file": args.file}
    if args.count and not args.list:
        if args.json:
            print(json.dumps({**payload, "status": "pass", "di_count": len(dil)}))
        else:
            print(len(dil))
        return 0
    payload["di_count"] = len(dil)
    if args.list:
        payload["ideals"] = [list(dil.ideal(i).members) for i in range(len(dil))]
        return _emit(args, payload, None)
    return _emit(args, payload, verify_heyting(dil))


def _cmd_eval(args: argparse.Namespace, caps: Caps) -> int:
    model = _load(args.file, caps)
    ast = parse_formula(args.formula, model)
    value = eval_formula(ast, model)
    valid = value.is_whole
    payload: dict[str, Any] = {
        "command": "eval",
        "formula": unparse_formula(ast),
        "members": list(value.members),
        "valid": valid,
    }
    if args.json:
        print(json.dumps({**payload, "status": "pass" if not args.valid or valid
                          else "fail"}))
    else:
        print("members:", " ".join(value.members) if value.members else "(empty)")
        print("valid:", "yes" if valid else "no")
    return 0 if not args.valid or valid else 1


def _cmd_dyn(args: argparse.Namespace, caps: Caps) -> int:
    model = _load(args.file, caps)
    e = model.induction(args.induction)
    payload: dict[str, Any] = {"command": "dyn", "file": args.file,
                               "induction": args.induction}
    sections = args.continuity or args.adjoint or args.inverse_compare
    checks: list[Check] = []
    if not sections:
        checks.extend(e.verify().checks)
    if args.continuity:
        checks.extend(check_continuity(e).checks)
    if args.adjoint:
        lat = e.lattice
        payload["propagation"] = {
            a: lat.elements[e.prop_elem[i]] for i, a in enumerate(lat.elements)
        }
        payload["causation"] = {
            a: lat.elements[e.caus_elem[i]] for i, a in enumerate(lat.elements)
        }
    if args.inverse_compare:
        cmp = compare_inverse_vs_adjoint(e)
        for c in cmp.checks:
            if args.strict_inverse and c.law in (
                "inverse-equals-adjoint", "inverse-continuity"
            ):
                c = Check(c.law, c.holds, c.witness, required=True)
            checks.append(c)
    return _emit(args, payload, Report(tuple(checks)))


def _cmd_quantale(args: argparse.Namespace, caps: Caps) -> int:
    model = _load(args.file, caps)
    e = model.induction(args.induction)
    rep = tensor_laws(e, args.direction)
    q = quantale_of_induction(e, args.direction)
    payload: dict[str, Any] = {
        "command": "quantale",
        "file": args.file,
        "induction": args.induction,
        "direction": args.direction,
        "unit": q.unit,
        "commutative": verify_commutative(q),
    }
    checks = list(rep.checks)
    if args.girard:
        try:
            dualizing = find_cyclic_dualizing(q)
            girard, d = is_girard(q)
        except NotAQuantale as exc:
            checks.append(Check("girard-analysis-applicable", False,
                                (exc.check.law,)))
            return _emit(args, payload, Report(tuple(checks)))
        except NotUnital:
            return _error(
                args, "product has no unit; Girard analysis needs one", code=2
            )
        payload["cyclic_dualizing"] = list(dualizing)
        checks.append(Check("girard-quantale", girard, required=False))
        if girard:
            checks.extend(girard_identities(q, d).checks)
    return _emit(args, payload, Report(tuple(checks)))


def _cmd_catalog(args: argparse.Namespace, caps: Caps) -> int:
    entry(args.name)  # unknown names fail before any building
    try:
        obj = load(args.name)
    except AssertionError as exc:
        return _error(args, str(exc), code=1)
    if isinstance(obj, Note13Bundle):
        model = Model(lattice=obj.lattice, inductions={"e": obj.induction}, caps=caps)
    elif args.name in ("photon", "mo2"):
        model = Model(lattice=obj, space=photon_state_space(), caps=caps)
    else:
        model = Model(lattice=obj, caps=caps)
    text = unparse_model(model)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        if args.json:
            print(json.dumps({"command": "catalog", "status": "pass",
                              "name": args.name, "path": args.output}))
        return 0
    if args.json:
        print(json.dumps({"command": "catalog", "status": "pass",
                          "name": args.name, "model": text}))
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
