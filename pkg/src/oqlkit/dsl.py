"""Model files and the formula language.

Model files are line-oriented and sectioned.  A minimal file declares a
lattice; ortho, states, inductions, and named property sets are optional:

    # comment
    lattice: 0 a b a' b' 1
    order:
      0 < a
      a < 1
    ortho:
      0 ~ 1
      a ~ a'
    states: a b a' b'
    orth:
      a _|_ a'
    induction e:
      a -> {a, b}
    set A = {a, b}

Element names match [A-Za-z0-9_][A-Za-z0-9_']*.  `order` lists generating
pairs (covers suffice), `ortho` lists complement pairs each way once,
`orth` lists orthogonal state pairs, induction lines give one image per
atom, and `set` binds a name to the least distributive ideal containing the
listed elements.  The induction name `freeze` is reserved for the built-in
identity action.

Formulas denote distributive ideals.  Grammar, loosest to tightest:

    expr    := or ( ("->" | "-[" NAME "]->" | "<-[" NAME "]-") expr )?
    or      := and ( "\\/" and )*
    and     := tens ( "/\\" tens )*
    tens    := unary ( ("(x)[" NAME "]" | "[" NAME "](x)") unary )*
    unary   := "~" unary | primary
    primary := "(" expr ")" | "{" [NAME ("," NAME)*] "}" | "top" | "bot"
             | "dn" "(" NAME ")" | "R" "(" expr ")" | NAME

Implications are right-associative, tensors left-associative.  `dn(a)` is
the principal ideal of an element, bare names refer to `set` bindings,
`{a, b}` closes the listed elements, `top`/`bot` are the extreme ideals,
`~` the intuitionistic negation, and `R` the resolution collapse.  The
labeled forms route through the named induction: `-[e]->` and `<-[e]-` are
the forward and backward dynamic implications, `(x)[e]` and `[e](x)` the
forward and backward tensors.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable

from .caps import Caps, get_caps
from .dynamics import (
    Induction,
    dyn_impl_bwd,
    dyn_impl_fwd,
    dyn_tensor_bwd,
    dyn_tensor_fwd,
    freeze,
    make_induction,
)
from .errors import (
    DslSyntaxError,
    OqlError,
    SemanticError,
    SizeCapExceeded,
    UnknownElement,
    UnknownInduction,
    UnknownSet,
)
from .ideals import (
    DILattice,
    PropertySet,
    enumerate_di,
    heyting_implication,
    resolution,
    static_negation,
)
from .order import FiniteLattice, build_lattice, cover_pairs
from .ortho import OrthoLattice, StateSpace, attach_ortho

__all__ = [
    "Model",
    "parse_model",
    "unparse_model",
    "parse_formula",
    "unparse_formula",
    "eval_formula",
    "check_valid",
    "Formula",
    "Named",
    "Down",
    "Lit",
    "Top",
    "Bot",
    "Neg",
    "Resolve",
    "Meet",
    "Join",
    "Impl",
    "FwdImpl",
    "BwdImpl",
    "FwdTensor",
    "BwdTensor",
]

_NAME = r"[A-Za-z0-9_][A-Za-z0-9_']*"
_NAME_RE = re.compile(rf"{_NAME}\Z")
_RESERVED_SETS = frozenset(("top", "bot", "dn", "R"))


# -- models ---------------------------------------------------------------------


@dataclass(eq=True)
class Model:
    """A parsed model: the lattice (with ortho when declared), the optional
    state space, declared inductions, and named ideal bindings."""

    lattice: FiniteLattice
    space: StateSpace | None = None
    inductions: dict[str, Induction] = field(default_factory=dict)
    sets: dict[str, PropertySet] = field(default_factory=dict)
    caps: Caps = field(default_factory=get_caps, compare=False)
    _freeze: Induction | None = field(default=None, compare=False, repr=False)

    @property
    def dil(self) -> DILattice:
        return enumerate_di(self.lattice, caps=self.caps)

    def induction(self, label: str) -> Induction:
        """Resolve an induction label; `freeze` is always available."""
        got = self.inductions.get(label)
        if got is not None:
            return got
        if label == "freeze":
            if self._freeze is None:
                self._freeze = freeze(self.lattice)
            return self._freeze
        raise UnknownInduction(label)


_ORDER_RE = re.compile(rf"({_NAME})\s*<\s*({_NAME})\Z")
_ORTHO_RE = re.compile(rf"({_NAME})\s*~\s*({_NAME})\Z")
_ORTH_RE = re.compile(rf"({_NAME})\s*_\|_\s*({_NAME})\Z")
_IMG_RE = re.compile(rf"({_NAME})\s*->\s*\{{(.*)\}}\Z")
_INDUCTION_RE = re.compile(rf"induction\s+({_NAME})\s*:\Z")
_SET_RE = re.compile(rf"set\s+({_NAME})\s*=\s*\{{(.*)\}}\Z")


def _names_in_braces(body: str, ln: int) -> tuple[str, ...]:
    body = body.strip()
    if not body:
        return ()
    out = []
    for part in body.split(","):
        name = part.strip()
        if not _NAME_RE.match(name):
            raise DslSyntaxError(f"bad name {name!r} in braces", line=ln)
        out.append(name)
    return tuple(out)


def _name_list(body: str, ln: int) -> tuple[str, ...]:
    names = tuple(body.split())
    for name in names:
        if not _NAME_RE.match(name):
            raise DslSyntaxError(f"bad element name {name!r}", line=ln)
    return names


def parse_model(text: str, caps: Caps | None = None) -> Model:
    """Parse a model file.  Syntax problems raise DslSyntaxError with the
    line; files that parse but denote broken structures raise SemanticError
    wrapping the structural error."""
    caps = caps or get_caps()
    elements: tuple[str, ...] | None = None
    order: list[tuple[int, str, str]] = []
    ortho: list[tuple[int, str, str]] = []
    states: tuple[str, ...] | None = None
    orth: list[tuple[int, str, str]] = []
    inductions: list[tuple[int, str, dict[str, tuple[str, ...]]]] = []
    sets: list[tuple[int, str, tuple[str, ...]]] = []
    section: str | None = None
    section_line = 0

    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("lattice:"):
            if elements is not None:
                raise DslSyntaxError("duplicate lattice section", line=ln)
            elements = _name_list(line[len("lattice:"):], ln)
            if len(elements) > caps.max_elements:
                raise SizeCapExceeded("model lattice", len(elements),
                                      caps.max_elements)
            section = None
            continue
        if line.startswith("states:"):
            if states is not None:
                raise DslSyntaxError("duplicate states section", line=ln)
            states = _name_list(line[len("states:"):], ln)
            section = None
            continue
        if line in ("order:", "ortho:", "orth:"):
            section, section_line = line[:-1], ln
            continue
        m = _INDUCTION_RE.match(line)
        if m:
            name = m.group(1)
            if name == "freeze":
                raise SemanticError("induction name 'freeze' is reserved", line=ln)
            if any(name == nm for _, nm, _ in inductions):
                raise SemanticError(f"duplicate induction {name!r}", line=ln)
            inductions.append((ln, name, {}))
            section = "induction"
            continue
        m = _SET_RE.match(line)
        if m:
            name = m.group(1)
            if name in _RESERVED_SETS:
                raise SemanticError(f"set name {name!r} is reserved", line=ln)
            if any(name == nm for _, nm, _ in sets):
                raise SemanticError(f"duplicate set {name!r}", line=ln)
            sets.append((ln, name, _names_in_braces(m.group(2), ln)))
            section = None
            continue
        if section == "order":
            m = _ORDER_RE.match(line)
            if not m:
                raise DslSyntaxError(f"expected 'a < b', found {line!r}", line=ln)
            order.append((ln, m.group(1), m.group(2)))
        elif section == "ortho":
            m = _ORTHO_RE.match(line)
            if not m:
                raise DslSyntaxError(f"expected 'a ~ b', found {line!r}", line=ln)
            ortho.append((ln, m.group(1), m.group(2)))
        elif section == "orth":
            m = _ORTH_RE.match(line)
            if not m:
                raise DslSyntaxError(f"expected 'p _|_ q', found {line!r}", line=ln)
            orth.append((ln, m.group(1), m.group(2)))
        elif section == "induction":
            m = _IMG_RE.match(line)
            if not m:
                raise DslSyntaxError(
                    f"expected 'atom -> {{...}}', found {line!r}", line=ln
                )
            _, _, images = inductions[-1]
            atom = m.group(1)
            if atom in images:
                raise SemanticError(f"duplicate image for atom {atom!r}", line=ln)
            images[atom] = _names_in_braces(m.group(2), ln)
        else:
            raise DslSyntaxError(f"expected a section header, found {line!r}", line=ln)

    if elements is None:
        raise DslSyntaxError("model has no lattice section")
    declared = set(elements)
    for ln, a, b in order:
        for x in (a, b):
            if x not in declared:
                raise SemanticError(f"unknown element {x!r}", line=ln)
    try:
        lat: FiniteLattice = build_lattice(elements, [(a, b) for _, a, b in order])
    except OqlError as exc:
        raise SemanticError(str(exc), line=section_line, cause=exc) from exc

    if ortho:
        for ln, a, b in ortho:
            for x in (a, b):
                if x not in declared:
                    raise SemanticError(f"unknown element {x!r}", line=ln)
        try:
            lat = attach_ortho(lat, [(a, b) for _, a, b in ortho])
        except OqlError as exc:
            raise SemanticError(str(exc), cause=exc) from exc

    space = None
    if states is not None:
        known = set(states)
        for ln, a, b in orth:
            for x in (a, b):
                if x not in known:
                    raise SemanticError(f"unknown state {x!r}", line=ln)
        try:
            space = StateSpace(states, [(a, b) for _, a, b in orth])
        except OqlError as exc:
            raise SemanticError(str(exc), cause=exc) from exc
    elif orth:
        raise SemanticError(
            "orth section without a states section", line=orth[0][0]
        )

    model = Model(lattice=lat, space=space, caps=caps)
    for ln, name, images in inductions:
        for atom, img in images.items():
            for x in (atom, *img):
                if x not in declared:
                    raise SemanticError(f"unknown element {x!r}", line=ln)
        try:
            model.inductions[name] = make_induction(lat, name, images, caps=caps)
        except OqlError as exc:
            raise SemanticError(str(exc), line=ln, cause=exc) from exc
    for ln, name, members in sets:
        for x in members:
            if x not in declared:
                raise SemanticError(f"unknown element {x!r}", line=ln)
        model.sets[name] = PropertySet._trusted(
            lat, model.dil.closure_mask(lat.mask_of(members))
        )
    return model


def _ordered(lat: FiniteLattice, names: Iterable[str]) -> tuple[str, ...]:
    pos = {x: i for i, x in enumerate(lat.elements)}
    return tuple(sorted(names, key=pos.__getitem__))


def unparse_model(model: Model) -> str:
    """Canonical text for a model: covers in table order, each ortho orbit
    once, induction atoms and set members in element order.  parse of the
    output reproduces the model."""
    lat = model.lattice
    out = ["lattice: " + " ".join(lat.elements)]
    covers = cover_pairs(lat)
    if covers:
        out.append("order:")
        out.extend(f"  {a} < {b}" for a, b in covers)
    if isinstance(lat, OrthoLattice):
        out.append("ortho:")
        out.extend(
            f"  {lat.elements[i]} ~ {lat.elements[lat.ortho[i]]}"
            for i in range(len(lat))
            if i <= lat.ortho[i]
        )
    if model.space is not None:
        sp = model.space
        out.append("states: " + " ".join(sp.states))
        pairs = [
            (sp.states[i], sp.states[j])
            for i in range(len(sp))
            for j in range(i + 1, len(sp))
            if sp.perp_mask(1 << i) >> j & 1
        ]
        if pairs:
            out.append("orth:")
            out.extend(f"  {a} _|_ {b}" for a, b in pairs)
    bottom = lat.elements[lat.bottom_i]
    for name, e in model.inductions.items():
        out.append(f"induction {name}:")
        for ai in lat.atom_indices():
            atom = lat.elements[ai]
            # the image is a closed ideal; drop its bottom member, parsing
            # closes the rest right back
            members = [x for x in e.atom_image(atom).members if x != bottom]
            out.append(f"  {atom} -> {{{', '.join(_ordered(lat, members))}}}")
    for name, ps in model.sets.items():
        body = ", ".join(_ordered(lat, ps.members))
        out.append(f"set {name} = {{{body}}}")
    return "\n".join(out) + "\n"


# -- formulas ---------------------------------------------------------------------


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class Named(Formula):
    name: str


@dataclass(frozen=True)
class Down(Formula):
    element: str


@dataclass(frozen=True)
class Lit(Formula):
    elements: tuple[str, ...]


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class Neg(Formula):
    arg: Formula


@dataclass(frozen=True)
class Resolve(Formula):
    arg: Formula


@dataclass(frozen=True)
class Meet(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Join(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Impl(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class FwdImpl(Formula):
    left: Formula
    right: Formula
    label: str


@dataclass(frozen=True)
class BwdImpl(Formula):
    left: Formula
    right: Formula
    label: str


@dataclass(frozen=True)
class FwdTensor(Formula):
    left: Formula
    right: Formula
    label: str


@dataclass(frozen=True)
class BwdTensor(Formula):
    left: Formula
    right: Formula
    label: str


_TOKEN_RE = re.compile(
    r"""
      (?P<WS>\s+)
    | (?P<TENSF>\(x\)\[)
    | (?P<TENSBC>\]\(x\))
    | (?P<IMPFC>\]->)
    | (?P<IMPBO><-\[)
    | (?P<IMPBC>\]-)
    | (?P<IMPFO>-\[)
    | (?P<ARROW>->)
    | (?P<JOIN>\\/)
    | (?P<MEET>/\\)
    | (?P<NEG>~)
    | (?P<LBRACK>\[)
    | (?P<RBRACK>\])
    | (?P<LBRACE>\{)
    | (?P<RBRACE>\})
    | (?P<COMMA>,)
    | (?P<LPAREN>\()
    | (?P<RPAREN>\))
    | (?P<NAME>[A-Za-z0-9_][A-Za-z0-9_']*)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    pos: int


def _lex(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            line = text.count("\n", 0, pos) + 1
            col = pos - (text.rfind("\n", 0, pos) + 1) + 1
            raise DslSyntaxError(
                f"unexpected character {text[pos]!r}", line=line, col=col
            )
        if m.lastgroup != "WS":
            toks.append(_Tok(m.lastgroup, m.group(), pos))
        pos = m.end()
    toks.append(_Tok("EOF", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _lex(text)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def next(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, expected: str) -> DslSyntaxError:
        tok = self.peek()
        line = self.text.count("\n", 0, tok.pos) + 1
        col = tok.pos - (self.text.rfind("\n", 0, tok.pos) + 1) + 1
        found = repr(tok.text) if tok.kind != "EOF" else "end of input"
        return DslSyntaxError(f"expected {expected}, found {found}", line, col)

    def expect(self, kind: str, what: str) -> _Tok:
        if self.peek().kind != kind:
            raise self.fail(what)
        return self.next()

    def parse(self) -> Formula:
        f = self.expr()
        if self.peek().kind != "EOF":
            raise self.fail("end of formula")
        return f

    def expr(self) -> Formula:
        left = self.join()
        kind = self.peek().kind
        if kind == "ARROW":
            self.next()
            return Impl(left, self.expr())
        if kind == "IMPFO":
            self.next()
            label = self.expect("NAME", "induction name").text
            self.expect("IMPFC", "']->'")
            return FwdImpl(left, self.expr(), label)
        if kind == "IMPBO":
            self.next()
            label = self.expect("NAME", "induction name").text
            self.expect("IMPBC", "']-'")
            return BwdImpl(left, self.expr(), label)
        return left

    def join(self) -> Formula:
        left = self.meet()
        while self.peek().kind == "JOIN":
            self.next()
            left = Join(left, self.meet())
        return left

    def meet(self) -> Formula:
        left = self.tensor()
        while self.peek().kind == "MEET":
            self.next()
            left = Meet(left, self.tensor())
        return left

    def tensor(self) -> Formula:
        left = self.unary()
        while True:
            kind = self.peek().kind
            if kind == "TENSF":
                self.next()
                label = self.expect("NAME", "induction name").text
                self.expect("RBRACK", "']'")
                left = FwdTensor(left, self.unary(), label)
            elif kind == "LBRACK":
                self.next()
                label = self.expect("NAME", "induction name").text
                self.expect("TENSBC", "'](x)'")
                left = BwdTensor(left, self.unary(), label)
            else:
                return left

    def unary(self) -> Formula:
        if self.peek().kind == "NEG":
            self.next()
            return Neg(self.unary())
        return self.primary()

    def primary(self) -> Formula:
        tok = self.peek()
        if tok.kind == "LPAREN":
            self.next()
            f = self.expr()
            self.expect("RPAREN", "')'")
            return f
        if tok.kind == "LBRACE":
            self.next()
            names = []
            if self.peek().kind == "NAME":
                names.append(self.next().text)
                while self.peek().kind == "COMMA":
                    self.next()
                    names.append(self.expect("NAME", "element name").text)
            self.expect("RBRACE", "'}'")
            return Lit(tuple(names))
        if tok.kind == "NAME":
            self.next()
            if tok.text == "top":
                return Top()
            if tok.text == "bot":
                return Bot()
            if tok.text == "dn":
                self.expect("LPAREN", "'('")
                name = self.expect("NAME", "element name").text
                self.expect("RPAREN", "')'")
                return Down(name)
            if tok.text == "R":
                self.expect("LPAREN", "'('")
                f = self.expr()
                self.expect("RPAREN", "')'")
                return Resolve(f)
            if self.peek().kind == "LPAREN":
                raise self.fail("'dn' or 'R' before '('")
            return Named(tok.text)
        raise self.fail("a formula")


def parse_formula(text: str, model: Model | None = None) -> Formula:
    """Parse a formula; with a model, also resolve every name now so
    undeclared elements, sets, and induction labels fail at parse time."""
    f = _Parser(text).parse()
    if model is not None:
        _resolve(f, model)
    return f


def _resolve(f: Formula, model: Model) -> None:
    lat = model.lattice
    if isinstance(f, Named):
        if f.name not in model.sets:
            raise UnknownSet(f.name)
    elif isinstance(f, Down):
        lat.idx(f.element)
    elif isinstance(f, Lit):
        for x in f.elements:
            lat.idx(x)
    elif isinstance(f, (Neg, Resolve)):
        _resolve(f.arg, model)
    elif isinstance(f, (Meet, Join, Impl)):
        _resolve(f.left, model)
        _resolve(f.right, model)
    elif isinstance(f, (FwdImpl, BwdImpl, FwdTensor, BwdTensor)):
        model.induction(f.label)
        _resolve(f.left, model)
        _resolve(f.right, model)


def eval_formula(f: Formula, model: Model) -> PropertySet:
    """Evaluate to a distributive ideal of the model's lattice."""
    lat = model.lattice
    dil = model.dil
    if isinstance(f, Named):
        got = model.sets.get(f.name)
        if got is None:
            raise UnknownSet(f.name)
        return got
    if isinstance(f, Down):
        return PropertySet._trusted(lat, lat.down[lat.idx(f.element)])
    if isinstance(f, Lit):
        return PropertySet._trusted(lat, dil.closure_mask(lat.mask_of(f.elements)))
    if isinstance(f, Top):
        return dil.ideal(dil.top_i)
    if isinstance(f, Bot):
        return dil.ideal(dil.bottom_i)
    if isinstance(f, Neg):
        return static_negation(dil, eval_formula(f.arg, model))
    if isinstance(f, Resolve):
        return resolution(dil, eval_formula(f.arg, model))
    if isinstance(f, Meet):
        a = eval_formula(f.left, model)
        b = eval_formula(f.right, model)
        return PropertySet._trusted(lat, a.mask & b.mask)
    if isinstance(f, Join):
        a = eval_formula(f.left, model)
        b = eval_formula(f.right, model)
        return PropertySet._trusted(lat, dil.closure_mask(a.mask | b.mask))
    if isinstance(f, Impl):
        return heyting_implication(
            dil, eval_formula(f.left, model), eval_formula(f.right, model)
        )
    if isinstance(f, FwdImpl):
        e = model.induction(f.label)
        return dyn_impl_fwd(e, eval_formula(f.left, model), eval_formula(f.right, model))
    if isinstance(f, BwdImpl):
        e = model.induction(f.label)
        return dyn_impl_bwd(e, eval_formula(f.left, model), eval_formula(f.right, model))
    if isinstance(f, FwdTensor):
        e = model.induction(f.label)
        return dyn_tensor_fwd(
            e, eval_formula(f.left, model), eval_formula(f.right, model)
        )
    if isinstance(f, BwdTensor):
        e = model.induction(f.label)
        return dyn_tensor_bwd(
            e, eval_formula(f.left, model), eval_formula(f.right, model)
        )
    raise TypeError(f"not a formula node: {f!r}")


def check_valid(f: Formula, model: Model) -> bool:
    """A formula is valid when it denotes the whole lattice."""
    return eval_formula(f, model).is_whole


# rendering: parenthesize only where precedence demands it
_IMPL_LEVEL, _JOIN_LEVEL, _MEET_LEVEL, _TENS_LEVEL, _UNARY_LEVEL = 0, 1, 2, 3, 4


def unparse_formula(f: Formula) -> str:
    """Canonical text; parse of the output gives back the same tree."""
    return _render(f, 0)


def _render(f: Formula, level: int) -> str:
    if isinstance(f, Named):
        return f.name
    if isinstance(f, Down):
        return f"dn({f.element})"
    if isinstance(f, Lit):
        return "{" + ", ".join(f.elements) + "}"
    if isinstance(f, Top):
        return "top"
    if isinstance(f, Bot):
        return "bot"
    if isinstance(f, Neg):
        return _wrap("~" + _render(f.arg, _UNARY_LEVEL), _UNARY_LEVEL, level)
    if isinstance(f, Resolve):
        return f"R({_render(f.arg, 0)})"
    if isinstance(f, (Join, Meet)):
        own = _JOIN_LEVEL if isinstance(f, Join) else _MEET_LEVEL
        op = "\\/" if isinstance(f, Join) else "/\\"
        s = f"{_render(f.left, own)} {op} {_render(f.right, own + 1)}"
        return _wrap(s, own, level)
    if isinstance(f, (Impl, FwdImpl, BwdImpl)):
        if isinstance(f, Impl):
            op = "->"
        elif isinstance(f, FwdImpl):
            op = f"-[{f.label}]->"
        else:
            op = f"<-[{f.label}]-"
        s = f"{_render(f.left, _IMPL_LEVEL + 1)} {op} {_render(f.right, _IMPL_LEVEL)}"
        return _wrap(s, _IMPL_LEVEL, level)
    if isinstance(f, (FwdTensor, BwdTensor)):
        op = f"(x)[{f.label}]" if isinstance(f, FwdTensor) else f"[{f.label}](x)"
        s = f"{_render(f.left, _TENS_LEVEL)} {op} {_render(f.right, _TENS_LEVEL + 1)}"
        return _wrap(s, _TENS_LEVEL, level)
    raise TypeError(f"not a formula node: {f!r}")


def _wrap(s: str, own: int, context: int) -> str:
    return f"({s})" if own < context else s
