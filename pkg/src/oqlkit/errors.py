"""Exception hierarchy.

Every exception carries enough context to point at the offending elements;
witnesses are tuples of element names so they can be printed or serialized
directly.
"""


class OqlError(Exception):
    """Base class for all errors raised by this package."""


class NotAPoset(OqlError):
    """The declared order has a cycle through distinct elements."""

    def __init__(self, a, b):
        self.witness = (a, b)
        super().__init__(f"order is cyclic: {a} <= {b} and {b} <= {a}")


class NotALattice(OqlError):
    """Some pair of elements lacks a meet or a join."""

    def __init__(self, a, b, kind):
        self.witness = (a, b)
        self.kind = kind
        super().__init__(f"pair ({a}, {b}) has no {kind}")


class UnknownElement(OqlError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"unknown element: {name!r}")


class UnknownState(OqlError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"unknown state: {name!r}")


class UnknownInduction(OqlError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"unknown induction: {name!r}")


class UnknownSet(OqlError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"unknown property-set name: {name!r}")


class NotMonotone(OqlError):
    def __init__(self, a, b):
        self.witness = (a, b)
        super().__init__(f"map is not order-preserving on {a} <= {b}")


class NotJoinPreserving(OqlError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"map does not preserve joins; witness {witness}")


class NotMeetPreserving(OqlError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"map does not preserve meets; witness {witness}")


class NotInvolution(OqlError):
    def __init__(self, msg):
        super().__init__(msg)


class NotAntitone(OqlError):
    def __init__(self, a, b):
        self.witness = (a, b)
        super().__init__(
            f"complement is not antitone: {a} <= {b} but complements are not reversed"
        )


class ComplementLawFails(OqlError):
    def __init__(self, a):
        self.witness = (a,)
        super().__init__(f"a /\\ a' != 0 for a = {a}")


class NotAtomistic(OqlError):
    def __init__(self, a=None):
        self.witness = (a,) if a is not None else ()
        detail = f"; {a} is not a join of atoms" if a is not None else ""
        super().__init__("lattice is not atomistic" + detail)


class InvalidImage(OqlError):
    """An induction image is not a valid property set over the lattice."""

    def __init__(self, atom, detail):
        self.atom = atom
        super().__init__(f"image of atom {atom!r} is invalid: {detail}")


class NotAQuantale(OqlError):
    def __init__(self, check):
        self.check = check
        super().__init__(f"quantale law fails: {check.law}, witness {check.witness}")


class NotUnital(OqlError):
    def __init__(self):
        super().__init__("product has no unit element")


class NotDualizing(OqlError):
    def __init__(self, d):
        self.element = d
        super().__init__(f"element {d!r} is not dualizing")


class SizeCapExceeded(OqlError):
    def __init__(self, what, size, cap, hint=""):
        self.size = size
        self.cap = cap
        msg = f"{what}: size {size} exceeds cap {cap}"
        if hint:
            msg += f" ({hint})"
        super().__init__(msg)


class DslSyntaxError(OqlError):
    """Parse failure in a model file or a formula, with position info."""

    def __init__(self, msg, line=None, col=None):
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f" at line {line}"
            if col is not None:
                where += f", column {col}"
        super().__init__(msg + where)


class SemanticError(OqlError):
    """A well-formed file that denotes an ill-formed structure."""

    def __init__(self, msg, line=None, cause=None):
        self.line = line
        self.cause = cause
        where = f" at line {line}" if line is not None else ""
        super().__init__(msg + where)
