"""oqlkit: a finite-model engine for operational quantum logic.

Property lattices with orthocomplementation, state spaces with biorthogonal
closure, distributive-ideal (Heyting) completions, induction dynamics via
Galois adjoints, quantale and linear-logic semantics, a small model DSL, and
a command-line front end.  Every law the package claims is checked
exhaustively on the finite models it builds.
"""

__version__ = "0.1.0"

from ._kernels import BACKEND as KERNEL_BACKEND
from .caps import Caps, get_caps
from .catalog import entry, load, names, self_test_all
from .dsl import (
    Model,
    check_valid,
    eval_formula,
    parse_formula,
    parse_model,
    unparse_formula,
    unparse_model,
)
from .dynamics import (
    Induction,
    InductionAlgebra,
    causate,
    check_continuity,
    choice,
    compare_inverse_vs_adjoint,
    concat,
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
from .errors import OqlError
from .ideals import (
    DILattice,
    PropertySet,
    di_atom_iso,
    di_closure,
    enumerate_di,
    heyting_implication,
    resolution,
    static_negation,
    verify_heyting,
)
from .order import FiniteLattice, build_lattice, is_atomistic, is_distributive_lattice
from .ortho import (
    OrthoLattice,
    StateSpace,
    attach_ortho,
    cartan_map,
    closed_set_family,
    de_morgan_check,
    is_orthomodular,
    is_separating,
    lattice_from_closure_system,
    sasaki_equiv_orthomodular,
    sasaki_hook,
    sasaki_projection,
)
from .quantale import (
    FiniteQuantale,
    find_cyclic_dualizing,
    girard_identities,
    is_girard,
    linear_negations,
    locale_of,
    module_action_check,
    par,
    quantale_of_induction,
    residuals,
    tensor_laws,
    verify_coquantale,
    verify_quantale,
)
from .report import Check, Report

__all__ = [
    "KERNEL_BACKEND",
    "Caps",
    "Check",
    "DILattice",
    "FiniteLattice",
    "FiniteQuantale",
    "Induction",
    "InductionAlgebra",
    "Model",
    "OqlError",
    "OrthoLattice",
    "PropertySet",
    "Report",
    "StateSpace",
    "attach_ortho",
    "build_lattice",
    "cartan_map",
    "causate",
    "check_continuity",
    "check_valid",
    "choice",
    "closed_set_family",
    "compare_inverse_vs_adjoint",
    "concat",
    "de_morgan_check",
    "di_atom_iso",
    "di_closure",
    "dyn_impl_bwd",
    "dyn_impl_fwd",
    "dyn_tensor_bwd",
    "dyn_tensor_fwd",
    "entry",
    "enumerate_di",
    "eval_formula",
    "find_cyclic_dualizing",
    "freeze",
    "get_caps",
    "girard_identities",
    "heyting_implication",
    "is_atomistic",
    "is_distributive_lattice",
    "is_girard",
    "is_orthomodular",
    "is_separating",
    "lattice_from_closure_system",
    "linear_negations",
    "load",
    "locale_of",
    "make_induction",
    "module_action_check",
    "names",
    "par",
    "parse_formula",
    "parse_model",
    "propagate",
    "quantale_of_induction",
    "relational_inverse",
    "resolution",
    "residuals",
    "sasaki_equiv_orthomodular",
    "sasaki_hook",
    "sasaki_projection",
    "self_test_all",
    "static_negation",
    "tensor_laws",
    "unparse_formula",
    "unparse_model",
    "validity",
    "verify_coquantale",
    "verify_heyting",
    "verify_quantale",
]
