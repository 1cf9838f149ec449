"""Exact evaluation of two-sorted formulas over finite group representations.

The objects are pairs (V, G): a finite Z/n-module V together with a finite
group G acting on it additively.  Formulas mix module equalities
``x1*(2 + y1) = 0`` with group equalities ``y1*y2 = 1`` under the boolean
connectives and the two existential quantifiers; values are computed exactly,
as subsets of finite hom-spaces, and the structural laws of the resulting
classes (saturation under the faithful quotient, heredity over subgroups,
locality in the y-support, the Galois laws of axiomatization, closure under
subalgebras / quotients / products / ultraproducts) ship as executable,
seeded verification suites — see :mod:`repkit.classes` and the ``repkit``
command.
"""

from repkit.algebra import (
    Congruence,
    FiniteGroup,
    FiniteModule,
    FiniteRing,
    RepHomomorphism,
    Representation,
    cyclic_group,
    direct_product,
    enumerate_congruences,
    faithful_quotient,
    filtered_product,
    principal_ultrafilter,
    quotient,
    restrict,
    subgroups,
    trivial_filter,
    trivial_representation,
    validate_representation,
)
from repkit.classes import (
    Catalog,
    FormulaSet,
    Report,
    SuiteConfig,
    action_type_law_suite,
    check_hereditary_equation,
    check_right_hereditary,
    check_saturated,
    closure_check,
    find_isomorphism,
    layer,
    run_all_suites,
    star_of_class,
    star_of_formulas,
)
from repkit.errors import (
    AxiomViolation,
    DimensionMismatch,
    GuardExceeded,
    ModulusMismatch,
    NotACongruence,
    NotAFilter,
    NotASubgroup,
    NotActionType,
    ParseError,
    RepkitError,
    SupportNotCovered,
    UnboundVariable,
)
from repkit.formulas import Formula, classify, dimensions, format_formula, parse, y_support
from repkit.repfile import (
    bundled_catalog,
    dump_representation,
    load_catalog,
    load_formulas,
    load_representation,
)
from repkit.semantics import (
    HomPoint,
    HomSpace,
    ValSet,
    check_support_invariance,
    exists_x,
    exists_y,
    frozen_val,
    holds,
    val,
)

__version__ = "0.1.0"

__all__ = [
    "AxiomViolation",
    "Catalog",
    "Congruence",
    "DimensionMismatch",
    "FiniteGroup",
    "FiniteModule",
    "FiniteRing",
    "Formula",
    "FormulaSet",
    "GuardExceeded",
    "HomPoint",
    "HomSpace",
    "ModulusMismatch",
    "NotACongruence",
    "NotAFilter",
    "NotASubgroup",
    "NotActionType",
    "ParseError",
    "RepHomomorphism",
    "RepkitError",
    "Report",
    "Representation",
    "SuiteConfig",
    "SupportNotCovered",
    "UnboundVariable",
    "ValSet",
    "action_type_law_suite",
    "bundled_catalog",
    "check_hereditary_equation",
    "check_right_hereditary",
    "check_saturated",
    "check_support_invariance",
    "classify",
    "closure_check",
    "cyclic_group",
    "dimensions",
    "direct_product",
    "dump_representation",
    "enumerate_congruences",
    "exists_x",
    "exists_y",
    "faithful_quotient",
    "filtered_product",
    "find_isomorphism",
    "format_formula",
    "frozen_val",
    "holds",
    "layer",
    "load_catalog",
    "load_formulas",
    "load_representation",
    "parse",
    "principal_ultrafilter",
    "quotient",
    "restrict",
    "run_all_suites",
    "star_of_class",
    "star_of_formulas",
    "subgroups",
    "trivial_filter",
    "trivial_representation",
    "val",
    "validate_representation",
    "y_support",
    "__version__",
]
