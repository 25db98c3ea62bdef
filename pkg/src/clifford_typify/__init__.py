"""Quaternion typification of Clifford algebra elements, with exhaustive checks
of the closed subspaces it predicts."""

from .algebra import (
    COMPLEX,
    REAL,
    Multivector,
    Signature,
    anticommutator,
    blade_product,
    clifford_conjugate,
    commutator,
    geometric_product,
    grade_project,
    quaternion_type_of,
    type_project,
)
from .catalogs import catalog, diff_catalog
from .errors import CliffordError, ConvergenceError, InputError, LimitError, ParseError
from .subspaces import (
    Domain,
    GradedSubspaceSpec,
    closure_check,
    enumerate_closed,
    grade_interaction,
    product_closure,
    rank_product_range,
)
from .textfmt import format_multivector, parse_binary, parse_multivector
from .typecalc import anti_type, comm_type, prod_type, verify_type_tables
from .unitary import group_membership, is_in_wc, mv_exp, verify_theorem4, verify_theorem5_13, wc_decompose

__version__ = "0.1.0"
