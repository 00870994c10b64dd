"""Exact jet computations for CR structures of hypersurface type and beyond.

The building blocks are truncated power series over the Gaussian rationals
(:class:`Jet`), vector fields and forms with jet coefficients, CR frames,
iterated Lie derivatives of characteristic forms with their multiplier
determinants, formal classical symbols and division by ``s^k * unit``.
"""
__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .gaussian import GaussianRational, I
from .jet import Jet, VariableSet
from .forms import (
    OneForm,
    TwoForm,
    VectorField,
    contract,
    differential,
    exterior_derivative,
    lie_bracket,
    lie_derivative_general,
    pair,
)
from .frame import (
    CRCheck,
    CRFrame,
    IntegrabilityWarning,
    build_abstract_frame,
    build_hypersurface_frame,
    expand_in_coframe,
    is_symbolic_infinitesimal_cr,
    lie_derivative_form,
    structure_coefficients,
)
from .multipliers import (
    CRRegular,
    ExpansionTable,
    MultiplierReport,
    adjoint_expansion_crosscheck,
    analyze,
    build_cr_system_symbol,
    build_expansion_table,
    cr_regularity_check,
    finite_nondegeneracy_order,
    multi_indices,
    multiplier_determinant,
    weak_nondegeneracy_order,
)
from .symbols import (
    ClassicalSymbol,
    HomogeneousTerm,
    RationalForm,
    char_determinant,
    compose,
    identity_symbol,
    is_elliptic_at,
    parametrix,
)
from .division import AtLeast, SFactorization, divide, s_factor, s_order
from .parser import parse, parse_expression
from .problem import emit, load_problem, run
