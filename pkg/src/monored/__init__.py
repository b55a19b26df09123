"""Symbolic engine for marked monomial ideals on chart complexes.

Exact exponent arithmetic drives blow-ups, order reduction,
principalization and weak embedded resolution; an exact integer-polynomial
kernel independently verifies the substitution rule, fiber behaviour and
the Frobenius-lift structure of the rings involved.
"""

from .core import (
    Chart,
    Configuration,
    MarkedIdeal,
    Monomial,
    Stratum,
    UNIT,
    is_permissible,
    max_order,
    order_at,
    sum_marked,
    support,
)
from .errors import (
    ContractError,
    InternalLogicError,
    InvalidElementError,
    InvalidSampleError,
    InvalidStratumError,
    MarkOverflowError,
    MonoredError,
    NonPermissibleError,
    NotMaximalOrderError,
    NotMonomialError,
    ValidationError,
)
from .reduction import (
    balanced_companion,
    companion_ideal,
    contact_split,
    monomial_derivative,
    monomial_split,
    reduce,
    reduce_maximal_order,
    reduce_monomial,
)
from .resolution import (
    ResolutionTrace,
    is_locally_principal,
    principalize,
    weak_resolve,
)
from .transform import BlowUpRecord, blow_up_chart, blow_up_global, transform_generator

__all__ = [
    "BlowUpRecord",
    "Chart",
    "Configuration",
    "ContractError",
    "InternalLogicError",
    "InvalidElementError",
    "InvalidSampleError",
    "InvalidStratumError",
    "MarkOverflowError",
    "MarkedIdeal",
    "MonoredError",
    "Monomial",
    "NonPermissibleError",
    "NotMaximalOrderError",
    "NotMonomialError",
    "ResolutionTrace",
    "Stratum",
    "UNIT",
    "ValidationError",
    "balanced_companion",
    "blow_up_chart",
    "blow_up_global",
    "companion_ideal",
    "contact_split",
    "is_locally_principal",
    "is_permissible",
    "max_order",
    "monomial_derivative",
    "monomial_split",
    "order_at",
    "principalize",
    "reduce",
    "reduce_maximal_order",
    "reduce_monomial",
    "sum_marked",
    "support",
    "transform_generator",
    "weak_resolve",
]
__version__ = "0.1.0"
