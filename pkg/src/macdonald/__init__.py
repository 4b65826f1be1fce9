"""Exact arithmetic, structure and automorphisms of the infinite Macdonald groups G(beta)."""
from .core import (
    INFINITE,
    Element,
    GroupParams,
    commutator,
    conjugate,
    element_order,
    format_element,
    inverse,
    make_params,
    multiply,
    normalize,
    parse_element,
    power,
)
from .errors import (
    BetaNotEven,
    CapExceeded,
    DegenerateBeta,
    ElementSyntaxError,
    FactorizationLimit,
    GcdCondition,
    InvalidAutomorphism,
    MacdonaldError,
    NotAUnit,
    NotTorsion,
    ParamsMismatch,
    PrimeNotDividing,
    UnsupportedBeta,
)
from .iso import iso_decision, sylow_local_iso
from .lgroup import l_params, l_structure_report

__version__ = "0.1.0"

__all__ = [
    "INFINITE", "Element", "GroupParams", "commutator", "conjugate", "element_order",
    "format_element", "inverse", "make_params", "multiply", "normalize", "parse_element",
    "power", "iso_decision", "sylow_local_iso", "l_params", "l_structure_report",
    "MacdonaldError",
    "DegenerateBeta",
    "UnsupportedBeta",
    "ParamsMismatch",
    "FactorizationLimit",
    "CapExceeded",
    "NotTorsion",
    "PrimeNotDividing",
    "InvalidAutomorphism",
    "BetaNotEven",
    "GcdCondition",
    "NotAUnit",
    "ElementSyntaxError",
]
