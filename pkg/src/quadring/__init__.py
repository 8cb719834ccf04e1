"""D(n)-quadruples in Z[sqrt(d)]: construction, search and certificate checking."""

from .builder import (
    ConstructionError,
    QuadrupleCertificate,
    SearchBounds,
    SupportStatus,
    SupportTag,
    assemble,
    classify_support,
    construct_auto,
    construct_d10,
    construct_thm12,
    construct_thm13,
    lemma21_search,
    reduce_by_d,
    scale,
)
from .pell import (
    CFExpansion,
    PellSolution,
    admissible_d_scan,
    cf_expand,
    classify_form,
    enumerate_norm_class,
    fundamental_neg,
    fundamental_unit,
    is_admissible,
    solve_norm6,
)
from .ring import (
    InvalidRing,
    QuadringError,
    ResidueClass,
    RingContext,
    RingElement,
    STClass,
)

__all__ = [
    "CFExpansion",
    "ConstructionError",
    "InvalidRing",
    "PellSolution",
    "QuadringError",
    "QuadrupleCertificate",
    "ResidueClass",
    "RingContext",
    "RingElement",
    "STClass",
    "SearchBounds",
    "SupportStatus",
    "SupportTag",
    "admissible_d_scan",
    "assemble",
    "cf_expand",
    "classify_form",
    "classify_support",
    "construct_auto",
    "construct_d10",
    "construct_thm12",
    "construct_thm13",
    "enumerate_norm_class",
    "fundamental_neg",
    "fundamental_unit",
    "is_admissible",
    "lemma21_search",
    "reduce_by_d",
    "scale",
    "solve_norm6",
]

__version__ = "0.1.0"
