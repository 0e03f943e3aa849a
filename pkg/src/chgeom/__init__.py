"""Complex hyperbolic geometry in the Siegel domain and Fuchsian detection."""

from .detector import (
    CFuchsian,
    Inconclusive,
    NotFuchsian,
    RFuchsian,
    certify,
    detect,
    trace_audit,
)
from .hermitian import (
    PointClass,
    ProjectivePoint,
    bergman_distance,
    classify_point,
    hermitian_form,
    standard_lift,
)
from .invariants import cartan_invariant, coplanarity_test, kr_cross_ratio, pp_cross_ratios
from .isometries import (
    GroupElement,
    IsometryClass,
    apply,
    classify,
    conjugate,
    eigen,
    fixed_points,
    inverse,
    normalize_to_su21,
    validate,
)
from .tolerances import Tolerances
from .words import GroupPresentation, Word, word_ball

__version__ = "0.1.0"

__all__ = [
    "CFuchsian",
    "GroupElement",
    "GroupPresentation",
    "Inconclusive",
    "IsometryClass",
    "NotFuchsian",
    "PointClass",
    "ProjectivePoint",
    "RFuchsian",
    "Tolerances",
    "Word",
    "apply",
    "bergman_distance",
    "cartan_invariant",
    "certify",
    "classify",
    "classify_point",
    "conjugate",
    "coplanarity_test",
    "detect",
    "eigen",
    "fixed_points",
    "hermitian_form",
    "inverse",
    "kr_cross_ratio",
    "normalize_to_su21",
    "pp_cross_ratios",
    "standard_lift",
    "trace_audit",
    "validate",
    "word_ball",
]
