"""Banded unlink diagrams, undisking certificates and Andrews-Curtis search."""

from .alexander import LaurentPoly, alexander_matrix, alexander_polynomial, fox_derivative
from .acsearch import ac_search
from .budget import DEFAULT_BUDGET, SearchBudget, Unknown
from .diagrams import (
    Band,
    BandPass,
    Cancel,
    Drag,
    EndReduce,
    InsertPair,
    Intro,
    ReducePair,
    RibbonPresentation,
    SlideEnd,
    Swim,
    apply_move,
    band_pass,
    group_of,
    is_syntactically_trivial,
    is_triangular,
    to_path_form,
    validate,
)
from .handles import (
    ClosedSphereSpec,
    budac_trivialize,
    euler_check,
    gluck_presentation,
    handle_counts,
    slide_2handle,
    verify_product_ball,
    verify_step2,
)
from .presentations import (
    ACCertificate,
    Concat,
    Conjugate,
    GroupPresentation,
    Invert,
    abelianization,
    apply_ac_move,
    canonical_form,
    verify_certificate,
)
from .undisking import (
    UndiskingCertificate,
    certify_undisking,
    triangularize,
    trivialize_search,
)
from .words import Word, reduce

__version__ = "0.1.0"

__all__ = [
    "ACCertificate",
    "Band",
    "BandPass",
    "Cancel",
    "ClosedSphereSpec",
    "Concat",
    "Conjugate",
    "DEFAULT_BUDGET",
    "Drag",
    "EndReduce",
    "GroupPresentation",
    "InsertPair",
    "Intro",
    "Invert",
    "LaurentPoly",
    "ReducePair",
    "RibbonPresentation",
    "SearchBudget",
    "SlideEnd",
    "Swim",
    "UndiskingCertificate",
    "Unknown",
    "Word",
    "abelianization",
    "ac_search",
    "alexander_matrix",
    "alexander_polynomial",
    "apply_ac_move",
    "apply_move",
    "band_pass",
    "budac_trivialize",
    "canonical_form",
    "certify_undisking",
    "euler_check",
    "fox_derivative",
    "gluck_presentation",
    "group_of",
    "handle_counts",
    "is_syntactically_trivial",
    "is_triangular",
    "reduce",
    "slide_2handle",
    "to_path_form",
    "triangularize",
    "trivialize_search",
    "validate",
    "verify_certificate",
    "verify_product_ball",
    "verify_step2",
]

