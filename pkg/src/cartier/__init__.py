"""Cartier operators, a-numbers and one-point codes on curves over finite fields."""

from .bipoly import BiPoly, expand_AS, nabla, pth_root_poly, reduce_y
from .cartier_engine import (
    CartierMatrix,
    RankReport,
    a_closed,
    a_number,
    a_number_At_experimental,
    cartier_image,
    cartier_manin,
    cartier_matrix,
    conjecture_check,
    rank_closed,
    rank_congruence,
)
from .curve_models import (
    ArtinSchreierCurve,
    GeneralizedHermitianCurve,
    HyperellipticCurve,
    differential_basis,
    is_maximal,
    make_curve_At,
    make_generalized_hermitian,
    rational_points,
)
from .gf_tower import FieldContext, FieldElement, build_field

__all__ = [
    "ArtinSchreierCurve", "BiPoly", "CartierMatrix", "FieldContext", "FieldElement",
    "GeneralizedHermitianCurve", "HyperellipticCurve", "RankReport", "a_closed", "a_number",
    "a_number_At_experimental", "build_field", "cartier_image", "cartier_manin", "cartier_matrix",
    "conjecture_check", "differential_basis", "expand_AS", "is_maximal", "make_curve_At",
    "make_generalized_hermitian", "nabla", "pth_root_poly", "rank_closed", "rank_congruence",
    "rational_points", "reduce_y",
]
