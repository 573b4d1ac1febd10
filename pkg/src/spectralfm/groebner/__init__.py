"""Zero-dimensional ideal engine."""

from ..exactalg.monomial import MonomialOrder, grevlex, lex
from .basis import INFINITE, GroebnerBasis, Ideal, buchberger, is_reduced, normal_form, spoly_criterion_holds
from .local import local_length_at, local_length_at_origin
from .ops import (
    Cluster,
    FlatnessCertificate,
    NotZeroDimensional,
    Support,
    SupportPoint,
    eliminate,
    fibre_at,
    ideal_length,
    ideal_quotient,
    is_t_flat,
    is_t_regular,
    jump_locus,
    quotient_length,
    radical_length,
    same_ideal,
    support_points,
)

__all__ = [
    "INFINITE",
    "Cluster",
    "FlatnessCertificate",
    "GroebnerBasis",
    "Ideal",
    "MonomialOrder",
    "NotZeroDimensional",
    "Support",
    "SupportPoint",
    "buchberger",
    "eliminate",
    "fibre_at",
    "grevlex",
    "ideal_length",
    "ideal_quotient",
    "is_reduced",
    "is_t_flat",
    "is_t_regular",
    "jump_locus",
    "lex",
    "local_length_at",
    "local_length_at_origin",
    "normal_form",
    "quotient_length",
    "radical_length",
    "same_ideal",
    "spoly_criterion_holds",
    "support_points",
]
