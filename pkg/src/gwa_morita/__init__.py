"""Exact decision procedures for classical generalized Weyl algebras.

Everything is driven by the root tuple of the defining polynomial: simplicity,
isomorphism, Morita conditions, trace classes and the attached quantum tori.
"""
from .degree3 import Mat2, g6_classify, g6_elements, generator_move
from .errors import GWAError
from .gwa import RootTuple, gwa_isomorphism, is_simple, roots, satisfies_sfgld
from .ktheory import schur_trace, trace_pi
from .morita import necessary_morita, sufficient_morita
from .qtorus import morita_to_torus, q_simple, theta_of, torus_iso_search
from .scalars import QQ, BasisSpec, Scalar

__version__ = "0.1.0"

__all__ = [
    "BasisSpec",
    "GWAError",
    "Mat2",
    "QQ",
    "RootTuple",
    "Scalar",
    "g6_classify",
    "g6_elements",
    "generator_move",
    "gwa_isomorphism",
    "is_simple",
    "morita_to_torus",
    "necessary_morita",
    "q_simple",
    "roots",
    "satisfies_sfgld",
    "schur_trace",
    "sufficient_morita",
    "theta_of",
    "torus_iso_search",
    "trace_pi",
]
