"""Exact localization invariants of Hamiltonian circle actions.

The central object is S, a finite exponential sum computed from fixed-point
data; comparing S exactly decides (or gives necessary conditions for)
whether two circle actions are homotopic through circle actions.
"""

from .errors import EquilocError
from .expsum import ExpSum, Frequency, canonicalize, exp_sum_equal, u_series
from .laurent import LaurentPoly
from .polytope import DelzantPolytope, HalfSpace, build_model, check_delzant, face_type
from .toric import kappa_toric, s_class, s_class_general, s_class_type0, type_signature

__all__ = [
    "DelzantPolytope",
    "EquilocError",
    "ExpSum",
    "Frequency",
    "HalfSpace",
    "LaurentPoly",
    "build_model",
    "canonicalize",
    "check_delzant",
    "exp_sum_equal",
    "face_type",
    "kappa_toric",
    "s_class",
    "s_class_general",
    "s_class_type0",
    "type_signature",
    "u_series",
]
