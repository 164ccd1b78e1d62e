"""Exact computations for induced additive actions on projective hypersurfaces.

An H-pair ``(A, U)`` (a local algebra with a codimension-one generating
subspace of its maximal ideal) determines a hypersurface in ``P(A)`` with an
action of ``exp(U)``.  This package builds such pairs, derives equations,
action formulas and one-parameter limits, and decides the OP-condition with
replayable certificates.
"""

from .algebra import LocalAlgebra, exp, log, socle, validate_algebra
from .exactlin import Scalar, Subspace, parse_scalar
from .geometry import action_formula, equation
from .hpair import HPair, degree, is_nondegenerate, reduce, validate_hpair
from .limits import generic_limit, one_param_limit
from .models import build, parse_model_id
from .opcheck import Verdict, decide, replay
from .poly import MultiPoly, parse_poly

__version__ = "0.1.0"

__all__ = [
    "HPair",
    "LocalAlgebra",
    "MultiPoly",
    "Scalar",
    "Subspace",
    "Verdict",
    "action_formula",
    "build",
    "decide",
    "degree",
    "equation",
    "exp",
    "generic_limit",
    "is_nondegenerate",
    "log",
    "one_param_limit",
    "parse_model_id",
    "parse_poly",
    "parse_scalar",
    "reduce",
    "replay",
    "socle",
    "validate_algebra",
    "validate_hpair",
]
