"""Entire solutions of Waring-type first-order PDEs ``H(grad u) = P(u)`` over C^n.

Jets give exact first derivatives, :mod:`families` builds the closed-form
solution families, and :mod:`verify` measures residuals at sampled points.
"""

from .characteristics import CharState, CharSystem, cross_check, integrate
from .cxjet import Jet, jet_const, jet_var
from .expr import Expr, eval_jet, eval_value, to_text
from .families import PhiSpec, construct, make_phi, solve_null_direction
from .parser import parse_expr
from .poly import UniPoly, WaringForm, find_roots
from .special import WeierstrassParams, verify_left_factor, wp
from .verify import residual_at, verify_family

__all__ = [
    "CharState", "CharSystem", "Expr", "Jet", "PhiSpec", "UniPoly", "WaringForm",
    "WeierstrassParams", "construct", "cross_check", "eval_jet", "eval_value",
    "find_roots", "integrate", "jet_const", "jet_var", "make_phi", "parse_expr",
    "residual_at", "solve_null_direction", "to_text", "verify_family",
    "verify_left_factor", "wp",
]
