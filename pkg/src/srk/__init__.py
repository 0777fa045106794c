"""Slice regular functions of a quaternionic variable.

Quaternion arithmetic, regular polynomials and the star product, regular
quotients evaluated through the twist map, and numerical checkers for the
boundary theorems of regular self-maps (Julia, Julia-Caratheodory, Hopf,
boundary Schwarz, Lindeloef, Burns-Krantz).
"""

from .kernels import BACKEND
from .quaternion import I, J, K, ONE, ZERO, Quaternion, format_quaternion, parse_quaternion
from .quotient import RegularQuotient, eval_quotient, linear_fractional, mobius_ball, star_maps
from .series import RegularPoly, constant, monomial, star_product

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Quaternion",
    "ONE",
    "ZERO",
    "I",
    "J",
    "K",
    "parse_quaternion",
    "format_quaternion",
    "RegularPoly",
    "constant",
    "monomial",
    "star_product",
    "RegularQuotient",
    "eval_quotient",
    "mobius_ball",
    "star_maps",
    "linear_fractional",
]
