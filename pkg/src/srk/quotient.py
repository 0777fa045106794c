"""Regular quotients ``den^{-*} * num`` and the operators built on them.

Pointwise evaluation never expands a quotient: it goes through the twist
``T_den(q) = den^c(q)^{-1} q den^c(q)`` and returns
``den(T(q))^{-1} num(T(q))``.  Anything that needs Taylor coefficients
(derivatives at boundary points, the ``R_xi`` difference quotients, the
spherical coefficients) asks for an explicit truncated expansion through
:func:`expand_quotient`, so the truncation order is always visible.

Every regular map in the library is either a :class:`~srk.series.RegularPoly`
or a :class:`RegularQuotient`; both expose ``__call__``, ``derivative()``,
``series()`` and ``derivative_at_zero()``.
"""

import math

import numpy as np

from . import kernels
from .errors import (
    InvalidParameter,
    OutOfDomain,
    PoleAtMinusOne,
    SingularExpansion,
    SingularPoint,
)
from .quaternion import (
    ONE,
    ZERO_EPS,
    Quaternion,
    as_array,
    as_points,
    as_quaternion,
    inverse,
)
from .series import (
    RegularPoly,
    constant,
    eval_poly,
    regular_conjugate,
    slice_derivative,
    star_product,
    symmetrization,
)

__all__ = [
    "SINGULAR_TOL",
    "DEFAULT_TERMS",
    "DEFAULT_WORKING_RADIUS",
    "RegularQuotient",
    "as_quotient",
    "t_transform",
    "eval_quotient",
    "mobius_ball",
    "expand_quotient",
    "left_division",
    "spherical_coeffs",
    "series_derivative",
    "directional_derivative",
    "cayley",
    "star_maps",
    "linear_fractional",
    "zero_free_radius",
]

#: evaluation refuses points where |den^s(q)| falls below this
SINGULAR_TOL = 1e-10
DEFAULT_TERMS = 64
DEFAULT_WORKING_RADIUS = 1.0 + 1.0 / 16.0
_MAX_TERMS = 20000


class RegularQuotient:
    """``den^{-*} * num * right_const``.

    ``right_const`` is a quaternion applied on the right; since constants on the
    right of a star product just multiply every coefficient, it could be folded
    into ``num``.  It is kept separate so maps like ``f(q) J`` serialize the way
    they were written.
    """

    __slots__ = ("den", "num", "right_const", "_num_eff", "_den_c", "_den_s")

    def __init__(self, den, num, right_const=ONE):
        den = den if isinstance(den, RegularPoly) else RegularPoly(den)
        num = num if isinstance(num, RegularPoly) else RegularPoly(num)
        if den.is_zero():
            raise InvalidParameter("denominator of a regular quotient must not vanish identically")
        self.den = den
        self.num = num
        self.right_const = as_quaternion(right_const)
        self._num_eff = num if self.right_const == ONE else num.times_right(self.right_const)
        self._den_c = regular_conjugate(den)
        s = symmetrization(den)
        # den^s has real coefficients; drop the rounding noise in the imaginary parts
        self._den_s = RegularPoly(np.column_stack([s.coeffs[:, 0], np.zeros((s.coeffs.shape[0], 3))]))

    @property
    def numerator(self):
        """``num * right_const`` as one polynomial."""
        return self._num_eff

    @property
    def den_s(self):
        return self._den_s

    @property
    def den_c(self):
        return self._den_c

    @property
    def declared_radius(self):
        return min(self.den.declared_radius, self.num.declared_radius)

    def __call__(self, q):
        return eval_quotient(self, q)

    def __eq__(self, other):
        if not isinstance(other, RegularQuotient):
            return NotImplemented
        return self.den == other.den and self.num == other.num and self.right_const == other.right_const

    def __hash__(self):
        return hash((self.den, self.num, self.right_const))

    def __repr__(self):
        tail = "" if self.right_const == ONE else f", right_const={self.right_const}"
        return f"RegularQuotient(den={self.den!r}, num={self.num!r}{tail})"

    def times_right(self, c):
        return RegularQuotient(self.den, self.num, self.right_const * as_quaternion(c))

    def normal_form(self):
        """Rewrite as ``R^{-1} P`` with ``R = den^s`` real, ``P = den^c * num``.

        Real-coefficient series are central for the star product, so
        ``den^{-*} * num = (den^s)^{-1} (den^c * num)`` and the result evaluates
        pointwise without any twist.
        """
        return self._den_s, star_product(self._den_c, self._num_eff)

    def derivative(self):
        """Exact slice derivative, returned as another quotient.

        With ``f = R^{-1} P`` and ``R`` real, ``f' = (R^2)^{-1} (R P' - R' P)``.
        """
        r, p = self.normal_form()
        num = star_product(r, slice_derivative(p)) - star_product(slice_derivative(r), p)
        return RegularQuotient(star_product(r, r), num)

    def zero_free_radius(self):
        return zero_free_radius(self)

    def series(self, n_terms=DEFAULT_TERMS, rho=DEFAULT_WORKING_RADIUS):
        return expand_quotient(self, n_terms, rho)

    def derivative_at_zero(self, n):
        """``f^{(n)}(0) = n! h_n`` from the Taylor coefficients at the origin."""
        h = kernels.star_solve(self.den.coeffs, self._num_eff.coeffs, n + 1)
        return Quaternion.from_array(h[n]) * math.factorial(n)

    def taylor(self, n_terms):
        """First ``n_terms`` Taylor coefficients at 0 (no zero-free check)."""
        return RegularPoly(kernels.star_solve(self.den.coeffs, self._num_eff.coeffs, n_terms))


def as_quotient(f):
    """View any regular map as a quotient (polynomials get ``den = 1``)."""
    if isinstance(f, RegularQuotient):
        return f
    if isinstance(f, RegularPoly):
        return RegularQuotient(constant(1.0), f)
    raise TypeError(f"not a regular map: {f!r}")


def _check_nonsingular(den_s, q_arr, tol):
    # far from the origin den^s may overflow to inf, which is not singular
    with np.errstate(over="ignore"):
        mod = np.linalg.norm(kernels.horner(den_s.coeffs, q_arr), axis=-1)
    bad = mod < tol
    if np.any(bad):
        n_bad = int(np.count_nonzero(bad))
        raise SingularPoint(f"{n_bad} point(s) within {tol:g} of the zero set of den^s")


def t_transform(f, q, tol=SINGULAR_TOL):
    """``T_f(q) = f^c(q)^{-1} q f^c(q)``.

    Preserves modulus and real part; raises :class:`SingularPoint` where
    ``|f^s(q)| < tol``.
    """
    arr, scalar = as_points(q)
    _check_nonsingular(symmetrization(f), arr, tol)
    out = kernels.twist(kernels.horner(regular_conjugate(f).coeffs, arr), arr)
    return Quaternion.from_array(out) if scalar else out


def eval_quotient(Q, q, tol=SINGULAR_TOL):
    """``den(T_den(q))^{-1} num(T_den(q))`` (times ``right_const``).

    Accepts a single point or an ``(..., 4)`` array; boundary points are legal
    as long as ``den^s`` does not vanish there.
    """
    Q = as_quotient(Q)
    arr, scalar = as_points(q)
    radius = Q.declared_radius
    if math.isfinite(radius) and np.any(np.linalg.norm(arr, axis=-1) >= radius):
        raise OutOfDomain(f"point outside the ball of radius {radius}")
    _check_nonsingular(Q.den_s, arr, tol)
    out = kernels.quotient_eval(Q.den.coeffs, Q.den_c.coeffs, Q.numerator.coeffs, arr)
    return Quaternion.from_array(out) if scalar else out


def mobius_ball(u, normalize=False):
    """Regular Moebius map ``(1 - q conj(u))^{-*} * (q - u)`` of the unit ball.

    With ``normalize=True`` the right constant ``(1 - conj(u)) (1 - u)^{-1}`` is
    attached, which makes the map fix the boundary point 1.
    """
    u = as_quaternion(u)
    if abs(u) >= 1.0:
        raise InvalidParameter(f"|u| = {abs(u)} must be < 1")
    den = RegularPoly([as_array(ONE), as_array(-u.conj())])
    num = RegularPoly([as_array(-u), as_array(ONE)])
    right = (ONE - u.conj()) * inverse(ONE - u) if normalize else ONE
    return RegularQuotient(den, num, right)


def zero_free_radius(Q):
    """Smallest modulus of a zero of ``den^s`` (``inf`` when it has none).

    ``den^s`` has real coefficients, so its zero set is a union of spheres
    ``x + y S`` and their radii are the moduli of its complex roots.
    """
    c = as_quotient(Q).den_s.coeffs[:, 0]
    if c.shape[0] <= 1:
        return math.inf
    roots = np.roots(c[::-1])
    return float(np.min(np.abs(roots))) if roots.size else math.inf


def expand_quotient(Q, n_terms=DEFAULT_TERMS, rho=DEFAULT_WORKING_RADIUS, tol=SINGULAR_TOL):
    """Degree-``n_terms`` truncation of the power series of ``Q`` at the origin.

    Solves ``den * h = num`` coefficient by coefficient.  Before expanding it
    checks that ``den(0) != 0`` and that ``den^s`` has no zero in the closed
    ball ``|q| <= rho`` (both by its roots and by sampling the circle
    ``|q| = rho``); otherwise :class:`SingularExpansion` is raised.
    """
    Q = as_quotient(Q)
    if n_terms < 0:
        raise InvalidParameter("n_terms must be non-negative")
    if abs(Q.den.coefficient(0)) < tol:
        raise SingularExpansion("den(0) vanishes; no power series at the origin")
    if zero_free_radius(Q) <= rho:
        raise SingularExpansion(f"den^s has a zero in the closed ball of radius {rho}")
    theta = np.linspace(0.0, 2.0 * np.pi, 256, endpoint=False)
    circle = np.zeros((theta.size, 4))
    circle[:, 0] = rho * np.cos(theta)
    circle[:, 1] = rho * np.sin(theta)
    if np.min(np.linalg.norm(kernels.horner(Q.den_s.coeffs, circle), axis=-1)) < 10.0 * tol:
        raise SingularExpansion(f"den^s nearly vanishes on |q| = {rho}")
    return RegularPoly(kernels.star_solve(Q.den.coeffs, Q.numerator.coeffs, n_terms + 1))


def left_division(f, xi):
    """``R_xi f = (q - xi)^{-*} * (f - f(xi))`` for a polynomial ``f``.

    Top-down recurrence ``b_{d-1} = a_d``, ``b_{n-1} = a_n + xi b_n``; the result
    satisfies ``(q - xi) * R_xi f + f(xi) = f`` exactly in exact arithmetic.
    """
    f = f if isinstance(f, RegularPoly) else RegularPoly(f)
    return RegularPoly(kernels.left_divide(f.coeffs, as_array(as_quaternion(xi))))


def _auto_terms(Q, r_eval):
    rho0 = zero_free_radius(Q)
    base = Q.den.degree + Q.num.degree + 1
    if not math.isfinite(rho0):
        return base
    ratio = r_eval / rho0
    if ratio <= 0.0:
        return max(DEFAULT_TERMS, base)
    # enough terms for ratio^N to sit well below double precision
    need = int(math.ceil(-40.0 / math.log(ratio))) + 16
    return int(min(max(DEFAULT_TERMS, need, base), _MAX_TERMS))


def _auto_radius(Q, r_eval):
    rho0 = zero_free_radius(Q)
    if rho0 <= r_eval:
        raise SingularExpansion(f"den^s vanishes inside |q| <= {r_eval}; zero-free radius {rho0:.6g}")
    if r_eval < DEFAULT_WORKING_RADIUS < rho0:
        return DEFAULT_WORKING_RADIUS
    return 0.5 * (r_eval + rho0) if math.isfinite(rho0) else r_eval + 1.0


def _series_for(f, r_eval, n_terms=None, rho=None):
    if isinstance(f, RegularPoly):
        return f
    Q = as_quotient(f)
    if Q.den.degree == 0:
        return Q.taylor(Q.num.degree + 1)
    n = n_terms if n_terms is not None else _auto_terms(Q, r_eval)
    r = rho if rho is not None else _auto_radius(Q, r_eval)
    return expand_quotient(Q, n, r)


def spherical_coeffs(f, q0, n_terms=None, rho=None):
    """``A1 = (R_{q0} f)(conj q0)`` and ``A2 = (R_{conj q0} R_{q0} f)(q0)``.

    Quotients are expanded first; ``n_terms`` defaults to a count chosen from
    the zero-free radius of ``den^s`` so the truncation error is below double
    precision at ``|q0|``.
    """
    q0 = as_quaternion(q0)
    series = _series_for(f, abs(q0), n_terms, rho)
    r1 = left_division(series, q0)
    a1 = eval_poly(r1, q0.conj())
    a2 = eval_poly(left_division(r1, q0.conj()), q0)
    return a1, a2


def series_derivative(f, q0, n_terms=None, rho=None):
    """``f'(q0)`` by termwise differentiation of the (truncated) expansion."""
    q0 = as_quaternion(q0)
    series = _series_for(f, abs(q0), n_terms, rho)
    return eval_poly(slice_derivative(series), q0)


def directional_derivative(f, q0, v, n_terms=None, rho=None):
    """Derivative of ``f`` at ``q0`` along the unit vector ``v``: ``v A1 + (q0 v - v conj(q0)) A2``."""
    q0, v = as_quaternion(q0), as_quaternion(v)
    if abs(abs(v) - 1.0) > 1e-12:
        raise InvalidParameter(f"direction must be a unit quaternion, |v| = {abs(v)}")
    a1, a2 = spherical_coeffs(f, q0, n_terms, rho)
    return v * a1 + (q0 * v - v * q0.conj()) * a2


def cayley(q):
    """``(1 + q)^{-1} (1 - q)``: right half-space onto the unit ball."""
    q = as_quaternion(q)
    if abs(ONE + q) < ZERO_EPS:
        raise PoleAtMinusOne("cayley transform has a pole at q = -1")
    return inverse(ONE + q) * (ONE - q)


def _parts(f):
    """``(den, num)`` of a map, with the right constant folded into ``num``."""
    Q = as_quotient(f)
    return Q.den, Q.numerator


def star_maps(f, g):
    """Star product of two regular maps.

    A polynomial with real coefficients is central, so ``p * (D^{-*} * G) =
    D^{-*} * (p * G)`` keeps the denominator of ``g``.  In every other case
    both factors go to the normal form ``R^{-1} P`` and
    ``f * g = (R_f R_g)^{-1} (P_f * P_g)``.
    """
    if isinstance(f, RegularPoly) and isinstance(g, RegularPoly):
        return star_product(f, g)
    if isinstance(f, RegularPoly) and f.has_real_coefficients():
        g = as_quotient(g)
        return RegularQuotient(g.den, star_product(f, g.num), g.right_const)
    rf, pf = as_quotient(f).normal_form()
    rg, pg = as_quotient(g).normal_form()
    return RegularQuotient(star_product(rf, rg), star_product(pf, pg))


def linear_fractional(f, a1, b1, a2, b2):
    """``(a1 + f b1)^{-*} * (a2 + f b2)`` for constants ``a1, b1, a2, b2``.

    Writing ``f = D^{-*} * G`` both brackets share the factor ``D^{-*}``, which
    cancels: the result is ``(D a1 + G b1)^{-*} * (D a2 + G b2)``.  This covers
    the pseudo-hyperbolic quotients of the Schwarz-Pick lemmas and the Julia
    quotient without a general composition of regular maps.
    """
    d, g = _parts(f)
    den = d.times_right(a1) + g.times_right(b1)
    num = d.times_right(a2) + g.times_right(b2)
    return RegularQuotient(den, num)
