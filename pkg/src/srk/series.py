"""Regular polynomials ``f(q) = sum q^n a_n`` and their star algebra.

Coefficients sit on the right of the powers of ``q``.  Products of regular
functions are the coefficient convolution (the star product), not the
pointwise product; the two agree only after the twist
``q -> f(q)^{-1} q f(q)``.
"""

import math

import numpy as np

from . import kernels
from .errors import NotOrthogonal, OutOfDomain
from .quaternion import Quaternion, as_array, as_points, as_quaternion, inner

__all__ = [
    "RegularPoly",
    "eval_poly",
    "star_product",
    "regular_conjugate",
    "symmetrization",
    "slice_derivative",
    "split",
    "monomial",
    "constant",
]


def _trim(coeffs):
    nz = np.flatnonzero(np.any(coeffs != 0.0, axis=1))
    end = nz[-1] + 1 if nz.size else 1
    return coeffs[:end]


class RegularPoly:
    """Finite right-coefficient power series on the ball ``|q| < declared_radius``.

    ``coeffs`` is an ``(n, 4)`` array, ``a_0`` first.  Exact trailing zeros are
    trimmed, so ``degree`` is canonical.  Instances are immutable.
    """

    __slots__ = ("_coeffs", "declared_radius")

    def __init__(self, coeffs, declared_radius=math.inf):
        arr = as_array(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs
        arr = np.array(arr, dtype=np.float64).reshape(-1, 4)
        if arr.shape[0] == 0:
            arr = np.zeros((1, 4))
        arr = _trim(arr) + 0.0  # normalizes -0.0
        arr.setflags(write=False)
        if not declared_radius > 0:
            raise ValueError("declared_radius must be positive")
        self._coeffs = arr
        self.declared_radius = float(declared_radius)

    @property
    def coeffs(self):
        return self._coeffs

    @property
    def degree(self):
        return self._coeffs.shape[0] - 1

    def coefficient(self, n):
        if n < 0 or n > self.degree:
            return Quaternion()
        return Quaternion.from_array(self._coeffs[n])

    def is_zero(self):
        return not np.any(self._coeffs)

    def has_real_coefficients(self, tol=0.0):
        return bool(np.all(np.abs(self._coeffs[:, 1:]) <= tol))

    def __call__(self, q):
        return eval_poly(self, q)

    def __eq__(self, other):
        if not isinstance(other, RegularPoly):
            return NotImplemented
        return (self.declared_radius == other.declared_radius
                and np.array_equal(self._coeffs, other._coeffs))

    def __hash__(self):
        return hash((self._coeffs.tobytes(), self.declared_radius))

    def __repr__(self):
        terms = ", ".join("[" + ", ".join(f"{c:g}" for c in row) + "]" for row in self._coeffs)
        return f"RegularPoly([{terms}])"

    def __add__(self, other):
        other = _as_poly(other)
        n = max(self.degree, other.degree) + 1
        out = np.zeros((n, 4))
        out[: self.degree + 1] += self._coeffs
        out[: other.degree + 1] += other._coeffs
        return RegularPoly(out, min(self.declared_radius, other.declared_radius))

    __radd__ = __add__

    def __neg__(self):
        return RegularPoly(-self._coeffs, self.declared_radius)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def star(self, other):
        return star_product(self, other)

    def times_right(self, c):
        """``f * c`` for a quaternion constant ``c`` (right multiplication of every coefficient)."""
        c = as_array(as_quaternion(c))
        return RegularPoly(kernels.qmul(self._coeffs, c), self.declared_radius)

    def times_left(self, c):
        """``c * f``: the star product with the constant ``c`` on the left."""
        c = as_array(as_quaternion(c))
        return RegularPoly(kernels.qmul(c, self._coeffs), self.declared_radius)

    def scale(self, s):
        return RegularPoly(self._coeffs * float(s), self.declared_radius)

    def conjugate(self):
        return regular_conjugate(self)

    def derivative(self):
        return slice_derivative(self)

    def series(self, n_terms=None, **_):
        """Power-series coefficients; a polynomial is its own expansion."""
        return self

    def derivative_at_zero(self, n):
        """``f^{(n)}(0) = n! a_n``."""
        return self.coefficient(n) * math.factorial(n)


def _as_poly(value):
    if isinstance(value, RegularPoly):
        return value
    return constant(value)


def constant(c):
    return RegularPoly([as_array(as_quaternion(c))])


def monomial(n, c=1.0):
    """``q^n c``."""
    coeffs = np.zeros((n + 1, 4))
    coeffs[n] = as_array(as_quaternion(c))
    return RegularPoly(coeffs)


def eval_poly(f, q):
    """Horner evaluation of ``sum q^n a_n``.

    ``q`` may be a single quaternion (returns a :class:`Quaternion`) or an
    array of shape ``(..., 4)`` (returns an array).  Points with
    ``|q| >= declared_radius`` raise :class:`OutOfDomain`.
    """
    arr, scalar = as_points(q)
    if math.isfinite(f.declared_radius):
        if np.any(np.linalg.norm(arr, axis=-1) >= f.declared_radius):
            raise OutOfDomain(f"point outside the ball of radius {f.declared_radius}")
    out = kernels.horner(f.coeffs, arr)
    return Quaternion.from_array(out) if scalar else out


def star_product(f, g):
    """Coefficient convolution ``c_n = sum_k a_k b_{n-k}``."""
    f, g = _as_poly(f), _as_poly(g)
    return RegularPoly(kernels.convolve(f.coeffs, g.coeffs),
                       min(f.declared_radius, g.declared_radius))


def regular_conjugate(f):
    """``f^c(q) = sum q^n conj(a_n)``."""
    c = np.array(f.coeffs)
    c[:, 1:] *= -1.0
    return RegularPoly(c, f.declared_radius)


def symmetrization(f):
    """``f^s = f * f^c``; its coefficients are real up to rounding."""
    return star_product(f, regular_conjugate(f))


def slice_derivative(f):
    """Termwise derivative ``sum q^n (n+1) a_{n+1}``."""
    c = f.coeffs
    if c.shape[0] == 1:
        return RegularPoly(np.zeros((1, 4)), f.declared_radius)
    n = np.arange(1, c.shape[0], dtype=np.float64)[:, None]
    return RegularPoly(c[1:] * n, f.declared_radius)


def split(f, I, J, tol=1e-12):
    """Splitting ``f_I(z) = F(z) + G(z) J`` on the slice ``C_I``.

    Returns two ``(n, 2)`` arrays holding the coefficients of ``F`` and ``G``
    as ``(real part, coefficient along I)`` pairs.
    """
    I, J = as_quaternion(I), as_quaternion(J)
    if abs(inner(I, J)) > tol:
        raise NotOrthogonal(f"<I, J> = {inner(I, J):.3e} exceeds {tol}")
    K = I * J
    basis = np.array([np.array(b) for b in (Quaternion(1.0), I, J, K)])
    proj = f.coeffs @ basis.T
    return proj[:, :2].copy(), proj[:, 2:].copy()


def eval_split(pairs, I, z):
    """Evaluate a complex coefficient list (pairs along ``I``) at ``z`` in ``C_I``.

    Helper for checking the splitting; ``z`` is given as a quaternion.
    """
    I = as_quaternion(I)
    z = as_quaternion(z)
    zc = complex(z.real, inner(z, I))
    val = sum(complex(a, b) * zc ** n for n, (a, b) in enumerate(pairs))
    return Quaternion(val.real) + I * val.imag
