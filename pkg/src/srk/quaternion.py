"""Quaternion values, slice decomposition and the commutator bracket.

A :class:`Quaternion` is an immutable 4-tuple of floats ``w + x i + y j + z k``.
Batched work goes through :mod:`srk.kernels` on ``(..., 4)`` arrays; this
class is the scalar face of the library and the type every public function
hands back.
"""

import math
import re
from dataclasses import dataclass

import numpy as np

from .errors import ParseError, QuaternionZeroDivision

__all__ = [
    "Quaternion",
    "ONE",
    "ZERO",
    "I",
    "J",
    "K",
    "ZERO_EPS",
    "mul",
    "inverse",
    "slice_decompose",
    "lie_bracket",
    "inner",
    "as_quaternion",
    "as_array",
    "as_points",
    "parse_quaternion",
    "format_quaternion",
    "format_real",
]

#: moduli below this are treated as an exact zero by :func:`inverse`
ZERO_EPS = 1e-300


@dataclass(frozen=True, slots=True)
class Quaternion:
    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    def __post_init__(self):
        for name in ("w", "x", "y", "z"):
            object.__setattr__(self, name, float(getattr(self, name)))

    @classmethod
    def from_array(cls, a):
        a = np.asarray(a, dtype=np.float64)
        return cls(a[0], a[1], a[2], a[3])

    def __array__(self, dtype=None, copy=None):
        return np.array((self.w, self.x, self.y, self.z), dtype=dtype or np.float64)

    def __iter__(self):
        return iter((self.w, self.x, self.y, self.z))

    def to_list(self):
        return [self.w, self.x, self.y, self.z]

    @property
    def real(self):
        return self.w

    @property
    def imag(self):
        return Quaternion(0.0, self.x, self.y, self.z)

    def conj(self):
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm2(self):
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def __abs__(self):
        return math.sqrt(self.norm2())

    def inverse(self):
        return inverse(self)

    def is_real(self, tol=0.0):
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z) <= tol

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __add__(self, other):
        o = as_quaternion(other)
        return Quaternion(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)

    __radd__ = __add__

    def __sub__(self, other):
        o = as_quaternion(other)
        return Quaternion(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)

    def __rsub__(self, other):
        return as_quaternion(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(self.w * other, self.x * other, self.y * other, self.z * other)
        return mul(self, as_quaternion(other))

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return self * other
        return mul(as_quaternion(other), self)

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(self.w / other, self.x / other, self.y / other, self.z / other)
        raise TypeError("quaternion division is one-sided; use q * inverse(p) or inverse(p) * q")

    def isclose(self, other, tol=1e-12):
        return abs(self - as_quaternion(other)) <= tol

    def __str__(self):
        return format_quaternion(self)


ONE = Quaternion(1.0)
ZERO = Quaternion()
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def as_quaternion(value):
    """Coerce a real, a 4-sequence or a Quaternion into a Quaternion."""
    if isinstance(value, Quaternion):
        return value
    if isinstance(value, (int, float, np.floating, np.integer)):
        return Quaternion(float(value))
    arr = np.asarray(value, dtype=np.float64)
    if arr.shape != (4,):
        raise TypeError(f"cannot interpret {value!r} as a quaternion")
    return Quaternion.from_array(arr)


def as_array(value):
    """Quaternion(s) as a float64 array with trailing axis 4."""
    if isinstance(value, Quaternion):
        return np.array(value)
    if isinstance(value, (int, float)):
        return np.array((float(value), 0.0, 0.0, 0.0))
    if isinstance(value, (list, tuple)) and value and isinstance(value[0], Quaternion):
        return np.array([np.array(v) for v in value])
    return np.asarray(value, dtype=np.float64)


def as_points(value):
    """Return ``(array, is_scalar)`` for a point argument.

    Scalars (Quaternion, real, 4-sequence) come back as a ``(4,)`` array with
    ``is_scalar`` set, so callers can hand back a :class:`Quaternion`.
    """
    if isinstance(value, (Quaternion, int, float)):
        return as_array(as_quaternion(value)), True
    arr = as_array(value)
    return arr, arr.ndim == 1


def mul(p, q):
    """Hamilton product ``p q``."""
    return Quaternion(
        p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
        p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
        p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
        p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
    )


def inverse(q, eps=ZERO_EPS):
    """``conj(q) / |q|^2``; raises :class:`QuaternionZeroDivision` when ``|q| < eps``."""
    q = as_quaternion(q)
    n2 = q.norm2()
    if math.sqrt(n2) < eps:
        raise QuaternionZeroDivision(f"cannot invert {q}")
    return Quaternion(q.w / n2, -q.x / n2, -q.y / n2, -q.z / n2)


def slice_decompose(q):
    """Split ``q = x + y I`` with ``y >= 0`` and ``I`` a unit imaginary.

    Real input gets ``I = i`` so results are reproducible.
    """
    q = as_quaternion(q)
    y = math.sqrt(q.x * q.x + q.y * q.y + q.z * q.z)
    if y == 0.0:
        return q.w, 0.0, I
    return q.w, y, Quaternion(0.0, q.x / y, q.y / y, q.z / y)


def lie_bracket(p, q):
    """Commutator ``p q - q p``."""
    p, q = as_quaternion(p), as_quaternion(q)
    return mul(p, q) - mul(q, p)


def inner(p, q):
    """Euclidean inner product ``Re(p conj(q))`` on H = R^4."""
    p, q = as_quaternion(p), as_quaternion(q)
    return p.w * q.w + p.x * q.x + p.y * q.y + p.z * q.z


_NUM = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?"
_QUAT_RE = re.compile(r"^\s*\[\s*(%s)\s*,\s*(%s)\s*,\s*(%s)\s*,\s*(%s)\s*\]\s*$" % ((_NUM,) * 4))


def parse_quaternion(text):
    """Parse the ``[w, x, y, z]`` literal."""
    m = _QUAT_RE.match(text)
    if m is None:
        raise ParseError(f"expected a quaternion literal [w,x,y,z], got {text!r}")
    return Quaternion(*(float(g) for g in m.groups()))


def format_real(value):
    """17 significant digits, so the text round-trips exactly."""
    value = float(value)
    if value == 0.0:
        return "0"
    return format(value, ".17g")


def format_quaternion(q):
    return "[" + ",".join(format_real(c) for c in as_quaternion(q)) + "]"
