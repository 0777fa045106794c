"""Seeded families of test maps.

Ball self-maps: star products of Moebius factors with unit right constants
(Blaschke-type, unimodular on the whole sphere) and polynomials whose
coefficient moduli sum to at most 1.  Half-space maps: affine maps, shifted
reciprocals and positive sums of them.  Maps of the ball into the closed
right half-space: Cayley transforms of ball self-maps and ``(1 + q u) t``.
"""

import numpy as np

from .quaternion import ONE, Quaternion, inverse
from .quotient import RegularQuotient, linear_fractional, mobius_ball, star_maps
from .series import RegularPoly, monomial, star_product

__all__ = [
    "random_quaternion",
    "random_unit",
    "mobius_corpus",
    "blaschke_corpus",
    "bounded_poly_corpus",
    "ball_corpus",
    "normalize_at_one",
    "halfspace_corpus",
    "positive_sum",
    "burns_krantz_corpus",
]


def random_quaternion(rng, max_modulus=1.0):
    """Uniform in the ball ``|q| < max_modulus``."""
    d = rng.standard_normal(4)
    d /= np.linalg.norm(d)
    return Quaternion.from_array(d * max_modulus * rng.random() ** 0.25)


def random_unit(rng):
    d = rng.standard_normal(4)
    return Quaternion.from_array(d / np.linalg.norm(d))


def mobius_corpus(n, seed=0, max_modulus=0.7):
    rng = np.random.default_rng(seed)
    return [mobius_ball(random_quaternion(rng, max_modulus)) for _ in range(n)]


def blaschke_corpus(n, seed=0, max_factors=4, max_modulus=0.7, power_prob=0.25):
    """Star products of 1 to ``max_factors`` Moebius factors, each with a unit right constant.

    With probability ``power_prob`` a factor ``q^m`` (``m`` = 1 or 2) is put in
    front, which makes the map vanish at the origin.
    """
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        m = int(rng.integers(1, max_factors + 1))
        f = None
        for _ in range(m):
            g = mobius_ball(random_quaternion(rng, max_modulus)).times_right(random_unit(rng))
            f = g if f is None else star_maps(f, g)
        if rng.random() < power_prob:
            f = star_maps(monomial(int(rng.integers(1, 3))), f)
        out.append(f)
    return out


def bounded_poly_corpus(n, seed=0, max_degree=6):
    """Polynomials with ``sum |a_n| <= 1``, hence self-maps of the ball."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        deg = int(rng.integers(1, max_degree + 1))
        c = rng.standard_normal((deg + 1, 4))
        c *= rng.random() / np.sum(np.linalg.norm(c, axis=1))
        out.append(RegularPoly(c))
    return out


def ball_corpus(n, seed=0):
    """Half Blaschke-type maps, half coefficient-bounded polynomials."""
    return blaschke_corpus(n - n // 2, seed) + bounded_poly_corpus(n // 2, seed + 1)


def normalize_at_one(f):
    """``f * f(1)^{-1}``: fixes the boundary point 1 when ``|f(1)| = 1``."""
    return f.times_right(inverse(f(ONE)))


def _affine(a, b):
    return RegularPoly([np.array(b), [a, 0.0, 0.0, 0.0]])


def _reciprocal(s, t):
    """``(q + s)^{-*} t``; a self-map of the right half-space when ``Re s >= 0``, ``t > 0``."""
    return RegularQuotient(RegularPoly([np.array(s), [1.0, 0.0, 0.0, 0.0]]),
                           RegularPoly([[t, 0.0, 0.0, 0.0]]))


def positive_sum(maps, weights=None):
    """``sum w_i f_i`` with ``w_i > 0``, put over the common real denominator.

    Each map is written ``R_i^{-1} P_i`` with ``R_i`` real-coefficient, hence
    central; the sum is ``(prod R_i)^{-1} sum_i (prod_{j != i} R_j) P_i``.
    """
    weights = [1.0] * len(maps) if weights is None else [float(w) for w in weights]
    forms = []
    for f in maps:
        if isinstance(f, RegularPoly):
            forms.append((RegularPoly([[1.0, 0.0, 0.0, 0.0]]), f))
        else:
            forms.append(f.normal_form())
    den = RegularPoly([[1.0, 0.0, 0.0, 0.0]])
    for r, _ in forms:
        den = star_product(den, r)
    num = RegularPoly([[0.0, 0.0, 0.0, 0.0]])
    for i, ((_, p), w) in enumerate(zip(forms, weights)):
        term = p.scale(w)
        for j, (r, _) in enumerate(forms):
            if j != i:
                term = star_product(r, term)
        num = num + term
    if den.degree == 0:
        return num.scale(1.0 / den.coeffs[0, 0])
    return RegularQuotient(den, num)


def halfspace_corpus(n, seed=0):
    """Self-maps of ``Re q > 0``: affine, shifted reciprocal, and positive sums."""
    rng = np.random.default_rng(seed)

    def shift():
        b = rng.standard_normal(4)
        b[0] = abs(b[0])
        return b

    def one():
        if rng.random() < 0.5:
            return _affine(float(rng.uniform(0.1, 3.0)), shift())
        return _reciprocal(shift(), float(rng.uniform(0.1, 3.0)))

    out = []
    for i in range(n):
        kind = i % 3
        if kind == 0:
            out.append(_affine(float(rng.uniform(0.1, 3.0)), shift()))
        elif kind == 1:
            out.append(_reciprocal(shift(), float(rng.uniform(0.1, 3.0))))
        else:
            k = int(rng.integers(2, 4))
            out.append(positive_sum([one() for _ in range(k)], rng.uniform(0.2, 2.0, k)))
    return out


def burns_krantz_corpus(n, seed=0):
    """Nonzero maps of the ball into ``Re >= 0``, most of them vanishing at -1.

    Three families rotate: Cayley images ``(1 + f)^{-*} * (1 - f)`` of
    Blaschke-type maps rescaled so that ``f(-1) = 1`` (first-order zero at
    -1), Cayley images of coefficient-bounded polynomials (no zero on the
    sphere), and ``(1 + q u) t`` with ``|u| <= 1``, ``t > 0``.
    """
    rng = np.random.default_rng(seed)
    blaschke = blaschke_corpus(n, seed + 7)
    polys = bounded_poly_corpus(n, seed + 8)
    out = []
    for i in range(n):
        kind = i % 3
        if kind == 0:
            f = blaschke[i]
            f = f.times_right(inverse(f(-ONE)))
            out.append(linear_fractional(f, ONE, ONE, ONE, -ONE))
        elif kind == 1:
            out.append(linear_fractional(polys[i], ONE, ONE, ONE, -ONE))
        else:
            u = ONE if rng.random() < 0.5 else random_quaternion(rng)
            t = float(rng.uniform(0.2, 2.0))
            out.append(RegularPoly([[t, 0.0, 0.0, 0.0], np.array(u) * t]))
    return out
