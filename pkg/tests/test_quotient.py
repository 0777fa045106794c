"""Quotient evaluation against the ``R^{-1} P`` normal form and closed forms."""

import math

import numpy as np
import pytest

from conftest import I, J, bracket_map
from srk.errors import InvalidParameter, OutOfDomain, PoleAtMinusOne, SingularExpansion, SingularPoint
from srk.quaternion import K, ONE, Quaternion
from srk.quotient import (RegularQuotient, as_quotient, cayley, directional_derivative, eval_quotient,
                          expand_quotient, left_division, linear_fractional, mobius_ball,
                          series_derivative, spherical_coeffs, star_maps, t_transform,
                          zero_free_radius)
from srk.series import RegularPoly, constant, eval_poly, monomial, star_product


def normal_form_eval(Q, pts):
    # R has real coefficients, so R^{-*} * P is the pointwise R(q)^{-1} P(q)
    r, p = Q.normal_form()
    return np.array([np.array(eval_poly(r, Quaternion(*q)).inverse() * eval_poly(p, Quaternion(*q)))
                     for q in pts])


def random_quotient(rng, deg=2, scale=0.3):
    den = rng.standard_normal((deg + 1, 4)) * scale
    den[0] = [1, 0, 0, 0]
    return RegularQuotient(RegularPoly(den), RegularPoly(rng.standard_normal((deg + 2, 4))),
                           Quaternion(*rng.standard_normal(4)))


def test_twist_route_matches_normal_form(rng):
    pts = rng.standard_normal((200, 4)) * 0.5
    for _ in range(20):
        Q = random_quotient(rng)
        assert np.allclose(eval_quotient(Q, pts), normal_form_eval(Q, pts), rtol=1e-10, atol=1e-11)


def test_twist_preserves_modulus_and_real_part(rng):
    f = RegularPoly(rng.standard_normal((3, 4)))
    q = rng.standard_normal((50, 4))
    t = t_transform(f, q)
    assert np.allclose(np.linalg.norm(t, axis=1), np.linalg.norm(q, axis=1), rtol=1e-13)
    assert np.allclose(t[:, 0], q[:, 0], atol=1e-13)


def test_twist_singular():
    with pytest.raises(SingularPoint):
        t_transform(RegularPoly([[0, 0, 0, 0], [1, 0, 0, 0]]), Quaternion())


def test_quotient_recovers_numerator(rng):
    den = RegularPoly(rng.standard_normal((2, 4)))
    g = RegularPoly(rng.standard_normal((3, 4)))
    Q = RegularQuotient(den, star_product(den, g))
    pts = rng.standard_normal((100, 4)) * 0.7
    assert np.allclose(eval_quotient(Q, pts), eval_poly(g, pts), atol=1e-10)


def test_bracket_map_values(fb):
    assert fb(J).isclose(J, 1e-15)
    assert fb(Quaternion()).isclose(Quaternion(0, -0.5, 0, 0), 1e-15)
    assert zero_free_radius(fb) == pytest.approx(2.0)


def test_scalar_and_batch_agree(fb, rng):
    pts = rng.standard_normal((10, 4)) * 0.5
    batch = eval_quotient(fb, pts)
    for p, v in zip(pts, batch):
        assert np.allclose(np.array(fb(Quaternion(*p))), v, atol=1e-15)


def test_singular_point_raises():
    Q = RegularQuotient(RegularPoly([[1, 0, 0, 0], [-1, 0, 0, 0]]), constant(1.0))
    with pytest.raises(SingularPoint):
        Q(ONE)
    # the zero set of q^2 + 1 is the whole unit imaginary sphere
    Q = RegularQuotient(RegularPoly([[1, 0, 0, 0], [0, 0, 0, 0], [1, 0, 0, 0]]), constant(1.0))
    with pytest.raises(SingularPoint):
        Q(Quaternion(0, 0.6, 0, 0.8))


def test_declared_radius_respected():
    Q = RegularQuotient(RegularPoly([[1, 0, 0, 0]], declared_radius=1.0), monomial(1))
    with pytest.raises(OutOfDomain):
        Q(Quaternion(1.0))


def test_derivative_matches_series(fb, rng):
    d = fb.derivative()
    for p in rng.standard_normal((10, 4)) * 0.4:
        q = Quaternion(*p)
        assert abs(d(q) - series_derivative(fb, q)) <= 1e-12


def test_derivative_finite_difference(fb):
    # along the real axis the slice derivative is the ordinary one
    h = 1e-6
    x = Quaternion(0.3)
    fd = (fb(x + h) - fb(x - h)) * (1 / (2 * h))
    assert abs(fd - fb.derivative()(x)) <= 1e-8


def test_expansion_matches_values(fb, rng):
    s = expand_quotient(fb, 80)
    pts = rng.standard_normal((50, 4))
    pts *= (0.9 / np.linalg.norm(pts, axis=1))[:, None]
    assert np.allclose(eval_poly(s, pts), eval_quotient(fb, pts), atol=1e-13)


def test_expansion_refuses_singular():
    Q = RegularQuotient(RegularPoly([[1, 0, 0, 0], [0, 0, 0, 0], [1, 0, 0, 0]]), constant(1.0))
    with pytest.raises(SingularExpansion):
        expand_quotient(Q, 10)
    Q = RegularQuotient(monomial(1), constant(1.0))
    with pytest.raises(SingularExpansion):
        expand_quotient(Q, 10)
    with pytest.raises(InvalidParameter):
        expand_quotient(bracket_map(), -1)


def test_left_division_identity(rng):
    f = RegularPoly(rng.standard_normal((6, 4)))
    xi = Quaternion(*rng.standard_normal(4))
    r = left_division(f, xi)
    back = star_product(RegularPoly([np.array(-xi), [1, 0, 0, 0]]), r) + constant(f(xi))
    assert np.allclose(back.coeffs, f.coeffs, atol=1e-12)


def test_spherical_coeffs_of_monomial():
    # q^2 around J: A1 = q0 + conj(q0) = 0, A2 = 1 and f'(J) = A1 + 2 Im(J) A2 = 2J
    a1, a2 = spherical_coeffs(monomial(2), J)
    assert a1.isclose(Quaternion(), 1e-15) and a2.isclose(ONE, 1e-15)


def test_derivative_identity(fb, rng):
    for _ in range(5):
        q0 = Quaternion(*rng.standard_normal(4)) * 0.3
        a1, a2 = spherical_coeffs(fb, q0)
        assert abs(series_derivative(fb, q0) - (a1 + 2.0 * (q0.imag * a2))) <= 1e-12


def test_directional_derivative_finite_difference(fb, rng):
    q0 = Quaternion(0.1, 0.2, -0.1, 0.3)
    for v in (ONE, I, Quaternion(*rng.standard_normal(4))):
        v = v * (1 / abs(v))
        h = 1e-6
        fd = (fb(q0 + v * h) - fb(q0 - v * h)) * (1 / (2 * h))
        assert abs(fd - directional_derivative(fb, q0, v)) <= 1e-8
    with pytest.raises(InvalidParameter):
        directional_derivative(fb, q0, Quaternion(2))


def test_mobius_maps_sphere_to_sphere(rng):
    u = Quaternion(0.2, -0.3, 0.1, 0.4)
    f = mobius_ball(u)
    assert f(u).isclose(Quaternion(), 1e-15)
    s = rng.standard_normal((200, 4))
    s /= np.linalg.norm(s, axis=1)[:, None]
    assert np.allclose(np.linalg.norm(f(s), axis=1), 1.0, atol=1e-13)
    b = s * rng.random((200, 1)) * 0.99
    assert np.max(np.linalg.norm(f(b), axis=1)) < 1.0
    assert mobius_ball(u, normalize=True)(ONE).isclose(ONE, 1e-14)
    with pytest.raises(InvalidParameter):
        mobius_ball(Quaternion(1.0))


def test_cayley():
    assert cayley(Quaternion()) == ONE
    assert cayley(ONE) == Quaternion()
    assert abs(abs(cayley(J * 3.0)) - 1.0) <= 1e-15
    with pytest.raises(PoleAtMinusOne):
        cayley(-ONE)


def test_star_maps(rng):
    f, g = random_quotient(rng), random_quotient(rng)
    q = rng.standard_normal((30, 4)) * 0.3
    fg = star_maps(f, g)
    fq = eval_quotient(f, q)
    for p, v, w in zip(q, fq, eval_quotient(fg, q)):
        p, v = Quaternion(*p), Quaternion(*v)
        assert np.allclose(np.array(v * g(v.inverse() * p * v)), w, atol=1e-11)
    r = RegularPoly([[0.5, 0, 0, 0], [2, 0, 0, 0]])
    kept = star_maps(r, g)
    assert kept.den == g.den


def test_linear_fractional_matches_pointwise(fb, rng):
    # ball Schwarz-Pick quotient at q0 = 0: (1 - f conj(w))^{-*} * (f - w)
    w = fb(Quaternion())
    lf = linear_fractional(fb, ONE, -w.conj(), -w, ONE)
    assert lf(Quaternion()).isclose(Quaternion(), 1e-15)
    assert np.max(np.linalg.norm(lf(rng.standard_normal((100, 4)) * 0.2), axis=1)) < 1.0


def test_as_quotient():
    f = monomial(2)
    Q = as_quotient(f)
    assert Q(J) == f(J)
    assert as_quotient(Q) is Q
    with pytest.raises(TypeError):
        as_quotient(3.0)


def test_right_const_and_equality(fb):
    g = fb.times_right(K)
    assert g(J).isclose(J * K, 1e-15)
    assert g == fb.times_right(K) and g != fb
    assert hash(g) == hash(fb.times_right(K))


def test_derivative_at_zero_from_series(fb):
    s = expand_quotient(fb, 10)
    for n in range(5):
        want = Quaternion.from_array(s.coeffs[n]) * math.factorial(n)
        assert abs(fb.derivative_at_zero(n) - want) <= 1e-12
