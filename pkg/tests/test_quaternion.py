import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from srk.errors import ParseError, QuaternionZeroDivision
from srk.quaternion import (I, J, K, ONE, Quaternion, as_points, format_quaternion, inner, inverse,
                            lie_bracket, parse_quaternion, slice_decompose)

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
quats = st.builds(Quaternion, finite, finite, finite, finite)


def close(a, b, tol=1e-12):
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def test_hamilton_table():
    assert I * J == K and J * K == I and K * I == J
    assert J * I == -K
    assert I * I == -ONE and J * J == -ONE and K * K == -ONE


@given(quats, quats, quats)
def test_associative(p, q, r):
    assert close((p * q) * r, p * (q * r), 1e-11)


@given(quats, quats)
def test_norm_is_multiplicative(p, q):
    assert math.isclose(abs(p * q), abs(p) * abs(q), rel_tol=1e-12, abs_tol=1e-12)


@given(quats, quats)
def test_conjugate_reverses_products(p, q):
    assert close((p * q).conj(), q.conj() * p.conj())


@given(quats)
def test_inverse(q):
    if abs(q) < 1e-3:
        return
    assert close(q * inverse(q), ONE)
    assert close(inverse(q) * q, ONE)


def test_inverse_of_zero_raises():
    with pytest.raises(QuaternionZeroDivision):
        inverse(Quaternion())
    with pytest.raises(ZeroDivisionError):
        Quaternion().inverse()
    with pytest.raises(TypeError):
        ONE / J


@given(quats)
def test_slice_decompose_rebuilds(q):
    x, y, u = slice_decompose(q)
    assert y >= 0.0
    assert math.isclose(abs(u), 1.0, rel_tol=1e-12)
    assert u.real == 0.0
    assert close(Quaternion(x) + u * y, q)


def test_slice_decompose_real_uses_i():
    assert slice_decompose(Quaternion(-2.5)) == (-2.5, 0.0, I)


def test_lie_bracket_and_inner():
    assert lie_bracket(I, J) == 2.0 * K
    assert lie_bracket(ONE, K) == Quaternion()
    assert inner(I, J) == 0.0
    assert inner(Quaternion(1, 2, 3, 4), Quaternion(1, 2, 3, 4)) == 30.0


@given(quats)
def test_format_parse_round_trip(q):
    assert parse_quaternion(format_quaternion(q)) == q


def test_format_is_compact():
    assert format_quaternion(Quaternion(0, -1, 0.5, 1e-20)) == "[0,-1,0.5,9.9999999999999995e-21]"
    assert parse_quaternion(" [ 1 , -2.5e0, .5, +3 ] ") == Quaternion(1, -2.5, 0.5, 3)


@pytest.mark.parametrize("text", ["", "[1,2,3]", "(1,2,3,4)", "[1,2,3,nan]", "[1,,2,3]", "1+2i"])
def test_parse_rejects(text):
    with pytest.raises(ParseError):
        parse_quaternion(text)


def test_as_points():
    arr, scalar = as_points(J)
    assert scalar and np.array_equal(arr, [0, 0, 1, 0])
    arr, scalar = as_points(np.zeros((3, 4)))
    assert not scalar and arr.shape == (3, 4)
    arr, scalar = as_points(2.0)
    assert scalar and np.array_equal(arr, [2, 0, 0, 0])
