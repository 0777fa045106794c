"""Approach regions at boundary points and seeded samplers for them."""

import math
from dataclasses import dataclass

import numpy as np

from ..errors import InvalidParameter
from ..kernels import qmul
from ..quaternion import Quaternion, as_array, as_points, as_quaternion, slice_decompose

__all__ = [
    "Orisphere",
    "Stolz",
    "Cone",
    "region_contains",
    "sample_region",
    "sample_ball",
    "sample_halfspace",
    "random_unit_imaginary",
    "ray_directions",
]


@dataclass(frozen=True)
class Orisphere:
    """``S(p, k) = {q : |p - q|^2 < k (1 - |q|^2)}``, a ball tangent to the sphere at ``p``."""

    p: Quaternion
    k: float

    def __post_init__(self):
        object.__setattr__(self, "p", as_quaternion(self.p))
        if not self.k > 0:
            raise InvalidParameter("orisphere parameter k must be positive")


@dataclass(frozen=True)
class Stolz:
    """``R(xi, k) = {q : |q - xi| < k (1 - |q|)}`` with ``k > 1``."""

    xi: Quaternion
    k: float

    def __post_init__(self):
        object.__setattr__(self, "xi", as_quaternion(self.xi))
        if not self.k > 1:
            raise InvalidParameter("Stolz aperture k must exceed 1")


@dataclass(frozen=True)
class Cone:
    """``S_gamma = {q : Re(q) > gamma |q|}`` in the right half-space."""

    gamma: float

    def __post_init__(self):
        if not self.gamma > 0:
            raise InvalidParameter("cone parameter gamma must be positive")


def region_contains(region, q):
    """Strict membership; vectorized over ``(..., 4)`` arrays."""
    arr, scalar = as_points(q)
    mod2 = np.sum(arr * arr, axis=-1)
    if isinstance(region, Orisphere):
        d = arr - as_array(region.p)
        inside = np.sum(d * d, axis=-1) < region.k * (1.0 - mod2)
    elif isinstance(region, Stolz):
        inside = np.linalg.norm(arr - as_array(region.xi), axis=-1) < region.k * (1.0 - np.sqrt(mod2))
    elif isinstance(region, Cone):
        inside = arr[..., 0] > region.gamma * np.sqrt(mod2)
    else:
        raise TypeError(f"unknown approach region {region!r}")
    return bool(inside) if scalar else inside


def random_unit_imaginary(rng, n):
    v = rng.standard_normal((n, 3))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    out = np.zeros((n, 4))
    out[:, 1:] = v
    return out


def _uniform_ball(rng, n, center, radius):
    d = rng.standard_normal((n, 4))
    d /= np.linalg.norm(d, axis=1, keepdims=True)
    r = radius * rng.random(n) ** 0.25
    return center + d * r[:, None]


def sample_ball(n, seed=0, radius=1.0):
    """``n`` seeded points uniform in the open ball ``|q| < radius``."""
    rng = np.random.default_rng(seed)
    return _uniform_ball(rng, n, np.zeros(4), radius)


def sample_halfspace(n, seed=0, r_min=1e-3, r_max=1e3):
    """Seeded points of ``Re q > 0`` with log-uniform modulus in ``[r_min, r_max]``."""
    rng = np.random.default_rng(seed)
    d = rng.standard_normal((n, 4))
    d /= np.linalg.norm(d, axis=1, keepdims=True)
    d[:, 0] = np.abs(d[:, 0])
    d[d[:, 0] == 0.0, 0] = 1e-300
    r = np.exp(rng.uniform(math.log(r_min), math.log(r_max), n))
    return d * r[:, None]


def ray_directions(xi, n_rays, half_angle, seed=0, in_slice=False):
    """Unit directions ``-xi (cos t + sin t I_j)`` pointing into the ball from ``xi``.

    The angles ``t`` are spread evenly over ``[-half_angle, half_angle]``.
    With ``in_slice`` set and non-real ``xi``, every ``I_j`` is the imaginary
    unit of ``xi`` so the rays stay inside its slice ``C_I``.
    """
    xi = as_quaternion(xi)
    rng = np.random.default_rng(seed)
    thetas = np.linspace(-half_angle, half_angle, n_rays) if n_rays > 1 else np.zeros(1)
    _, y, unit = slice_decompose(xi)
    if in_slice and y > 0.0:
        units = np.tile(as_array(unit), (n_rays, 1))
    else:
        units = random_unit_imaginary(rng, n_rays)
    e = units * np.sin(thetas)[:, None]
    e[:, 0] = np.cos(thetas)
    return qmul(-as_array(xi), e)


def sample_region(region, n, seed=0, n_rays=7):
    """``n`` seeded points strictly inside ``region``.

    Orisphere samples are uniform in the tangent ball.  Stolz samples lie on
    ``n_rays`` fixed rays issuing from ``xi`` with distances log-uniform in
    ``[2^-30, 2^-2]``, so they accumulate at ``xi``.  Cone samples have
    log-uniform modulus in ``[1e-3, 1e3]``.
    """
    if n < 1:
        raise InvalidParameter("sample count must be at least 1")
    rng = np.random.default_rng(seed)
    out = []
    have = 0
    while have < n:
        batch = _draw(region, rng, 2 * (n - have) + 8, n_rays)
        batch = batch[region_contains(region, batch)]
        out.append(batch)
        have += batch.shape[0]
    return np.concatenate(out)[:n]


def _draw(region, rng, m, n_rays):
    if isinstance(region, Orisphere):
        k = region.k
        return _uniform_ball(rng, m, as_array(region.p) / (1.0 + k), k / (1.0 + k))
    if isinstance(region, Stolz):
        xi = as_quaternion(region.xi)
        xi = xi * (1.0 / abs(xi))
        # cos(angle to the inward normal) must beat 1/k
        half = math.acos(0.5 * (1.0 + 1.0 / region.k))
        dirs = ray_directions(xi, n_rays, half, seed=int(rng.integers(2**31)))
        pick = rng.integers(0, n_rays, m)
        t = 2.0 ** -rng.uniform(2.0, 30.0, m)
        return as_array(xi) + dirs[pick] * t[:, None]
    if isinstance(region, Cone):
        if region.gamma >= 1.0:
            raise InvalidParameter("the cone Re q > gamma |q| is empty for gamma >= 1")
        c = rng.uniform(region.gamma, 1.0, m)
        s = np.sqrt(1.0 - c * c)
        pts = random_unit_imaginary(rng, m) * s[:, None]
        pts[:, 0] = c
        r = np.exp(rng.uniform(math.log(1e-3), math.log(1e3), m))
        return pts * r[:, None]
    raise TypeError(f"unknown approach region {region!r}")
