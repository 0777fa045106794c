import math

import numpy as np
import pytest

from conftest import J
from srk.boundary.regions import (Cone, Orisphere, Stolz, ray_directions, region_contains, sample_ball,
                                  sample_halfspace, sample_region)
from srk.errors import InvalidParameter
from srk.quaternion import ONE, Quaternion


def test_membership():
    assert region_contains(Orisphere(ONE, 1.0), Quaternion(0.5))
    assert not region_contains(Orisphere(ONE, 1.0), Quaternion(-0.5))
    assert region_contains(Stolz(ONE, 2.0), Quaternion(0.9))
    assert not region_contains(Stolz(ONE, 2.0), Quaternion(0.9, 0.2))
    assert region_contains(Cone(0.5), Quaternion(1.0, 0.5))
    assert not region_contains(Cone(0.5), Quaternion(1.0, 2.0))
    # the boundary point itself is excluded
    assert not region_contains(Stolz(ONE, 2.0), ONE)


def test_stolz_contains_radius_only_near_point():
    r = Stolz(ONE, 1.5)
    assert region_contains(r, Quaternion(0.99))
    assert not region_contains(r, Quaternion(0.0, 0.5))


@pytest.mark.parametrize("bad", [lambda: Orisphere(ONE, 0.0), lambda: Stolz(ONE, 1.0), lambda: Cone(-0.1)])
def test_bad_parameters(bad):
    with pytest.raises(InvalidParameter):
        bad()


@pytest.mark.parametrize("region", [Orisphere(ONE, 0.5), Orisphere(J, 2.0), Stolz(ONE, 2.0),
                                    Stolz(-ONE, 1.2), Stolz(J, 3.0), Cone(0.5), Cone(0.9)])
def test_samples_inside(region):
    pts = sample_region(region, 300, seed=4)
    assert pts.shape == (300, 4)
    assert np.all(region_contains(region, pts))
    assert np.all(np.linalg.norm(pts, axis=1) < 1.0) or isinstance(region, Cone)


def test_stolz_samples_accumulate():
    pts = sample_region(Stolz(ONE, 2.0), 2000, seed=1)
    assert np.min(np.linalg.norm(pts - np.array(ONE), axis=1)) < 1e-7


def test_sampling_is_seeded():
    r = Orisphere(ONE, 1.0)
    assert np.array_equal(sample_region(r, 50, seed=3), sample_region(r, 50, seed=3))
    assert not np.array_equal(sample_region(r, 50, seed=3), sample_region(r, 50, seed=4))
    assert np.array_equal(sample_ball(10, 2), sample_ball(10, 2))


def test_sample_errors():
    with pytest.raises(InvalidParameter):
        sample_region(Cone(0.5), 0)
    with pytest.raises(InvalidParameter):
        sample_region(Cone(1.0), 10)


def test_ball_and_halfspace_samples():
    b = sample_ball(1000, seed=0, radius=0.5)
    assert np.max(np.linalg.norm(b, axis=1)) < 0.5
    h = sample_halfspace(1000, seed=0)
    assert np.all(h[:, 0] > 0)
    r = np.linalg.norm(h, axis=1)
    assert r.min() >= 1e-3 * (1 - 1e-12) and r.max() <= 1e3 * (1 + 1e-12)


def test_ray_directions_point_inward():
    for xi in (ONE, J, Quaternion(0.6, 0, 0.8, 0)):
        d = ray_directions(xi, 7, math.pi / 4, in_slice=True)
        assert np.allclose(np.linalg.norm(d, axis=1), 1.0)
        # angle to the inward normal -xi stays within the half-angle
        cos = -(d @ np.array(xi))
        assert np.all(cos >= math.cos(math.pi / 4) - 1e-12)


def test_in_slice_rays_stay_in_slice():
    xi = Quaternion(0.6, 0, 0.8, 0)
    d = ray_directions(xi, 5, 0.5, in_slice=True)
    assert np.allclose(d[:, [1, 3]], 0.0)
