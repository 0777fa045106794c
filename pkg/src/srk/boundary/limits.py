"""Radial and non-tangential limit estimation at boundary points.

Sequences are sampled at ``h_k = 2^-k`` from the boundary point, so every
quantity of interest is an analytic function of ``h`` for maps regular past
the sphere.  The primary estimate is a Richardson tableau on the
well-conditioned early part of the sequence; a linear least-squares fit on the
last points and an Aitken step serve as cross-checks.
"""

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from ..errors import Diverging, Inconsistent, InvalidParameter, PreconditionFailed
from ..kernels import qinv, qmul
from ..quaternion import Quaternion, as_array, as_quaternion
from .regions import ray_directions, sample_ball

__all__ = [
    "LimitConfig",
    "LimitEstimate",
    "BoundaryLimit",
    "richardson",
    "linear_limit",
    "aitken",
    "extrapolate",
    "usable_length",
    "radial_points",
    "radial_quotient_limit",
    "estimate_alpha",
    "boundary_limit",
    "estimate_boundary_limit",
    "ball_self_map_margin",
]


@dataclass(frozen=True)
class LimitConfig:
    k_min: int = 4
    k_max: int = 36
    # last index fed to the Richardson tableau; past it 1/h amplifies rounding
    k_extrapolate: int = 16
    fit_points: int = 8
    tol: float = 1e-4
    limit_tol: float = 1e-3
    method: str = "richardson"
    n_rays: int = 7
    ray_half_angle: float = math.pi / 4
    divergence: float = 1e6
    slack: float = 1e-9
    identity_slack: float = 1e-12
    order_slack: float = 1e-2
    spot_samples: int = 1024
    stolz_k: float = 2.0
    # cone sequences run to |q| = 2^cone_k_max; beyond that high powers overflow
    cone_k_max: int = 24

    def __post_init__(self):
        if not 1 <= self.k_min < self.k_max <= 45:
            raise InvalidParameter("need 1 <= k_min < k_max <= 45")
        if not self.k_min < self.k_extrapolate <= self.k_max:
            raise InvalidParameter("k_extrapolate must lie in (k_min, k_max]")
        if not self.k_extrapolate <= self.cone_k_max <= 45:
            raise InvalidParameter("cone_k_max must lie in [k_extrapolate, 45]")
        if not 2 <= self.fit_points <= self.cone_k_max - self.k_min + 1:
            raise InvalidParameter("fit_points exceeds the cone sequence length")
        if not 2 <= self.fit_points <= self.k_max - self.k_min + 1:
            raise InvalidParameter("fit_points must be between 2 and the sequence length")
        if self.method not in ("richardson", "linear"):
            raise InvalidParameter(f"unknown extrapolation method {self.method!r}")
        if self.n_rays < 1:
            raise InvalidParameter("n_rays must be positive")
        if not 0 <= self.ray_half_angle < math.pi / 2:
            raise InvalidParameter("ray_half_angle must lie in [0, pi/2)")

    def as_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class LimitEstimate:
    value: np.ndarray
    error: float
    linear: np.ndarray
    aitken: np.ndarray
    spread: float
    status: str = "limit"
    sequence: np.ndarray = field(default=None, repr=False)


@dataclass(frozen=True)
class BoundaryLimit:
    eta: Quaternion
    fprime: Quaternion
    eta_estimate: LimitEstimate
    fprime_estimate: LimitEstimate
    ray_values: np.ndarray
    ray_spread: float


def richardson(values, ratio=2.0):
    """Neville tableau for ``h -> 0`` with ``h`` shrinking by ``ratio`` per row.

    ``values`` has shape ``(m, ...)`` with the finest step last.  Returns the
    tableau entry with the smallest error estimate and that estimate.  The
    full tableau is built: with ratio 2 the extrapolation weights stay small,
    so rounding noise in the input is amplified less than tenfold, while an
    early stop can settle on a row still dominated by higher-order terms.
    """
    values = np.asarray(values, dtype=np.float64)
    prev = [values[0]]
    best, best_err = values[-1], math.inf
    for i in range(1, values.shape[0]):
        row = [values[i]]
        fac = 1.0
        for j in range(1, i + 1):
            fac *= ratio
            row.append(row[j - 1] + (row[j - 1] - prev[j - 1]) / (fac - 1.0))
            err = max(np.max(np.abs(row[j] - row[j - 1])), np.max(np.abs(row[j] - prev[j - 1])))
            if err <= best_err:
                best, best_err = row[j], float(err)
        prev = row
    return np.array(best), best_err


def linear_limit(h, values):
    """Intercept at ``h = 0`` of a least-squares line in ``h``."""
    h = np.asarray(h, dtype=np.float64)
    values = np.asarray(values, dtype=np.float64)
    A = np.stack([np.ones_like(h), h], axis=1)
    flat = values.reshape(values.shape[0], -1)
    sol, *_ = np.linalg.lstsq(A, flat, rcond=None)
    return sol[0].reshape(values.shape[1:])


def aitken(values):
    """Aitken delta-squared on the last three terms, componentwise."""
    s0, s1, s2 = (np.asarray(v, dtype=np.float64) for v in values[-3:])
    d1, d2 = s1 - s0, s2 - s1
    den = d2 - d1
    safe = np.abs(den) > 1e-14 * np.maximum(1.0, np.abs(s2))
    out = np.where(safe, s2 - d2 * d2 / np.where(safe, den, 1.0), s2)
    return out


def radial_points(xi, cfg):
    """``h_k`` and ``q_k = (1 - h_k) xi`` for ``k = k_min .. k_max``."""
    ks = np.arange(cfg.k_min, cfg.k_max + 1)
    h = 2.0 ** -ks.astype(np.float64)
    xi = as_array(as_quaternion(xi))
    return ks, h, (1.0 - h)[:, None] * xi


def usable_length(values, n_min):
    """Number of leading terms before rounding noise dominates.

    The smooth part of the second differences shrinks with ``h`` while the
    noise part grows like ``1/h``; the sequence is cut just after their
    smallest value, but never before ``n_min`` terms.
    """
    flat = values.reshape(values.shape[0], -1)
    if flat.shape[0] <= n_min:
        return flat.shape[0]
    d2 = np.max(np.abs(flat[2:] - 2.0 * flat[1:-1] + flat[:-2]), axis=1)
    tail = d2[n_min - 2:]
    return n_min + int(np.argmin(tail))


def extrapolate(h, values, cfg):
    """Estimate ``lim_{h->0}`` of a sampled sequence with cross-checks.

    Raises :class:`Inconsistent` when the primary estimate and either
    cross-check disagree by more than ``10 * cfg.tol``.
    """
    values = np.asarray(values, dtype=np.float64)
    n_early = cfg.k_extrapolate - cfg.k_min + 1
    early = values[:n_early]
    rich, err = richardson(early)
    end = usable_length(values, n_early)
    lin = linear_limit(h[end - cfg.fit_points:end], values[end - cfg.fit_points:end])
    ait = aitken(early)
    value = rich if cfg.method == "richardson" else lin
    spread = float(max(np.max(np.abs(rich - lin)), np.max(np.abs(rich - ait))))
    if spread > 10.0 * cfg.tol:
        raise Inconsistent(f"extrapolations disagree by {spread:.3e}")
    status = "limit"
    diffs = np.diff(early, axis=0).reshape(early.shape[0] - 1, -1)
    if diffs.shape[1] == 1:
        big = diffs[np.abs(diffs[:, 0]) > cfg.tol, 0]
        if big.size and np.any(big > 0) and np.any(big < 0):
            status = "liminf_lower_bound"
    return LimitEstimate(value, err, lin, ait, spread, status, values)


def _eval(f, pts):
    return np.asarray(f(pts), dtype=np.float64)


def ball_self_map_margin(f, n=1024, seed=0):
    """``1 - max |f|`` over seeded samples of the unit ball."""
    vals = _eval(f, sample_ball(n, seed))
    return 1.0 - float(np.max(np.linalg.norm(vals, axis=-1)))


def _check_divergence(values, cfg, what):
    peak = float(np.max(np.abs(values)))
    if not math.isfinite(peak) or peak > cfg.divergence:
        raise Diverging(f"{what} exceeds {cfg.divergence:g} (peak {peak:.3e})")


def radial_quotient_limit(f, xi, cfg=None, check_self_map=True):
    """Extrapolated limit of ``(1 - |f(r xi)|) / (1 - r)`` as ``r -> 1``."""
    cfg = cfg or LimitConfig()
    xi = _unit(xi)
    if check_self_map and ball_self_map_margin(f, cfg.spot_samples) < -cfg.slack:
        raise PreconditionFailed("map leaves the unit ball on sampled points")
    _, h, pts = radial_points(xi, cfg)
    s = (1.0 - np.linalg.norm(_eval(f, pts), axis=-1)) / h
    _check_divergence(s, cfg, "radial Julia quotient")
    return extrapolate(h, s[:, None], cfg)


def estimate_alpha(f, xi, cfg=None):
    """The boundary dilation coefficient of a self-map of the ball at ``xi``."""
    est = radial_quotient_limit(f, xi, cfg)
    return float(est.value[0])


def _unit(xi):
    xi = as_quaternion(xi)
    n = abs(xi)
    if abs(n - 1.0) > 1e-12:
        raise InvalidParameter(f"boundary point must be unimodular, |xi| = {n!r}")
    return xi * (1.0 / n)


def boundary_limit(f, xi, cfg=None):
    """``f(xi)`` and the non-tangential derivative at ``xi`` by extrapolation.

    The derivative comes from the difference quotient along the radius and
    is cross-checked on ``cfg.n_rays`` rays inside a Stolz angle.  For
    non-real ``xi`` the rays stay in the slice of ``xi``, where the quotient
    tends to the slice derivative.
    """
    cfg = cfg or LimitConfig()
    xi = _unit(xi)
    xa = as_array(xi)
    _, h, pts = radial_points(xi, cfg)
    fv = _eval(f, pts)
    eta_est = extrapolate(h, fv, cfg)
    eta = eta_est.value
    diff = qmul(qinv(pts - xa), fv - eta)
    _check_divergence(diff, cfg, "radial difference quotient")
    fp_est = extrapolate(h, diff, cfg)

    dirs = ray_directions(xi, cfg.n_rays, cfg.ray_half_angle, in_slice=True)
    rays = []
    for d in dirs:
        rp = xa + h[:, None] * d
        dq = qmul(qinv(h[:, None] * d), _eval(f, rp) - eta)
        _check_divergence(dq, cfg, "ray difference quotient")
        rays.append(extrapolate(h, dq, cfg).value)
    rays = np.array(rays)
    spread = float(np.max(np.linalg.norm(rays - fp_est.value, axis=-1)))
    if spread > 10.0 * cfg.tol:
        raise Inconsistent(f"non-tangential rays disagree by {spread:.3e}")
    return BoundaryLimit(Quaternion.from_array(eta), Quaternion.from_array(fp_est.value),
                         eta_est, fp_est, rays, spread)


def estimate_boundary_limit(f, xi, cfg=None):
    """``(eta, fprime)`` at the boundary point ``xi``."""
    lim = boundary_limit(f, xi, cfg)
    return lim.eta, lim.fprime
