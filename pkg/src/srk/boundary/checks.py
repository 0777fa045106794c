"""One checker per boundary theorem, each returning a :class:`BoundaryReport`.

Every assertion is recorded as a margin ``rhs - lhs`` (or ``-deviation`` for
an equality) together with the slack it is judged against: pointwise
inequalities use ``cfg.slack``, statements about extrapolated limits use
``cfg.limit_tol``.
"""

import math

import numpy as np

from ..errors import (AllZero, Diverging, Inconsistent, NotBoundaryUnimodular,
                      PreconditionFailed)
from ..kernels import qinv, qmul
from ..quaternion import ONE, Quaternion, as_array, as_points, as_quaternion, lie_bracket
from ..quotient import (eval_quotient, linear_fractional, series_derivative,
                        spherical_coeffs, zero_free_radius)
from ..series import RegularPoly, monomial
from .limits import (LimitConfig, ball_self_map_margin, boundary_limit, extrapolate,
                     radial_points, radial_quotient_limit)
from .regions import (Orisphere, Stolz, random_unit_imaginary, sample_ball, sample_halfspace,
                      sample_region)
from .report import BoundaryReport

__all__ = [
    "IDENTITY",
    "schwarz_pick_check",
    "julia_check",
    "julia_report",
    "lindelof_check",
    "jc_ball_report",
    "hopf_report",
    "boundary_schwarz_report",
    "halfspace_jc_report",
    "vanishing_order",
    "burns_krantz_report",
    "radial_sweep",
    "origin_data",
]

IDENTITY = monomial(1)
JULIA_ORISPHERES = (0.5, 1.0, 2.0, 5.0)


def _eval(f, pts):
    return np.asarray(f(pts), dtype=np.float64)


def _norm(a):
    return np.linalg.norm(a, axis=-1)


def origin_data(f, thresh=1e-12, max_order=32):
    """``(f(0), n, |f^(n)(0)|)`` where ``n`` is the first non-vanishing order.

    ``n`` is ``None`` when ``|f(0)| > thresh`` (nothing vanishes) or when no
    derivative up to ``max_order`` clears the threshold.
    """
    a = f.derivative_at_zero(0)
    if abs(a) > thresh:
        return a, None, None
    for n in range(1, max_order + 1):
        c = abs(f.derivative_at_zero(n))
        if c > thresh:
            return a, n, c
    return a, None, None


def _hopf_ii_bound(n, c):
    nf = math.factorial(n)
    return n + (nf - c) / (nf + c)


def schwarz_pick_check(f, q0, q, space="ball"):
    """``rhs - lhs`` of the Schwarz-Pick pseudo-distance inequality centred at ``q0``.

    ball:      |(1 - f conj(f(q0)))^{-*} * (f - f(q0))| <= |(1 - q conj(q0))^{-*} * (q - q0)|
    halfspace: |(f + conj(f(q0)))^{-*} * (f - f(q0))| <= |(q + conj(q0))^{-*} * (q - q0)|

    Both sides are regular quotients evaluated through their own twist.
    ``q`` may be one point or an ``(n, 4)`` array.
    """
    q0 = as_quaternion(q0)
    w = as_quaternion(f(q0))
    if space == "ball":
        lhs_map = linear_fractional(f, ONE, -w.conj(), -w, ONE)
        rhs_map = linear_fractional(IDENTITY, ONE, -q0.conj(), -q0, ONE)
    elif space == "halfspace":
        lhs_map = linear_fractional(f, w.conj(), ONE, -w, ONE)
        rhs_map = linear_fractional(IDENTITY, q0.conj(), ONE, -q0, ONE)
    else:
        raise ValueError(f"space must be 'ball' or 'halfspace', not {space!r}")
    arr, scalar = as_points(q)
    margin = _norm(eval_quotient(rhs_map, arr)) - _norm(eval_quotient(lhs_map, arr))
    return float(margin) if scalar else margin


def _julia_points(xi, nsamples, seed):
    per = max(1, nsamples // len(JULIA_ORISPHERES))
    groups = [sample_region(Orisphere(xi, k), per, seed + i) for i, k in enumerate(JULIA_ORISPHERES)]
    return groups


def julia_check(f, xi, alpha, eta, nsamples=1024, seed=0, cfg=None):
    """Julia's inequality at the boundary point ``xi`` for given ``alpha`` and ``eta``.

    Samples come from the orispheres ``S(xi, k)``, ``k`` in ``JULIA_ORISPHERES``.
    At ``xi = 1`` the orisphere form ``|eta - f|^2 / (1 - |f|^2) <= alpha
    |1 - q|^2 / (1 - |q|^2)`` is checked together with the inclusions
    ``f(S(1, k)) in S(eta, alpha k)``.  The regular-quotient form
    ``Re((1 - f conj(eta))^{-*} * (1 + f conj(eta))) >= Re((1 - q conj(xi))^{-*} *
    (1 + q conj(xi))) / alpha`` is checked for every ``xi``; its margin is
    divided by ``max(1, lhs)`` because both sides blow up near the sphere.
    """
    cfg = cfg or LimitConfig()
    xi, eta = as_quaternion(xi), as_quaternion(eta)
    alpha = float(alpha)
    groups = _julia_points(xi, nsamples, seed)
    pts = np.concatenate(groups)
    rep = BoundaryReport("julia", params={"xi": xi, "alpha": alpha, "eta": eta},
                         samples=int(pts.shape[0]), seed=seed, config=cfg.as_dict())
    rep.estimates.update(alpha=alpha, eta=eta)

    if xi.isclose(ONE, 1e-15):
        worst = []
        for k, g in zip(JULIA_ORISPHERES, groups):
            fv = _eval(f, g)
            lhs = _norm(as_array(eta) - fv) ** 2 / (1.0 - _norm(fv) ** 2)
            rhs = alpha * _norm(as_array(xi) - g) ** 2 / (1.0 - _norm(g) ** 2)
            m = rhs - lhs
            worst.append(m)
            rep.add_margin(f"orisphere_k={k:g}", alpha * k - lhs, cfg.slack)
        worst = np.concatenate(worst)
        rep.add_margin("orisphere_form", worst, cfg.slack)
        rep.estimates["max_abs_margin_orisphere_form"] = float(np.max(np.abs(worst)))

    lhs_map = linear_fractional(f, ONE, -eta.conj(), ONE, eta.conj())
    rhs_map = linear_fractional(IDENTITY, ONE, -xi.conj(), ONE, xi.conj())
    lhs = eval_quotient(lhs_map, pts)[:, 0]
    rhs = eval_quotient(rhs_map, pts)[:, 0]
    m = (lhs - rhs / alpha) / np.maximum(1.0, np.abs(lhs))
    rep.add_margin("quotient_form", m, cfg.slack)
    rep.estimates["max_abs_margin_quotient_form"] = float(np.max(np.abs(m)))
    return rep


def julia_report(f, xi=ONE, cfg=None, nsamples=1024, seed=0):
    """Estimate ``alpha`` and ``eta`` radially, then run :func:`julia_check`."""
    cfg = cfg or LimitConfig()
    alpha = radial_quotient_limit(f, xi, cfg)
    lim = boundary_limit(f, xi, cfg)
    rep = julia_check(f, xi, float(alpha.value[0]), lim.eta, nsamples, seed, cfg)
    rep.estimates["alpha_status"] = alpha.status
    return rep


def _lindelof_margins(fv, s, a, n=None, c=None):
    a_abs = abs(a)
    af = _norm(fv)
    den_c0 = 1.0 - s * s * a_abs * a_abs
    beta = (1.0 - s * s) / den_c0
    out = {}
    out["centred"] = s * (1.0 - a_abs ** 2) / den_c0 - _norm(fv - beta[:, None] * as_array(a))
    out["modulus_lower"] = af - (a_abs - s) / (1.0 - s * a_abs)
    out["modulus_upper"] = (s + a_abs) / (1.0 + s * a_abs) - af
    out["distance_from_f0"] = s * (1.0 - a_abs ** 2) / (1.0 - s * a_abs) - _norm(fv - as_array(a))
    if n is not None:
        nf = math.factorial(n)
        sn = s ** n
        out["order_lower"] = af - (c - nf * s) / (nf - s * c) * sn
        out["order_upper"] = (nf * s + c) / (nf + s * c) * sn - af
    return out


def lindelof_check(f, q, cfg=None):
    """Lindeloef's inequalities at the point(s) ``q`` of the ball.

    The order-``n`` family is engaged when ``f`` and its first ``n - 1``
    derivatives vanish at 0.  Chain margins confirm that the bounds on
    ``|f|`` and ``|f - f(0)|`` are at least as slack as the centred bound they
    follow from.
    """
    cfg = cfg or LimitConfig()
    arr, _ = as_points(q)
    arr = arr.reshape(-1, 4)
    s = _norm(arr)
    a, n, c = origin_data(f)
    fv = _eval(f, arr)
    ms = _lindelof_margins(fv, s, a, n, c)
    rep = BoundaryReport("lindelof", params={"points": int(arr.shape[0])},
                         samples=int(arr.shape[0]), config=cfg.as_dict())
    rep.estimates.update(f0=a, order=n if n is not None else 0,
                         abs_nth_derivative=c if c is not None else 0.0)
    for name, m in ms.items():
        rep.add_margin(name, m, cfg.slack)
    for name in ("modulus_lower", "modulus_upper", "distance_from_f0"):
        rep.add_margin(f"chain_{name}", ms[name] - ms["centred"], cfg.identity_slack)
    return rep


def jc_ball_report(f, xi=ONE, cfg=None, nsamples=256, seed=0):
    """Julia-Caratheodory chain at ``xi``.

    At ``xi = 1`` or ``-1``: ``alpha > 0``, ``|eta| = 1``, ``f'(xi) = alpha
    conj(xi) eta`` and the Stolz-sampled quotient near ``xi`` agrees with
    ``alpha``.  Elsewhere the same quantities are reported without asserting
    the relation between them.
    """
    cfg = cfg or LimitConfig()
    xi = as_quaternion(xi)
    rep = BoundaryReport("jc-ball", params={"xi": xi}, seed=seed, config=cfg.as_dict())
    try:
        alpha_est = radial_quotient_limit(f, xi, cfg)
    except Diverging:
        lim = boundary_limit(f, xi, cfg)
        rep.estimates.update(alpha=math.inf, eta=lim.eta, fprime=lim.fprime)
        rep.notes.append("radial Julia quotient diverges: alpha is infinite and the chain does not apply")
        return rep
    alpha = float(alpha_est.value[0])
    lim = boundary_limit(f, xi, cfg)
    relation = lim.fprime - alpha * (xi.conj() * lim.eta)
    rep.estimates.update(alpha=alpha, alpha_status=alpha_est.status, eta=lim.eta,
                         fprime=lim.fprime, ray_spread=lim.ray_spread,
                         fprime_minus_alpha_conj_xi_eta=relation)
    rep.add_margin("alpha_positive", alpha, cfg.slack)
    if xi.is_real():
        rep.add_margin("eta_unimodular", -abs(abs(lim.eta) - 1.0), cfg.limit_tol)
        rep.add_margin("fprime_equals_alpha_eta", -abs(relation), cfg.limit_tol)
        pts = sample_region(Stolz(xi, cfg.stolz_k), 4 * nsamples, seed, cfg.n_rays)
        pts = pts[_norm(pts - as_array(xi)) <= 1e-4][:nsamples]
        quot = (1.0 - _norm(_eval(f, pts))) / (1.0 - _norm(pts))
        rep.samples = int(pts.shape[0])
        rep.add_margin("stolz_quotient", -np.abs(quot - alpha), cfg.limit_tol)
    else:
        rep.notes.append("non-real boundary point: f'(xi) = alpha conj(xi) eta is reported, not asserted")
    return rep


def hopf_report(f, cfg=None):
    """Hopf lemma at the boundary fixed point 1."""
    cfg = cfg or LimitConfig()
    lim = boundary_limit(f, ONE, cfg)
    if abs(lim.eta - ONE) > 10.0 * cfg.tol:
        raise PreconditionFailed(f"boundary value at 1 is {lim.eta}, not 1")
    fp = lim.fprime
    a, n, c = origin_data(f)
    d0 = abs(f.derivative_at_zero(1))
    rep = BoundaryReport("hopf", params={"xi": ONE}, config=cfg.as_dict())
    rep.estimates.update(eta=lim.eta, fprime=fp, f0=a, abs_fprime0=d0)
    rep.add_margin("fprime_real", -abs(fp.imag), cfg.tol)
    bound = 2.0 * abs(ONE - a) ** 2 / (1.0 - abs(a) ** 2 + d0)
    sharp = abs(ONE - a) ** 2 / (1.0 - abs(a) ** 2)
    rep.estimates.update(bound_i=bound, bound_i_sharp=sharp)
    rep.add_margin("bound_i", fp.real - bound, cfg.limit_tol)
    rep.add_margin("bound_i_sharp", fp.real - sharp, cfg.limit_tol)
    if n is not None:
        b2 = _hopf_ii_bound(n, c)
        rep.estimates.update(order=n, bound_ii=b2)
        rep.add_margin("bound_ii", fp.real - b2, cfg.limit_tol)
        if abs(c - math.factorial(n)) <= cfg.identity_slack * math.factorial(n):
            rep.notes.append(f"|f^({n})(0)| = {n}!: the map is q^{n} and f'(1) = {n} is the equality case")
        elif fp.real <= n - cfg.limit_tol:
            rep.notes.append(f"strictness f'(1) > {n} violated")
            rep.add_margin("strict_over_n", fp.real - n, cfg.limit_tol)
    return rep


def boundary_schwarz_report(f, xi, cfg=None):
    """Boundary Schwarz lemma at a point ``xi`` where ``|f(xi)| = 1``.

    ``f(xi)``, ``f'(xi)`` and the spherical coefficient ``A2`` are computed
    from the power series, which needs ``den^s`` zero-free past the unit
    sphere.
    """
    cfg = cfg or LimitConfig()
    xi = as_quaternion(xi)
    rho0 = zero_free_radius(f) if not isinstance(f, RegularPoly) else math.inf
    fx = as_quaternion(f(xi))
    if abs(abs(fx) - 1.0) > cfg.slack:
        raise NotBoundaryUnimodular(f"|f(xi)| = {abs(fx)!r}")
    a1, a2 = spherical_coeffs(f, xi)
    fp = series_derivative(f, xi)
    bracket = lie_bracket(xi.conj(), fx * a2.conj())
    lam = xi.conj() * (fx * fp.conj() + bracket)
    a, n, c = origin_data(f)
    bound = (1.0 - abs(a)) / (1.0 + abs(a))
    rep = BoundaryReport("schwarz-boundary", params={"xi": xi}, config=cfg.as_dict())
    rep.estimates.update(f_xi=fx, fprime=fp, A1=a1, A2=a2, bracket=bracket, lam=lam,
                         bound=bound, f0=a, zero_free_radius=rho0)
    rep.notes.append("regularity past the sphere is taken as den^s zero-free on |q| <= 1")
    rep.add_margin("derivative_identity", -abs(fp - (a1 + 2.0 * (xi.imag * a2))), cfg.slack)
    rep.add_margin("lam_real", -abs(lam.imag), cfg.slack)
    rep.add_margin("bound_i", lam.real - bound, cfg.slack)
    if n is not None:
        b2 = _hopf_ii_bound(n, c)
        rep.estimates.update(order=n, bound_ii=b2)
        rep.add_margin("bound_ii", lam.real - b2, cfg.slack)
    if abs(a) <= cfg.identity_slack and fx.isclose(xi, cfg.slack):
        corrected = fp - lie_bracket(xi, a2)
        rep.estimates["corrected_derivative"] = corrected
        rep.add_margin("corrected_real", -abs(corrected.imag), cfg.slack)
        rep.add_margin("corrected_over_one", corrected.real - 1.0, cfg.slack)
    return rep


def _cone_directions(gamma, cfg, seed):
    rng = np.random.default_rng(seed)
    phi_max = math.acos(0.5 * (1.0 + gamma))
    phi = np.linspace(0.0, phi_max, cfg.n_rays)
    e = random_unit_imaginary(rng, cfg.n_rays) * np.sin(phi)[:, None]
    e[:, 0] = np.cos(phi)
    return e


def halfspace_jc_report(f, gamma=0.5, cfg=None, nsamples=4096, seed=0):
    """Julia-Caratheodory on the right half-space with the boundary point at infinity.

    ``c`` is the smaller of the sampled infimum of ``Re f / Re q`` and its
    limit along rays of the cone ``Re q > gamma |q|``.  Along the same rays
    ``q^{-1} f(q)``, ``Re f / Re q`` and ``f'(q)`` are extrapolated in ``1/|q|``.
    """
    cfg = cfg or LimitConfig()
    if not 0.0 < gamma < 1.0:
        raise ValueError("gamma must lie in (0, 1)")
    pts = sample_halfspace(nsamples, seed)
    fv = _eval(f, pts)
    if np.min(fv[:, 0]) < -cfg.slack:
        raise PreconditionFailed("map leaves the right half-space on sampled points")
    ratio = fv[:, 0] / pts[:, 0]
    sample_min = float(np.min(ratio))

    fprime = f.derivative()
    ks = np.arange(cfg.k_min, cfg.cone_k_max + 1)
    t = 2.0 ** -ks.astype(np.float64)
    limits = {"q_inv_f": [], "re_ratio": [], "derivative": []}
    spreads = []
    try:
        for e in _cone_directions(gamma, cfg, seed):
            q = e[None, :] / t[:, None]
            v = _eval(f, q)
            seqs = {
                "q_inv_f": qmul(qinv(q), v),
                "re_ratio": (v[:, 0] / q[:, 0])[:, None],
                "derivative": _eval(fprime, q),
            }
            for name, seq in seqs.items():
                if np.max(np.abs(seq)) > cfg.divergence:
                    raise Diverging(f"{name} grows beyond {cfg.divergence:g} along the cone")
                est = extrapolate(t, seq, cfg)
                limits[name].append(est.value)
                spreads.append(est.spread)
    except Inconsistent as exc:
        raise Diverging(f"cone limits do not stabilize: {exc}") from exc

    cone_c = float(min(v[0] for v in limits["re_ratio"]))
    c = min(sample_min, cone_c)
    rep = BoundaryReport("jc-halfspace", params={"gamma": float(gamma)}, samples=nsamples,
                         seed=seed, config=cfg.as_dict())
    rep.estimates.update(c=c, sample_infimum=sample_min, cone_limit=cone_c,
                         convergence_spread=float(max(spreads)))
    target = np.array([c, 0.0, 0.0, 0.0])
    for name, vals in limits.items():
        vals = np.array(vals)
        if vals.shape[1] == 1:
            dev = np.abs(vals[:, 0] - c)
        else:
            dev = _norm(vals - target)
        mean = vals.mean(axis=0)
        rep.estimates[f"limit_{name}"] = Quaternion.from_array(mean) if mean.size == 4 else float(mean[0])
        rep.add_margin(f"limit_{name}", -dev, cfg.limit_tol)
    rep.add_margin("self_map", fv[:, 0], cfg.slack)
    rep.add_margin("re_f_over_c_re_q", fv[:, 0] - c * pts[:, 0], cfg.slack)
    return rep


#: values below this fraction of the largest sampled ``|f|`` are taken as rounding noise
ORDER_NOISE_FLOOR = 1e-10


def vanishing_order(f, xi=-1.0, cfg=None):
    """Slope of ``log |f(q)|`` against ``log |q - xi|`` along the radius to ``xi``.

    The fit uses the last ``cfg.fit_points`` samples that stay above the
    noise floor; a zero of order ``n`` evaluated by cancellation bottoms out
    near machine epsilon long before ``|q - xi|^n`` does.
    """
    cfg = cfg or LimitConfig()
    xi = as_quaternion(xi)
    _, h, pts = radial_points(xi, cfg)
    v = _norm(_eval(f, pts))
    if np.all(v == 0.0) and ball_self_map_margin(f, cfg.spot_samples) == 1.0:
        raise AllZero("f vanishes on every sample; its order at xi is undefined")
    dist = _norm(pts - as_array(xi))
    m = cfg.fit_points
    keep = np.flatnonzero(v > ORDER_NOISE_FLOOR * max(1.0, float(np.max(v))))
    idx = keep[-m:] if keep.size >= m else np.arange(m)
    slope, _ = np.polyfit(np.log(dist[idx]), np.log(np.maximum(v[idx], 1e-300)), 1)
    return float(slope)


def burns_krantz_report(f, xi=-1.0, cfg=None, seed=0):
    """Order of vanishing at ``xi`` for a map of the ball into ``Re >= 0``.

    A nonzero such map cannot vanish to order above 1, so an estimated order
    beyond ``1 + cfg.order_slack`` is a consistency failure.
    """
    cfg = cfg or LimitConfig()
    xi = as_quaternion(xi)
    vals = _eval(f, sample_ball(cfg.spot_samples, seed))
    if np.min(vals[:, 0]) < -cfg.slack:
        raise PreconditionFailed("map leaves the closed right half-space on sampled points")
    order = vanishing_order(f, xi, cfg)
    rep = BoundaryReport("burns-krantz", params={"xi": xi}, samples=cfg.spot_samples, seed=seed,
                         config=cfg.as_dict())
    rep.estimates["order"] = order
    rep.add_margin("order_at_most_one", 1.0 - order, cfg.order_slack)
    return rep


def radial_sweep(f, xi, cfg=None):
    """Rows ``(r, f(r xi), |f|, Julia quotient, |difference quotient|)`` along the radius."""
    cfg = cfg or LimitConfig()
    xi = as_quaternion(xi)
    xi = xi * (1.0 / abs(xi))
    _, h, pts = radial_points(xi, cfg)
    fv = _eval(f, pts)
    try:
        eta = extrapolate(h, fv, cfg).value
    except Inconsistent:
        eta = fv[-1]
    absf = _norm(fv)
    jq = (1.0 - absf) / h
    dq = _norm(qmul(qinv(pts - as_array(xi)), fv - eta))
    return [(1.0 - hk, fv[i], absf[i], jq[i], dq[i]) for i, hk in enumerate(h)]
