"""Hot loops over quaternion arrays.

Quaternions are stored as float64 arrays whose last axis holds ``(w, x, y, z)``.
Each kernel exists twice: a numba ``@njit`` version and a pure-numpy twin with
identical semantics.  The numba path is used when numba imports cleanly and the
environment variable ``SRK_DISABLE_NUMBA`` is unset (or ``0``/``false``).

The public wrappers at the bottom of this module take care of broadcasting and
contiguity, so callers never touch the raw kernels.
"""

import os

import numpy as np

__all__ = [
    "BACKEND",
    "qmul",
    "qinv",
    "twist",
    "horner",
    "convolve",
    "left_divide",
    "star_solve",
    "quotient_eval",
    "numpy_impl",
    "numba_impl",
]


def _numba_requested():
    flag = os.environ.get("SRK_DISABLE_NUMBA", "").strip().lower()
    return flag in ("", "0", "false", "no")


# ---------------------------------------------------------------------------
# numpy twins
# ---------------------------------------------------------------------------

def _qmul_np(a, b):
    aw, ax, ay, az = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    bw, bx, by, bz = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    return np.stack(
        (
            aw * bw - ax * bx - ay * by - az * bz,
            aw * bx + ax * bw + ay * bz - az * by,
            aw * by - ax * bz + ay * bw + az * bx,
            aw * bz + ax * by - ay * bx + az * bw,
        ),
        axis=-1,
    )


def _qconj_np(a):
    out = -a
    out[..., 0] = a[..., 0]
    return out


def _qinv_np(a):
    n2 = np.sum(a * a, axis=-1, keepdims=True)
    return _qconj_np(a) / n2


def _twist_np(c, q):
    return _qmul_np(_qinv_np(c), _qmul_np(q, c))


def _horner_np(coeffs, q):
    out = np.broadcast_to(coeffs[-1], q.shape).copy()
    for m in range(coeffs.shape[0] - 2, -1, -1):
        out = _qmul_np(q, out) + coeffs[m]
    return out


def _convolve_np(a, b):
    m, p = a.shape[0], b.shape[0]
    prod = _qmul_np(a[:, None, :], b[None, :, :])
    out = np.zeros((m + p - 1, 4))
    for k in range(m):
        out[k:k + p] += prod[k]
    return out


def _left_divide_np(a, xi):
    d = a.shape[0] - 1
    out = np.zeros((max(d, 1), 4))
    if d == 0:
        return out
    out[d - 1] = a[d]
    for n in range(d - 1, 0, -1):
        out[n - 1] = a[n] + _qmul_np(xi, out[n])
    return out


def _star_solve_np(den, num, n_terms):
    # den * h = num, solved term by term for the coefficients of h
    d0_inv = _qinv_np(den[0])
    h = np.zeros((n_terms, 4))
    for n in range(n_terms):
        acc = num[n].copy() if n < num.shape[0] else np.zeros(4)
        for k in range(1, min(n, den.shape[0] - 1) + 1):
            acc -= _qmul_np(den[k], h[n - k])
        h[n] = _qmul_np(d0_inv, acc)
    return h


def _quotient_eval_np(den, den_c, num, q):
    t = _twist_np(_horner_np(den_c, q), q)
    return _qmul_np(_qinv_np(_horner_np(den, t)), _horner_np(num, t))


class _Impl:
    def __init__(self, **kernels):
        self.__dict__.update(kernels)


numpy_impl = _Impl(
    qmul=_qmul_np,
    qinv=_qinv_np,
    twist=_twist_np,
    horner=_horner_np,
    convolve=_convolve_np,
    left_divide=_left_divide_np,
    star_solve=_star_solve_np,
    quotient_eval=_quotient_eval_np,
)

# ---------------------------------------------------------------------------
# numba kernels
# ---------------------------------------------------------------------------

numba_impl = None
if _numba_requested():
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - depends on the environment
        njit = None

    if njit is not None:

        @njit(cache=True, inline="always")
        def _mul4(aw, ax, ay, az, bw, bx, by, bz):
            return (
                aw * bw - ax * bx - ay * by - az * bz,
                aw * bx + ax * bw + ay * bz - az * by,
                aw * by - ax * bz + ay * bw + az * bx,
                aw * bz + ax * by - ay * bx + az * bw,
            )

        @njit(cache=True)
        def _qmul_nb(a, b):
            n = a.shape[0]
            out = np.empty((n, 4))
            for t in range(n):
                w, x, y, z = _mul4(a[t, 0], a[t, 1], a[t, 2], a[t, 3],
                                   b[t, 0], b[t, 1], b[t, 2], b[t, 3])
                out[t, 0] = w
                out[t, 1] = x
                out[t, 2] = y
                out[t, 3] = z
            return out

        @njit(cache=True)
        def _qinv_nb(a):
            n = a.shape[0]
            out = np.empty((n, 4))
            for t in range(n):
                n2 = a[t, 0] ** 2 + a[t, 1] ** 2 + a[t, 2] ** 2 + a[t, 3] ** 2
                out[t, 0] = a[t, 0] / n2
                out[t, 1] = -a[t, 1] / n2
                out[t, 2] = -a[t, 2] / n2
                out[t, 3] = -a[t, 3] / n2
            return out

        @njit(cache=True, inline="always")
        def _twist4(cw, cx, cy, cz, qw, qx, qy, qz):
            n2 = cw * cw + cx * cx + cy * cy + cz * cz
            pw, px, py, pz = _mul4(qw, qx, qy, qz, cw, cx, cy, cz)
            return _mul4(cw / n2, -cx / n2, -cy / n2, -cz / n2, pw, px, py, pz)

        @njit(cache=True)
        def _twist_nb(c, q):
            n = q.shape[0]
            out = np.empty((n, 4))
            for t in range(n):
                w, x, y, z = _twist4(c[t, 0], c[t, 1], c[t, 2], c[t, 3],
                                     q[t, 0], q[t, 1], q[t, 2], q[t, 3])
                out[t, 0] = w
                out[t, 1] = x
                out[t, 2] = y
                out[t, 3] = z
            return out

        @njit(cache=True, inline="always")
        def _horner4(coeffs, qw, qx, qy, qz):
            m = coeffs.shape[0] - 1
            w, x, y, z = coeffs[m, 0], coeffs[m, 1], coeffs[m, 2], coeffs[m, 3]
            for k in range(m - 1, -1, -1):
                w, x, y, z = _mul4(qw, qx, qy, qz, w, x, y, z)
                w += coeffs[k, 0]
                x += coeffs[k, 1]
                y += coeffs[k, 2]
                z += coeffs[k, 3]
            return w, x, y, z

        @njit(cache=True)
        def _horner_nb(coeffs, q):
            n = q.shape[0]
            out = np.empty((n, 4))
            for t in range(n):
                w, x, y, z = _horner4(coeffs, q[t, 0], q[t, 1], q[t, 2], q[t, 3])
                out[t, 0] = w
                out[t, 1] = x
                out[t, 2] = y
                out[t, 3] = z
            return out

        @njit(cache=True)
        def _convolve_nb(a, b):
            m, p = a.shape[0], b.shape[0]
            out = np.zeros((m + p - 1, 4))
            for k in range(m):
                for l in range(p):
                    w, x, y, z = _mul4(a[k, 0], a[k, 1], a[k, 2], a[k, 3],
                                       b[l, 0], b[l, 1], b[l, 2], b[l, 3])
                    out[k + l, 0] += w
                    out[k + l, 1] += x
                    out[k + l, 2] += y
                    out[k + l, 3] += z
            return out

        @njit(cache=True)
        def _left_divide_nb(a, xi):
            d = a.shape[0] - 1
            out = np.zeros((max(d, 1), 4))
            if d == 0:
                return out
            out[d - 1, :] = a[d, :]
            for n in range(d - 1, 0, -1):
                w, x, y, z = _mul4(xi[0], xi[1], xi[2], xi[3],
                                   out[n, 0], out[n, 1], out[n, 2], out[n, 3])
                out[n - 1, 0] = a[n, 0] + w
                out[n - 1, 1] = a[n, 1] + x
                out[n - 1, 2] = a[n, 2] + y
                out[n - 1, 3] = a[n, 3] + z
            return out

        @njit(cache=True)
        def _star_solve_nb(den, num, n_terms):
            n2 = den[0, 0] ** 2 + den[0, 1] ** 2 + den[0, 2] ** 2 + den[0, 3] ** 2
            iw, ix, iy, iz = den[0, 0] / n2, -den[0, 1] / n2, -den[0, 2] / n2, -den[0, 3] / n2
            h = np.zeros((n_terms, 4))
            for n in range(n_terms):
                aw = ax = ay = az = 0.0
                if n < num.shape[0]:
                    aw, ax, ay, az = num[n, 0], num[n, 1], num[n, 2], num[n, 3]
                top = min(n, den.shape[0] - 1)
                for k in range(1, top + 1):
                    w, x, y, z = _mul4(den[k, 0], den[k, 1], den[k, 2], den[k, 3],
                                       h[n - k, 0], h[n - k, 1], h[n - k, 2], h[n - k, 3])
                    aw -= w
                    ax -= x
                    ay -= y
                    az -= z
                w, x, y, z = _mul4(iw, ix, iy, iz, aw, ax, ay, az)
                h[n, 0] = w
                h[n, 1] = x
                h[n, 2] = y
                h[n, 3] = z
            return h

        @njit(cache=True)
        def _quotient_eval_nb(den, den_c, num, q):
            n = q.shape[0]
            out = np.empty((n, 4))
            for t in range(n):
                qw, qx, qy, qz = q[t, 0], q[t, 1], q[t, 2], q[t, 3]
                cw, cx, cy, cz = _horner4(den_c, qw, qx, qy, qz)
                tw, tx, ty, tz = _twist4(cw, cx, cy, cz, qw, qx, qy, qz)
                dw, dx, dy, dz = _horner4(den, tw, tx, ty, tz)
                gw, gx, gy, gz = _horner4(num, tw, tx, ty, tz)
                n2 = dw * dw + dx * dx + dy * dy + dz * dz
                w, x, y, z = _mul4(dw / n2, -dx / n2, -dy / n2, -dz / n2, gw, gx, gy, gz)
                out[t, 0] = w
                out[t, 1] = x
                out[t, 2] = y
                out[t, 3] = z
            return out

        numba_impl = _Impl(
            qmul=_qmul_nb,
            qinv=_qinv_nb,
            twist=_twist_nb,
            horner=_horner_nb,
            convolve=_convolve_nb,
            left_divide=_left_divide_nb,
            star_solve=_star_solve_nb,
            quotient_eval=_quotient_eval_nb,
        )

_impl = numba_impl if numba_impl is not None else numpy_impl
BACKEND = "numba" if numba_impl is not None else "numpy"


# ---------------------------------------------------------------------------
# public wrappers
# ---------------------------------------------------------------------------

def _as_batch(*arrays):
    """Broadcast quaternion arrays together and flatten them to (n, 4)."""
    arrays = np.broadcast_arrays(*(np.asarray(a, dtype=np.float64) for a in arrays))
    shape = arrays[0].shape
    if shape[-1] != 4:
        raise ValueError(f"quaternion arrays need a trailing axis of length 4, got {shape}")
    flat = [np.array(a.reshape(-1, 4), order="C") for a in arrays]
    return shape, flat


def _coeffs(a):
    return np.ascontiguousarray(np.asarray(a, dtype=np.float64).reshape(-1, 4))


def qmul(a, b):
    shape, (fa, fb) = _as_batch(a, b)
    return _impl.qmul(fa, fb).reshape(shape)


def qinv(a):
    shape, (fa,) = _as_batch(a)
    return _impl.qinv(fa).reshape(shape)


def twist(c, q):
    """Return ``c^{-1} q c`` elementwise."""
    shape, (fc, fq) = _as_batch(c, q)
    return _impl.twist(fc, fq).reshape(shape)


def horner(coeffs, q):
    """Evaluate ``sum q^n a_n`` (right coefficients) at every point of ``q``."""
    shape, (fq,) = _as_batch(q)
    return _impl.horner(_coeffs(coeffs), fq).reshape(shape)


def convolve(a, b):
    return _impl.convolve(_coeffs(a), _coeffs(b))


def left_divide(a, xi):
    return _impl.left_divide(_coeffs(a), np.ascontiguousarray(xi, dtype=np.float64))


def star_solve(den, num, n_terms):
    return _impl.star_solve(_coeffs(den), _coeffs(num), int(n_terms))


def quotient_eval(den, den_c, num, q):
    shape, (fq,) = _as_batch(q)
    return _impl.quotient_eval(_coeffs(den), _coeffs(den_c), _coeffs(num), fq).reshape(shape)
