"""JSON function specs: parsing into regular maps and serializing back.

Accepted kinds::

    {"kind": "poly", "coeffs": [[w,x,y,z], ...]}                  a_0 first
    {"kind": "quotient", "den": {poly}, "num": {poly}, "right_const": [w,x,y,z]}
    {"kind": "mobius_ball", "u": [w,x,y,z], "normalize": false}
    {"kind": "affine_halfspace", "scale": a, "shift": [w,x,y,z]}  q a + b, a > 0, Re b >= 0
    {"kind": "sum", "terms": [spec, ...], "weights": [w, ...]}    positive sums of half-space maps

``right_const``, ``normalize`` and ``weights`` are optional.  Serialization
always writes a ``poly`` or a ``quotient``; parsing that text gives back an
equal map.
"""

import json
import math

import numpy as np

from .boundary.regions import sample_halfspace
from .corpus import positive_sum
from .errors import ParseError, ValidationError
from .quaternion import ONE, Quaternion, format_real
from .quotient import RegularQuotient, mobius_ball
from .series import RegularPoly

__all__ = ["parse_function_spec", "serialize_function", "load_function_spec"]

KINDS = ("poly", "quotient", "mobius_ball", "affine_halfspace", "sum")


def _locate(text, needle):
    """1-based (line, column) of the first occurrence of ``needle``, else (1, 1)."""
    pos = text.find(needle) if needle else -1
    if pos < 0:
        return 1, 1
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


class _Ctx:
    def __init__(self, text):
        self.text = text

    def fail(self, message, key=None):
        line, col = _locate(self.text, json.dumps(key) if key else None)
        raise ParseError(message, line, col)


def parse_function_spec(text):
    """Parse spec text into a :class:`RegularPoly` or :class:`RegularQuotient`."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    return _build(doc, _Ctx(text))


def load_function_spec(path):
    with open(path, encoding="utf-8") as fh:
        return parse_function_spec(fh.read())


def _quat(value, ctx, key):
    if (not isinstance(value, list) or len(value) != 4
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)):
        ctx.fail(f"{key!r} must be a quaternion literal [w,x,y,z]", key)
    if not all(math.isfinite(v) for v in value):
        ctx.fail(f"{key!r} has a non-finite component", key)
    return Quaternion(*value)


def _require(doc, key, ctx):
    if key not in doc:
        ctx.fail(f"missing field {key!r} for kind {doc.get('kind')!r}", "kind")
    return doc[key]


def _check_keys(doc, allowed, ctx):
    for k in doc:
        if k not in allowed:
            ctx.fail(f"unexpected field {k!r} for kind {doc['kind']!r}", k)


def _build(doc, ctx):
    if not isinstance(doc, dict):
        ctx.fail("a function spec must be a JSON object")
    kind = doc.get("kind")
    if kind not in KINDS:
        ctx.fail(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}", "kind")
    return _BUILDERS[kind](doc, ctx)


def _poly(doc, ctx):
    _check_keys(doc, ("kind", "coeffs"), ctx)
    coeffs = _require(doc, "coeffs", ctx)
    if not isinstance(coeffs, list) or not coeffs:
        ctx.fail("'coeffs' must be a non-empty list of quaternion literals", "coeffs")
    return RegularPoly([np.array(_quat(c, ctx, "coeffs")) for c in coeffs])


def _sub_poly(doc, key, ctx):
    sub = _require(doc, key, ctx)
    if not isinstance(sub, dict) or sub.get("kind") != "poly":
        ctx.fail(f"{key!r} must be a poly spec", key)
    return _poly(sub, ctx)


def _quotient(doc, ctx):
    _check_keys(doc, ("kind", "den", "num", "right_const"), ctx)
    den = _sub_poly(doc, "den", ctx)
    num = _sub_poly(doc, "num", ctx)
    right = _quat(doc["right_const"], ctx, "right_const") if "right_const" in doc else ONE
    if den.is_zero():
        raise ValidationError("denominator vanishes identically")
    return RegularQuotient(den, num, right)


def _mobius(doc, ctx):
    _check_keys(doc, ("kind", "u", "normalize"), ctx)
    u = _quat(_require(doc, "u", ctx), ctx, "u")
    normalize = doc.get("normalize", False)
    if not isinstance(normalize, bool):
        ctx.fail("'normalize' must be true or false", "normalize")
    if abs(u) >= 1.0:
        raise ValidationError(f"mobius_ball needs |u| < 1, got |u| = {format_real(abs(u))}")
    return mobius_ball(u, normalize=normalize)


def _affine(doc, ctx):
    _check_keys(doc, ("kind", "scale", "shift"), ctx)
    a = _require(doc, "scale", ctx)
    if not isinstance(a, (int, float)) or isinstance(a, bool):
        ctx.fail("'scale' must be a real number", "scale")
    b = _quat(_require(doc, "shift", ctx), ctx, "shift")
    if not a > 0:
        raise ValidationError("affine_halfspace needs scale > 0")
    if b.real < 0:
        raise ValidationError("affine_halfspace needs Re(shift) >= 0")
    return RegularPoly([np.array(b), [float(a), 0.0, 0.0, 0.0]])


def _sum(doc, ctx):
    _check_keys(doc, ("kind", "terms", "weights"), ctx)
    terms = _require(doc, "terms", ctx)
    if not isinstance(terms, list) or not terms:
        ctx.fail("'terms' must be a non-empty list of specs", "terms")
    maps = [_build(t, ctx) for t in terms]
    weights = doc.get("weights", [1.0] * len(maps))
    if (not isinstance(weights, list) or len(weights) != len(maps)
            or not all(isinstance(w, (int, float)) and not isinstance(w, bool) for w in weights)):
        ctx.fail("'weights' must list one real per term", "weights")
    if not all(w > 0 for w in weights):
        raise ValidationError("sum weights must be positive")
    pts = sample_halfspace(256, seed=0)
    for i, f in enumerate(maps):
        if np.min(np.asarray(f(pts))[:, 0]) < 0.0:
            raise ValidationError(f"sum term {i} does not map the right half-space into itself")
    return positive_sum(maps, weights)


_BUILDERS = {
    "poly": _poly,
    "quotient": _quotient,
    "mobius_ball": _mobius,
    "affine_halfspace": _affine,
    "sum": _sum,
}


def _poly_doc(p):
    return '{"kind":"poly","coeffs":[' + ",".join(
        "[" + ",".join(format_real(c) for c in row) + "]" for row in p.coeffs) + "]}"


def serialize_function(f):
    """Spec text for a map, numbers at 17 significant digits."""
    if isinstance(f, RegularPoly):
        return _poly_doc(f)
    if isinstance(f, RegularQuotient):
        tail = ""
        if f.right_const != ONE:
            tail = ',"right_const":[' + ",".join(format_real(c) for c in f.right_const) + "]"
        return '{"kind":"quotient","den":' + _poly_doc(f.den) + ',"num":' + _poly_doc(f.num) + tail + "}"
    raise TypeError(f"cannot serialize {f!r}")
