"""Structured checker output and its deterministic text form."""

import json
import math
from dataclasses import dataclass, field

import numpy as np

from ..quaternion import Quaternion, format_quaternion, format_real

__all__ = ["Margin", "BoundaryReport", "serialize_value", "write_sweep_csv", "SWEEP_HEADER"]

SWEEP_HEADER = "r,f_w,f_x,f_y,f_z,abs_f,julia_quotient,diff_quotient_abs"


@dataclass(frozen=True)
class Margin:
    """Minimum of ``rhs - lhs`` for one inequality family; passes when ``value >= -slack``."""

    value: float
    slack: float

    @property
    def ok(self):
        return self.value >= -self.slack


@dataclass
class BoundaryReport:
    theorem: str
    params: dict = field(default_factory=dict)
    estimates: dict = field(default_factory=dict)
    margins: dict = field(default_factory=dict)
    samples: int = 0
    seed: int = None
    config: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    error: str = None

    def add_margin(self, name, values, slack):
        """Record the minimum of ``values`` (a scalar or array) for ``name``."""
        v = float(np.min(values))
        self.margins[name] = Margin(v, float(slack))
        return v

    @property
    def min_margin(self):
        if not self.margins:
            return None
        return min(m.value for m in self.margins.values())

    @property
    def passed(self):
        return self.error is None and all(m.ok for m in self.margins.values())

    @property
    def verdict(self):
        return "pass" if self.passed else "fail"

    def to_dict(self):
        return {
            "theorem": self.theorem,
            "params": self.params,
            "estimates": self.estimates,
            "margins": {k: {"value": m.value, "slack": m.slack} for k, m in self.margins.items()},
            "min_margin": self.min_margin,
            "verdict": self.verdict,
            "samples": self.samples,
            "seed": self.seed,
            "config": self.config,
            "notes": self.notes,
            "error": self.error,
        }

    def to_text(self):
        return serialize_value(self.to_dict()) + "\n"

    def __str__(self):
        return self.to_text()


def serialize_value(value, indent=0):
    """JSON text with every float at 17 significant digits and quaternions as ``[w,x,y,z]``."""
    pad = "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {serialize_value(v, indent + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(value, Quaternion):
        return format_quaternion(value)
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(serialize_value(v, indent + 1) for v in value) + "]"
    if isinstance(value, np.ndarray):
        return serialize_value(value.tolist(), indent)
    if value is None:
        return "null"
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        if not math.isfinite(value):
            return json.dumps(str(float(value)))
        return format_real(value)
    return json.dumps(str(value))


def write_sweep_csv(rows, stream):
    """``rows`` of ``(r, f, abs_f, julia_quotient, diff_quotient_abs)``."""
    stream.write(SWEEP_HEADER + "\n")
    for r, fv, absf, jq, dq in rows:
        fields = [r, *fv, absf, jq, dq]
        stream.write(",".join(format_real(x) for x in fields) + "\n")
