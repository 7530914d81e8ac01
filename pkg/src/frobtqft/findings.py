"""Check results shared by every verification suite."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return x


@dataclass(frozen=True)
class Finding:
    """One executed check.

    ``status`` is ``"pass"``, ``"fail"``, ``"warn"`` or ``"skip"``.  Index
    tuples inside ``witness`` are 1-based, matching the algebra JSON format.
    """

    check: str
    status: str = "fail"
    message: str = ""
    witness: dict | None = None
    suite: str = ""
    type: tuple | None = None
    extra: dict = field(default_factory=dict, compare=False)

    @property
    def failed(self):
        return self.status == "fail"

    def to_json(self, algebra=None):
        out = {"suite": self.suite, "check": self.check, "status": self.status}
        if algebra is not None:
            out["algebra"] = algebra
        if self.type is not None:
            out["type"] = list(self.type)
        if self.message:
            out["message"] = self.message
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        return out


def failures(findings):
    return [f for f in findings if f.failed]


def map_check(check, lhs, rhs, *, suite="", type=None, context=None):
    """Compare two :class:`MultilinearMap` values exactly, as a Finding."""
    if lhs.dim != rhs.dim or lhs.arity != rhs.arity:
        return Finding(check, "fail", f"shape mismatch {lhs.arity} vs {rhs.arity}",
                       suite=suite, type=type)
    diff = lhs.first_difference(rhs)
    if diff is None:
        return Finding(check, "pass", suite=suite, type=type)
    index, a, b = diff
    witness = {"index": [i + 1 for i in index], "lhs": a, "rhs": b}
    if context:
        witness.update(context)
    return Finding(check, "fail", "coefficients differ", witness, suite=suite, type=type)
