"""Exact rational scalars and their string form ``"p/q"`` / ``"p"``."""
import re
from fractions import Fraction

_RATIONAL = re.compile(r"[+-]?\d+(/0*[1-9]\d*)?", re.ASCII)

Scalar = Fraction


def to_scalar(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings; floats are rejected."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        text = x.strip()
        if not _RATIONAL.fullmatch(text):
            raise ValueError(f"not an exact rational: {x!r}")
        return Fraction(text)
    raise TypeError(f"cannot use {type(x).__name__} as an exact scalar")


def format_scalar(x) -> str:
    return str(Fraction(x))


def vector(values) -> tuple:
    return tuple(to_scalar(v) for v in values)


def format_vector(v) -> str:
    return ",".join(format_scalar(x) for x in v)
