"""Cobordism types ``(g, n, m)`` and the generator maps they are built from."""
from __future__ import annotations

from typing import NamedTuple

from ..algebra import MissingDataError
from ..tensor import MultilinearMap


class InadmissibleTypeError(ValueError):
    pass


class CobordismType(NamedTuple):
    g: int
    n: int
    m: int

    @property
    def boundary(self):
        return self.n + self.m

    @property
    def euler_characteristic(self):
        return 2 - 2 * self.g - self.n - self.m

    def check(self, unital=True):
        """Raise :class:`InadmissibleTypeError` unless the type is usable."""
        g, n, m = self
        if min(g, n, m) < 0:
            raise InadmissibleTypeError(f"{tuple(self)}: entries must be nonnegative")
        if n + m < 1:
            raise InadmissibleTypeError(f"{tuple(self)}: needs at least one boundary circle")
        if not unital and n < 1:
            raise InadmissibleTypeError(f"{tuple(self)}: non-unital mode needs n >= 1")
        return self

    def __str__(self):
        return f"({self.g},{self.n},{self.m})"


def as_type(t):
    return t if isinstance(t, CobordismType) else CobordismType(*t)


def is_unital(pkg, unital=None):
    """Resolve the mode flag: default to unital exactly when a unit exists."""
    if unital is None:
        return pkg.unit is not None
    if unital and pkg.unit is None:
        raise MissingDataError(f"{pkg.name} has no unit; unital mode is unavailable")
    return bool(unital)


GENERATOR_TYPES = {
    "unit": CobordismType(0, 0, 1),
    "counit": CobordismType(0, 1, 0),
    "identity": CobordismType(0, 1, 1),
    "form": CobordismType(0, 2, 0),
    "product": CobordismType(0, 2, 1),
    "coproduct": CobordismType(0, 1, 2),
}


def generator(kind, pkg, unital=None) -> MultilinearMap:
    """Coordinate tensor of one of the six generating cobordisms."""
    if kind not in GENERATOR_TYPES:
        raise ValueError(f"unknown generator {kind!r}")
    unital = is_unital(pkg, unital)
    if kind == "unit":
        if not unital:
            raise InadmissibleTypeError("the unit generator is disabled in non-unital mode")
        return pkg.unit_map
    if kind == "counit":
        return pkg.counit_map
    if kind == "identity":
        return pkg.identity
    if kind == "form":
        return pkg.form_map
    if kind == "product":
        return pkg.product
    return pkg.coproduct
