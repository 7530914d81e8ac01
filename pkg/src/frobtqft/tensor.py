"""Coordinate representations of multilinear maps ``A^{⊗n} → A^{⊗m}``.

A :class:`MultilinearMap` stores its coefficients densely, row-major, with
the axes ordered ``(i_1, ..., i_n, j_1, ..., j_m)``: input slots first, then
output slots.  Coefficients are kept as integer numerators over one common
positive denominator, reduced so that the representation is canonical;
structural equality is therefore exact equality of maps.

Slot order after composition is fixed: see :func:`compose_partial`.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from . import kernels
from .scalars import format_scalar, to_scalar


class DimensionError(ValueError):
    pass


class ArityError(ValueError):
    pass


def _normalize(num, den):
    if den <= 0:
        raise ValueError("denominator must be positive")
    if den == 1:
        return tuple(num), 1
    g = math.gcd(den, *num) if num else den
    if g > 1:
        num = [x // g for x in num]
        den //= g
    return tuple(num), den


@dataclass(frozen=True)
class MultilinearMap:
    """Dense exact coefficient tensor of a map ``A^{⊗n_in} → A^{⊗m_out}``.

    Instances are immutable and hashable.  Use the classmethod constructors
    rather than passing ``num``/``den`` by hand.
    """

    dim: int
    n_in: int
    m_out: int
    num: tuple
    den: int = 1

    def __post_init__(self):
        if self.dim < 1 or self.n_in < 0 or self.m_out < 0:
            raise ValueError("dim must be positive and arities nonnegative")
        if len(self.num) != self.dim ** self.rank:
            raise ValueError(
                f"expected {self.dim ** self.rank} coefficients, got {len(self.num)}")
        num, den = _normalize(list(self.num), self.den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    # construction -----------------------------------------------------
    @classmethod
    def from_fractions(cls, dim, n_in, m_out, coeffs):
        coeffs = [to_scalar(c) for c in coeffs]
        den = math.lcm(*(c.denominator for c in coeffs)) if coeffs else 1
        return cls(dim, n_in, m_out, tuple(c.numerator * (den // c.denominator)
                                           for c in coeffs), den)

    @classmethod
    def from_function(cls, dim, n_in, m_out, fn):
        """Build from ``fn(index_tuple) -> scalar`` over all index tuples."""
        idx = itertools.product(range(dim), repeat=n_in + m_out)
        return cls.from_fractions(dim, n_in, m_out, [fn(t) for t in idx])

    @classmethod
    def from_sparse(cls, dim, n_in, m_out, triples, one_based=False):
        """Densify ``[(index_tuple, value), ...]``; duplicate tuples are an error."""
        rank = n_in + m_out
        coeffs = [Fraction(0)] * (dim ** rank)
        seen = set()
        shift = 1 if one_based else 0
        for index, value in triples:
            index = tuple(int(i) - shift for i in index)
            if len(index) != rank or any(not 0 <= i < dim for i in index):
                raise DimensionError(f"index {index} out of range for rank {rank}, dim {dim}")
            if index in seen:
                raise ValueError(f"duplicate index tuple {index}")
            seen.add(index)
            coeffs[_flat(index, dim)] = to_scalar(value)
        return cls.from_fractions(dim, n_in, m_out, coeffs)

    @classmethod
    def zero(cls, dim, n_in, m_out):
        return cls(dim, n_in, m_out, (0,) * dim ** (n_in + m_out))

    @classmethod
    def identity(cls, dim, k=1):
        """Identity on ``A^{⊗k}``."""
        def delta(t):
            return int(t[:k] == t[k:])
        return cls.from_function(dim, k, k, delta)

    @classmethod
    def vector(cls, coords):
        coords = [to_scalar(c) for c in coords]
        return cls.from_fractions(len(coords), 0, 1, coords)

    @classmethod
    def scalar(cls, dim, value):
        return cls.from_fractions(dim, 0, 0, [value])

    # access -----------------------------------------------------------
    @property
    def rank(self):
        return self.n_in + self.m_out

    @property
    def arity(self):
        return (self.n_in, self.m_out)

    def coeff(self, index):
        return Fraction(self.num[_flat(index, self.dim)], self.den)

    def coeffs(self):
        return [Fraction(x, self.den) for x in self.num]

    def entries(self):
        """Nonzero ``(index_tuple, Fraction)`` pairs in row-major order."""
        idx = itertools.product(range(self.dim), repeat=self.rank)
        return [(t, Fraction(x, self.den)) for t, x in zip(idx, self.num) if x]

    def as_scalar(self):
        if self.rank != 0:
            raise ArityError(f"map of arity {self.arity} is not a scalar")
        return Fraction(self.num[0], self.den)

    def as_vector(self):
        if self.arity != (0, 1):
            raise ArityError(f"map of arity {self.arity} is not a vector")
        return tuple(self.coeffs())

    def is_zero(self):
        return not any(self.num)

    def to_sparse(self, one_based=False):
        shift = 1 if one_based else 0
        return [[[i + shift for i in t], format_scalar(v)] for t, v in self.entries()]

    def to_json(self):
        return {"dim": self.dim, "n_in": self.n_in, "m_out": self.m_out,
                "coeffs": self.to_sparse(one_based=True)}

    @classmethod
    def from_json(cls, obj):
        return cls.from_sparse(obj["dim"], obj["n_in"], obj["m_out"],
                               obj["coeffs"], one_based=True)

    def first_difference(self, other):
        """First index where two same-shaped maps differ, with both values."""
        if (self.dim, self.arity) != (other.dim, other.arity) or self == other:
            return None
        for t in itertools.product(range(self.dim), repeat=self.rank):
            a, b = self.coeff(t), other.coeff(t)
            if a != b:
                return t, a, b
        return None

    def __add__(self, other):
        _check_same_shape(self, other)
        den = self.den * other.den // math.gcd(self.den, other.den)
        fa, fb = den // self.den, den // other.den
        return MultilinearMap(self.dim, self.n_in, self.m_out,
                              tuple(x * fa + y * fb for x, y in zip(self.num, other.num)), den)

    def __neg__(self):
        return MultilinearMap(self.dim, self.n_in, self.m_out,
                              tuple(-x for x in self.num), self.den)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = to_scalar(c)
        return MultilinearMap(self.dim, self.n_in, self.m_out,
                              tuple(x * c.numerator for x in self.num), self.den * c.denominator)

    def __repr__(self):
        return f"MultilinearMap(dim={self.dim}, {self.n_in}->{self.m_out}, nnz={sum(1 for x in self.num if x)})"


def _flat(index, dim):
    f = 0
    for i in index:
        f = f * dim + i
    return f


def _check_same_shape(f, g):
    if f.dim != g.dim or f.arity != g.arity:
        raise DimensionError(f"shape mismatch: {f.dim}/{f.arity} vs {g.dim}/{g.arity}")


def _reorder(data, rank, dim, perm):
    if list(perm) == list(range(rank)):
        return list(data)
    return kernels.transpose(list(data), rank, dim, list(perm))


# operations -----------------------------------------------------------

def apply(f: MultilinearMap, inputs) -> MultilinearMap:
    """Evaluate ``f`` on ``n_in`` vectors; returns a ``(0, m_out)`` map.

    Use ``.as_vector()`` / ``.as_scalar()`` / ``.coeff()`` on the result.
    """
    inputs = list(inputs)
    if len(inputs) != f.n_in:
        raise ArityError(f"expected {f.n_in} inputs, got {len(inputs)}")
    data = list(f.num)
    den = f.den
    rank = f.rank
    for slot, v in enumerate(inputs):
        vm = v if isinstance(v, MultilinearMap) else MultilinearMap.vector(v)
        if vm.dim != f.dim or vm.arity != (0, 1):
            raise DimensionError(f"input slot {slot}: expected a vector of dimension {f.dim}")
        data = kernels.tensordot(list(vm.num), 1, data, rank, f.dim, [0], [0])
        rank -= 1
        den *= vm.den
    return MultilinearMap(f.dim, 0, f.m_out, tuple(data), den)


def compose_partial(f: MultilinearMap, g: MultilinearMap, channels) -> MultilinearMap:
    """Sew outputs of ``f`` into inputs of ``g``.

    ``channels`` is a list of ``(f_output_slot, g_input_slot)`` pairs.  The
    result has inputs ``f``'s inputs followed by ``g``'s unmatched inputs,
    and outputs ``f``'s unmatched outputs followed by ``g``'s outputs, each
    group in its original order.
    """
    if f.dim != g.dim:
        raise DimensionError(f"dimension mismatch: {f.dim} vs {g.dim}")
    channels = [(int(a), int(b)) for a, b in channels]
    if not channels:
        raise ArityError("partial sewing needs at least one channel")
    outs = [a for a, _ in channels]
    ins = [b for _, b in channels]
    for a, b in channels:
        if not 0 <= a < f.m_out:
            raise ArityError(f"channel output slot {a} out of range (f has {f.m_out} outputs)")
        if not 0 <= b < g.n_in:
            raise ArityError(f"channel input slot {b} out of range (g has {g.n_in} inputs)")
    if len(set(outs)) != len(outs) or len(set(ins)) != len(ins):
        raise ArityError("duplicate channel endpoint")
    j = len(channels)
    data = kernels.tensordot(list(f.num), f.rank, list(g.num), g.rank, f.dim,
                             [f.n_in + a for a in outs], ins)
    # kernel order: f inputs, f free outputs, g free inputs, g outputs
    nf_out = f.m_out - j
    ng_in = g.n_in - j
    a0, a1 = 0, f.n_in
    b0 = a1 + nf_out
    c0 = b0 + ng_in
    perm = (list(range(a0, a1)) + list(range(b0, c0))
            + list(range(a1, b0)) + list(range(c0, c0 + g.m_out)))
    rank = len(perm)
    data = _reorder(data, rank, f.dim, perm)
    return MultilinearMap(f.dim, f.n_in + ng_in, nf_out + g.m_out, tuple(data), f.den * g.den)


def compose_full(f: MultilinearMap, g: MultilinearMap) -> MultilinearMap:
    """``g ∘ f`` with every output of ``f`` fed to the same-numbered input of ``g``."""
    if f.m_out != g.n_in or f.m_out < 1:
        raise ArityError(f"cannot compose {f.arity} with {g.arity}")
    return compose_partial(f, g, [(k, k) for k in range(f.m_out)])


def tensor_product(f: MultilinearMap, g: MultilinearMap) -> MultilinearMap:
    """``f ⊗ g``: inputs ``f``'s then ``g``'s, outputs likewise."""
    if f.dim != g.dim:
        raise DimensionError(f"dimension mismatch: {f.dim} vs {g.dim}")
    data = kernels.outer(list(f.num), list(g.num))
    # outer order: f in, f out, g in, g out
    p, q, r = f.n_in, f.m_out, g.n_in
    perm = (list(range(p)) + list(range(p + q, p + q + r))
            + list(range(p, p + q)) + list(range(p + q + r, p + q + r + g.m_out)))
    data = _reorder(data, len(perm), f.dim, perm)
    return MultilinearMap(f.dim, f.n_in + g.n_in, f.m_out + g.m_out, tuple(data), f.den * g.den)


def _check_perm(perm, size, what):
    if sorted(perm) != list(range(size)):
        raise ValueError(f"malformed {what} permutation {list(perm)} (expected one of size {size})")


def permute(f: MultilinearMap, input_perm=None, output_perm=None) -> MultilinearMap:
    """Reindex slots: new input ``k`` is old input ``input_perm[k]``; same for outputs."""
    input_perm = list(range(f.n_in)) if input_perm is None else list(input_perm)
    output_perm = list(range(f.m_out)) if output_perm is None else list(output_perm)
    _check_perm(input_perm, f.n_in, "input")
    _check_perm(output_perm, f.m_out, "output")
    perm = input_perm + [f.n_in + k for k in output_perm]
    data = _reorder(f.num, f.rank, f.dim, perm)
    return MultilinearMap(f.dim, f.n_in, f.m_out, tuple(data), f.den)


def tensor_power(f: MultilinearMap, k: int) -> MultilinearMap:
    if k < 1:
        raise ValueError("tensor power needs k >= 1")
    out = f
    for _ in range(k - 1):
        out = tensor_product(out, f)
    return out
