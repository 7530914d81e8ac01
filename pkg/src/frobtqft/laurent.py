"""Laurent-series coproducts ``δ_k(x^ℓ) = Σ_{i+j=k+ℓ} x^i ⊗ x^j``.

Every tensor these coproducts produce is constant along the hyperplanes
``a_1 + … + a_p = t``, so it is stored as a :class:`DiagonalTensor`: the
arity ``p`` and a finite map ``t ↦ c_t`` standing for
``Σ_t c_t Σ_{a_1+…+a_p=t} x^{a_1} ⊗ … ⊗ x^{a_p}``.  Multiplying any one slot
by ``x^a`` shifts every ``t`` by ``a``; applying ``δ_k`` to any one slot
adds a slot and shifts by ``k``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .findings import Finding
from .scalars import format_scalar, to_scalar


class DivergentContractionError(ArithmeticError):
    """Multiplying two slots of a diagonal tensor sums infinitely many equal terms."""


def _clean(items):
    out = {}
    for e, c in items:
        c = to_scalar(c)
        if c:
            out[int(e)] = out.get(int(e), Fraction(0)) + c
    return {e: c for e, c in sorted(out.items()) if c}


@dataclass(frozen=True)
class LaurentPoly:
    """Finite-support Laurent polynomial, exponent → coefficient."""

    terms: tuple = ()

    @classmethod
    def from_dict(cls, coeffs):
        return cls(tuple(_clean(coeffs.items()).items()))

    @classmethod
    def monomial(cls, exponent, coeff=1):
        return cls.from_dict({exponent: coeff})

    @property
    def coeffs(self):
        return dict(self.terms)

    def coeff(self, e):
        return self.coeffs.get(e, Fraction(0))

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        return LaurentPoly(tuple(_clean(list(self.terms) + list(other.terms)).items()))

    def scale(self, c):
        return LaurentPoly(tuple(_clean((e, x * to_scalar(c)) for e, x in self.terms).items()))

    def __mul__(self, other):
        return LaurentPoly(tuple(_clean((a + b, x * y) for a, x in self.terms
                                        for b, y in other.terms).items()))

    def to_json(self):
        return {str(e): format_scalar(c) for e, c in self.terms}

    @classmethod
    def from_json(cls, obj):
        return cls.from_dict({int(e): to_scalar(c) for e, c in obj.items()})


@dataclass(frozen=True)
class DiagonalTensor:
    arity: int
    diag: tuple = ()

    def __post_init__(self):
        if self.arity < 2:
            raise ValueError("diagonal tensors need arity >= 2 (arity 1 would be a divergent series)")

    @classmethod
    def from_dict(cls, arity, diag):
        return cls(arity, tuple(_clean(diag.items()).items()))

    @property
    def coeffs(self):
        return dict(self.diag)

    def coefficient(self, exponents):
        """Coefficient of ``x^{a_1} ⊗ … ⊗ x^{a_p}``."""
        if len(exponents) != self.arity:
            raise ValueError(f"expected {self.arity} exponents")
        return self.coeffs.get(sum(exponents), Fraction(0))

    def degrees(self):
        return [t for t, _ in self.diag]

    def __add__(self, other):
        if self.arity != other.arity:
            raise ValueError("arity mismatch")
        return DiagonalTensor(self.arity, tuple(_clean(list(self.diag) + list(other.diag)).items()))

    def scale(self, c):
        return DiagonalTensor(self.arity, tuple(_clean((t, x * to_scalar(c)) for t, x in self.diag).items()))

    def to_json(self):
        return {"arity": self.arity, "diag": {str(t): format_scalar(c) for t, c in self.diag}}

    @classmethod
    def from_json(cls, obj):
        return cls.from_dict(int(obj["arity"]), {int(t): to_scalar(c) for t, c in obj["diag"].items()})


def _as_poly(u):
    return u if isinstance(u, LaurentPoly) else LaurentPoly.from_dict(u)


def delta_k(k, u) -> DiagonalTensor:
    u = _as_poly(u)
    return DiagonalTensor.from_dict(2, {}) if u.is_zero() else \
        DiagonalTensor(2, tuple(_clean((k + e, c) for e, c in u.terms).items()))


def delta_combination(weights, u) -> DiagonalTensor:
    """``Σ_k w_k δ_k(u)`` for a finite map ``k ↦ w_k``."""
    u = _as_poly(u)
    return DiagonalTensor(2, tuple(_clean((k + e, to_scalar(w) * c) for k, w in weights.items()
                                          for e, c in u.terms).items()))


def delta_k_power(k, m, u) -> DiagonalTensor:
    """``δ_k^m(u)``: ``m + 1`` slots, total degree ``mk + ℓ`` per monomial ``x^ℓ``."""
    if m < 1:
        raise ValueError("m must be at least 1")
    u = _as_poly(u)
    return DiagonalTensor(m + 1, tuple(_clean((m * k + e, c) for e, c in u.terms).items()))


def _check_slot(t, slot):
    if not 0 <= slot < t.arity:
        raise IndexError(f"slot {slot} out of range for arity {t.arity}")


def apply_delta_to_slot(k, t: DiagonalTensor, slot=0) -> DiagonalTensor:
    """``id ⊗ … ⊗ δ_k ⊗ … ⊗ id`` with ``δ_k`` at ``slot``."""
    _check_slot(t, slot)
    return DiagonalTensor(t.arity + 1, tuple((d + k, c) for d, c in t.diag))


def apply_combination_to_slot(weights, t: DiagonalTensor, slot=0) -> DiagonalTensor:
    """``Σ_k w_k δ_k`` applied at ``slot``."""
    _check_slot(t, slot)
    return DiagonalTensor(t.arity + 1, tuple(_clean((d + k, c * to_scalar(w)) for d, c in t.diag
                                                    for k, w in weights.items()).items()))


def multiply_slot(t: DiagonalTensor, slot, u) -> DiagonalTensor:
    """Multiply slot ``slot`` by the Laurent polynomial ``u`` (linear in ``u``)."""
    _check_slot(t, slot)
    u = _as_poly(u)
    return DiagonalTensor(t.arity, tuple(_clean((d + a, c * x) for d, c in t.diag
                                                for a, x in u.terms).items()))


def contract_slots(t: DiagonalTensor, s1=0, s2=1):
    """Multiply two slots together, as in ``m∘δ_k``.

    Each output monomial would collect one copy of the same term from every
    pair ``(a_{s1}, a_{s2})`` with fixed sum, of which there are infinitely
    many, so any nonzero input raises :class:`DivergentContractionError`.
    """
    _check_slot(t, s1)
    _check_slot(t, s2)
    if s1 == s2:
        raise ValueError("contracted slots must differ")
    if t.diag:
        raise DivergentContractionError(
            f"contracting slots {s1},{s2} of a diagonal tensor of degree {t.degrees()[0]} "
            "sums infinitely many equal terms")
    if t.arity == 2:
        return LaurentPoly()
    return DiagonalTensor(t.arity - 1, ())


def euler_map(k, u):
    """``m∘δ_k(u)``, which only exists for ``u = 0``."""
    return contract_slots(delta_k(k, u), 0, 1)


# grid checks ----------------------------------------------------------------

def _finding(check, bad, k, witness=None):
    if bad:
        return Finding(check, "fail", f"k={k}: diagonal tensors differ", {"k": k, **(witness or {})},
                       suite="laurent")
    return Finding(check, "pass", f"k={k}", suite="laurent", extra={"k": k})


def check_power_iteration(k, grid, m_max=4):
    """``delta_k_power`` equals ``m`` slot-wise applications of ``δ_k``; all nestings agree."""
    bad = None
    for ell in grid:
        x = LaurentPoly.monomial(ell)
        cur = delta_k(k, x)
        for m in range(1, m_max + 1):
            if m > 1:
                nested = [apply_delta_to_slot(k, cur, s) for s in range(cur.arity)]
                cur = nested[0]
                if any(n != cur for n in nested):
                    bad = bad or {"l": ell, "m": m, "nesting": True}
            power = delta_k_power(k, m, x)
            if cur != power or power.degrees() != [m * k + ell]:
                bad = bad or {"l": ell, "m": m, "lhs": cur.to_json(), "rhs": power.to_json()}
    return _finding("laurent-power-iteration", bad, k, bad)


def check_bimodule(k, grid):
    """``(x^a⊗1)·δ_k(x^ℓ) = δ_k(x^{a+ℓ}) = δ_k(x^ℓ)·(1⊗x^a)``."""
    bad = None
    for a in grid:
        xa = LaurentPoly.monomial(a)
        for ell in grid:
            d = delta_k(k, LaurentPoly.monomial(ell))
            mid = delta_k(k, LaurentPoly.monomial(a + ell))
            if not (multiply_slot(d, 0, xa) == mid == multiply_slot(d, 1, xa)):
                bad = bad or {"a": a, "l": ell}
    return _finding("laurent-bimodule", bad, k, bad)


def check_frobenius_relation_laurent(k, grid):
    """``δ_k(uv) = (id⊗m)(δ_k(u)⊗v) = (m⊗id)(u⊗δ_k(v))`` on monomials."""
    bad = None
    for p in grid:
        u = LaurentPoly.monomial(p)
        for q in grid:
            v = LaurentPoly.monomial(q)
            lhs = delta_k(k, u * v)
            right = multiply_slot(delta_k(k, u), 1, v)
            left = multiply_slot(delta_k(k, v), 0, u)
            if not (lhs == right == left):
                bad = bad or {"u": p, "v": q}
    return _finding("laurent-frobenius-relation", bad, k, bad)


def check_coassociativity_laurent(k, grid):
    bad = None
    for ell in grid:
        d = delta_k(k, LaurentPoly.monomial(ell))
        if apply_delta_to_slot(k, d, 0) != apply_delta_to_slot(k, d, 1):
            bad = bad or {"l": ell}
    return _finding("laurent-coassociativity", bad, k, bad)


def check_divergence(k, grid):
    """``m∘δ_k`` must refuse to produce a value on every nonzero monomial."""
    bad = None
    for ell in grid:
        try:
            euler_map(k, LaurentPoly.monomial(ell))
        except DivergentContractionError:
            continue
        bad = bad or {"l": ell}
    if not euler_map(k, LaurentPoly()).is_zero():
        bad = bad or {"l": None}
    return _finding("laurent-divergent-contraction", bad, k, bad)


def check_combination(weights, grid):
    """Frobenius relation and coassociativity for ``Σ_k w_k δ_k``."""
    bad = None
    for p in grid:
        u = LaurentPoly.monomial(p)
        d = delta_combination(weights, u)
        if apply_combination_to_slot(weights, d, 0) != apply_combination_to_slot(weights, d, 1):
            bad = bad or {"l": p, "coassociativity": True}
        for q in grid:
            v = LaurentPoly.monomial(q)
            lhs = delta_combination(weights, u * v)
            if not (lhs == multiply_slot(d, 1, v) == multiply_slot(delta_combination(weights, v), 0, u)):
                bad = bad or {"u": p, "v": q}
    label = {str(k): str(w) for k, w in sorted(weights.items())}
    if bad:
        return Finding("laurent-combination", "fail", "diagonal tensors differ",
                       {"weights": label, **bad}, suite="laurent")
    return Finding("laurent-combination", "pass", suite="laurent", extra={"weights": label})


def laurent_suite(k_values=range(-2, 3), grid=range(-3, 4), m_max=4):
    out = []
    for k in k_values:
        out += [check_power_iteration(k, grid, m_max), check_bimodule(k, grid),
                check_frobenius_relation_laurent(k, grid), check_coassociativity_laurent(k, grid),
                check_divergence(k, grid)]
    return out
