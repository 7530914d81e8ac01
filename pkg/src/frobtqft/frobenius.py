"""Derived Frobenius data: form inverse, coproduct, Euler element and map.

:func:`derive` turns a validated :class:`AlgebraSpec` into an immutable
:class:`FrobeniusPackage`.  The remaining functions take a package and
compute one structure each, or check one identity and return findings.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from . import linalg
from .algebra import (FROBENIUS, NEARLY, AlgebraSpec, MissingDataError, ValidationError,
                      bilinear, errors, is_commutative, resolved_counit, resolved_form, validate)
from .findings import Finding, map_check
from .tensor import MultilinearMap, apply, compose_full, tensor_product

ZERO = Fraction(0)


class NotInvertibleError(ValueError):
    def __init__(self, message, kernel=None):
        super().__init__(message)
        self.kernel = kernel


def formula_coproduct(spec, form, form_inverse):
    """``δ(v) = Σ η(v, e_j e_i) η^{ia} η^{jb} e_a ⊗ e_b``.

    For commutative algebras ``e_j e_i = e_i e_j``.  The ``j, i`` order keeps
    the Frobenius relation valid for noncommutative inputs such as K[G].
    """
    r = spec.dim
    t = spec.table
    inv_rows = [[(a, x) for a, x in enumerate(row) if x] for row in form_inverse]
    coeffs = [ZERO] * r ** 3
    for v in range(r):
        fv = form[v]
        for i in range(r):
            for j in range(r):
                p = sum((fv[k] * c for k, c in enumerate(t[j][i]) if c), ZERO)
                if not p:
                    continue
                for a, x in inv_rows[i]:
                    for b, y in inv_rows[j]:
                        coeffs[(v * r + a) * r + b] += p * x * y
    return MultilinearMap.from_fractions(r, 1, 2, coeffs)


def formula_euler_sum(spec, form_inverse):
    """``Σ_{a,b} η^{ab} e_a e_b``, an element of A whether or not A is unital."""
    r = spec.dim
    out = [ZERO] * r
    for a in range(r):
        for b, x in enumerate(form_inverse[a]):
            if x:
                for k, c in enumerate(spec.table[a][b]):
                    if c:
                        out[k] += x * c
    return tuple(out)


@dataclass(frozen=True)
class FrobeniusPackage:
    """Derived structure of a validated algebra.  Build it with :func:`derive`."""

    spec: AlgebraSpec
    form: tuple
    form_inverse: tuple | None
    counit: tuple | None
    coproduct: MultilinearMap
    euler_map: MultilinearMap
    euler_element: tuple | None
    commutative: bool

    @property
    def dim(self):
        return self.spec.dim

    @property
    def unit(self):
        return self.spec.unit

    @property
    def name(self):
        return self.spec.name

    @property
    def mode(self):
        return self.spec.mode

    @property
    def nondegenerate(self):
        return self.form_inverse is not None

    # the lambda map u -> η(u, -) has the form as its matrix
    @property
    def lam(self):
        return self.form

    @cached_property
    def product(self):
        return self.spec.product

    @cached_property
    def form_map(self):
        return MultilinearMap.from_function(self.dim, 2, 0, lambda t: self.form[t[0]][t[1]])

    @cached_property
    def counit_map(self):
        if self.counit is None:
            raise MissingDataError(f"{self.name} has no counit")
        return MultilinearMap.from_function(self.dim, 1, 0, lambda t: self.counit[t[0]])

    @cached_property
    def unit_map(self):
        if self.unit is None:
            raise MissingDataError(f"{self.name} has no unit")
        return MultilinearMap.vector(self.unit)

    @cached_property
    def copairing(self):
        """``η^{-1}`` as a ``(0, 2)`` map: the partial inverse of λ on all of A*."""
        if self.form_inverse is None:
            raise NotInvertibleError("the form is degenerate; λ has no inverse on A*")
        return MultilinearMap.from_function(self.dim, 0, 2, lambda t: self.form_inverse[t[0]][t[1]])

    @cached_property
    def identity(self):
        return MultilinearMap.identity(self.dim)

    def multiply(self, u, v):
        return self.spec.multiply(u, v)

    def basis_vector(self, i):
        return self.spec.basis_vector(i)

    def apply_euler(self, v, times=1):
        for _ in range(times):
            v = apply(self.euler_map, [v]).as_vector()
        return v

    def epsilon(self, v):
        if self.counit is None:
            raise MissingDataError(f"{self.name} has no counit")
        return sum((a * b for a, b in zip(self.counit, v)), ZERO)

    def eta(self, u, v):
        return bilinear(self.form, u, v)


def derive(spec: AlgebraSpec) -> FrobeniusPackage:
    """Validate ``spec`` and compute its Frobenius package.

    Raises :class:`ValidationError` when an axiom fails (warnings such as
    noncommutativity do not block derivation).
    """
    findings = validate(spec)
    bad = errors(findings)
    if bad:
        raise ValidationError(bad)
    form = resolved_form(spec)
    counit = resolved_counit(spec)
    r = spec.dim
    form_inverse = None
    if form is not None and linalg.kernel_vector(form) is None:
        form_inverse = linalg.inverse(form)
    if spec.coproduct is not None:
        delta = spec.coproduct
    elif form_inverse is not None:
        delta = formula_coproduct(spec, form, form_inverse)
    else:
        raise MissingDataError("a degenerate form needs an explicit coproduct")
    if form_inverse is not None:
        s = formula_euler_sum(spec, form_inverse)
        emap = MultilinearMap.from_function(
            r, 1, 1, lambda t: spec.multiply(spec.basis_vector(t[0]), s)[t[1]])
    else:
        emap = compose_full(delta, spec.product)
    euler = None
    if spec.unit is not None:
        if form_inverse is not None:
            euler = formula_euler_sum(spec, form_inverse)
        else:
            euler = apply(emap, [spec.unit]).as_vector()
    if form is None:
        form = tuple(tuple(ZERO for _ in range(r)) for _ in range(r))
    return FrobeniusPackage(spec, form, form_inverse, counit, delta, emap, euler,
                            is_commutative(spec))


# named operations --------------------------------------------------------

def coproduct(pkg: FrobeniusPackage) -> MultilinearMap:
    return pkg.coproduct


def euler_element(pkg: FrobeniusPackage):
    if pkg.unit is None:
        raise MissingDataError("no unit, so no Euler element; use euler_map instead")
    return pkg.euler_element


def euler_map(pkg: FrobeniusPackage) -> MultilinearMap:
    return pkg.euler_map


def multiplication_matrix(pkg, v):
    """Matrix of ``w ↦ v·w`` (column ``j`` is ``v·e_j``)."""
    cols = [pkg.multiply(v, pkg.basis_vector(j)) for j in range(pkg.dim)]
    return tuple(tuple(cols[j][i] for j in range(pkg.dim)) for i in range(pkg.dim))


def invert_in_algebra(pkg: FrobeniusPackage, v):
    """``w`` with ``v·w = 1``."""
    if pkg.unit is None:
        raise MissingDataError("inverses need a unit")
    mat = multiplication_matrix(pkg, tuple(Fraction(x) for x in v))
    kernel = linalg.kernel_vector(mat)
    if kernel is not None:
        raise NotInvertibleError(f"{tuple(map(str, v))} is not invertible", kernel)
    return linalg.solve(mat, pkg.unit)


def lambda_partial_inverse(pkg: FrobeniusPackage, functional):
    """``r``: the vector ``u`` with ``η(u, -) = functional``, where defined."""
    try:
        return linalg.solve(pkg.form, functional)
    except ValueError:
        raise NotInvertibleError("functional is not in the image of λ") from None


# identity checks ---------------------------------------------------------

def check_frobenius_relation(pkg: FrobeniusPackage):
    """``(m⊗id)∘(id⊗δ) = δ∘m = (id⊗m)∘(δ⊗id)`` as exact (2→2) maps."""
    m, d, i = pkg.product, pkg.coproduct, pkg.identity
    left = compose_full(tensor_product(i, d), tensor_product(m, i))
    middle = compose_full(m, d)
    right = compose_full(tensor_product(d, i), tensor_product(i, m))
    return [map_check("frobenius-relation-left", left, middle, suite="frobenius"),
            map_check("frobenius-relation-right", right, middle, suite="frobenius")]


def check_coassociativity(pkg):
    d, i = pkg.coproduct, pkg.identity
    return [map_check("coassociativity", compose_full(d, tensor_product(d, i)),
                      compose_full(d, tensor_product(i, d)), suite="frobenius")]


def check_canonical_expansion(pkg):
    """``Σ_{a,b} η(v, e_a) η^{ab} e_b = v`` for every basis vector."""
    if pkg.form_inverse is None:
        return [Finding("canonical-expansion", "skip", "form is degenerate", suite="frobenius")]
    r = pkg.dim
    for v in range(r):
        out = [ZERO] * r
        for a in range(r):
            x = pkg.form[v][a]
            if x:
                for b in range(r):
                    out[b] += x * pkg.form_inverse[a][b]
        if tuple(out) != pkg.basis_vector(v):
            return [Finding("canonical-expansion", "fail", "expansion does not reproduce v",
                            {"index": [v + 1], "lhs": tuple(out)}, suite="frobenius")]
    return [Finding("canonical-expansion", "pass", suite="frobenius")]


def check_counit_axiom(pkg):
    """``(ε⊗id)∘δ = id = (id⊗ε)∘δ``."""
    if pkg.counit is None:
        return [Finding("counit-axiom", "skip", "no counit", suite="frobenius")]
    d, e, i = pkg.coproduct, pkg.counit_map, pkg.identity
    return [map_check("counit-axiom-left", compose_full(d, tensor_product(e, i)), i, suite="frobenius"),
            map_check("counit-axiom-right", compose_full(d, tensor_product(i, e)), i, suite="frobenius")]


def check_euler_identities(pkg):
    """``m∘δ`` equals the Euler map; it is multiplication by ``e`` when unital;
    and ``E(x)·y = E(x·y)``."""
    out = [map_check("euler-map-is-m-delta", compose_full(pkg.coproduct, pkg.product),
                     pkg.euler_map, suite="frobenius")]
    r = pkg.dim
    if pkg.unit is not None:
        ok = True
        for v in range(r):
            bv = pkg.basis_vector(v)
            lhs = apply(compose_full(pkg.coproduct, pkg.product), [bv]).as_vector()
            rhs = pkg.multiply(pkg.euler_element, bv)
            if lhs != rhs:
                out.append(Finding("m-delta-is-euler-multiplication", "fail", "m∘δ(v) != e·v",
                                   {"index": [v + 1], "lhs": lhs, "rhs": rhs}, suite="frobenius"))
                ok = False
                break
        if ok:
            out.append(Finding("m-delta-is-euler-multiplication", "pass", suite="frobenius"))
        e1 = apply(pkg.euler_map, [pkg.unit]).as_vector()
        out.append(Finding("euler-element-is-E-of-unit",
                           "pass" if e1 == pkg.euler_element else "fail",
                           witness=None if e1 == pkg.euler_element else
                           {"lhs": e1, "rhs": pkg.euler_element}, suite="frobenius"))
    bad = None
    for x in range(r):
        ex = pkg.apply_euler(pkg.basis_vector(x))
        for y in range(r):
            by = pkg.basis_vector(y)
            if pkg.multiply(ex, by) != pkg.apply_euler(pkg.multiply(pkg.basis_vector(x), by)):
                bad = (x, y)
                break
        if bad:
            break
    out.append(Finding("euler-map-linearity", "fail" if bad else "pass",
                       witness={"index": [bad[0] + 1, bad[1] + 1]} if bad else None,
                       suite="frobenius"))
    return out


def check_lambda(pkg):
    """λ is injective and ``r∘λ = id``."""
    if pkg.form_inverse is None:
        k = linalg.kernel_vector(pkg.form)
        status = "warn" if pkg.mode == NEARLY else "fail"
        return [Finding("lambda-injective", status, "λ has a kernel", {"kernel": k}, suite="frobenius")]
    for v in range(pkg.dim):
        functional = pkg.form[v]
        if lambda_partial_inverse(pkg, functional) != pkg.basis_vector(v):
            return [Finding("lambda-partial-inverse", "fail", "r(λ(v)) != v",
                            {"index": [v + 1]}, suite="frobenius")]
    return [Finding("lambda-partial-inverse", "pass", suite="frobenius")]


def check_form_counit_roundtrip(pkg):
    """(unit, ε) → η → ε reproduces ε."""
    spec = pkg.spec
    if spec.unit is None or pkg.counit is None:
        return [Finding("form-counit-roundtrip", "skip", "needs unit and counit", suite="frobenius")]
    from .algebra import derive_counit_from_form, derive_form_from_counit
    form = derive_form_from_counit(spec.with_changes(counit=pkg.counit))
    back = derive_counit_from_form(spec.with_changes(form=form, counit=None))
    ok = back == tuple(pkg.counit)
    return [Finding("form-counit-roundtrip", "pass" if ok else "fail",
                    witness=None if ok else {"lhs": back, "rhs": pkg.counit}, suite="frobenius")]


def check_coproduct_formula(pkg):
    """The package coproduct agrees with the one induced by η and the product."""
    if pkg.form_inverse is None:
        return [Finding("coproduct-formula", "skip", "form is degenerate", suite="frobenius")]
    expected = formula_coproduct(pkg.spec, pkg.form, pkg.form_inverse)
    return [map_check("coproduct-formula", pkg.coproduct, expected, suite="frobenius")]


def frobenius_suite(pkg):
    """Every structural identity of the package, as findings."""
    out = []
    out += check_coproduct_formula(pkg)
    out += check_frobenius_relation(pkg)
    out += check_coassociativity(pkg)
    out += check_counit_axiom(pkg)
    out += check_canonical_expansion(pkg)
    out += check_euler_identities(pkg)
    out += check_lambda(pkg)
    out += check_form_counit_roundtrip(pkg)
    if not pkg.commutative:
        out.append(Finding("commutativity", "warn", "noncommutative: TQFT suites are blocked",
                           suite="frobenius"))
    return out


def with_coproduct(pkg: FrobeniusPackage, delta: MultilinearMap) -> FrobeniusPackage:
    """Same package with ``δ`` replaced, bypassing validation (for tamper tests)."""
    return FrobeniusPackage(pkg.spec, pkg.form, pkg.form_inverse, pkg.counit, delta,
                            pkg.euler_map, pkg.euler_element, pkg.commutative)


__all__ = [
    "FROBENIUS", "NEARLY", "FrobeniusPackage", "NotInvertibleError", "derive", "coproduct",
    "euler_element", "euler_map", "invert_in_algebra", "check_frobenius_relation",
    "frobenius_suite", "formula_coproduct", "lambda_partial_inverse", "with_coproduct",
]
