"""Algebra specifications given by structure constants, and their validation."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from . import linalg
from .findings import Finding
from .tensor import MultilinearMap

FROBENIUS = "frobenius"
NEARLY = "nearly-frobenius"


class MissingDataError(ValueError):
    pass


class ValidationError(ValueError):
    def __init__(self, findings):
        self.findings = findings
        lines = "; ".join(f"{f.check}: {f.message}" for f in findings)
        super().__init__(f"algebra spec is invalid: {lines}")


@dataclass(frozen=True)
class AlgebraSpec:
    """A finite-dimensional algebra in a fixed basis.

    ``product`` is the ``(2, 1)`` map with coefficient ``c[i][j][k]`` at index
    ``(i, j, k)``, meaning ``e_i e_j = Σ_k c[i][j][k] e_k``.  ``form`` is the
    matrix ``η_ij = η(e_i, e_j)`` as a tuple of rows.  ``coproduct`` is only
    needed when it cannot be derived from a nondegenerate form.
    """

    name: str
    basis: tuple
    product: MultilinearMap
    unit: tuple | None = None
    counit: tuple | None = None
    form: tuple | None = None
    coproduct: MultilinearMap | None = None
    mode: str = FROBENIUS
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        r = len(self.basis)
        if r < 1:
            raise ValueError("an algebra needs at least one basis element")
        if self.product.dim != r or self.product.arity != (2, 1):
            raise ValueError("product must be a (2, 1) map of the basis dimension")
        for label, v in (("unit", self.unit), ("counit", self.counit)):
            if v is not None and len(v) != r:
                raise ValueError(f"{label} has length {len(v)}, expected {r}")
        if self.form is not None and (len(self.form) != r or any(len(row) != r for row in self.form)):
            raise ValueError(f"form must be a {r}x{r} matrix")
        if self.coproduct is not None and (self.coproduct.dim != r or self.coproduct.arity != (1, 2)):
            raise ValueError("coproduct must be a (1, 2) map of the basis dimension")
        if self.mode not in (FROBENIUS, NEARLY):
            raise ValueError(f"unknown mode {self.mode!r}")

    @classmethod
    def from_constants(cls, name, basis, constants, **kw):
        """``constants`` is a nested ``c[i][j][k]`` list or a ``{(i, j, k): c}`` dict (0-based)."""
        r = len(basis)
        if isinstance(constants, dict):
            product = MultilinearMap.from_sparse(r, 2, 1, constants.items())
        else:
            product = MultilinearMap.from_function(r, 2, 1, lambda t: constants[t[0]][t[1]][t[2]])
        for key in ("unit", "counit"):
            if kw.get(key) is not None:
                kw[key] = tuple(Fraction(x) for x in kw[key])
        if kw.get("form") is not None:
            kw["form"] = tuple(tuple(Fraction(x) for x in row) for row in kw["form"])
        return cls(name, tuple(basis), product, **kw)

    @property
    def dim(self):
        return len(self.basis)

    @cached_property
    def table(self):
        """Dense ``c[i][j]`` → coordinate tuple of ``e_i e_j``."""
        r = self.dim
        return [[tuple(self.product.coeff((i, j, k)) for k in range(r)) for j in range(r)]
                for i in range(r)]

    def basis_vector(self, i):
        return tuple(Fraction(int(k == i)) for k in range(self.dim))

    def multiply(self, u, v):
        r = self.dim
        out = [Fraction(0)] * r
        table = self.table
        for i, a in enumerate(u):
            if not a:
                continue
            row = table[i]
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(row[j]):
                    if c:
                        out[k] += ab * c
        return tuple(out)

    def product_of(self, vectors):
        """Left-to-right product; the empty product needs a unit."""
        vectors = list(vectors)
        if not vectors:
            if self.unit is None:
                raise MissingDataError("empty product requires a unit")
            return self.unit
        acc = tuple(vectors[0])
        for v in vectors[1:]:
            acc = self.multiply(acc, v)
        return acc

    def with_changes(self, **kw):
        data = {f: getattr(self, f) for f in
                ("name", "basis", "product", "unit", "counit", "form", "coproduct", "mode", "meta")}
        data.update(kw)
        return AlgebraSpec(**data)


def bilinear(form, u, v):
    return sum((u[i] * form[i][j] * v[j] for i in range(len(u)) if u[i]
                for j in range(len(v)) if v[j] and form[i][j]), Fraction(0))


def derive_form_from_counit(spec: AlgebraSpec):
    """``η_ij = ε(e_i e_j)``; needs a counit (a unit is not required)."""
    if spec.counit is None:
        raise MissingDataError("deriving the form needs a counit")
    r = spec.dim
    eps = spec.counit
    return tuple(tuple(sum((eps[k] * c for k, c in enumerate(spec.table[i][j])), Fraction(0))
                       for j in range(r)) for i in range(r))


def derive_counit_from_form(spec: AlgebraSpec):
    """``ε(e_i) = η(1, e_i)``; needs a unit and a form."""
    if spec.unit is None:
        raise MissingDataError("deriving the counit needs a unit")
    if spec.form is None:
        raise MissingDataError("deriving the counit needs a form")
    r = spec.dim
    return tuple(bilinear(spec.form, spec.unit, spec.basis_vector(i)) for i in range(r))


def resolved_form(spec):
    if spec.form is not None:
        return spec.form
    if spec.counit is not None:
        return derive_form_from_counit(spec)
    return None


def resolved_counit(spec):
    if spec.counit is not None:
        return spec.counit
    if spec.unit is not None and spec.form is not None:
        return derive_counit_from_form(spec)
    return None


def _w(*idx):
    return [i + 1 for i in idx]


def validate(spec: AlgebraSpec):
    """Check the algebra axioms on all basis tuples.

    Returns the list of problems found; empty when every axiom holds.
    Noncommutativity is reported with status ``"warn"`` (it only blocks TQFT
    use), and so is a degenerate form in nearly-Frobenius mode.
    """
    r = spec.dim
    t = spec.table
    out = []

    for i, j in itertools.product(range(r), repeat=2):
        if i < j and t[i][j] != t[j][i]:
            k = next(k for k in range(r) if t[i][j][k] != t[j][i][k])
            out.append(Finding("commutativity", "warn", "e_i e_j != e_j e_i",
                               {"index": _w(i, j, k)}, suite="validate"))
            break

    basis = [spec.basis_vector(i) for i in range(r)]
    for i, j, k in itertools.product(range(r), repeat=3):
        lhs = spec.multiply(t[i][j], basis[k])
        rhs = spec.multiply(basis[i], t[j][k])
        if lhs != rhs:
            out.append(Finding("associativity", "fail", "(e_i e_j) e_k != e_i (e_j e_k)",
                               {"index": _w(i, j, k), "lhs": lhs, "rhs": rhs}, suite="validate"))
            break

    if spec.unit is not None:
        u = spec.unit
        for i in range(r):
            if spec.multiply(u, basis[i]) != basis[i] or spec.multiply(basis[i], u) != basis[i]:
                out.append(Finding("unit-axiom", "fail", "1 * e_i != e_i",
                                   {"index": _w(i)}, suite="validate"))
                break

    form = resolved_form(spec)
    if form is None:
        if spec.mode == FROBENIUS or spec.coproduct is None:
            out.append(Finding("form-available", "fail",
                               "neither a form nor a counit is given", suite="validate"))
        return out

    for i, j in itertools.product(range(r), repeat=2):
        if form[i][j] != form[j][i]:
            out.append(Finding("form-symmetry", "fail", "η_ij != η_ji",
                               {"index": _w(i, j)}, suite="validate"))
            break

    for i, j, k in itertools.product(range(r), repeat=3):
        if bilinear(form, basis[i], t[j][k]) != bilinear(form, t[i][j], basis[k]):
            out.append(Finding("form-invariance", "fail", "η(u, vw) != η(uv, w)",
                               {"index": _w(i, j, k)}, suite="validate"))
            break

    if spec.counit is not None and spec.form is not None:
        derived = derive_form_from_counit(spec)
        if derived != tuple(tuple(row) for row in spec.form):
            i, j = next((i, j) for i in range(r) for j in range(r) if derived[i][j] != spec.form[i][j])
            out.append(Finding("counit-form-consistency", "fail", "η(u, v) != ε(uv)",
                               {"index": _w(i, j), "lhs": spec.form[i][j], "rhs": derived[i][j]},
                               suite="validate"))

    kernel = linalg.kernel_vector(form)
    if kernel is not None:
        status = "warn" if spec.mode == NEARLY else "fail"
        out.append(Finding("nondegeneracy", status, "the form is degenerate",
                           {"kernel": kernel}, suite="validate"))
    elif spec.coproduct is not None:
        from .frobenius import formula_coproduct  # circular at import time
        expected = formula_coproduct(spec, form, linalg.inverse(form))
        diff = spec.coproduct.first_difference(expected)
        if diff is not None:
            idx, a, b = diff
            out.append(Finding("coproduct-formula", "fail",
                               "supplied coproduct differs from the one induced by η",
                               {"index": [x + 1 for x in idx], "lhs": a, "rhs": b},
                               suite="validate"))
    return out


def errors(findings):
    return [f for f in findings if f.status == "fail"]


def is_commutative(spec):
    t = spec.table
    return all(t[i][j] == t[j][i] for i in range(spec.dim) for j in range(i))
