"""``ω_{g,n,m} = δ^{m-1}(E^g(v_1⋯v_n))`` assembled directly from the algebra.

Products are taken from the structure table, ``E^g`` either as the Euler
map or (unital case) as multiplication by ``e^g``, and ``δ^{m-1}`` from the
expansion ``δ^{r}(y) = Σ_a δ^{r-1}(y e_a) ⊗ e^a`` with ``e^a = Σ_b η^{ab} e_b``.
No sewing is involved, so this is an independent check on plan evaluation.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

from ..algebra import MissingDataError
from ..tensor import MultilinearMap, apply, compose_full, tensor_product
from .cobordism import InadmissibleTypeError, as_type, is_unital

ZERO = Fraction(0)


def _axpy(acc, c, vec):
    for i, x in enumerate(vec):
        if x:
            acc[i] += c * x


def euler_power(pkg, x, g, via="map"):
    """``E^g(x)``; ``via="element"`` multiplies by ``e`` instead (needs a unit)."""
    if via == "element":
        if pkg.unit is None:
            raise MissingDataError("E^g via the Euler element needs a unit")
        for _ in range(g):
            x = pkg.multiply(pkg.euler_element, x)
        return tuple(x)
    return tuple(pkg.apply_euler(tuple(x), g))


def iterated_coproduct_basis(pkg, r):
    """Dense coefficient list of ``δ^{r}(e_k)`` for each basis index ``k``."""
    d = pkg.dim
    if r == 0:
        return [list(pkg.basis_vector(k)) for k in range(d)]
    if pkg.form_inverse is None:
        # degenerate form: fall back to iterating the supplied coproduct
        delta = pkg.coproduct
        for _ in range(r - 1):
            delta = compose_full(delta, tensor_product(pkg.coproduct,
                                                       MultilinearMap.identity(d, delta.m_out - 1)))
        return [list(apply(delta, [pkg.basis_vector(k)]).coeffs()) for k in range(d)]
    prev = iterated_coproduct_basis(pkg, r - 1)
    size = d ** r
    out = []
    for k in range(d):
        acc = [ZERO] * (size * d)
        ek = pkg.basis_vector(k)
        for a in range(d):
            y = pkg.multiply(ek, pkg.basis_vector(a))
            # δ^{r-1}(y) ⊗ e^a, by linearity in y
            block = [ZERO] * size
            for j, c in enumerate(y):
                if c:
                    _axpy(block, c, prev[j])
            dual = pkg.form_inverse[a]
            for p, x in enumerate(block):
                if x:
                    base = p * d
                    for b, w in enumerate(dual):
                        if w:
                            acc[base + b] += x * w
        out.append(acc)
    return out


def closed_form(t, pkg, unital=None, via=None):
    """Coefficient tensor of ``ω_{g,n,m}`` for the package.

    ``via`` selects how ``E^g`` is realised: ``"element"`` (default when
    unital) or ``"map"``.
    """
    unital = is_unital(pkg, unital)
    t = as_type(t).check(unital)
    g, n, m = t
    if m == 0 and pkg.counit is None:
        raise InadmissibleTypeError(f"{t}: m = 0 needs a counit")
    via = via or ("element" if unital else "map")
    d = pkg.dim
    outs = iterated_coproduct_basis(pkg, m - 1) if m >= 1 else None

    prefix = {(): pkg.unit if n == 0 else None}

    def product(idx):
        if idx in prefix:
            return prefix[idx]
        if len(idx) == 1:
            v = pkg.basis_vector(idx[0])
        else:
            v = pkg.multiply(product(idx[:-1]), pkg.basis_vector(idx[-1]))
        prefix[idx] = v
        return v

    coeffs = []
    width = d ** m
    for idx in itertools.product(range(d), repeat=n):
        y = euler_power(pkg, product(idx), g, via)
        if m == 0:
            coeffs.append(pkg.epsilon(y))
            continue
        row = [ZERO] * width
        for k, c in enumerate(y):
            if c:
                _axpy(row, c, outs[k])
        coeffs.extend(row)
    return MultilinearMap.from_fractions(d, n, m, coeffs)
