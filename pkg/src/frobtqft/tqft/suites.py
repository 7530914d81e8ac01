"""Verification suites for the TQFT engine.  Every function returns findings."""
from __future__ import annotations

import itertools
from fractions import Fraction

from ..algebra import MissingDataError
from ..findings import Finding, map_check
from ..frobenius import derive
from ..tensor import MultilinearMap, apply, compose_partial, permute
from .closed_form import closed_form, euler_power
from .cobordism import CobordismType, as_type, is_unital
from .normal_form import normal_form_plan
from .plans import describe, evaluate_plan, plan_type, uses_unit
from .random_plans import random_plans

ZERO = Fraction(0)
SIZE_CAP = 2 ** 20


def _types(g_max, n_range, m_range, unital=True):
    for g in range(g_max + 1):
        for n in n_range:
            for m in m_range:
                t = CobordismType(g, n, m)
                if n + m >= 1 and (unital or n >= 1):
                    yield t


def _commutative_or_blocked(pkg, suite):
    if pkg.commutative:
        return None
    return [Finding("commutativity", "warn", "noncommutative algebra: suite not applicable",
                    suite=suite)]


def normal_form_suite(pkg, g_max=2, n_range=range(1, 4), m_range=range(0, 4), unital=None):
    """Normal-form plan evaluation against the closed form for every type in range."""
    blocked = _commutative_or_blocked(pkg, "sewing")
    if blocked:
        return blocked
    unital = is_unital(pkg, unital)
    out = []
    for t in _types(g_max, n_range, m_range, unital):
        if t.m == 0 and pkg.counit is None:
            continue
        plan = normal_form_plan(t, unital)
        out.append(map_check("normal-form", evaluate_plan(plan, pkg, unital), closed_form(t, pkg, unital),
                             suite="sewing", type=tuple(t)))
    return out


def verify_plan_independence(t, pkg, plans, unital=None):
    """Each plan must have type ``t`` and evaluate to the closed form."""
    t = as_type(t)
    unital = is_unital(pkg, unital)
    expected = closed_form(t, pkg, unital)
    out = []
    for k, plan in enumerate(plans):
        got_type = plan_type(plan)
        if got_type != t:
            out.append(Finding("plan-type", "fail", f"plan {k} has type {tuple(got_type)}",
                               {"plan": describe(plan)}, suite="sewing", type=tuple(t)))
            continue
        out.append(map_check("plan-independence", evaluate_plan(plan, pkg, unital), expected,
                             suite="sewing", type=tuple(t),
                             context={"plan_index": k, "plan": describe(plan)}))
    return out


def plan_independence_suite(pkg, g_max=2, n_range=range(1, 4), m_range=range(0, 4),
                            count=10, seed=0, unital=None):
    blocked = _commutative_or_blocked(pkg, "sewing")
    if blocked:
        return blocked
    unital = is_unital(pkg, unital)
    out = []
    for t in _types(g_max, n_range, m_range, unital):
        if t.m == 0 and pkg.counit is None:
            continue
        plans = random_plans(t, count, seed, unital, dim=pkg.dim)
        results = verify_plan_independence(t, pkg, plans, unital)
        bad = [f for f in results if f.failed]
        out.append(bad[0] if bad else Finding("plan-independence", "pass",
                                              f"{len(plans)} random plans", suite="sewing",
                                              type=tuple(t)))
    return out


# CohFT identities ---------------------------------------------------------

def cohft_check(pkg, g_max=2, n_max=4):
    """Unit, genus-reduction and splitting identities for ``ω_{g,n,0}``."""
    blocked = _commutative_or_blocked(pkg, "cohft")
    if blocked:
        return blocked
    if pkg.unit is None or pkg.form_inverse is None:
        return [Finding("cohft", "skip", "needs a unit and a nondegenerate form", suite="cohft")]
    d = pkg.dim
    inv = pkg.form_inverse
    cache = {}

    def omega(g, n):
        if (g, n) not in cache:
            cache[(g, n)] = closed_form((g, n, 0), pkg, unital=True)
        return cache[(g, n)]

    basis = [pkg.basis_vector(i) for i in range(d)]
    out = []
    for g in range(g_max + 1):
        for n in range(1, n_max + 1):
            t = (g, n, 0)
            lhs = omega(g, n)
            # ω_{g,n+1,0}(v…, 1) = ω_{g,n,0}(v…)
            w = omega(g, n + 1)
            unit_fed = MultilinearMap.from_function(d, n, 0, lambda idx: apply(
                w, [basis[i] for i in idx] + [pkg.unit]).as_scalar())
            out.append(map_check("cohft-unit", unit_fed, lhs, suite="cohft", type=t))
            if g >= 1:
                w = omega(g - 1, n + 2)

                def reduce(idx):
                    return sum((inv[a][b] * w.coeff(idx + (a, b)) for a in range(d)
                                for b in range(d) if inv[a][b]), ZERO)
                out.append(map_check("cohft-genus-reduction",
                                     MultilinearMap.from_function(d, n, 0, reduce), lhs,
                                     suite="cohft", type=t))
            for g1 in range(g + 1):
                g2 = g - g1
                for size in range(n + 1):
                    for subset in itertools.combinations(range(n), size):
                        rest = tuple(k for k in range(n) if k not in subset)
                        w1, w2 = omega(g1, len(subset) + 1), omega(g2, len(rest) + 1)

                        def split(idx, subset=subset, rest=rest, w1=w1, w2=w2):
                            vi = tuple(idx[k] for k in subset)
                            vj = tuple(idx[k] for k in rest)
                            return sum((inv[a][b] * w1.coeff(vi + (a,)) * w2.coeff(vj + (b,))
                                        for a in range(d) for b in range(d) if inv[a][b]), ZERO)
                        f = map_check("cohft-splitting", MultilinearMap.from_function(d, n, 0, split),
                                      lhs, suite="cohft", type=t,
                                      context={"g1": g1, "I": [k + 1 for k in subset]})
                        if f.failed:
                            out.append(f)
            if not any(f.failed and f.check == "cohft-splitting" and f.type == t for f in out):
                out.append(Finding("cohft-splitting", "pass", suite="cohft", type=t))
    return out


# duality collapse ----------------------------------------------------------

def duality_collapse_check(pkg, m_max=3):
    """Pairing ``δ^{m-1}(v)`` against ``w_1…w_m`` through η gives ``ε(v w_1⋯w_m)``."""
    if pkg.counit is None:
        return [Finding("duality-collapse", "skip", "needs a counit", suite="duality")]
    blocked = _commutative_or_blocked(pkg, "duality")
    if blocked:
        return blocked
    d = pkg.dim
    out = []
    for m in range(1, m_max + 1):
        delta = evaluate_plan(normal_form_plan((0, 1, m), unital=False), pkg, unital=False)
        paired = delta
        for _ in range(m):
            paired = compose_partial(paired, pkg.form_map, [(0, 0)])

        def direct(idx):
            v = pkg.basis_vector(idx[0])
            for i in idx[1:]:
                v = pkg.multiply(v, pkg.basis_vector(i))
            return pkg.epsilon(v)
        out.append(map_check("duality-collapse", paired,
                             MultilinearMap.from_function(d, m + 1, 0, direct),
                             suite="duality", type=(0, 1, m)))
    return out


# non-unital recursion suite ---------------------------------------------------

def strip_unit(pkg):
    """The same algebra with its unit forgotten (counit made explicit)."""
    if pkg.counit is None:
        raise MissingDataError("the non-unital suite needs a counit")
    return derive(pkg.spec.with_changes(unit=None, counit=pkg.counit, name=pkg.name))


class _Builder:
    """Rebuilds ``ω_{g,n,m}`` without the unit, following the η-tube recursions."""

    def __init__(self, pkg):
        self.pkg = pkg
        self.cache = {}

    def eta_on(self, f, first):
        """Contract outputs ``first`` and ``first + 1`` of ``f`` with η."""
        pkg = self.pkg
        k = f.m_out
        order = [first, first + 1] + [i for i in range(k) if i not in (first, first + 1)]
        f = permute(f, None, order)
        out = compose_partial(f, pkg.form_map, [(0, 0), (1, 1)])
        # compose_partial keeps f's free outputs first
        return out

    def tube_into_second(self, f):
        """``f`` with its first output sewn into the second leg of the η tube."""
        return compose_partial(f, self.pkg.form_map, [(0, 1)])

    def genus0_one_output(self, n):
        # ω_{0,n,1} = (η⊗id)∘(ω_{0,n-1,1} ⊗ δ), sewn one piece at a time
        key = (0, n, 1)
        if key not in self.cache:
            if n == 1:
                val = self.pkg.identity
            elif n == 2:
                val = self.pkg.product
            else:
                half = self.tube_into_second(self.pkg.coproduct)
                val = compose_partial(self.genus0_one_output(n - 1), half, [(0, 1)])
            self.cache[key] = val
        return self.cache[key]

    def genus0_no_output(self, n):
        # ω_{0,n,0} = η∘(ω_{0,n-2,1} ⊗ ω_{0,2,1})
        if n == 1:
            return self.pkg.counit_map
        if n == 2:
            return self.pkg.form_map
        half = self.tube_into_second(self.pkg.product)
        return compose_partial(self.genus0_one_output(n - 2), half, [(0, 2)])

    def genus0(self, n, m):
        """``ω_{0,n,m}``: inputs of ``ω_{0,n+m-1,1}`` turned into outputs by ``r = λ^{-1}``."""
        if m == 0:
            return self.genus0_no_output(n)
        if m == 1:
            return self.genus0_one_output(n)
        w = self.genus0_one_output(n + m - 1)
        copair = self.pkg.copairing
        # feed input slot n (after earlier conversions, always slot n) with one leg of η^{-1}
        for _ in range(m - 1):
            w = compose_partial(copair, w, [(1, n)])
        # outputs are now (converted legs in reverse order, original output)
        return permute(w, None, list(range(m - 2, -1, -1)) + [m - 1])

    def build(self, g, n, m):
        """Genus through an η tube: ``ω_{g,n,m} = (id^{⊗m} ⊗ η)∘ω_{g-1,n,m+2}``."""
        key = ("full", g, n, m)
        if key not in self.cache:
            if g == 0:
                val = self.genus0(n, m)
            else:
                val = self.eta_on(self.build(g - 1, n, m + 2), m)
            self.cache[key] = val
        return self.cache[key]


def almost_tqft_lemma_suite(pkg, g_max=2, n_max=3, m_max=3, size_cap=SIZE_CAP):
    """Rebuild ``ω_{g,n,m}`` by sewing η tubes, never touching the unit."""
    if pkg.counit is None:
        return [Finding("almost-tqft", "skip", "needs a counit", suite="almost")]
    blocked = _commutative_or_blocked(pkg, "almost")
    if blocked:
        return blocked
    nu = strip_unit(pkg) if pkg.unit is not None else pkg
    if nu.form_inverse is None:
        return [Finding("almost-tqft", "skip", "λ has no inverse on the needed functionals",
                        suite="almost")]
    builder = _Builder(nu)
    d = nu.dim
    out = []
    for g in range(g_max + 1):
        for n in range(1, n_max + 1):
            for m in range(m_max + 1):
                t = (g, n, m)
                # the widest intermediate is ω_{0,n+m+2g-1,1}
                if d ** (n + m + 2 * g) > size_cap:
                    out.append(Finding("almost-tqft", "skip", "beyond the size cap",
                                       suite="almost", type=t))
                    continue
                rebuilt = builder.build(g, n, m)
                out.append(map_check("almost-tqft", rebuilt, closed_form(t, nu, unital=False),
                                     suite="almost", type=t))
    out += _split_checks(nu, g_max, n_max, m_max)
    return out


def _split_checks(pkg, g_max, n_max, m_max):
    """Two pieces joined by one η tube give the combined type."""
    out = []
    cache = {}

    def omega(t):
        if t not in cache:
            cache[t] = closed_form(t, pkg, unital=False)
        return cache[t]

    for g in range(g_max + 1):
        for n in range(2, n_max + 1):
            for m in range(m_max + 1):
                t = (g, n, m)
                lhs = omega(t)
                bad = None
                for g1 in range(g + 1):
                    for n1 in range(1, n):
                        for m1 in range(m + 1):
                            left = omega((g1, n1, m1 + 1))
                            right = omega((g - g1, n - n1, m - m1 + 1))
                            # η pairs the last output of left with the first of right
                            half = compose_partial(right, pkg.form_map, [(0, 1)])
                            joined = compose_partial(left, half, [(m1, n - n1)])
                            f = map_check("almost-tqft-split", joined, lhs, suite="almost", type=t,
                                          context={"g1": g1, "n1": n1, "m1": m1})
                            if f.failed and bad is None:
                                bad = f
                out.append(bad or Finding("almost-tqft-split", "pass", suite="almost", type=t))
    return out


def unital_consistency_check(pkg, g_max=2, n_max=3, m_max=3):
    """``E^g(x) = e^g·x`` for basis ``x``, and both closed-form routes agree."""
    if pkg.unit is None:
        return [Finding("unital-consistency", "skip", "no unit", suite="almost")]
    blocked = _commutative_or_blocked(pkg, "almost")
    if blocked:
        return blocked
    out = []
    for g in range(g_max + 1):
        bad = None
        for i in range(pkg.dim):
            x = pkg.basis_vector(i)
            a, b = euler_power(pkg, x, g, "map"), euler_power(pkg, x, g, "element")
            if a != b:
                bad = Finding("euler-power", "fail", "E^g(x) != e^g x",
                              {"index": [i + 1], "lhs": a, "rhs": b}, suite="almost")
                break
        out.append(bad or Finding("euler-power", "pass", suite="almost", type=(g, 1, 1)))
        for n in range(1, n_max + 1):
            for m in range(m_max + 1):
                t = (g, n, m)
                if m == 0 and pkg.counit is None:
                    continue
                out.append(map_check("unital-consistency", closed_form(t, pkg, True, via="map"),
                                     closed_form(t, pkg, True, via="element"), suite="almost", type=t))
    return out


__all__ = [
    "almost_tqft_lemma_suite", "cohft_check", "duality_collapse_check", "normal_form_suite",
    "plan_independence_suite", "strip_unit", "unital_consistency_check",
    "verify_plan_independence", "uses_unit",
]
