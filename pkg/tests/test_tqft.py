import itertools
import random

import pytest

from frobtqft import NEARLY, MissingDataError, derive
from frobtqft.builders import group_algebra, random_semisimple_family, trivial_algebra
from frobtqft.tensor import apply, compose_full, permute
from frobtqft.tqft import (COPRODUCT, COUNIT, FORM, IDENTITY, PRODUCT, UNIT, CobordismType, Compose,
                           InadmissibleTypeError, Leaf, Permute, PlanTypeError, almost_tqft_lemma_suite,
                           closed_form, cohft_check, compose, duality_collapse_check, euler_power,
                           evaluate_plan, generator, normal_form_plan, normal_form_suite,
                           plan_independence_suite, plan_type, random_plan, random_plans, strip_unit,
                           tensor, unital_consistency_check, verify_plan_independence)
from frobtqft.tqft.plans import uses_unit


def failed(findings):
    return [f for f in findings if f.failed]


# types and generators ---------------------------------------------------------------

def test_cobordism_type_checks():
    assert CobordismType(1, 2, 3).euler_characteristic == -5
    with pytest.raises(InadmissibleTypeError):
        CobordismType(0, 0, 0).check()
    with pytest.raises(InadmissibleTypeError):
        CobordismType(0, 0, 2).check(unital=False)
    with pytest.raises(InadmissibleTypeError):
        CobordismType(-1, 1, 1).check()
    assert CobordismType(0, 0, 1).check() == (0, 0, 1)


def test_generators(s3, z2):
    assert generator("form", s3) == s3.form_map
    assert generator("form", s3).coeffs() == [1, 0, 0, 0, 1, 0, 0, 0, 1]
    assert generator("identity", s3) == s3.identity
    assert generator("coproduct", z2) == z2.coproduct
    assert generator("unit", s3).as_vector() == (1, 0, 0)
    with pytest.raises(InadmissibleTypeError):
        generator("unit", s3, unital=False)
    with pytest.raises(ValueError):
        generator("cap", s3)


def test_unital_mode_needs_unit(s3):
    pkg = strip_unit(s3)
    assert pkg.unit is None
    with pytest.raises(MissingDataError):
        generator("product", pkg, unital=True)


# plans --------------------------------------------------------------------------

def test_product_then_counit_plan(s3):
    plan = compose(PRODUCT, COUNIT)
    assert plan_type(plan) == (0, 2, 0)
    assert evaluate_plan(plan, s3) == s3.form_map
    assert evaluate_plan(FORM, s3) == s3.form_map


def test_identity_leaf(s3):
    assert evaluate_plan(IDENTITY, s3) == s3.identity


def test_torus_with_one_input(s3):
    plan = compose(compose(COPRODUCT, PRODUCT), COUNIT)
    assert plan_type(plan) == (1, 1, 0)
    assert apply(evaluate_plan(plan, s3), [s3.basis_vector(0)]).as_scalar() == 3


def test_genus_arithmetic():
    # sewing δ into m along both channels adds a handle
    assert plan_type(compose(COPRODUCT, PRODUCT)) == (1, 1, 1)
    # one channel: genus adds with j - 1 = 0
    assert plan_type(compose(COPRODUCT, PRODUCT, [(1, 0)])) == (0, 2, 2)
    pair = tensor(COPRODUCT, COPRODUCT)
    both = Compose(pair, tensor(PRODUCT, PRODUCT), ((0, 0), (1, 2), (2, 1), (3, 3)))
    assert plan_type(both) == (1, 2, 2)
    three = Compose(pair, tensor(PRODUCT, PRODUCT), ((0, 0), (1, 2), (2, 3), (3, 1)))
    assert plan_type(three) == (1, 2, 2)


def test_plan_type_errors_carry_path():
    with pytest.raises(PlanTypeError) as err:
        plan_type(Compose(PRODUCT, Compose(PRODUCT, COUNIT, ((3, 0),)), ((0, 0),)))
    assert err.value.path == "root.g"
    with pytest.raises(PlanTypeError):
        plan_type(tensor(PRODUCT, PRODUCT))
    with pytest.raises(PlanTypeError):
        plan_type(Compose(PRODUCT, PRODUCT, ()))
    with pytest.raises(PlanTypeError):
        plan_type(Leaf("cap"))
    with pytest.raises(PlanTypeError):
        plan_type(Permute(PRODUCT, (0, 0)))
    # sewing a cap onto a cup closes off a sphere
    with pytest.raises(PlanTypeError):
        plan_type(compose(UNIT, COUNIT))


def test_associativity_plans_agree(s3):
    left = compose(PRODUCT, PRODUCT, [(0, 0)])
    right = Permute(compose(PRODUCT, PRODUCT, [(0, 1)]), (1, 2, 0))
    assert plan_type(left) == plan_type(right) == (0, 3, 1)
    results = verify_plan_independence((0, 3, 1), s3, [left, right])
    assert [f.status for f in results] == ["pass", "pass"]


def test_plan_of_wrong_type_reported(s3):
    results = verify_plan_independence((0, 3, 1), s3, [PRODUCT])
    assert results[0].check == "plan-type" and results[0].failed


# normal form --------------------------------------------------------------------

def test_normal_form_small_cases(s3):
    assert normal_form_plan((0, 2, 1)) == PRODUCT
    assert normal_form_plan((0, 1, 1)) == IDENTITY
    assert normal_form_plan((0, 0, 1)) == UNIT
    assert normal_form_plan((0, 1, 0)) == COUNIT
    assert normal_form_plan((0, 1, 2)) == COPRODUCT


def test_normal_form_types():
    for t in itertools.product(range(3), range(4), range(4)):
        if t[1] + t[2] == 0:
            continue
        assert plan_type(normal_form_plan(t)) == t
        if t[1] >= 1:
            plan = normal_form_plan(t, unital=False)
            assert plan_type(plan) == t
            assert not uses_unit(plan)


def test_normal_form_232(s3):
    assert evaluate_plan(normal_form_plan((2, 3, 2)), s3) == closed_form((2, 3, 2), s3)


def test_normal_form_rejects_inadmissible():
    with pytest.raises(InadmissibleTypeError):
        normal_form_plan((0, 0, 2), unital=False)


# closed form -------------------------------------------------------------------------

def test_closed_form_basics(s3):
    assert closed_form((0, 1, 1), s3) == s3.identity
    assert closed_form((0, 1, 2), s3) == s3.coproduct
    assert closed_form((0, 2, 0), s3) == s3.form_map
    assert closed_form((1, 1, 0), s3).coeff((0,)) == 3
    value = apply(closed_form((0, 1, 2), s3), [s3.basis_vector(0)])
    assert dict(value.entries()) == {(0, 0): 1, (1, 1): 1, (2, 2): 1}


def test_closed_form_needs_counit_for_m0(s3):
    spec = s3.spec.with_changes(unit=None, form=None, coproduct=s3.coproduct, mode=NEARLY)
    pkg = derive(spec)
    assert pkg.counit is None
    assert closed_form((1, 1, 2), pkg, unital=False) == closed_form((1, 1, 2), s3)
    with pytest.raises(InadmissibleTypeError):
        closed_form((0, 2, 0), pkg, unital=False)


def test_closed_form_input_symmetry(s3):
    w = closed_form((1, 3, 1), s3)
    for perm in itertools.permutations(range(3)):
        assert permute(w, perm) == w


def test_euler_power_routes_agree(s3):
    for g in range(4):
        for i in range(3):
            x = s3.basis_vector(i)
            assert euler_power(s3, x, g, "map") == euler_power(s3, x, g, "element")


def test_non_unital_closed_form_equals_unital(s3):
    nu = strip_unit(s3)
    for t in [(0, 1, 0), (1, 2, 1), (2, 1, 3), (1, 3, 2)]:
        assert closed_form(t, nu, unital=False) == closed_form(t, s3)


# random plans ---------------------------------------------------------------

def test_random_plans_are_seeded():
    a = random_plans((1, 2, 2), 10, seed=4)
    b = random_plans((1, 2, 2), 10, seed=4)
    assert a == b
    assert len(a) == 10
    assert all(plan_type(p) == (1, 2, 2) for p in a)


def test_random_plans_differ_from_normal_form():
    plans = random_plans((1, 2, 2), 10, seed=0)
    assert len({repr(p) for p in plans}) > 1


def test_random_plans_non_unital_avoid_unit():
    for p in random_plans((2, 1, 2), 10, seed=1, unital=False):
        assert not uses_unit(p)


def test_random_plan_on_z3(z3):
    plans = random_plans((1, 2, 2), 10, seed=0, dim=3)
    assert not failed(verify_plan_independence((1, 2, 2), z3, plans))


def test_random_plan_budget_zero_is_normal_form():
    assert random_plan((1, 2, 1), random.Random(0), budget=0) == normal_form_plan((1, 2, 1))


# suites ----------------------------------------------------------------------------

def test_normal_form_suite_random_algebras():
    for spec in random_semisimple_family(4, seed=11, max_dim=3):
        pkg = derive(spec)
        results = normal_form_suite(pkg, g_max=1)
        assert results and not failed(results)


def test_plan_independence_suite_small(z2):
    results = plan_independence_suite(z2, g_max=1, n_range=range(1, 3), m_range=range(0, 3), count=5)
    assert results and not failed(results)


def test_noncommutative_suites_blocked():
    pkg = derive(group_algebra("S3"))
    for suite in (normal_form_suite, cohft_check, duality_collapse_check, almost_tqft_lemma_suite):
        results = suite(pkg)
        assert [(f.check, f.status) for f in results] == [("commutativity", "warn")]


def test_cohft(s3, z2):
    for pkg in (s3, z2):
        results = cohft_check(pkg, g_max=1, n_max=3)
        checks = {f.check for f in results}
        assert {"cohft-unit", "cohft-genus-reduction", "cohft-splitting"} <= checks
        assert not failed(results)


def test_cohft_trivial():
    results = cohft_check(derive(trivial_algebra()), g_max=1, n_max=1)
    assert not failed(results)


def test_duality_collapse(s3, z3):
    for pkg in (s3, z3):
        results = duality_collapse_check(pkg, m_max=3)
        assert [f.status for f in results] == ["pass"] * 3


def test_almost_suite(s3):
    results = almost_tqft_lemma_suite(s3)
    assert {f.check for f in results} == {"almost-tqft", "almost-tqft-split"}
    assert not failed(results)
    assert not [f for f in results if f.status == "skip"]


def test_almost_suite_size_cap(s3):
    results = almost_tqft_lemma_suite(s3, g_max=1, n_max=2, m_max=1, size_cap=3 ** 3)
    assert any(f.status == "skip" for f in results)


def test_almost_suite_equation_cases(s3, z3):
    nu = strip_unit(s3)
    # ω_{0,3,1}(u, v, w) = uvw
    w = closed_form((0, 3, 1), nu, unital=False)
    for a, b, c in itertools.product(range(3), repeat=3):
        expected = s3.multiply(s3.multiply(s3.basis_vector(a), s3.basis_vector(b)), s3.basis_vector(c))
        assert apply(w, [s3.basis_vector(i) for i in (a, b, c)]).as_vector() == expected
    assert closed_form((0, 2, 0), nu, unital=False) == s3.form_map
    z = closed_form((1, 2, 1), strip_unit(z3), unital=False)
    for a, b in itertools.product(range(3), repeat=2):
        uv = z3.multiply(z3.basis_vector(a), z3.basis_vector(b))
        got = apply(z, [z3.basis_vector(a), z3.basis_vector(b)]).as_vector()
        assert got == tuple(3 * x for x in uv)


def test_unital_consistency(s3, z4):
    for pkg in (s3, z4):
        assert not failed(unital_consistency_check(pkg, g_max=2, n_max=2, m_max=2))


def test_strip_unit_keeps_counit(s3):
    nu = strip_unit(s3)
    assert nu.counit == s3.counit
    assert nu.euler_element is None
    assert compose_full(nu.coproduct, nu.product) == s3.euler_map
