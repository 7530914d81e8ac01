"""Package results against the brute-force references in oracles.py."""
import itertools
from fractions import Fraction

import pytest

import oracles
from frobtqft import derive
from frobtqft.builders import group_algebra
from frobtqft.tqft import closed_form


def spec_table(pkg):
    r = pkg.dim
    return {(i, j): {k: pkg.product.coeff((i, j, k)) for k in range(r) if pkg.product.coeff((i, j, k))}
            for i in range(r) for j in range(r)}


def coeff_dict(f):
    return dict(f.entries())


def test_s3_table_matches_package(s3):
    table, _, counit, _ = oracles.s3_ring()
    assert spec_table(s3) == table
    assert {k: v for k, v in enumerate(s3.counit) if v} == counit


def test_s3_form_is_identity(s3):
    table, _, counit, r = oracles.s3_ring()
    form = oracles.form_from_counit(table, counit, r)
    assert [list(row) for row in s3.form] == form
    assert form == [[int(i == j) for j in range(3)] for i in range(3)]


@pytest.mark.parametrize("name", ["Z2", "Z3", "Z4", "Z5", "V4"])
def test_group_coproduct_matches_duality_oracle(name):
    pkg = derive(group_algebra(name))
    table = spec_table(pkg)
    form = [list(row) for row in pkg.form]
    delta = oracles.coproduct(table, form, pkg.dim)
    for v in range(pkg.dim):
        got = {(a, b): pkg.coproduct.coeff((v, a, b)) for a in range(pkg.dim) for b in range(pkg.dim)
               if pkg.coproduct.coeff((v, a, b))}
        assert got == delta[v]


def test_s3_coproduct_matches_duality_oracle(s3):
    table, _, counit, r = oracles.s3_ring()
    delta = oracles.coproduct(table, oracles.form_from_counit(table, counit, r), r)
    assert delta[0] == {(0, 0): 1, (1, 1): 1, (2, 2): 1}
    assert delta[2] == {(2, 0): 1, (2, 1): 1, (0, 2): 1, (1, 2): 1, (2, 2): 1}
    for v in range(3):
        got = {(a, b): c for (x, a, b), c in s3.coproduct.entries() if x == v}
        assert got == delta[v]


def test_euler_elements(s3, z4):
    table, _, counit, r = oracles.s3_ring()
    e = oracles.euler_element(table, oracles.form_from_counit(table, counit, r), r)
    assert e == {0: 3, 1: 1, 2: 1}
    assert s3.euler_element == (3, 1, 1)
    table, _, counit, r = oracles.cyclic(4)
    assert oracles.euler_element(table, oracles.form_from_counit(table, counit, r), r) == {0: 4}
    assert z4.euler_element == (4, 0, 0, 0)


@pytest.mark.parametrize("g,n,m", [(0, 1, 1), (0, 2, 1), (0, 3, 0), (1, 1, 0), (1, 2, 2),
                                   (2, 1, 3), (0, 1, 3), (2, 3, 0), (1, 3, 2)])
def test_s3_closed_form_matches_oracle(s3, g, n, m):
    table, unit, counit, r = oracles.s3_ring()
    form = oracles.form_from_counit(table, counit, r)
    expected = oracles.omega(table, form, counit, r, g, n, m, unit=unit)
    assert coeff_dict(closed_form((g, n, m), s3)) == expected
    assert coeff_dict(closed_form((g, n, m), s3, unital=False)) == expected


@pytest.mark.parametrize("g,n,m", [(1, 2, 2), (2, 2, 1), (0, 3, 3), (1, 1, 0)])
def test_z3_closed_form_matches_oracle(z3, g, n, m):
    table, unit, counit, r = oracles.cyclic(3)
    form = oracles.form_from_counit(table, counit, r)
    expected = oracles.omega(table, form, counit, r, g, n, m, unit=unit)
    assert coeff_dict(closed_form((g, n, m), z3)) == expected


def test_frozen_values(s3, z3):
    # ω_{1,1,0}(χ1) = ε(e χ1) = 3
    assert closed_form((1, 1, 0), s3).coeff((0,)) == 3
    # ω_{1,2,1}(u, v) = E(uv) = 3uv on K[Z3]
    w = closed_form((1, 2, 1), z3)
    for a, b, k in itertools.product(range(3), repeat=3):
        assert w.coeff((a, b, k)) == (3 if (a + b) % 3 == k else 0)
    # E(χ1) on S3
    assert s3.apply_euler(s3.basis_vector(0)) == (3, 1, 1)
    assert s3.apply_euler(s3.basis_vector(0), 2) == (Fraction(11), Fraction(7), Fraction(9))
