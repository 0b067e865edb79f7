from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product

import pytest
import sympy

from polybern.exact import bernoulli
from polybern.polybernoulli import multi_indexed_value, pb_single
from polybern.series import Truncation
from polybern.star import (
    check_star_double,
    double_relation_rhs,
    gf_star_double_cleared,
    gf_star_triple_cleared,
    star_double,
    star_double_from_series,
    star_triple_solve,
    triple_relation_rhs,
    verify_triple_relation,
)

X = sympy.symbols("x")


@lru_cache(maxsize=None)
def _egf(expr_key: str, n: int) -> Fraction:
    expr = {
        "beta4": X / (1 - sympy.exp(-X)) * sympy.exp(4 * X),
        "beta3": X / (1 - sympy.exp(-X)) * sympy.exp(3 * X),
        "x4": X * sympy.exp(4 * X),
    }[expr_key]
    c = sympy.series(expr, X, 0, n + 1).removeO().coeff(X, n) * sympy.factorial(n)
    return Fraction(str(sympy.nsimplify(c)))


def cleared_oracle(m1: int, m2: int) -> Fraction:
    """x_2 F* at s = (-1, -1), summed in closed form and expanded with sympy.

    x_2 F* = 2 e^{3x_1} beta(x_2) e^{4x_2} - e^{2x_1} beta(x_2) e^{3x_2} + e^{2x_1} x_2 e^{4x_2},
    beta(x) = x / (1 - e^{-x}).
    """
    return 2 * 3**m1 * _egf("beta4", m2) - 2**m1 * _egf("beta3", m2) + 2**m1 * _egf("x4", m2)


def test_cleared_series_against_sympy_closed_form():
    g = gf_star_double_cleared(-1, -1, Truncation((5, 5), 10))
    for m in product(range(6), repeat=2):
        assert g.normalized_coefficient(m) == cleared_oracle(*m)


def test_cleared_series_at_m2_zero_is_single_index_family():
    # x_2 F* restricted to x_2 = 0 is Li_{s1+s2}(Z_1)/Z_1, not zero
    g = gf_star_double_cleared(-1, -1, Truncation((6, 1), 7))
    for m1 in range(7):
        assert g.normalized_coefficient((m1, 0)) == pb_single(m1, -2) == 2 * 3**m1 - 2**m1


def test_single_term_relation_disagrees_with_cleared_series():
    # the one-term Bernoulli correction gives 8; the series gives 22
    assert star_double(1, 0, -1, -1) == 8
    assert star_double_from_series(1, 0, -1, -1) == 22 == cleared_oracle(1, 1)


def test_binomial_relation_matches_oracle_cellwise():
    for m1, m2 in product(range(5), repeat=2):
        assert double_relation_rhs(m1, m2, -1, -1, "binomial") == cleared_oracle(m1, m2)


def test_binomial_double_relation_full_grid():
    weights = list(product(range(-2, 2), repeat=2))
    rep = check_star_double(4, weights, "binomial")
    assert rep.ok, rep.failures[:3]


def test_single_term_relation_report_records_failures():
    rep = check_star_double(2, [(-1, -1)], "one-term")
    assert not rep.ok
    witness = rep.failures[0]
    assert {"s", "m"} <= set(witness)


def test_odd_index_collapse():
    for m1, m2 in product(range(5), range(1, 7)):
        if bernoulli(m2 + 1) == 0:
            for s in [(-1, -1), (-2, 1), (0, -3)]:
                assert star_double(m1, m2, *s) == multi_indexed_value((m1, m2), s)


def test_star_double_rejects_negative_index():
    with pytest.raises(ValueError):
        star_double(-1, 0, 1, 1)
    with pytest.raises(ValueError):
        double_relation_rhs(0, 0, 1, 1, form="other")


def test_triple_cleared_series_m3_zero_slice():
    # the x_3 = 0 slice of G is not identically zero: piece (d) has constant term 1
    g = gf_star_triple_cleared(-1, -1, -1, Truncation((1, 1, 1), 3))
    assert g.normalized_coefficient((0, 0, 0)) == 1


def test_binomial_triple_relation_full_box():
    for w in [(-1, -1, -1), (-2, -1, 0), (1, -1, 0)]:
        rep = verify_triple_relation((3, 3, 3), *w, form="binomial")
        assert rep.ok, rep.failures[:2]


def test_one_term_triple_relation_fails_at_origin():
    rep = verify_triple_relation((1, 1, 1), -1, -1, -1, form="one-term")
    assert not rep.ok
    origin = [f for f in rep.failures if tuple(f["m"]) == (0, 0, 0)][0]
    assert origin["series"] == 1 and origin["lhs"] == 0


def test_triple_solve_base_cells_and_overdetermined_report():
    sol = star_triple_solve((2, 2, 2), -1, -1, -1)
    c = sol.series.normalized_coefficient
    for m1 in range(3):
        assert sol.values[m1, 0, 0] == c((m1, 1, 1))
    # cells with m_2 = 0 or m_3 = 0 are not reachable from the relation's left side
    bad = {tuple(mm["m"]) for mm in sol.mismatches}
    assert bad and all(m[1] == 0 or m[2] == 0 for m in bad)
    assert sol.table().star


def test_triple_relation_rhs_with_and_without_table_agree():
    from polybern.polybernoulli import pb_table

    tab = pb_table((-1, -1, -1), (2, 2, 2))
    for m in product(range(3), repeat=3):
        for form in ("one-term", "binomial"):
            assert triple_relation_rhs(m, (-1, -1, -1), form) == triple_relation_rhs(m, (-1, -1, -1), form, tab)
