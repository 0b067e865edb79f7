from __future__ import annotations

import json
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from polybern.exact import bernoulli
from polybern.polybernoulli import (
    GFSpec,
    double_explicit,
    duality_check,
    duality_grid,
    mpb_arakawa_kaneko,
    multi_indexed,
    multi_indexed_value,
    pb_single,
    pb_single_gf_oracle,
    pb_table,
)
from polybern.series import Truncation


def closed_minus_one_minus_one(m1, m2):
    # F(x1, x2; -1, -1) summed in closed form: 2e^{3x1+4x2} - e^{2x1+3x2} + e^{2x1+4x2}
    return 2 * 3**m1 * 4**m2 - 2**m1 * 3**m2 + 2**m1 * 4**m2


# --- single index -----------------------------------------------------------


def test_single_anchor_values():
    assert pb_single(1, -1) == 2
    assert pb_single(2, -2) == 14
    assert pb_single_gf_oracle(2, -2) == 14
    assert pb_single(0, 5) == 1


@pytest.mark.parametrize("n", range(0, 21))
def test_single_reduces_to_bernoulli_at_k1(n):
    assert pb_single(n, 1) == bernoulli(n)


def test_single_k_minus_one_is_power_of_two():
    assert all(pb_single(n, -1) == 2**n for n in range(15))


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10), st.integers(-4, 4))
def test_single_closed_form_vs_series(n, k):
    assert pb_single(n, k) == pb_single_gf_oracle(n, k)


@given(st.integers(0, 12), st.integers(0, 12))
def test_single_duality(m, k):
    assert pb_single(m, -k) == pb_single(k, -m)


def test_single_gf_oracle_truncation_too_small():
    with pytest.raises(ValueError):
        pb_single_gf_oracle(5, 2, Truncation((3,), 3))


# --- multiple (single variable) ---------------------------------------------


def test_mpb_anchor_and_reduction():
    assert mpb_arakawa_kaneko(0, (2, 3)) == Fraction(1, 8)
    for n in range(8):
        for k in range(-3, 4):
            assert mpb_arakawa_kaneko(n, (k,)) == pb_single(n, k)


# --- multi-indexed ----------------------------------------------------------


def test_gfspec_validation_and_delta():
    spec = GFSpec((1, 2, 3), 2)
    assert spec.r == 3
    assert [spec.delta(j) for j in (1, 2, 3)] == [1, 1, 0]
    assert GFSpec((1, 2)).d == 2
    with pytest.raises(ValueError):
        GFSpec((1, 2), 3)
    with pytest.raises(ValueError):
        GFSpec(())


def test_double_anchor_values():
    assert double_explicit(1, 1, -1, -1) == 26
    assert double_explicit(0, 0, 3, 2) == Fraction(1, 4)
    assert double_explicit(1, 0, 0, -1) == 3
    assert multi_indexed_value((1, 1), (-1, -1)) == 26
    assert multi_indexed_value((1, 0), (0, -1)) == 3
    assert multi_indexed_value((0, 1), (-1, 0)) == 3


@pytest.mark.parametrize("m", [(a, b) for a in range(5) for b in range(5)])
def test_double_against_summed_closed_form(m):
    want = closed_minus_one_minus_one(*m)
    assert double_explicit(*m, -1, -1) == want
    assert multi_indexed_value(m, (-1, -1)) == want


@settings(max_examples=40, deadline=None)
@given(st.integers(-3, 3), st.integers(-3, 3))
def test_corner_value_is_power_of_two(k1, k2):
    assert double_explicit(0, 0, k1, k2) == Fraction(2) ** (-k2)
    assert multi_indexed_value((0, 0), (k1, k2)) == Fraction(2) ** (-k2)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 4), st.integers(0, 4), st.integers(-3, 3), st.integers(-3, 3))
def test_explicit_formula_vs_series(l1, l2, k1, k2):
    assert double_explicit(l1, l2, k1, k2) == multi_indexed_value((l1, l2), (k1, k2))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=2, max_size=3).flatmap(
    lambda m: st.tuples(st.just(m), st.lists(st.integers(-3, 0), min_size=len(m), max_size=len(m)))))
def test_nonpositive_weights_give_integers(mk):
    m, s = mk
    assert multi_indexed_value(m, s).denominator == 1


def test_depth_one_reduction():
    for n in range(9):
        for k in range(-3, 4):
            assert multi_indexed_value((n,), (k,)) == pb_single(n, k)


def test_d_below_r_vanishes_without_last_variable():
    # with d = 1 every term carries Z_2^{l_2}, l_2 >= 1, which vanishes at x_2 = 0
    for m1 in range(5):
        assert multi_indexed_value((m1, 0), GFSpec((-1, 2), 1)) == 0


def test_truncation_robustness():
    for m in [(1, 1), (2, 3), (0, 4)]:
        tight = multi_indexed_value(m, (-2, 1))
        wide = multi_indexed_value(m, (-2, 1), Truncation.for_index(m).widened(2))
        assert tight == wide


def test_too_small_truncation_rejected():
    with pytest.raises(ValueError):
        multi_indexed_value((3, 3), (-1, -1), Truncation((2, 2), 4))


def test_table_matches_pointwise_and_serializes():
    tab = pb_table((-1, -2), (2, 2))
    for m in product(range(3), repeat=2):
        assert tab[m] == multi_indexed_value(m, (-1, -2))
    data = json.loads(json.dumps(tab.to_json()))
    assert [e["m"] for e in data["entries"]] == [list(m) for m in product(range(3), repeat=2)]
    assert all(isinstance(e["num"], str) for e in data["entries"])
    assert list(pb_table((-1, -1), (-1, 2)).rows()) == []


def test_multi_indexed_value_object():
    v = multi_indexed((1, 1), (-1, -1))
    assert v.value == 26 and v.indices == (1, 1)
    assert v.to_json()["num"] == "26"


def test_duality_helpers():
    assert duality_check((2,), (3,)).lhs == 46
    assert duality_check((1, 2), (2, 0)).equal
    assert all(d.equal for d in duality_grid(2, 3))
    with pytest.raises(ValueError):
        duality_check((1,), (1, 2))
