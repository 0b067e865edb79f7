from __future__ import annotations

from fractions import Fraction
from itertools import combinations, combinations_with_replacement

import pytest
from hypothesis import given, settings, strategies as st

from polybern.polylog import (
    li_ast,
    li_ast_star,
    li_sharp,
    li_sharp_star,
    star_decomposition_check,
    star_decomposition_terms,
)

H = Fraction(1, 2)


def brute(weights, z, M, sharp, star):
    """Direct enumeration of the index set; independent of the nested-sum code."""
    r = len(weights)
    chooser = combinations_with_replacement if star else combinations
    total = Fraction(0)
    for ms in chooser(range(1, M + 1), r):
        term = Fraction(1)
        prev = 0
        for s, zj, m in zip(weights, z, ms):
            term *= zj ** ((m - prev) if sharp else m)
            term /= Fraction(m) ** s
            prev = m
        total += term
    return total


FUNCS = {
    (False, False): li_ast,
    (True, False): li_sharp,
    (False, True): li_ast_star,
    (True, True): li_sharp_star,
}

zs = st.sampled_from([Fraction(1, 2), Fraction(1, 3), Fraction(2, 5), Fraction(-1, 3), Fraction(0)])


@settings(max_examples=120, deadline=None)
@given(
    st.integers(1, 3).flatmap(lambda r: st.tuples(st.lists(st.integers(-2, 2), min_size=r, max_size=r), st.lists(zs, min_size=r, max_size=r))),
    st.integers(1, 9),
    st.booleans(),
    st.booleans(),
)
def test_against_enumeration(wz, M, sharp, star):
    w, z = wz
    assert FUNCS[sharp, star](w, z, M) == brute(w, z, M, sharp, star)


def test_hand_values():
    assert li_ast([1], [H], 3) == Fraction(2, 3)
    assert li_ast([0, 0], [H, H], 2) == Fraction(1, 8)
    assert li_sharp([0, 0], [H, H], 2) == Fraction(1, 4)
    assert li_sharp_star([0, 0], [H, H], 1) == H
    assert li_sharp([0, 0], [0, H], 5) == 0


def test_empty_index_set_below_depth():
    assert li_ast([1, 1, 1], [H, H, H], 2) == 0


def test_depth_one_variants_coincide():
    for f in (li_sharp, li_ast_star, li_sharp_star):
        assert f([2], [Fraction(1, 3)], 12) == li_ast([2], [Fraction(1, 3)], 12)


@pytest.mark.parametrize("bad", [
    ([], [], 3),
    ([1], [Fraction(1)], 3),
    ([1], [Fraction(-3, 2)], 3),
    ([1, 1], [H], 3),
    ([1], [H], 0),
])
def test_rejections(bad):
    with pytest.raises(ValueError):
        li_ast(*bad)


def test_decomposition_terms_shape():
    assert len(star_decomposition_terms((1, 2), (H, H))) == 2
    assert len(star_decomposition_terms((1, 2, 3), (H, H, H))) == 4
    with pytest.raises(ValueError):
        star_decomposition_terms((1,), (H,))


@settings(max_examples=60, deadline=None)
@given(
    st.integers(2, 3).flatmap(lambda r: st.tuples(st.lists(st.integers(-2, 2), min_size=r, max_size=r), st.lists(zs, min_size=r, max_size=r))),
    st.integers(1, 15),
)
def test_decomposition_exact_at_every_cutoff(wz, M):
    w, z = wz
    rep = star_decomposition_check(w, z, M)
    assert rep.equal
    assert rep.to_json()["equal"] is True
