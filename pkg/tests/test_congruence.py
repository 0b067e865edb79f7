from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from polybern.congruence import (
    DoubleModEvaluator,
    check_composite,
    check_pairwise,
    check_single_index_baseline,
    check_star_pairwise,
    check_sum_vanishing,
    pb_double_mod,
    proven_period,
    search_finer_period,
    sweep_sum_vanishing,
)
from polybern.exact import ResidueRing
from polybern.polybernoulli import double_explicit, pb_single


def test_mod_anchor_values():
    assert pb_double_mod(1, 1, 1, 1, ResidueRing(8)) == 2
    for k1, k2, m in product(range(4), range(4), (5, 9, 16)):
        assert pb_double_mod(0, 0, k1, k2, ResidueRing(m)) == pow(2, k2, m)


def test_mod_agrees_with_exact_on_grid():
    ring = ResidueRing(9)
    for l1, l2, k1, k2 in product(range(5), range(5), range(3), range(3)):
        assert pb_double_mod(l1, l2, k1, k2, ring) == int(double_explicit(l1, l2, -k1, -k2)) % 9


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 6), st.integers(0, 6), st.integers(0, 4), st.integers(0, 4), st.sampled_from([4, 12, 25, 27]))
def test_dual_evaluator_matches_direct(n1, n2, k1, k2, m):
    ring = ResidueRing(m)
    assert DoubleModEvaluator(k1, k2, ring)(n1, n2) == pb_double_mod(n1, n2, k1, k2, ring)


def test_negative_k_rejected():
    with pytest.raises(ValueError):
        pb_double_mod(1, 1, -1, 1, ResidueRing(5))


@pytest.mark.parametrize("p,N", [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1), (5, 2), (7, 1)])
def test_pairwise_periodicity(p, N):
    q = proven_period(p, N)
    for k1, k2 in product((1, 2, 3), repeat=2):
        for rep in check_pairwise(p, N, k1, k2, (N, N + 2 * q)):
            assert rep.ok, rep.failures[:2]


def test_pairwise_small_examples():
    first, second = check_pairwise(2, 1, 1, 1, (1, 5))
    assert first.ok and second.ok and first.params["period"] == 1
    assert check_pairwise(3, 2, 1, 2, (2, 20))[0].params["period"] == 6


def test_pairwise_hypotheses_enforced():
    with pytest.raises(ValueError):
        check_pairwise(4, 1, 1, 1, (1, 5))
    with pytest.raises(ValueError):
        check_pairwise(3, 2, 1, 1, (1, 5))


@pytest.mark.parametrize("p,N", [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1), (5, 2)])
def test_window_sum_along_first_index_vanishes(p, N):
    q = proven_period(p, N)
    for k1, k2 in product((1, 2, 3), repeat=2):
        first, _ = sweep_sum_vanishing(p, N, k1, k2, (N, N + q))
        assert first.ok, first.failures[:2]


def test_window_sum_along_second_index_can_fail():
    # B_{1,1}^{(-1,-1)} + B_{1,2}^{(-1,-1)} = 26 + 110 = 136, not divisible by 3
    assert double_explicit(1, 1, -1, -1) + double_explicit(1, 2, -1, -1) == 136
    _, second = check_sum_vanishing(3, 1, 1, 1, 1, 1)
    assert not second.ok
    assert second.failures[0]["window_sum"] == 1
    assert second.failures[0]["residues"] == (1, 0)


def test_window_sum_p2_small_case():
    # window length 1: a single value must be even; B_{1,1}^{(-1,-1)} = 26
    first, second = check_sum_vanishing(2, 1, 1, 1, 1, 1)
    assert first.ok and second.ok
    assert first.params["window"] == 1


def test_window_hypothesis_enforced():
    with pytest.raises(ValueError):
        check_sum_vanishing(3, 2, 1, 1, 1, 2)


def test_window_shift_identity():
    # consecutive window sums differ by B_{n+phi} - B_n, which pairwise periodicity kills
    for p, N in [(3, 2), (5, 1)]:
        ring = ResidueRing(p**N)
        ev = DoubleModEvaluator(2, 1, ring)
        phi = ring.phi
        for n1, n2 in product(range(N, N + 6), repeat=2):
            w0 = sum(ev(n1 + i, n2) for i in range(phi))
            w1 = sum(ev(n1 + 1 + i, n2) for i in range(phi))
            assert (w1 - w0) % ring.modulus == (ev(n1 + phi, n2) - ev(n1, n2)) % ring.modulus == 0


def test_composite_first_index_and_hypothesis():
    for M in (2, 4, 6, 12):
        n = ResidueRing(M).max_exponent
        for k1, k2 in product((1, 2), repeat=2):
            assert check_composite(M, k1, k2, n, n)[0].ok
    with pytest.raises(ValueError):
        check_composite(12, 1, 1, 1, 2)


def test_composite_prime_matches_prime_power_check():
    for k1, k2 in product((1, 2), repeat=2):
        a = [r.ok for r in check_composite(5, k1, k2, 1, 1)]
        b = [r.ok for r in check_sum_vanishing(5, 1, k1, k2, 1, 1)]
        assert a == b


def test_single_index_baseline():
    assert all(pb_single(n, -1) % 2 == 0 for n in range(1, 12))
    for p, N, k in product((2, 3, 5), (1, 2), (1, 2, 3)):
        q = proven_period(p, N)
        for rep in check_single_index_baseline(p, N, k, (N, N + 2 * q)):
            assert rep.ok, (rep.statement, rep.failures[:2])
    with pytest.raises(ValueError):
        check_single_index_baseline(6, 1, 1, (1, 3))


def test_star_congruence_with_shifted_range():
    for p, N in [(2, 2), (3, 1), (3, 2), (5, 1)]:
        q = proven_period(p, N)
        for rep in check_star_pairwise(p, N, 2, 1, (N + 1, N + 2 * q + 1)):
            assert rep.ok, rep.failures[:2]


def test_star_congruence_boundary_counterexample():
    # comparing against a second index m_2 - 1 = 0 < N leaves the pairwise hypothesis
    first, _ = check_star_pairwise(3, 1, 1, 1, (1, 5))
    assert not first.ok
    assert all(f["other"][1] == 0 for f in first.failures)


def test_finer_period_search():
    out = search_finer_period(3, 2, 1, 1, (2, 30))
    for name in ("first", "second"):
        entry = out["assertions"][name]
        periods = [c["period"] for c in entry["candidates"]]
        assert periods[-1] == 6
        assert entry["candidates"][-1]["holds"]
        if entry["minimal_period"] < 6:
            assert entry["conjectural"]
    assert out["tested_range"] == [2, 30]
