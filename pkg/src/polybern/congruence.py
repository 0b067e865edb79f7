"""Periodicity of negative-upper-index poly-Bernoulli numbers modulo prime powers.

All sweeps evaluate B_{n_1,n_2}^{(-k_1,-k_2)} through the dual closed form

    B_{n_1,n_2}^{(-k_1,-k_2)} = B_{k_1,k_2}^{(-n_1,-n_2)}
                             = sum_{l_1,l_2} A(l_1,l_2) (l_1+1)^{n_1} (l_1+l_2+2)^{n_2},

where A depends only on (k_1, k_2).  The coefficients are reduced once per
modulus, after which each value costs (k_1+k_2+1)^2 modular powers.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from .exact import ResidueRing, bernoulli, binomial, is_prime, stirling2
from .polybernoulli import double_explicit, pb_single
from .report import Report, timed

__all__ = [
    "pb_double_mod",
    "DoubleModEvaluator",
    "check_pairwise",
    "check_sum_vanishing",
    "sweep_sum_vanishing",
    "check_composite",
    "check_single_index_baseline",
    "check_star_pairwise",
    "search_finer_period",
    "proven_period",
]


def proven_period(p: int, N: int) -> int:
    return p ** (N - 1) * (p - 1)


@lru_cache(maxsize=256)
def _explicit_coeffs(l1: int, l2: int, modulus: int) -> Tuple[Tuple[int, int, int], ...]:
    """(m1, m2, c mod modulus) with B_{l1,l2}^{(-k1,-k2)} = sum c (m1+1)^k1 (m1+m2+2)^k2."""
    L = l1 + l2
    out = []
    for m1 in range(L + 1):
        for m2 in range(L + 1):
            s = 0
            for n in range(L + 1):
                b = binomial(l2, n - l1)
                if b:
                    s += stirling2(n, m1) * stirling2(L - n, m2) * b
            if not s:
                continue
            c = math.factorial(m1) * math.factorial(m2) * s
            if (m1 + m2 + L) % 2:
                c = -c
            c %= modulus
            if c:
                out.append((m1, m2, c))
    return tuple(out)


def pb_double_mod(l1: int, l2: int, k1: int, k2: int, ring: ResidueRing) -> int:
    """B_{l1,l2}^{(-k1,-k2)} mod ring.modulus, evaluated termwise in the ring."""
    if k1 < 0 or k2 < 0:
        raise ValueError("pb_double_mod takes k1, k2 >= 0 (weights -k1, -k2)")
    if l1 < 0 or l2 < 0:
        raise ValueError("indices must be nonnegative")
    M = ring.modulus
    acc = 0
    for m1, m2, c in _explicit_coeffs(l1, l2, M):
        acc += c * pow(m1 + 1, k1, M) * pow(m1 + m2 + 2, k2, M)
    return acc % M


class DoubleModEvaluator:
    """n -> B_{n_1,n_2}^{(-k_1,-k_2)} mod M for fixed (k_1, k_2), via duality."""

    def __init__(self, k1: int, k2: int, ring: ResidueRing):
        if k1 < 0 or k2 < 0:
            raise ValueError("k1, k2 must be >= 0")
        self.k1, self.k2, self.ring = k1, k2, ring
        self._coeffs = _explicit_coeffs(k1, k2, ring.modulus)
        self._memo: Dict[Tuple[int, int], int] = {}

    def __call__(self, n1: int, n2: int) -> int:
        key = (n1, n2)
        v = self._memo.get(key)
        if v is None:
            M = self.ring.modulus
            v = sum(c * pow(m1 + 1, n1, M) * pow(m1 + m2 + 2, n2, M) for m1, m2, c in self._coeffs) % M
            self._memo[key] = v
        return v


def _require_prime(p: int, N: int) -> ResidueRing:
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if N < 1:
        raise ValueError("N must be >= 1")
    return ResidueRing(p**N)


def _pairs(lo: int, hi: int, period: int):
    for n in range(lo, hi + 1):
        for m in range(n + period, hi + 1, period):
            yield n, m


def check_pairwise(p: int, N: int, k1: int, k2: int, n_range: Tuple[int, int], period: int | None = None) -> List[Report]:
    """Both pairwise congruences, for indices in ``n_range`` congruent mod ``period``.

    ``period`` defaults to p^{N-1}(p-1); smaller values are only used for exploration.
    """
    ring = _require_prime(p, N)
    lo, hi = n_range
    if lo < N:
        raise ValueError(f"indices must be >= N={N}")
    if k1 < 1 or k2 < 1:
        raise ValueError("k1, k2 must be positive")
    q = proven_period(p, N) if period is None else period
    params = {"p": p, "N": N, "k": (k1, k2), "range": (lo, hi), "period": q}
    first = Report("pairwise-shift-n2", dict(params))
    second = Report("pairwise-shift-n1", dict(params))
    ev = DoubleModEvaluator(k1, k2, ring)
    with timed(first):
        for n1 in range(lo, hi + 1):
            for n2, m2 in _pairs(lo, hi, q):
                first.cells += 1
                a, b = ev(n1, n2), ev(n1, m2)
                if a != b:
                    first.fail(n=(n1, n2), m=(n1, m2), residues=(a, b))
    with timed(second):
        for n2 in range(lo, hi + 1):
            for n1, m1 in _pairs(lo, hi, q):
                second.cells += 1
                a, b = ev(n1, n2), ev(m1, n2)
                if a != b:
                    second.fail(n=(n1, n2), m=(m1, n2), residues=(a, b))
    return [first, second]


def _window_reports(
    ids: Tuple[str, str],
    ring: ResidueRing,
    k1: int,
    k2: int,
    cells: Sequence[Tuple[int, int]],
    params: dict,
) -> List[Report]:
    ev = DoubleModEvaluator(k1, k2, ring)
    M, phi = ring.modulus, ring.phi
    first = Report(ids[0], dict(params, window=phi, modulus=M))
    second = Report(ids[1], dict(params, window=phi, modulus=M))
    with timed(first):
        for n1, n2 in cells:
            first.cells += 1
            s = sum(ev(n1 + i, n2) for i in range(phi)) % M
            if s:
                first.fail(n=(n1, n2), window_sum=s, residues=(s, 0))
    with timed(second):
        for n1, n2 in cells:
            second.cells += 1
            s = sum(ev(n1, n2 + i) for i in range(phi)) % M
            if s:
                second.fail(n=(n1, n2), window_sum=s, residues=(s, 0))
    return [first, second]


def check_sum_vanishing(p: int, N: int, k1: int, k2: int, n1: int, n2: int) -> List[Report]:
    """phi(p^N)-window sums along each index vanish mod p^N (n_1, n_2 >= N)."""
    return sweep_sum_vanishing(p, N, k1, k2, (n1, n1), (n2, n2))


def sweep_sum_vanishing(
    p: int, N: int, k1: int, k2: int, n1_range: Tuple[int, int], n2_range: Tuple[int, int] | None = None
) -> List[Report]:
    ring = _require_prime(p, N)
    n2_range = n1_range if n2_range is None else n2_range
    if min(n1_range[0], n2_range[0]) < N:
        raise ValueError(f"indices must be >= N={N}")
    if k1 < 1 or k2 < 1:
        raise ValueError("k1, k2 must be positive")
    cells = list(itertools.product(range(n1_range[0], n1_range[1] + 1), range(n2_range[0], n2_range[1] + 1)))
    params = {"p": p, "N": N, "k": (k1, k2), "n1_range": n1_range, "n2_range": n2_range}
    return _window_reports(("window-n1", "window-n2"), ring, k1, k2, cells, params)


def check_composite(M: int, k1: int, k2: int, n1: int, n2: int) -> List[Report]:
    """phi(M)-window sums vanish mod M, for n_1, n_2 >= every exponent in M's factorization."""
    if M < 2:
        raise ValueError("M must be >= 2")
    if k1 < 1 or k2 < 1:
        raise ValueError("k1, k2 must be positive")
    ring = ResidueRing(M)
    need = ring.max_exponent
    if n1 < need or n2 < need:
        raise ValueError(f"n1, n2 must be >= max exponent {need} of M={M}")
    params = {"M": M, "factorization": ring.factorization, "k": (k1, k2)}
    return _window_reports(("composite-window-n1", "composite-window-n2"), ring, k1, k2, [(n1, n2)], params)


def check_single_index_baseline(p: int, N: int, k: int, n_range: Tuple[int, int]) -> List[Report]:
    """Single-index periodicity and window vanishing for B_n^{(-k)} mod p^N."""
    ring = _require_prime(p, N)
    if k < 1:
        raise ValueError("k must be positive")
    lo, hi = n_range
    if lo < N:
        raise ValueError(f"indices must be >= N={N}")
    M, phi = ring.modulus, ring.phi
    q = proven_period(p, N)
    vals = {n: int(pb_single(n, -k)) % M for n in range(lo, hi + phi)}
    params = {"p": p, "N": N, "k": k, "range": (lo, hi)}
    pair = Report("single-pairwise", dict(params, period=q))
    window = Report("single-window", dict(params, window=phi))
    with timed(pair):
        for n, m in _pairs(lo, hi, q):
            pair.cells += 1
            if vals[n] != vals[m]:
                pair.fail(n=n, m=m, residues=(vals[n], vals[m]))
    with timed(window):
        for n in range(lo, hi + 1):
            window.cells += 1
            s = sum(vals[n + i] for i in range(phi)) % M
            if s:
                window.fail(n=n, window_sum=s, residues=(s, 0))
    return [pair, window]


def _star_exact(n1: int, j: int, k1: int, k2: int) -> Fraction:
    # star value at (n1, j) from the one-term relation; the double value via duality
    base = double_explicit(k1, k2, -n1, -j)
    return base + bernoulli(j + 1) * pb_single(n1, -(k1 + k2)) / (j + 1)


def check_star_pairwise(p: int, N: int, k1: int, k2: int, n_range: Tuple[int, int]) -> List[Report]:
    """Pairwise congruences between star values at odd n_2 > 1 and non-star values.

    For odd n_2 > 1 the star correction carries B_{n_2} = 0, so the star value
    equals the non-star one and is an integer.  Indices n_1, n_2, m_1, m_2 >= N.
    """
    ring = _require_prime(p, N)
    lo, hi = n_range
    if lo < N:
        raise ValueError(f"indices must be >= N={N}")
    M = ring.modulus
    q = proven_period(p, N)
    ev = DoubleModEvaluator(k1, k2, ring)
    params = {"p": p, "N": N, "k": (k1, k2), "range": (lo, hi), "period": q}
    first = Report("star-pairwise", dict(params, assertion="first"))
    second = Report("star-pairwise", dict(params, assertion="second"))
    with timed(first), timed(second):
        for n2 in range(max(lo, 3), hi + 1):
            if n2 % 2 == 0:
                continue
            for n1 in range(lo, hi + 1):
                star = _star_exact(n1, n2 - 1, k1, k2)
                if star.denominator != 1:
                    raise AssertionError(f"non-integral star value at ({n1}, {n2 - 1})")
                sv = star.numerator % M
                for m2 in range(lo, hi + 1):
                    if m2 != n2 and (m2 - n2) % q == 0:
                        first.cells += 1
                        other = ev(n1, m2 - 1)
                        if sv != other:
                            first.fail(star=(n1, n2 - 1), other=(n1, m2 - 1), residues=(sv, other))
                for m1 in range(lo, hi + 1):
                    if m1 != n1 and (m1 - n1) % q == 0:
                        second.cells += 1
                        other = ev(m1, n2 - 1)
                        if sv != other:
                            second.fail(star=(n1, n2 - 1), other=(m1, n2 - 1), residues=(sv, other))
    return [first, second]


def _divisors(n: int) -> List[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def search_finer_period(p: int, N: int, k1: int, k2: int, n_range: Tuple[int, int]) -> dict:
    """Smallest divisor of p^{N-1}(p-1) that works as a period on ``n_range``.

    Each assertion (shift in n_2, shift in n_1) is searched separately.  Anything
    smaller than the proven period is evidence on the tested range only.
    """
    _require_prime(p, N)
    full = proven_period(p, N)
    out = {
        "statement": "finer-period",
        "params": {"p": p, "N": N, "k": [k1, k2]},
        "tested_range": list(n_range),
        "proven_period": full,
        "assertions": {},
    }
    for idx, name in enumerate(("first", "second")):
        cands = []
        minimal = None
        for q in _divisors(full):
            rep = check_pairwise(p, N, k1, k2, n_range, period=q)[idx]
            entry = {"period": q, "holds": rep.ok, "pairs": rep.cells}
            if not rep.ok:
                entry["witness"] = rep.failures[0]
            cands.append(entry)
            if rep.ok and minimal is None:
                minimal = q
        out["assertions"][name] = {
            "candidates": cands,
            "minimal_period": minimal,
            "conjectural": minimal is not None and minimal < full,
            "verdict": "no finer period found" if minimal == full else f"period {minimal} holds on tested range (conjectural)",
        }
    return out
