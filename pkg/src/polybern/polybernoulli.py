"""Poly-Bernoulli numbers: single, Arakawa-Kaneko multiple, and multi-indexed.

Notation used throughout: ``Z(f) = 1 - exp(-f)`` for a linear form ``f``.
The multi-indexed family with weights (s_1..s_r) and parameter d is read off

    F(x; s; d) = sum_{l_1..l_r >= 1}  prod_j Z(x_j + ... + x_r)^{l_j - delta_j(d)}
                                      / prod_j (l_1 + ... + l_j)^{s_j}

as the coefficients of x^m / m!.  delta_j(d) = 1 for j <= d and 0 otherwise.
"""

from __future__ import annotations

import itertools
import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Mapping, Sequence, Tuple

from .exact import binomial, inv_power, stirling2, stirling2_row
from .series import (
    LinearForm,
    Series,
    Truncation,
    TruncationError,
    one_minus_exp_neg,
    pow_nilbase,
)

__all__ = [
    "GFSpec",
    "PBValue",
    "PBTable",
    "pb_single",
    "pb_single_gf_oracle",
    "mpb_arakawa_kaneko",
    "lsum_series",
    "gf_multi_indexed",
    "multi_indexed",
    "multi_indexed_value",
    "pb_table",
    "double_explicit",
    "DualityReport",
    "duality_check",
    "duality_grid",
]


@dataclass(frozen=True)
class GFSpec:
    weights: Tuple[int, ...]
    d: int = 0  # 0 means d = r

    def __post_init__(self) -> None:
        w = tuple(int(s) for s in self.weights)
        object.__setattr__(self, "weights", w)
        if not w:
            raise ValueError("depth r must be >= 1")
        if self.d == 0:
            object.__setattr__(self, "d", len(w))
        if not 1 <= self.d <= len(w):
            raise ValueError(f"d must satisfy 1 <= d <= r, got d={self.d}, r={len(w)}")

    @property
    def r(self) -> int:
        return len(self.weights)

    def delta(self, j: int) -> int:
        """delta_j(d) for 1-based j."""
        return 1 if j <= self.d else 0

    def to_json(self) -> dict:
        return {"r": self.r, "weights": list(self.weights), "d": self.d}


def _as_spec(spec) -> GFSpec:
    return spec if isinstance(spec, GFSpec) else GFSpec(tuple(spec))


@dataclass(frozen=True)
class PBValue:
    indices: Tuple[int, ...]
    spec: GFSpec
    value: Fraction
    star: bool = False

    def to_json(self) -> dict:
        return {
            "indices": list(self.indices),
            **self.spec.to_json(),
            "star": self.star,
            "num": str(self.value.numerator),
            "den": str(self.value.denominator),
        }


@dataclass(frozen=True)
class PBTable:
    """Values over the box 0 <= m_j <= caps[j], stored in lexicographic order."""

    spec: GFSpec
    caps: Tuple[int, ...]
    entries: Mapping[Tuple[int, ...], Fraction] = field(repr=False)
    star: bool = False

    def __getitem__(self, m) -> Fraction:
        return self.entries[tuple(m)]

    def indices(self) -> Iterator[Tuple[int, ...]]:
        return itertools.product(*(range(c + 1) for c in self.caps))

    def rows(self) -> Iterator[Tuple[Tuple[int, ...], Fraction]]:
        for m in self.indices():
            yield m, self.entries[m]

    def to_json(self) -> dict:
        return {
            **self.spec.to_json(),
            "caps": list(self.caps),
            "star": self.star,
            "entries": [
                {"m": list(m), "num": str(v.numerator), "den": str(v.denominator)}
                for m, v in self.rows()
            ],
        }


# ---------------------------------------------------------------------------
# single index


def pb_single(n: int, k: int) -> Fraction:
    """B_n^{(k)} from the Stirling-number closed form."""
    if n < 0:
        raise ValueError("n must be >= 0")
    row = stirling2_row(n)
    acc = Fraction(0)
    fact = 1
    for m in range(n + 1):
        if m:
            fact *= m
        if row[m]:
            term = fact * row[m] * inv_power(m + 1, k)
            acc += -term if m % 2 else term
    return -acc if n % 2 else acc


def _univariate(trunc: Truncation | None, n: int) -> Truncation:
    if trunc is None:
        return Truncation((n,), n)
    if trunc.nvars != 1:
        raise TruncationError("expected a univariate truncation")
    if min(trunc.total, trunc.per_var[0]) < n:
        raise TruncationError(f"truncation {trunc} too small for index {n}")
    return trunc


def pb_single_gf_oracle(n: int, k: int, trunc: Truncation | None = None) -> Fraction:
    """B_n^{(k)} read off Li_k(Z)/Z = sum_{m>=1} Z^{m-1} / m^k with Z = 1 - e^{-t}."""
    trunc = _univariate(trunc, n)
    z = one_minus_exp_neg(LinearForm((1,)), trunc)
    acc = Series.zero(trunc)
    power = Series.one(trunc)
    for m in range(1, trunc.total + 2):
        acc = acc + power.scale(inv_power(m, k))
        power = power * z
        if power.is_zero():
            break
    return acc.normalized_coefficient((n,))


def mpb_arakawa_kaneko(n: int, ks: Sequence[int], trunc: Truncation | None = None) -> Fraction:
    """Multiple poly-Bernoulli number from Li_{k_1..k_r}(Z) / Z^r, Z = 1 - e^{-t}.

    Li_{k_1..k_r}(Z)/Z^r = sum_{0<m_1<...<m_r} Z^{m_r - r} / prod m_i^{k_i}; only
    m_r <= r + total cap can reach t^n.
    """
    ks = tuple(int(k) for k in ks)
    r = len(ks)
    if r < 1:
        raise ValueError("need at least one weight")
    trunc = _univariate(trunc, n)
    top = r + trunc.total
    # chain[m] = sum over m_1 < ... < m_j = m of prod_{i<=j} m_i^{-k_i}
    chain = [Fraction(0)] + [inv_power(m, ks[0]) for m in range(1, top + 1)]
    for k in ks[1:]:
        nxt = [Fraction(0)] * (top + 1)
        run = Fraction(0)
        for m in range(1, top + 1):
            run += chain[m - 1]
            nxt[m] = run * inv_power(m, k)
        chain = nxt
    z = one_minus_exp_neg(LinearForm((1,)), trunc)
    acc = Series.zero(trunc)
    power = Series.one(trunc)
    for m in range(r, top + 1):
        if chain[m]:
            acc = acc + power.scale(chain[m])
        power = power * z
        if power.is_zero():
            break
    return acc.normalized_coefficient((n,))


# ---------------------------------------------------------------------------
# l-sum generating functions


class _ZProducts:
    """Cache of prod_j Z(f_j)^{e_j} for one truncation, shared by every weight."""

    def __init__(self, trunc: Truncation):
        self.trunc = trunc
        self._z: Dict[LinearForm, Series] = {}
        self._prod: Dict[Tuple[Tuple[LinearForm, int], ...], Series] = {}
        self._lock = threading.RLock()

    def z(self, f: LinearForm) -> Series:
        s = self._z.get(f)
        if s is None:
            s = one_minus_exp_neg(f, self.trunc)
            self._z[f] = s
        return s

    def product(self, key: Tuple[Tuple[LinearForm, int], ...]) -> Series:
        # key: sorted ((form, exponent), ...) with exponents > 0
        with self._lock:
            hit = self._prod.get(key)
            if hit is not None:
                return hit
            if not key:
                out = Series.one(self.trunc)
            elif len(key) == 1 and key[0][1] == 1:
                out = self.z(key[0][0])
            else:
                # peel one factor of the sparsest Z
                i = min(range(len(key)), key=lambda t: len(self.z(key[t][0])))
                f, e = key[i]
                rest = key[:i] + ((f, e - 1),) + key[i + 1 :] if e > 1 else key[:i] + key[i + 1 :]
                out = self.product(rest) * self.z(f)
            self._prod[key] = out
            return out


@lru_cache(maxsize=32)
def _zproducts(trunc: Truncation) -> _ZProducts:
    return _ZProducts(trunc)


def _support_bounds(forms: Sequence[LinearForm], trunc: Truncation) -> List[int]:
    # bound[j] caps sum_{i>=j} e_i: those factors live in the union of supports
    out = []
    for j in range(len(forms)):
        support = {v for f in forms[j:] for v, c in enumerate(f.coeffs) if c}
        out.append(min(trunc.total, sum(trunc.per_var[v] for v in support)))
    return out


def lsum_series(
    weights: Sequence[int],
    forms: Sequence[LinearForm],
    delta: Sequence[int],
    trunc: Truncation,
) -> Series:
    """sum_{l_j >= 1} prod_j Z(forms[j])^{l_j - delta[j]} / prod_j (l_1+...+l_j)^{weights[j]}.

    Each factor with exponent e has order >= e, so only finitely many l contribute.
    """
    weights = tuple(int(s) for s in weights)
    forms = tuple(forms)
    r = len(weights)
    if not (len(forms) == len(delta) == r):
        raise ValueError("weights, forms and delta must have equal length")
    for f in forms:
        if f.nvars != trunc.nvars:
            raise TruncationError("linear form / truncation variable count mismatch")
        if f.is_zero():
            raise ValueError("zero linear form in l-sum")
    bounds = _support_bounds(forms, trunc)
    cache = _zproducts(trunc)
    acc: Dict[Tuple[int, ...], Fraction] = {}
    ranges = [range(1 - delta[j], bounds[j] + 1) for j in range(r)]
    for exps in itertools.product(*ranges):
        if any(sum(exps[j:]) > bounds[j] for j in range(r)):
            continue
        ls = [e + dl for e, dl in zip(exps, delta)]
        coeff = Fraction(1)
        run = 0
        for l, s in zip(ls, weights):
            run += l
            coeff *= inv_power(run, s)
        key = _product_key(forms, exps)
        prod = cache.product(key)
        for e, c in prod.items():
            v = acc.get(e, 0) + coeff * c
            if v:
                acc[e] = v
            else:
                acc.pop(e, None)
    return Series._raw(trunc, acc)


def _product_key(forms, exps) -> Tuple[Tuple[LinearForm, int], ...]:
    merged: Dict[LinearForm, int] = {}
    for f, e in zip(forms, exps):
        if e:
            merged[f] = merged.get(f, 0) + e
    return tuple(sorted(merged.items(), key=lambda t: (t[0].coeffs, t[1])))


@lru_cache(maxsize=512)
def gf_multi_indexed(spec: GFSpec, trunc: Truncation) -> Series:
    """The multivariate generating function F(x_1..x_r; s; d), truncated."""
    spec = _as_spec(spec)
    r = spec.r
    if trunc.nvars != r:
        raise TruncationError(f"truncation has {trunc.nvars} variables, spec has r={r}")
    forms = [LinearForm.suffix(r, j) for j in range(r)]
    delta = [spec.delta(j + 1) for j in range(r)]
    return lsum_series(spec.weights, forms, delta, trunc)


def multi_indexed_value(m: Sequence[int], spec, trunc: Truncation | None = None) -> Fraction:
    spec = _as_spec(spec)
    m = tuple(int(x) for x in m)
    if len(m) != spec.r:
        raise ValueError(f"index tuple of length {len(m)} for depth {spec.r}")
    if any(x < 0 for x in m):
        raise ValueError("indices must be nonnegative")
    if trunc is None:
        trunc = Truncation.for_index(m)
    return gf_multi_indexed(spec, trunc).normalized_coefficient(m)


def multi_indexed(m: Sequence[int], spec, trunc: Truncation | None = None) -> PBValue:
    spec = _as_spec(spec)
    return PBValue(tuple(m), spec, multi_indexed_value(m, spec, trunc))


def pb_table(spec, caps: Sequence[int]) -> PBTable:
    """All values with 0 <= m_j <= caps[j] from a single generating-function expansion."""
    spec = _as_spec(spec)
    caps = tuple(int(c) for c in caps)
    if len(caps) != spec.r:
        raise ValueError("caps length must equal r")
    if any(c < 0 for c in caps):
        return PBTable(spec, caps, {})
    trunc = Truncation(caps, sum(caps))
    gf = gf_multi_indexed(spec, trunc)
    entries = {m: gf.normalized_coefficient(m) for m in itertools.product(*(range(c + 1) for c in caps))}
    return PBTable(spec, caps, entries)


# ---------------------------------------------------------------------------
# double-index closed form


def double_explicit(l1: int, l2: int, k1: int, k2: int) -> Fraction:
    """Double-indexed number with weights (k1, k2) as a finite Stirling/binomial sum."""
    if l1 < 0 or l2 < 0:
        raise ValueError("indices must be nonnegative")
    L = l1 + l2
    inner = {}
    for m1 in range(L + 1):
        for m2 in range(L + 1):
            s = 0
            for n in range(L + 1):
                b = binomial(l2, n - l1)
                if b:
                    s += stirling2(n, m1) * stirling2(L - n, m2) * b
            if s:
                inner[m1, m2] = s
    acc = Fraction(0)
    for (m1, m2), s in inner.items():
        term = math.factorial(m1) * math.factorial(m2) * s * inv_power(m1 + 1, k1) * inv_power(m1 + m2 + 2, k2)
        acc += -term if (m1 + m2 + L) % 2 else term
    return acc


# ---------------------------------------------------------------------------
# duality


@dataclass(frozen=True)
class DualityReport:
    m: Tuple[int, ...]
    k: Tuple[int, ...]
    lhs: Fraction
    rhs: Fraction

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


def duality_check(m: Sequence[int], k: Sequence[int]) -> DualityReport:
    """Compare B_m^{(-k)} with B_k^{(-m)} (depth = len(m), d = r)."""
    m = tuple(m)
    k = tuple(k)
    if len(m) != len(k):
        raise ValueError("m and k must have the same length")
    if any(x < 0 for x in m + k):
        raise ValueError("duality is stated for nonnegative indices")
    if len(m) == 1:
        return DualityReport(m, k, pb_single(m[0], -k[0]), pb_single(k[0], -m[0]))
    lhs = multi_indexed_value(m, tuple(-x for x in k))
    rhs = multi_indexed_value(k, tuple(-x for x in m))
    return DualityReport(m, k, lhs, rhs)


def duality_grid(r: int, max_index: int) -> List[DualityReport]:
    """Duality on the full grid 0 <= m_i, k_i <= max_index using one table per weight."""
    box = list(itertools.product(range(max_index + 1), repeat=r))
    if r == 1:
        return [duality_check(m, k) for m in box for k in box]
    tables = {k: pb_table(tuple(-x for x in k), (max_index,) * r) for k in box}
    return [DualityReport(m, k, tables[k][m], tables[m][k]) for m in box for k in box]
