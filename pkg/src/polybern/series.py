"""Truncated multivariate formal power series over the rationals.

A :class:`Series` is a sparse map from exponent tuples to nonzero
:class:`~fractions.Fraction` coefficients, truncated both per variable and in
total degree.  Everything is immutable; arithmetic returns new series.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple

from .exact import bernoulli_list

__all__ = [
    "MultiExponent",
    "Truncation",
    "TruncationError",
    "LinearForm",
    "Series",
    "one_minus_exp_neg",
    "pow_nilbase",
    "bernoulli_gf_of_linear_form",
    "mul_by_linear_form",
    "default_truncation",
]

MultiExponent = Tuple[int, ...]

_DEFAULT_CAPS = {1: (16, 16), 2: (8, 16), 3: (6, 12)}


class TruncationError(ValueError):
    """Raised for mismatched truncations or reads outside the computed range."""


@dataclass(frozen=True)
class Truncation:
    per_var: Tuple[int, ...]
    total: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "per_var", tuple(int(c) for c in self.per_var))
        if not self.per_var:
            raise ValueError("a truncation needs at least one variable")
        if any(c < 0 for c in self.per_var) or self.total < 0:
            raise ValueError("caps must be nonnegative")

    @classmethod
    def uniform(cls, nvars: int, cap: int, total: int | None = None) -> "Truncation":
        return cls((cap,) * nvars, cap * nvars if total is None else total)

    @classmethod
    def for_index(cls, m: Sequence[int]) -> "Truncation":
        """Smallest truncation that still contains the exponent ``m``."""
        return cls(tuple(m), sum(m))

    @property
    def nvars(self) -> int:
        return len(self.per_var)

    def admits(self, exp: Sequence[int]) -> bool:
        if len(exp) != len(self.per_var):
            return False
        return sum(exp) <= self.total and all(0 <= e <= c for e, c in zip(exp, self.per_var))

    def covers(self, other: "Truncation") -> bool:
        """True if every exponent admitted by ``other`` is admitted here."""
        return (
            self.nvars == other.nvars
            and self.total >= other.total
            and all(a >= b for a, b in zip(self.per_var, other.per_var))
        )

    def widened(self, extra: int) -> "Truncation":
        return Truncation(tuple(c + extra for c in self.per_var), self.total + extra)

    def exponents(self) -> Iterator[MultiExponent]:
        """All admitted exponents in lexicographic order."""
        def rec(prefix: Tuple[int, ...], j: int, budget: int):
            if j == self.nvars:
                yield prefix
                return
            for e in range(min(self.per_var[j], budget) + 1):
                yield from rec(prefix + (e,), j + 1, budget - e)

        return rec((), 0, self.total)

    def to_json(self) -> dict:
        return {"per_var": list(self.per_var), "total": self.total}


def default_truncation(nvars: int) -> Truncation:
    """Default caps per variable count; overridable through ``POLYBERN_DEFAULT_CAPS``.

    The variable holds a JSON object such as ``{"2": [8, 16], "3": [6, 12]}``.
    """
    caps = dict(_DEFAULT_CAPS)
    raw = os.environ.get("POLYBERN_DEFAULT_CAPS")
    if raw:
        try:
            for key, val in json.loads(raw).items():
                caps[int(key)] = (int(val[0]), int(val[1]))
        except (ValueError, TypeError, IndexError, AttributeError) as exc:
            raise ValueError(f"malformed POLYBERN_DEFAULT_CAPS: {raw!r}") from exc
    per, total = caps.get(nvars, (6, 12))
    return Truncation((per,) * nvars, total)


@dataclass(frozen=True)
class LinearForm:
    """a_1 x_1 + ... + a_r x_r."""

    coeffs: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def indicator(cls, nvars: int, indices: Iterable[int]) -> "LinearForm":
        """Sum of the variables with the given 0-based indices."""
        idx = set(indices)
        return cls(tuple(1 if j in idx else 0 for j in range(nvars)))

    @classmethod
    def suffix(cls, nvars: int, start: int) -> "LinearForm":
        """x_start + ... x_r (0-based ``start``)."""
        return cls.indicator(nvars, range(start, nvars))

    @property
    def nvars(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)


class Series:
    __slots__ = ("trunc", "_terms", "_hash")

    def __init__(self, trunc: Truncation, terms: Mapping[MultiExponent, Fraction] | None = None):
        self.trunc = trunc
        clean: Dict[MultiExponent, Fraction] = {}
        if terms:
            for exp, c in terms.items():
                exp = tuple(exp)
                if c and trunc.admits(exp):
                    clean[exp] = Fraction(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, trunc: Truncation, terms: Dict[MultiExponent, Fraction]) -> "Series":
        # trusted constructor: terms already zero-free and inside trunc
        obj = cls.__new__(cls)
        obj.trunc = trunc
        obj._terms = terms
        obj._hash = None
        return obj

    # constructors
    @classmethod
    def zero(cls, trunc: Truncation) -> "Series":
        return cls._raw(trunc, {})

    @classmethod
    def constant(cls, trunc: Truncation, c) -> "Series":
        return cls(trunc, {(0,) * trunc.nvars: Fraction(c)})

    @classmethod
    def one(cls, trunc: Truncation) -> "Series":
        return cls.constant(trunc, 1)

    @classmethod
    def variable(cls, trunc: Truncation, j: int) -> "Series":
        exp = tuple(1 if i == j else 0 for i in range(trunc.nvars))
        return cls(trunc, {exp: Fraction(1)})

    @classmethod
    def from_linear_form(cls, f: LinearForm, trunc: Truncation) -> "Series":
        _check_form(f, trunc)
        r = trunc.nvars
        return cls(trunc, {tuple(int(i == j) for i in range(r)): c for j, c in enumerate(f.coeffs)})

    # mapping-ish access
    @property
    def terms(self) -> Mapping[MultiExponent, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.trunc.nvars, Fraction(0))

    def coefficient(self, exp: Sequence[int]) -> Fraction:
        exp = tuple(exp)
        if not self.trunc.admits(exp):
            raise TruncationError(f"exponent {exp} lies outside truncation {self.trunc}")
        return self._terms.get(exp, Fraction(0))

    def normalized_coefficient(self, exp: Sequence[int]) -> Fraction:
        """Coefficient times prod(e_j!), i.e. the exponential-generating-function reading."""
        c = self.coefficient(exp)
        if c:
            for e in exp:
                c *= math.factorial(e)
        return c

    def restrict(self, trunc: Truncation) -> "Series":
        if not self.trunc.covers(trunc):
            raise TruncationError("can only restrict to a smaller truncation")
        return Series._raw(trunc, {e: c for e, c in self._terms.items() if trunc.admits(e)})

    # arithmetic
    def _check(self, other: "Series") -> None:
        if self.trunc != other.trunc:
            raise TruncationError(f"truncation mismatch: {self.trunc} vs {other.trunc}")

    def __add__(self, other: "Series") -> "Series":
        self._check(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Series._raw(self.trunc, out)

    def __neg__(self) -> "Series":
        return Series._raw(self.trunc, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "Series") -> "Series":
        return self + (-other)

    def scale(self, c) -> "Series":
        c = Fraction(c)
        if not c:
            return Series.zero(self.trunc)
        return Series._raw(self.trunc, {e: v * c for e, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Series):
            return self.scale(other)
        self._check(other)
        return Series._raw(self.trunc, _mul_terms(self._terms, other._terms, self.trunc))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self.trunc == other.trunc and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.trunc, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        shown = sorted(self._terms.items())[:6]
        body = " + ".join(f"{c}*x^{e}" for e, c in shown)
        more = " + ..." if len(self._terms) > 6 else ""
        return f"Series({body or '0'}{more}; {self.trunc.per_var}/{self.trunc.total})"

    # serialization
    def to_json(self) -> dict:
        return {
            "vars": self.trunc.nvars,
            "trunc": self.trunc.to_json(),
            "terms": [
                {"exp": list(e), "num": str(c.numerator), "den": str(c.denominator)}
                for e, c in sorted(self._terms.items())
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Series":
        trunc = Truncation(tuple(data["trunc"]["per_var"]), int(data["trunc"]["total"]))
        if int(data["vars"]) != trunc.nvars:
            raise ValueError("'vars' disagrees with truncation")
        terms = {}
        for t in data["terms"]:
            exp = tuple(int(x) for x in t["exp"])
            if not trunc.admits(exp):
                raise TruncationError(f"serialized exponent {exp} outside truncation")
            terms[exp] = Fraction(int(t["num"]), int(t["den"]))
        return cls(trunc, terms)


def _mul_terms(a: Mapping, b: Mapping, trunc: Truncation) -> Dict[MultiExponent, Fraction]:
    if not a or not b:
        return {}
    caps = trunc.per_var
    total = trunc.total
    bl = [(e, sum(e), c) for e, c in b.items()]
    bl.sort(key=lambda t: t[1])
    out: Dict[MultiExponent, Fraction] = {}
    get = out.get
    for ea, da, ca in ((e, sum(e), c) for e, c in a.items()):
        room = total - da
        for eb, db, cb in bl:
            if db > room:
                break
            e = tuple(x + y for x, y in zip(ea, eb))
            ok = True
            for x, cap in zip(e, caps):
                if x > cap:
                    ok = False
                    break
            if ok:
                out[e] = get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def _check_form(f: LinearForm, trunc: Truncation) -> None:
    if f.nvars != trunc.nvars:
        raise TruncationError(f"linear form over {f.nvars} variables, series over {trunc.nvars}")


def mul_by_linear_form(a: Series, f: LinearForm) -> Series:
    """Exact product with a_1 x_1 + ... + a_r x_r; overflowing exponents are dropped."""
    trunc = a.trunc
    _check_form(f, trunc)
    nz = [(j, c) for j, c in enumerate(f.coeffs) if c]
    out: Dict[MultiExponent, Fraction] = {}
    for e, v in a.items():
        for j, c in nz:
            ne = e[:j] + (e[j] + 1,) + e[j + 1 :]
            if trunc.admits(ne):
                out[ne] = out.get(ne, 0) + v * c
    return Series._raw(trunc, {e: c for e, c in out.items() if c})


def one_minus_exp_neg(f: LinearForm, trunc: Truncation) -> Series:
    """1 - exp(-f) = sum_{n>=1} (-1)^{n+1} f^n / n!, truncated."""
    _check_form(f, trunc)
    acc: Dict[MultiExponent, Fraction] = {}
    if f.is_zero():
        return Series.zero(trunc)
    power = Series.one(trunc)
    for n in range(1, trunc.total + 1):
        power = mul_by_linear_form(power, f).scale(Fraction(1, n))
        if power.is_zero():
            break
        sign = 1 if n % 2 else -1
        for e, c in power.items():
            acc[e] = acc.get(e, 0) + sign * c
    return Series._raw(trunc, {e: c for e, c in acc.items() if c})


def pow_nilbase(a: Series, e: int) -> Series:
    """a**e for a series without constant term (or e == 0)."""
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    if e == 0:
        return Series.one(a.trunc)
    if a.constant_term():
        raise ValueError("pow_nilbase: base has a nonzero constant term")
    if e > a.trunc.total:
        return Series.zero(a.trunc)
    result = None
    base = a
    while e:
        if e & 1:
            result = base if result is None else result * base
        e >>= 1
        if e:
            base = base * base
    return result


def bernoulli_gf_of_linear_form(f: LinearForm, trunc: Truncation) -> Series:
    """f / (1 - exp(-f)) = sum_n B_n f^n / n!, truncated.  ``f`` must be nonzero."""
    _check_form(f, trunc)
    if f.is_zero():
        raise ValueError("bernoulli_gf_of_linear_form needs a nonzero linear form")
    bs = bernoulli_list(trunc.total)
    acc: Dict[MultiExponent, Fraction] = {(0,) * trunc.nvars: Fraction(1)}
    power = Series.one(trunc)
    for n in range(1, trunc.total + 1):
        power = mul_by_linear_form(power, f).scale(Fraction(1, n))
        if power.is_zero():
            break
        if bs[n]:
            for e, c in power.items():
                acc[e] = acc.get(e, 0) + bs[n] * c
    return Series._raw(trunc, {e: c for e, c in acc.items() if c})
