"""Exact integer/rational kernels: factorials, binomials, Stirling numbers,
Bernoulli numbers and residue rings.

Bernoulli numbers follow the convention of t/(1 - e^{-t}), so B_1 = +1/2.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Tuple

__all__ = [
    "Rational",
    "factorial",
    "binomial",
    "stirling2",
    "stirling2_row",
    "StirlingTable",
    "BernoulliCache",
    "bernoulli",
    "bernoulli_list",
    "factorize",
    "euler_phi",
    "ResidueRing",
    "inv_power",
]

Rational = Fraction


def factorial(n: int) -> int:
    if n < 0:
        raise ValueError("factorial of negative integer")
    return math.factorial(n)


def binomial(a: int, b: int) -> int:
    """C(a, b), taken to be 0 whenever b < 0 or b > a."""
    if b < 0 or b > a or a < 0:
        return 0
    return math.comb(a, b)


def inv_power(base: int, s: int) -> Fraction:
    """Return 1 / base**s exactly; negative s turns the division into a product."""
    if s >= 0:
        return Fraction(1, base**s)
    return Fraction(base ** (-s))


class StirlingTable:
    """Triangular table of S(n, m), grown on demand.

    Rows already handed out are never mutated; growth appends new rows under a lock.
    """

    def __init__(self) -> None:
        self._rows: List[Tuple[int, ...]] = [(1,)]
        self._lock = threading.Lock()

    @property
    def max_n(self) -> int:
        return len(self._rows) - 1

    def _grow(self, n: int) -> None:
        with self._lock:
            rows = self._rows
            while len(rows) <= n:
                prev = rows[-1]
                k = len(prev)  # new row index
                row = [0] * (k + 1)
                for m in range(1, k + 1):
                    left = prev[m - 1]
                    here = prev[m] if m < k else 0
                    row[m] = left + m * here
                rows.append(tuple(row))

    def row(self, n: int) -> Tuple[int, ...]:
        if n < 0:
            raise ValueError("n must be >= 0")
        if n >= len(self._rows):
            self._grow(n)
        return self._rows[n]

    def entry(self, n: int, m: int) -> int:
        if m < 0 or m > n:
            return 0
        return self.row(n)[m]


class BernoulliCache:
    """B_0, B_1, ... from sum_{i<=n} C(n+1, i) B_i = n + 1."""

    def __init__(self) -> None:
        self._values: List[Fraction] = [Fraction(1)]
        self._lock = threading.Lock()

    @property
    def max_n(self) -> int:
        return len(self._values) - 1

    def _grow(self, n: int) -> None:
        with self._lock:
            vals = self._values
            while len(vals) <= n:
                k = len(vals)
                acc = Fraction(0)
                for i, b in enumerate(vals):
                    if b:
                        acc += math.comb(k + 1, i) * b
                vals.append((k + 1 - acc) / (k + 1))

    def get(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("n must be >= 0")
        if n >= len(self._values):
            self._grow(n)
        return self._values[n]

    def upto(self, n: int) -> Tuple[Fraction, ...]:
        self.get(n)
        return tuple(self._values[: n + 1])


_STIRLING = StirlingTable()
_BERNOULLI = BernoulliCache()


def stirling2(n: int, m: int) -> int:
    """Stirling number of the second kind S(n, m)."""
    if n < 0 or m < 0:
        raise ValueError("stirling2 needs n, m >= 0")
    return _STIRLING.entry(n, m)


def stirling2_row(n: int) -> Tuple[int, ...]:
    return _STIRLING.row(n)


def bernoulli(n: int) -> Fraction:
    return _BERNOULLI.get(n)


def bernoulli_list(n: int) -> Tuple[Fraction, ...]:
    """(B_0, ..., B_n)."""
    return _BERNOULLI.upto(n)


def factorize(m: int) -> Tuple[Tuple[int, int], ...]:
    """Prime factorization by trial division, as ((p, e), ...) with p increasing."""
    if m < 1:
        raise ValueError("factorize needs m >= 1")
    out = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        out.append((m, 1))
    return tuple(out)


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == ((n, 1),)


def euler_phi(m: int) -> int:
    phi = 1
    for p, e in factorize(m):
        phi *= p ** (e - 1) * (p - 1)
    return phi


@dataclass(frozen=True)
class ResidueRing:
    """Z / modulus Z with its factorization and unit-group order."""

    modulus: int
    factorization: Tuple[Tuple[int, int], ...] = field(default=(), compare=False)
    phi: int = field(default=0, compare=False)

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        if not self.factorization:
            object.__setattr__(self, "factorization", factorize(self.modulus))
        if not self.phi:
            object.__setattr__(self, "phi", euler_phi(self.modulus))

    @classmethod
    def prime_power(cls, p: int, N: int) -> "ResidueRing":
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if N < 1:
            raise ValueError("exponent N must be >= 1")
        return cls(p**N)

    def reduce(self, x: int) -> int:
        return x % self.modulus

    def pow(self, x: int, e: int) -> int:
        if e < 0:
            raise ValueError("negative exponent")
        return pow(x, e, self.modulus)

    def is_unit(self, x: int) -> bool:
        return math.gcd(x, self.modulus) == 1

    @property
    def max_exponent(self) -> int:
        return max((e for _, e in self.factorization), default=0)


def ring_reduce(x: int, ring: ResidueRing) -> int:
    return ring.reduce(x)


def ring_pow(x: int, e: int, ring: ResidueRing) -> int:
    return ring.pow(x, e)


__all__ += ["is_prime", "ring_reduce", "ring_pow"]
