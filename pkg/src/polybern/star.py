"""Star (non-strict ordering) poly-Bernoulli numbers for depth 2 and 3.

The star generating function has simple poles along x_2 = 0 (depth 2) and along
x_3 = 0, x_2 + x_3 = 0 (depth 3), so it is not a power series.  We work with the
pole-cleared series

    depth 2:  x_2 F*        = x_2 F + [x_2/Z(x_2)] * Li_{s1+s2}(Z_1)/Z_1
    depth 3:  x_3(x_2+x_3) F* = four pieces, see :func:`gf_star_triple_cleared`

and with two readings of the star/non-star relations:

* ``form="one-term"``: each Bernoulli correction keeps the single term
  ``B_{m_2} B_{m_1}^{(s_1+s_2)}`` (and analogues at depth 3).
* ``form="binomial"``: the exact coefficient of the cleared series, which
  expands each shifted argument binomially.  It agrees with the cleared series
  on every cell; the one-term form does not (at m_2 = 0 it would force
  B_{m_1}^{(s_1+s_2)} = 0).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from .exact import bernoulli, binomial
from .polybernoulli import (
    GFSpec,
    PBTable,
    double_explicit,
    gf_multi_indexed,
    lsum_series,
    multi_indexed_value,
    pb_single,
    pb_table,
)
from .report import Report, timed
from .series import (
    LinearForm,
    Series,
    Truncation,
    bernoulli_gf_of_linear_form,
    mul_by_linear_form,
)

__all__ = [
    "star_double",
    "gf_star_double_cleared",
    "star_double_from_series",
    "double_relation_rhs",
    "check_star_double",
    "gf_star_triple_cleared",
    "StarTripleSolution",
    "star_triple_solve",
    "triple_relation_rhs",
    "verify_triple_relation",
]

FORMS = ("one-term", "binomial")


@lru_cache(maxsize=None)
def _b1(m: int, s: int) -> Fraction:
    return pb_single(m, s)


@lru_cache(maxsize=None)
def _b2(m1: int, m2: int, s1: int, s2: int) -> Fraction:
    return double_explicit(m1, m2, s1, s2)


def _check_form(form: str) -> None:
    if form not in FORMS:
        raise ValueError(f"form must be one of {FORMS}, got {form!r}")


# ---------------------------------------------------------------------------
# depth 2


def star_double(m1: int, m2: int, s1: int, s2: int) -> Fraction:
    """Star value from the one-term relation, solved at shifted index m_2 + 1."""
    if m1 < 0 or m2 < 0:
        raise ValueError("indices must be nonnegative")
    base = multi_indexed_value((m1, m2), (s1, s2))
    return base + bernoulli(m2 + 1) * pb_single(m1, s1 + s2) / (m2 + 1)


def gf_star_double_cleared(s1: int, s2: int, trunc: Truncation) -> Series:
    """x_2 * F*(x_1, x_2; s_1, s_2) as an honest power series."""
    if trunc.nvars != 2:
        raise ValueError("depth-2 series needs a 2-variable truncation")
    x2 = LinearForm((0, 1))
    head = mul_by_linear_form(gf_multi_indexed(GFSpec((s1, s2)), trunc), x2)
    collapsed = lsum_series((s1 + s2,), (LinearForm((1, 1)),), (1,), trunc)
    return head + bernoulli_gf_of_linear_form(x2, trunc) * collapsed


def star_double_from_series(m1: int, m2: int, s1: int, s2: int, trunc: Truncation | None = None) -> Fraction:
    """Star value read from the cleared series: coefficient at (m_1, m_2 + 1) over (m_2 + 1)."""
    if trunc is None:
        trunc = Truncation.for_index((m1, m2 + 1))
    return gf_star_double_cleared(s1, s2, trunc).normalized_coefficient((m1, m2 + 1)) / (m2 + 1)


def double_relation_rhs(m1: int, m2: int, s1: int, s2: int, form: str = "one-term") -> Fraction:
    """Right-hand side of the depth-2 relation at cell (m_1, m_2), from non-star numbers."""
    _check_form(form)
    acc = m2 * _b2(m1, m2 - 1, s1, s2) if m2 else Fraction(0)
    if form == "one-term":
        return acc + bernoulli(m2) * _b1(m1, s1 + s2)
    for t in range(m2 + 1):
        acc += binomial(m2, t) * bernoulli(t) * _b1(m1 + m2 - t, s1 + s2)
    return acc


def check_star_double(
    max_index: int,
    weights: Sequence[Tuple[int, int]],
    form: str = "one-term",
    extra: int = 0,
) -> Report:
    """Cross-check star values against the cleared series on 0 <= m_1, m_2 <= max_index.

    ``form="one-term"`` compares :func:`star_double` with the series extraction and
    requires the cleared series to vanish at m_2 = 0.  ``form="binomial"``
    compares every cleared-series coefficient with :func:`double_relation_rhs`.
    """
    _check_form(form)
    rep = Report(
        f"star-double-{form}",
        {"max_index": max_index, "weights": [list(w) for w in weights], "extra_caps": extra},
    )
    with timed(rep):
        trunc = Truncation((max_index + extra, max_index + 1 + extra), 2 * max_index + 1 + extra)
        for s1, s2 in weights:
            g = gf_star_double_cleared(s1, s2, trunc)
            for m1 in range(max_index + 1):
                if form == "one-term":
                    c0 = g.normalized_coefficient((m1, 0))
                    rep.cells += 1
                    if c0:
                        rep.fail(kind="nonzero m2=0 coefficient", s=(s1, s2), m=(m1, 0), coefficient=c0)
                    for m2 in range(max_index + 1):
                        rep.cells += 1
                        closed = star_double(m1, m2, s1, s2)
                        series = g.normalized_coefficient((m1, m2 + 1)) / (m2 + 1)
                        if closed != series:
                            rep.fail(kind="closed != series", s=(s1, s2), m=(m1, m2), closed=closed, series=series)
                else:
                    for m2 in range(max_index + 2):
                        rep.cells += 1
                        c = g.normalized_coefficient((m1, m2))
                        rhs = double_relation_rhs(m1, m2, s1, s2, "binomial")
                        if c != rhs:
                            rep.fail(kind="series != rhs", s=(s1, s2), m=(m1, m2), series=c, rhs=rhs)
    return rep


# ---------------------------------------------------------------------------
# depth 3

_F123 = LinearForm((1, 1, 1))
_F23 = LinearForm((0, 1, 1))
_F3 = LinearForm((0, 0, 1))


def gf_star_triple_cleared(s1: int, s2: int, s3: int, trunc: Truncation) -> Series:
    """G = x_3 (x_2 + x_3) F*(x_1, x_2, x_3; s), summed from its four pole-free pieces.

    (a) x_3 (x_2+x_3) F(s_1, s_2, s_3)
    (b) x_3 * beta(x_2+x_3) * [l-sum, weights (s_1+s_2, s_3), forms (x_1+x_2+x_3, x_3)]
    (c) (x_2+x_3) * beta(x_3) * [l-sum, weights (s_1, s_2+s_3), forms (x_1+x_2+x_3, x_2+x_3)]
    (d) beta(x_2+x_3) beta(x_3) * [l-sum, weight s_1+s_2+s_3, form x_1+x_2+x_3]

    where beta(f) = f / (1 - e^{-f}).
    """
    if trunc.nvars != 3:
        raise ValueError("depth-3 series needs a 3-variable truncation")
    b23 = bernoulli_gf_of_linear_form(_F23, trunc)
    b3 = bernoulli_gf_of_linear_form(_F3, trunc)
    a = mul_by_linear_form(mul_by_linear_form(gf_multi_indexed(GFSpec((s1, s2, s3)), trunc), _F3), _F23)
    b = mul_by_linear_form(b23 * lsum_series((s1 + s2, s3), (_F123, _F3), (1, 1), trunc), _F3)
    c = mul_by_linear_form(b3 * lsum_series((s1, s2 + s3), (_F123, _F23), (1, 1), trunc), _F23)
    d = b23 * b3 * lsum_series((s1 + s2 + s3,), (_F123,), (1,), trunc)
    return a + b + c + d


def _relation_lhs(star: Dict[Tuple[int, int, int], Fraction], m) -> Fraction:
    m1, m2, m3 = m
    acc = Fraction(0)
    if m2 and m3:
        acc += m2 * m3 * star[m1, m2 - 1, m3 - 1]
    if m3 >= 2:
        acc += m3 * (m3 - 1) * star[m1, m2, m3 - 2]
    return acc


@dataclass
class StarTripleSolution:
    weights: Tuple[int, int, int]
    caps: Tuple[int, int, int]
    values: Dict[Tuple[int, int, int], Fraction] = field(repr=False)
    series: Series = field(repr=False)
    mismatches: List[dict] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return not self.mismatches

    def table(self) -> PBTable:
        entries = {m: self.values[m] for m in itertools.product(*(range(c + 1) for c in self.caps))}
        return PBTable(GFSpec(self.weights), self.caps, entries, star=True)


def _triple_trunc(caps: Tuple[int, int, int]) -> Tuple[Truncation, int]:
    a, b, n = caps
    k = b + n
    return Truncation((a, k + 1, k + 1), a + k + 2), k


def star_triple_solve(caps: Sequence[int], s1: int, s2: int, s3: int, series: Series | None = None) -> StarTripleSolution:
    """Recover star values on the box ``caps`` from the cleared series G.

    Cell (m_1, b+1, n+2) of G reads (b+1)(n+2) S(m_1, b, n+1) + (n+2)(n+1) S(m_1, b+1, n),
    and cell (m_1, b+1, 1) reads (b+1) S(m_1, b, 0); this fixes S by induction on n.
    Cells with m_2 = 0 or m_3 = 0 are not used for solving; the relation LHS rebuilt
    from the solved values is compared with G on every cell of the box.
    """
    caps = tuple(int(c) for c in caps)
    if len(caps) != 3 or min(caps) < 0:
        raise ValueError("caps must be three nonnegative integers")
    trunc, k = _triple_trunc(caps)
    if series is None:
        series = gf_star_triple_cleared(s1, s2, s3, trunc)
    elif not series.trunc.covers(trunc):
        raise ValueError("supplied series truncation is too small")
    c = series.normalized_coefficient
    star: Dict[Tuple[int, int, int], Fraction] = {}
    for m1 in range(caps[0] + 1):
        for b in range(k + 1):
            star[m1, b, 0] = c((m1, b + 1, 1)) / (b + 1)
        for n in range(k):
            for b in range(k - n):
                rhs = c((m1, b + 1, n + 2)) - (n + 2) * (n + 1) * star[m1, b + 1, n]
                star[m1, b, n + 1] = rhs / ((n + 2) * (b + 1))
    sol = StarTripleSolution((s1, s2, s3), caps, star, series)
    for m in itertools.product(*(range(x + 1) for x in caps)):
        got = _relation_lhs(star, m)
        want = c(m)
        if got != want:
            sol.mismatches.append({"m": m, "series": want, "from_solution": got})
    return sol


def triple_relation_rhs(m: Sequence[int], s: Sequence[int], form: str = "one-term", table3: PBTable | None = None) -> Fraction:
    """Right-hand side of the depth-3 relation at cell m, from non-star numbers only."""
    _check_form(form)
    m1, m2, m3 = m
    s1, s2, s3 = s
    if table3 is None:
        b3 = lambda *idx: multi_indexed_value(idx, (s1, s2, s3))  # noqa: E731
    else:
        b3 = lambda *idx: table3[idx]  # noqa: E731
    b2a = lambda i, j: _b2(i, j, s1 + s2, s3)  # noqa: E731
    b2b = lambda i, j: _b2(i, j, s1, s2 + s3)  # noqa: E731
    b1 = lambda i: _b1(i, s1 + s2 + s3)  # noqa: E731
    B = bernoulli

    acc = Fraction(0)
    if m2 and m3:
        acc += m2 * m3 * b3(m1, m2 - 1, m3 - 1)
    if m3 >= 2:
        acc += m3 * (m3 - 1) * b3(m1, m2, m3 - 2)

    if form == "one-term":
        if m3:
            acc += m3 * B(m2) * b2a(m1, m3 - 1)
            acc += m3 * B(m3 - 1) * b2b(m1, m2)
        if m2:
            acc += m2 * B(m3) * b2b(m1, m2 - 1)
        acc += B(m2) * B(m3) * b1(m1)
        return acc

    def nq(a, b, c):
        return sum(
            binomial(b, i) * binomial(c, t) * B(i + t) * b2a(a + b - i, c - t)
            for i in range(b + 1)
            for t in range(c + 1)
        )

    def nr(a, b, c):
        return sum(binomial(c, t) * B(t) * b2b(a, b + c - t) for t in range(c + 1))

    if m3:
        acc += m3 * nq(m1, m2, m3 - 1)
        acc += m3 * nr(m1, m2, m3 - 1)
    if m2:
        acc += m2 * nr(m1, m2 - 1, m3)
    f3 = math.factorial(m3)
    for i in range(m2 + 1):
        for t in range(m3 + 1):
            for u in range(m3 - t + 1):
                multi = f3 // (math.factorial(t) * math.factorial(u) * math.factorial(m3 - t - u))
                acc += binomial(m2, i) * multi * B(i + t) * B(u) * b1(m1 + m2 - i + m3 - t - u)
    return acc


def verify_triple_relation(
    caps: Sequence[int],
    s1: int,
    s2: int,
    s3: int,
    form: str = "one-term",
    solution: StarTripleSolution | None = None,
) -> Report:
    """Check the depth-3 relation on every cell of the box ``caps``.

    Each cell records three numbers: the relation LHS rebuilt from solved star
    values, the RHS built from non-star numbers, and the G coefficient.  For the
    one-term form a cell fails if LHS != RHS or G != RHS; the binomial form is
    a statement about G alone and fails only if G != RHS.
    """
    _check_form(form)
    caps = tuple(int(c) for c in caps)
    rep = Report(f"star-triple-{form}", {"caps": caps, "weights": (s1, s2, s3)})
    with timed(rep):
        if solution is None:
            solution = star_triple_solve(caps, s1, s2, s3)
        table3 = pb_table((s1, s2, s3), caps)
        c = solution.series.normalized_coefficient
        for m in itertools.product(*(range(x + 1) for x in caps)):
            rep.cells += 1
            lhs = _relation_lhs(solution.values, m)
            rhs = triple_relation_rhs(m, (s1, s2, s3), form, table3)
            coeff = c(m)
            bad = coeff != rhs if form == "binomial" else (lhs != rhs or coeff != rhs)
            if bad:
                rep.fail(m=m, lhs=lhs, rhs=rhs, series=coeff)
        if solution.mismatches:
            rep.notes.append(f"star solve left {len(solution.mismatches)} over-determined cells inconsistent")
    return rep
