"""Truncated multiple polylogarithms at rational points.

Four variants, all cut off at the largest summation index m_r <= M:

* ``li_ast``        sum_{m_1 < ... < m_r}  prod z_j^{m_j}            / prod m_j^{s_j}
* ``li_sharp``      sum_{m_1 < ... < m_r}  prod z_j^{m_j - m_{j-1}}  / prod m_j^{s_j}
* ``li_ast_star``   as ``li_ast``   with m_1 <= ... <= m_r
* ``li_sharp_star`` as ``li_sharp`` with m_1 <= ... <= m_r

Weights may be negative. Values are exact Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .exact import inv_power

__all__ = [
    "li_ast",
    "li_sharp",
    "li_ast_star",
    "li_sharp_star",
    "DecompositionReport",
    "star_decomposition_terms",
    "star_decomposition_check",
]


def _prepare(weights: Sequence[int], z: Sequence, cutoff: int) -> Tuple[Tuple[int, ...], Tuple[Fraction, ...]]:
    weights = tuple(int(s) for s in weights)
    z = tuple(Fraction(v) for v in z)
    if not weights:
        raise ValueError("depth must be >= 1")
    if len(z) != len(weights):
        raise ValueError(f"{len(weights)} weights but {len(z)} arguments")
    if cutoff < 1:
        raise ValueError("cutoff M must be >= 1")
    for v in z:
        if abs(v) >= 1:
            raise ValueError(f"argument {v} outside the open unit disc")
    return weights, z


def _nested(weights, z, M: int, *, sharp: bool, star: bool) -> Fraction:
    # level[m] holds the sum over tuples ending at m_j = m (index 0 unused)
    s1, z1 = weights[0], z[0]
    level: List[Fraction] = [Fraction(0)] * (M + 1)
    zp = Fraction(1)
    for m in range(1, M + 1):
        zp *= z1
        level[m] = zp * inv_power(m, s1)
    for s, zj in zip(weights[1:], z[1:]):
        nxt: List[Fraction] = [Fraction(0)] * (M + 1)
        run = Fraction(0)  # aggregated predecessors
        zp = Fraction(1)
        for m in range(1, M + 1):
            if sharp:
                # run = sum_{m' < m (<= m if star)} level[m'] * zj^{m - m'}
                if star:
                    run = run * zj + level[m]
                else:
                    run = (run + level[m - 1]) * zj
                nxt[m] = run * inv_power(m, s)
            else:
                zp *= zj
                if star:
                    run += level[m]
                else:
                    run += level[m - 1]
                nxt[m] = run * zp * inv_power(m, s)
        level = nxt
    return sum(level, Fraction(0))


def li_ast(weights: Sequence[int], z: Sequence, cutoff: int) -> Fraction:
    w, zz = _prepare(weights, z, cutoff)
    return _nested(w, zz, cutoff, sharp=False, star=False)


def li_sharp(weights: Sequence[int], z: Sequence, cutoff: int) -> Fraction:
    w, zz = _prepare(weights, z, cutoff)
    return _nested(w, zz, cutoff, sharp=True, star=False)


def li_ast_star(weights: Sequence[int], z: Sequence, cutoff: int) -> Fraction:
    w, zz = _prepare(weights, z, cutoff)
    return _nested(w, zz, cutoff, sharp=False, star=True)


def li_sharp_star(weights: Sequence[int], z: Sequence, cutoff: int) -> Fraction:
    w, zz = _prepare(weights, z, cutoff)
    return _nested(w, zz, cutoff, sharp=True, star=True)


@dataclass(frozen=True)
class DecompositionReport:
    weights: Tuple[int, ...]
    z: Tuple[Fraction, ...]
    cutoff: int
    lhs: Fraction
    terms: Tuple[Fraction, ...]

    @property
    def rhs(self) -> Fraction:
        return sum(self.terms, Fraction(0))

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self) -> dict:
        return {
            "weights": list(self.weights),
            "z": [str(v) for v in self.z],
            "cutoff": self.cutoff,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "terms": [str(t) for t in self.terms],
            "equal": self.equal,
        }


def star_decomposition_terms(weights: Sequence[int], z: Sequence) -> List[Tuple[Tuple[int, ...], Tuple]]:
    """Non-star (weights, arguments) pairs whose sum is the sharp-star polylog.

    Merging m_j = m_{j+1} adds the weights and drops z_{j+1} (its exponent is 0).
    """
    w = tuple(weights)
    z = tuple(z)
    if len(w) == 2:
        s1, s2 = w
        z1, z2 = z
        return [((s1, s2), (z1, z2)), ((s1 + s2,), (z1,))]
    if len(w) == 3:
        s1, s2, s3 = w
        z1, z2, z3 = z
        return [
            ((s1, s2, s3), (z1, z2, z3)),
            ((s1 + s2, s3), (z1, z3)),
            ((s1, s2 + s3), (z1, z2)),
            ((s1 + s2 + s3,), (z1,)),
        ]
    raise ValueError("star decomposition is implemented for depth 2 and 3 only")


def star_decomposition_check(weights: Sequence[int], z: Sequence, cutoff: int) -> DecompositionReport:
    w, zz = _prepare(weights, z, cutoff)
    pieces = star_decomposition_terms(w, zz)
    lhs = li_sharp_star(w, zz, cutoff)
    terms = tuple(li_sharp(pw, pz, cutoff) for pw, pz in pieces)
    return DecompositionReport(w, zz, cutoff, lhs, terms)
