"""Named verification sweeps, each returning a list of :class:`Report`.

Scales are set through :class:`SuiteConfig`; ``SuiteConfig.small()`` is the
quick variant used by ``verify --small``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Tuple

from .congruence import (
    check_composite,
    check_pairwise,
    check_single_index_baseline,
    check_star_pairwise,
    proven_period,
    sweep_sum_vanishing,
)
from .polybernoulli import GFSpec, double_explicit, duality_grid, multi_indexed_value, pb_single
from .polylog import star_decomposition_check
from .report import Report, timed
from .star import check_star_double, star_triple_solve, verify_triple_relation

__all__ = ["SuiteConfig", "SUITES", "run_suite"]


@dataclass(frozen=True)
class SuiteConfig:
    duality_max: Tuple[int, int, int] = (10, 5, 3)  # single, r=2, r=3
    explicit_total: int = 6
    explicit_k: Tuple[int, int] = (-3, 3)
    star_max: int = 6
    star_s: Tuple[int, int] = (-3, 1)
    star_form: str = "one-term"
    triple_caps: Tuple[int, int, int] = (4, 4, 4)
    triple_weights: Tuple[Tuple[int, int, int], ...] = ((-1, -1, -1), (-2, -1, 0))
    polylog_cutoff: int = 30
    polylog_z: Tuple[Fraction, ...] = (Fraction(1, 2), Fraction(1, 3), Fraction(2, 5))
    polylog_s: Tuple[int, int] = (-2, 2)
    primes: Tuple[int, ...] = (2, 3, 5)
    exponents: Tuple[int, ...] = (1, 2)
    ks: Tuple[int, ...] = (1, 2, 3)
    composites: Tuple[int, ...] = (4, 6, 12)
    composite_k: int = 2
    k_pairs: Tuple[Tuple[int, int], ...] | None = None  # overrides the ks x ks product

    def weight_pairs(self) -> List[Tuple[int, int]]:
        if self.k_pairs is not None:
            return [tuple(k) for k in self.k_pairs]
        return list(itertools.product(self.ks, repeat=2))

    @classmethod
    def small(cls, **kw) -> "SuiteConfig":
        base = dict(
            duality_max=(6, 3, 2),
            explicit_total=4,
            explicit_k=(-2, 2),
            star_max=3,
            star_s=(-2, 1),
            triple_caps=(2, 2, 2),
            triple_weights=((-1, -1, -1),),
            polylog_cutoff=12,
            polylog_s=(-1, 1),
            primes=(2, 3),
            ks=(1, 2),
        )
        base.update(kw)
        return cls(**base)


def suite_duality(cfg: SuiteConfig) -> List[Report]:
    m1, m2, m3 = cfg.duality_max
    single = Report("single-duality", {"max": m1})
    with timed(single):
        for m, k in itertools.product(range(m1 + 1), repeat=2):
            single.cells += 1
            a, b = pb_single(m, -k), pb_single(k, -m)
            if a != b:
                single.fail(m=m, k=k, lhs=a, rhs=b)
    out = [single]
    for r, mx in ((2, m2), (3, m3)):
        rep = Report("multi-duality", {"r": r, "max": mx})
        with timed(rep):
            for d in duality_grid(r, mx):
                rep.cells += 1
                if not d.equal:
                    rep.fail(m=d.m, k=d.k, lhs=d.lhs, rhs=d.rhs)
        out.append(rep)
    return out


def suite_explicit_double(cfg: SuiteConfig) -> List[Report]:
    lo, hi = cfg.explicit_k
    rep = Report("explicit-double", {"total": cfg.explicit_total, "k_range": (lo, hi)})
    integ = Report("integrality", {"total": cfg.explicit_total, "k_range": (lo, 0)})
    with timed(rep):
        for k1, k2 in itertools.product(range(lo, hi + 1), repeat=2):
            spec = GFSpec((k1, k2))
            for l1 in range(cfg.explicit_total + 1):
                for l2 in range(cfg.explicit_total + 1 - l1):
                    rep.cells += 1
                    closed = double_explicit(l1, l2, k1, k2)
                    gf = multi_indexed_value((l1, l2), spec)
                    if closed != gf:
                        rep.fail(l=(l1, l2), k=(k1, k2), closed=closed, series=gf)
                    if k1 <= 0 and k2 <= 0:
                        integ.cells += 1
                        if gf.denominator != 1:
                            integ.fail(l=(l1, l2), k=(k1, k2), value=gf)
    return [rep, integ]


def suite_star_double(cfg: SuiteConfig) -> List[Report]:
    lo, hi = cfg.star_s
    weights = list(itertools.product(range(lo, hi + 1), repeat=2))
    return [check_star_double(cfg.star_max, weights, cfg.star_form)]


def suite_star_triple(cfg: SuiteConfig) -> List[Report]:
    out = []
    for w in cfg.triple_weights:
        sol = star_triple_solve(cfg.triple_caps, *w)
        rt = Report("star-triple-roundtrip", {"caps": cfg.triple_caps, "weights": w})
        rt.cells = len(list(itertools.product(*(range(c + 1) for c in cfg.triple_caps))))
        for mm in sol.mismatches:
            rt.fail(**mm)
        out.append(verify_triple_relation(cfg.triple_caps, *w, form=cfg.star_form, solution=sol))
        out.append(rt)
    return out


def suite_polylog_star(cfg: SuiteConfig) -> List[Report]:
    lo, hi = cfg.polylog_s
    out = []
    for depth in (2, 3):
        rep = Report("star-decomposition", {"depth": depth, "cutoff": cfg.polylog_cutoff, "s_range": (lo, hi)})
        with timed(rep):
            for w in itertools.product(range(lo, hi + 1), repeat=depth):
                for z in itertools.product(cfg.polylog_z, repeat=depth):
                    rep.cells += 1
                    d = star_decomposition_check(w, z, cfg.polylog_cutoff)
                    if not d.equal:
                        rep.fail(weights=w, z=z, lhs=d.lhs, rhs=d.rhs)
        out.append(rep)
    return out


def suite_periodicity(cfg: SuiteConfig) -> List[Report]:
    out: List[Report] = []
    for p, N in itertools.product(cfg.primes, cfg.exponents):
        q = proven_period(p, N)
        rng = (N, N + 2 * q)
        for k1, k2 in cfg.weight_pairs():
            out += check_pairwise(p, N, k1, k2, rng)
            out += sweep_sum_vanishing(p, N, k1, k2, rng)
        for k in sorted({k for pair in cfg.weight_pairs() for k in pair}):
            out += check_single_index_baseline(p, N, k, rng)
    return out


def suite_composite(cfg: SuiteConfig) -> List[Report]:
    from .exact import ResidueRing

    out: List[Report] = []
    for M in cfg.composites:
        n = ResidueRing(M).max_exponent
        for k1, k2 in itertools.product(range(1, cfg.composite_k + 1), repeat=2):
            out += check_composite(M, k1, k2, n, n)
    return out


def suite_star_congruence(cfg: SuiteConfig) -> List[Report]:
    out: List[Report] = []
    for p, N in itertools.product(cfg.primes, cfg.exponents):
        q = proven_period(p, N)
        for k1, k2 in cfg.weight_pairs():
            # shifted second indices m_2 - 1 must also satisfy the pairwise hypothesis
            out += check_star_pairwise(p, N, k1, k2, (N + 1, N + 2 * q + 1))
    return out


SUITES: Dict[str, Callable[[SuiteConfig], List[Report]]] = {
    "duality": suite_duality,
    "explicit-double": suite_explicit_double,
    "star-double": suite_star_double,
    "star-triple": suite_star_triple,
    "polylog-star": suite_polylog_star,
    "periodicity": lambda cfg: suite_periodicity(cfg) + suite_composite(cfg) + suite_star_congruence(cfg),
}


def run_suite(name: str, cfg: SuiteConfig) -> List[Report]:
    if name == "all":
        return [rep for key in SUITES for rep in SUITES[key](cfg)]
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}") from None
    return fn(cfg)


def merge(reports: List[Report], statement: str) -> Report:
    """Collapse same-statement reports into one, keeping every witness."""
    agg = Report(statement, {"parts": len(reports)})
    for r in reports:
        agg.cells += r.cells
        agg.elapsed_ms += r.elapsed_ms
        for f in r.failures:
            agg.fail(**{**{"params": r.params}, **f})
    return agg
