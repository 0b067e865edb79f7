"""Exact poly-Bernoulli numbers: single, multiple and multi-indexed families,
their star variants, truncated multiple polylogarithms and periodicity checks.
"""

from __future__ import annotations

from .exact import ResidueRing, bernoulli, binomial, euler_phi, factorial, stirling2
from .polybernoulli import (
    GFSpec,
    PBTable,
    PBValue,
    double_explicit,
    duality_check,
    gf_multi_indexed,
    mpb_arakawa_kaneko,
    multi_indexed,
    multi_indexed_value,
    pb_single,
    pb_single_gf_oracle,
    pb_table,
)
from .polylog import li_ast, li_ast_star, li_sharp, li_sharp_star, star_decomposition_check
from .series import LinearForm, Series, Truncation
from .star import star_double, star_triple_solve

__version__ = "0.1.0"

__all__ = [
    "ResidueRing", "bernoulli", "binomial", "euler_phi", "factorial", "stirling2",
    "GFSpec", "PBTable", "PBValue", "double_explicit", "duality_check", "gf_multi_indexed",
    "mpb_arakawa_kaneko", "multi_indexed", "multi_indexed_value", "pb_single",
    "pb_single_gf_oracle", "pb_table",
    "li_ast", "li_ast_star", "li_sharp", "li_sharp_star", "star_decomposition_check",
    "LinearForm", "Series", "Truncation",
    "star_double", "star_triple_solve",
]
