"""Uniform pass/fail report shared by verification sweeps."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List

__all__ = ["Report", "jsonable", "timed"]


def jsonable(x: Any) -> Any:
    """Turn Fractions/ints/tuples into JSON-safe values; integers become decimal strings."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, float):
        return x
    return str(x)


@dataclass
class Report:
    statement: str
    params: Dict[str, Any]
    cells: int = 0
    failures: List[Dict[str, Any]] = field(default_factory=list)
    elapsed_ms: float = 0.0
    notes: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, **witness: Any) -> None:
        self.failures.append(witness)

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "statement": self.statement,
            "params": jsonable(self.params),
            "cells": str(self.cells),
            "failures": jsonable(self.failures),
        }
        if timing:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    def summary(self) -> str:
        status = "PASS" if self.ok else f"FAIL ({len(self.failures)} failing cells)"
        return f"{self.statement:<28} cells={self.cells:<7} {status}"


@contextmanager
def timed(report: Report):
    t0 = time.perf_counter()
    try:
        yield report
    finally:
        report.elapsed_ms = (time.perf_counter() - t0) * 1000.0
