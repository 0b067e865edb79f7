"""Command-line front end: ``polybern <command> ...`` or ``python -m polybern``.

Exit codes: 0 success, 1 a verification found failures, 2 bad arguments.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from fractions import Fraction
from typing import List, Sequence

from . import congruence, polylog
from .polybernoulli import GFSpec, double_explicit, multi_indexed_value, pb_single, pb_table
from .report import Report, jsonable
from .series import Truncation
from .star import FORMS, star_double
from .suites import SUITES, SuiteConfig, run_suite


class UsageError(Exception):
    pass


def _frac(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _rows_csv(rows, r: int) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"m_{j + 1}" for j in range(r)] + ["value_num", "value_den"])
    for m, v in rows:
        w.writerow(list(m) + [v.numerator, v.denominator])
    return buf.getvalue()


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(args, text: str) -> None:
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc}") from exc
    else:
        sys.stdout.write(text)


def _trunc_override(args, r: int) -> Truncation | None:
    if args.caps is None and args.total_cap is None:
        return None
    caps = tuple(args.caps) if args.caps is not None else None
    if caps is not None and len(caps) != r:
        raise UsageError(f"--caps needs {r} values")
    if caps is None:
        caps = (args.total_cap,) * r
    total = args.total_cap if args.total_cap is not None else sum(caps)
    return Truncation(caps, total)


def _need(value, flag: str, count: int | None = None):
    if value is None:
        raise UsageError(f"{flag} is required")
    if count is not None and len(value) != count:
        raise UsageError(f"{flag} takes {count} value(s)")
    return value


# ---------------------------------------------------------------------------
# value


def cmd_value(args) -> int:
    kind = args.kind
    if kind == "single":
        n = _need(args.n, "-n")
        k = _need(args.k, "-k", 1)[0]
        index, weights, v = (n,), (k,), pb_single(n, k)
    elif kind == "double":
        l = _need(args.l, "-l", 2)
        k = _need(args.k, "-k", 2)
        index, weights, v = tuple(l), tuple(k), double_explicit(l[0], l[1], k[0], k[1])
    elif kind == "multi":
        m = _need(args.m, "-m")
        s = _need(args.s, "-s", len(m))
        spec = GFSpec(tuple(s), args.d or 0)
        trunc = _trunc_override(args, len(m))
        index, weights, v = tuple(m), tuple(s), multi_indexed_value(m, spec, trunc)
    else:  # star-double
        m = _need(args.m, "-m", 2)
        s = _need(args.s, "-s", 2)
        index, weights, v = tuple(m), tuple(s), star_double(m[0], m[1], s[0], s[1])
    if args.format == "json":
        text = _dump_json({"kind": kind, "index": jsonable(index), "weights": jsonable(weights),
                           "num": str(v.numerator), "den": str(v.denominator)})
    elif args.format == "csv":
        text = _rows_csv([(index, v)], len(index))
    else:
        text = _frac(v) + "\n"
    _emit(args, text)
    return 0


# ---------------------------------------------------------------------------
# table


def cmd_table(args) -> int:
    kind = args.kind
    if kind == "multi":
        s = _need(args.s, "-s")
        caps = _need(args.caps, "--caps", len(s))
        tab = pb_table(GFSpec(tuple(s), args.d or 0), caps)
        rows, r = list(tab.rows()), len(s)
        payload = tab.to_json()
    elif kind == "single":
        k = _need(args.k, "-k", 1)[0]
        nmax = args.max if args.max is not None else _need(args.caps, "--caps", 1)[0]
        rows, r = [((n,), pb_single(n, k)) for n in range(nmax + 1)], 1
        payload = {"weights": [str(k)], "caps": [str(nmax)],
                   "entries": [{"m": [str(n)], "num": str(v.numerator), "den": str(v.denominator)} for (n,), v in rows]}
    else:  # duality matrix B_n^{(-k)}
        mx = args.max if args.max is not None else 4
        rows, r = [((n, k), pb_single(n, -k)) for n in range(mx + 1) for k in range(mx + 1)], 2
        payload = {"matrix": "B_n^(-k)", "max": str(mx),
                   "entries": [{"m": [str(n), str(k)], "num": str(v.numerator), "den": str(v.denominator)} for (n, k), v in rows]}
    if args.format == "json":
        text = _dump_json(payload)
    elif args.format == "csv":
        text = _rows_csv(rows, r)
    else:
        text = "".join(" ".join(map(str, m)) + "  " + _frac(v) + "\n" for m, v in rows)
    _emit(args, text)
    return 0


# ---------------------------------------------------------------------------
# verify


def _suite_config(args) -> SuiteConfig:
    cfg = SuiteConfig.small() if args.small else SuiteConfig()
    cfg = replace(cfg, star_form=args.star_form)
    mx = args.max
    if mx is not None:
        name = args.suite
        if name in ("duality", "all"):
            cfg = replace(cfg, duality_max=(mx, mx, min(mx, 3)))
        if name in ("explicit-double", "all"):
            cfg = replace(cfg, explicit_total=mx)
        if name in ("star-double", "all"):
            cfg = replace(cfg, star_max=mx)
        if name in ("star-triple", "all"):
            cfg = replace(cfg, triple_caps=(mx, mx, mx))
        if name in ("polylog-star", "all"):
            cfg = replace(cfg, polylog_cutoff=mx)
    if args.mod_p is not None:
        cfg = replace(cfg, primes=(args.mod_p,))
    if args.mod_N is not None:
        cfg = replace(cfg, exponents=(args.mod_N,))
    if args.mod_M is not None:
        cfg = replace(cfg, composites=(args.mod_M,))
    elif args.mod_p is not None or args.mod_N is not None:
        cfg = replace(cfg, composites=())  # a pinned prime power narrows the sweep to it
    if args.k is not None:
        if len(args.k) != 2:
            raise UsageError("--k takes two values for periodicity sweeps")
        cfg = replace(cfg, k_pairs=(tuple(args.k),))
    return cfg


def _run_named(job):
    name, cfg = job
    return run_suite(name, cfg)


def cmd_verify(args) -> int:
    cfg = _suite_config(args)
    names = list(SUITES) if args.suite == "all" else [args.suite]
    if args.jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            parts = list(pool.map(_run_named, [(n, cfg) for n in names]))
    else:
        parts = [run_suite(n, cfg) for n in names]
    reports: List[Report] = []
    by_suite = {}
    for name, reps in zip(names, parts):
        reports += reps
        by_suite[name] = reps
    ok = all(r.ok for r in reports)
    timing = not args.no_timing
    if args.format == "json":
        text = _dump_json({
            "suite": args.suite,
            "ok": ok,
            "cells": str(sum(r.cells for r in reports)),
            "failures": str(sum(len(r.failures) for r in reports)),
            "elapsed_ms": round(sum(r.elapsed_ms for r in reports), 3) if timing else None,
            "suites": {n: [r.to_json(timing) for r in reps] for n, reps in by_suite.items()},
        })
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["suite", "statement", "params", "cells", "failures"])
        for n, reps in by_suite.items():
            for r in reps:
                w.writerow([n, r.statement, json.dumps(jsonable(r.params), sort_keys=True), r.cells, len(r.failures)])
        text = buf.getvalue()
    else:
        lines = []
        for n, reps in by_suite.items():
            lines.append(f"[{n}]")
            lines += ["  " + r.summary() for r in reps if not args.quiet or not r.ok]
        lines.append("OK" if ok else "FAILURES")
        text = "\n".join(lines) + "\n"
    _emit(args, text)
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# search


def cmd_search(args) -> int:
    p = _need(args.mod_p, "--mod-p")
    N = _need(args.mod_N, "--mod-N")
    k = _need(args.k, "-k", 2)
    period = congruence.proven_period(p, N)
    rng = tuple(args.range) if args.range else (N, N + 4 * period)
    out = congruence.search_finer_period(p, N, k[0], k[1], rng)
    _emit(args, _dump_json(jsonable(out)))
    return 0


# ---------------------------------------------------------------------------
# polylog


_POLYLOG = {
    "ast": polylog.li_ast,
    "sharp": polylog.li_sharp,
    "ast-star": polylog.li_ast_star,
    "sharp-star": polylog.li_sharp_star,
}


def cmd_polylog(args) -> int:
    s = _need(args.s, "-s")
    z = _need(args.z, "-z", len(s))
    zs = [Fraction(v) for v in z]
    cutoff = args.cutoff
    if args.kind == "decomp-check":
        rep = polylog.star_decomposition_check(s, zs, cutoff)
        if args.format == "pretty":
            text = f"lhs={rep.lhs}\nrhs={rep.rhs}\nequal={rep.equal}\n"
        else:
            text = _dump_json(rep.to_json())
        _emit(args, text)
        return 0 if rep.equal else 1
    v = _POLYLOG[args.kind](s, zs, cutoff)
    if args.format == "json":
        text = _dump_json({"kind": args.kind, "weights": jsonable(s), "z": [str(x) for x in zs],
                           "cutoff": str(cutoff), "num": str(v.numerator), "den": str(v.denominator)})
    else:
        text = _frac(v) + "\n"
    _emit(args, text)
    return 0


# ---------------------------------------------------------------------------
# parser


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("pretty", "json", "csv"), default="pretty")
    p.add_argument("--out", help="write output to this path instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="polybern", description="Exact poly-Bernoulli computations and checks.")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("value", help="a single value")
    v.add_argument("kind", choices=("single", "double", "multi", "star-double"))
    v.add_argument("-n", type=int)
    v.add_argument("-k", "--k", type=int, nargs="+")
    v.add_argument("-l", type=int, nargs=2)
    v.add_argument("-m", type=int, nargs="+")
    v.add_argument("-s", type=int, nargs="+")
    v.add_argument("-d", type=int)
    v.add_argument("--caps", type=int, nargs="+")
    v.add_argument("--total-cap", type=int)
    _common(v)
    v.set_defaults(func=cmd_value)

    t = sub.add_parser("table", help="a box of values")
    t.add_argument("kind", choices=("multi", "single", "duality"))
    t.add_argument("-k", "--k", type=int, nargs="+")
    t.add_argument("-s", type=int, nargs="+")
    t.add_argument("-d", type=int)
    t.add_argument("--caps", type=int, nargs="+")
    t.add_argument("--max", type=int)
    _common(t)
    t.set_defaults(func=cmd_table)

    vf = sub.add_parser("verify", help="run a verification suite")
    vf.add_argument("suite", choices=tuple(SUITES) + ("all",))
    vf.add_argument("--small", action="store_true")
    vf.add_argument("--max", type=int)
    vf.add_argument("--star-form", choices=FORMS, default="one-term")
    vf.add_argument("-p", "--mod-p", type=int)
    vf.add_argument("-N", "--mod-N", type=int)
    vf.add_argument("--mod-M", type=int)
    vf.add_argument("-k", "--k", type=int, nargs="+")
    vf.add_argument("--jobs", type=int, default=1)
    vf.add_argument("--no-timing", action="store_true", help="omit elapsed times (byte-identical reruns)")
    vf.add_argument("--quiet", action="store_true", help="pretty output lists failing reports only")
    _common(vf)
    vf.set_defaults(func=cmd_verify)

    se = sub.add_parser("search", help="exploratory searches")
    se.add_argument("what", choices=("finer-period",))
    se.add_argument("-p", "--mod-p", type=int)
    se.add_argument("-N", "--mod-N", type=int)
    se.add_argument("-k", "--k", type=int, nargs="+")
    se.add_argument("--range", type=int, nargs=2)
    _common(se)
    se.set_defaults(func=cmd_search)

    pl = sub.add_parser("polylog", help="truncated multiple polylogarithms")
    pl.add_argument("kind", choices=tuple(_POLYLOG) + ("decomp-check",))
    pl.add_argument("-s", type=int, nargs="+")
    pl.add_argument("-z", nargs="+", help="rationals such as 1/2")
    pl.add_argument("-M", "--cutoff", type=int, default=30)
    _common(pl)
    pl.set_defaults(func=cmd_polylog)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, ZeroDivisionError) as exc:
        print(f"polybern: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
