"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or precondition
error, 3 capacity error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, isqrt

from . import alt, hilbert_kunz as hk, orderpoly as op, series
from .errors import CapacityError, IntegrityError
from .exactmath import fmt_rational
from .posets import crown, odd_decompositions, zigzag

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3


@dataclass
class Report:
    data: dict
    text: str
    ok: bool = True
    table: list[dict] | None = None
    warnings: list[str] = field(default_factory=list)


def _r(q) -> str:
    return fmt_rational(q)


def _rs(qs) -> list[str]:
    return [fmt_rational(q) for q in qs]


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, isqrt(p) + 1))


def _parse_poset(spec: str):
    kind, sep, num = spec.partition(":")
    if not sep:
        raise ValueError(f"poset must look like zigzag:N or crown:N, got {spec!r}")
    n = int(num)
    if kind == "zigzag":
        return "zigzag", n, zigzag(n)
    if kind == "crown":
        return "crown", n, crown(n)
    raise ValueError(f"unknown poset kind {kind!r}")


def _int_list(text: str) -> list[int]:
    return [int(s) for s in text.split(",") if s.strip()]


# -- subcommands ------------------------------------------------------


def cmd_orderpoly(a) -> Report:
    kind, n, p = _parse_poset(a.poset)
    if kind == "crown" and a.method in ("kreweras", "minor"):
        raise ValueError(f"method {a.method} only applies to zigzags")
    if a.method == "all":
        methods = [m for m in op.METHODS if kind == "zigzag" or m in ("brute", "decomposition")]
        if n > op.MAX_BRUTE_SIZE:
            methods = [m for m in methods if m not in ("brute", "decomposition")]
            if not methods:
                raise CapacityError(f"no method handles crown:{n}")
    else:
        methods = [a.method]
    results = {}
    for m in methods:
        if kind == "zigzag":
            results[m] = op.order_poly(n, m)
        elif m == "brute":
            results[m] = op.order_poly_brute(p)
        else:
            results[m] = op.order_poly_decomposition(p)
    first = results[methods[0]]
    agree = all(r.poly == first.poly for r in results.values())
    data = {
        "poset": a.poset,
        "n": n,
        "method": a.method,
        "methods": methods,
        "agree": agree,
        "coeffs": first.poly.to_json(),
        "scaled_coeffs": _rs(first.scaled()),
        "denominator": str(factorial(n)),
    }
    lines = [
        f"{a.poset}  methods: {', '.join(methods)}  agree: {'yes' if agree else 'NO'}",
        f"Omega(t) = {first.poly}",
        f"{n}! * Omega coefficients (t^0..t^{n}): {' '.join(data['scaled_coeffs'])}",
    ]
    if a.shift:
        shifted = first.poly.shift(Fraction(-1, 2))
        data["shifted_coeffs"] = shifted.to_json()
        data["shifted_scaled"] = _rs(factorial(n) * shifted.coeff(k) for k in range(n + 1))
        lines.append(f"Omega(t - 1/2) = {shifted}")
        lines.append(f"f_(n,k), k = 0..{n}: {' '.join(data['shifted_scaled'])}")
    if not agree:
        for m, r in results.items():
            lines.append(f"  {m}: {r.poly}")
    table = [
        {"k": k, "coeff": data["coeffs"][k] if k < len(data["coeffs"]) else "0",
         "scaled": data["scaled_coeffs"][k]}
        for k in range(n + 1)
    ]
    return Report(data, "\n".join(lines), agree, table)


def cmd_series(a) -> Report:
    stream = series.SeriesStream(a.name)
    coeffs = stream.upto(a.upto)
    data = {"name": stream.name, "upto": a.upto, "coeffs": _rs(coeffs)}
    text = "\n".join(f"{stream.name}[{i}] = {_r(c)}" for i, c in enumerate(coeffs))
    table = [{"index": i, "coeff": _r(c)} for i, c in enumerate(coeffs)]
    return Report(data, text, True, table)


def cmd_weights(a) -> Report:
    if not 1 <= a.k <= a.n:
        raise ValueError("need 1 <= k <= n")
    decs = odd_decompositions(a.n, a.k)
    entries = [
        {"decomposition": d.text(), "classes": d.text(verbose=True), "weight": _r(series.decomposition_weight(d))}
        for d in decs
    ]
    g = series.weighted_sum_g(a.n, a.k)
    f = series.weighted_sum_f(a.n, a.k)
    data = {"n": a.n, "k": a.k, "weight_sum": _r(g), "f": _r(f)}
    lines = []
    if a.list:
        data["decompositions"] = entries
        lines += [f"{e['classes']:<24} {e['weight']}" for e in entries]
    lines.append(f"sum of weights g_({a.n},{a.k}) = {_r(g)}")
    lines.append(f"f_({a.n},{a.k}) = {_r(f)}")
    return Report(data, "\n".join(lines), True, entries)


def cmd_grow(a) -> Report:
    row = series.g_row(a.n)
    coeffs = [row.coeff(k) for k in range(a.n + 1)]
    data = {"n": a.n, "coeffs": _rs(coeffs)}
    text = f"G_{a.n}(x) = {str(row.poly).replace('t', 'x')}"
    table = [{"k": k, "g": _r(c)} for k, c in enumerate(coeffs)]
    return Report(data, text, True, table)


def cmd_hadamard(a) -> Report:
    rep = series.hadamard_check(a.n_max)
    data = {"n_max": a.n_max, "checked": rep.checked, "ok": rep.ok,
            "skipped": [list(s) for s in rep.skipped]}
    if rep.ok:
        text = f"coefficientwise identity holds for all {rep.checked} (n, k) with n <= {a.n_max}"
    else:
        n, k, lhs, rhs = rep.failure
        data["failure"] = {"n": n, "k": k, "lhs": _r(lhs), "rhs": _r(rhs)}
        text = f"FAIL at n={n}, k={k}: {_r(lhs)} != {_r(rhs)}"
    if rep.skipped:
        text += f"\nskipped (n, k): {', '.join(map(str, rep.skipped))}"
    return Report(data, text, rep.ok)


def _hk_row(r: hk.HKReport) -> dict:
    return {"p": r.p, "n": r.n, "e_hk": _r(r.e_hk), "bound": _r(r.bound),
            "margin": _r(r.margin), "satisfied": r.satisfied}


def _prime_warnings(ps) -> list[str]:
    return [f"warning: p={p} is not prime" for p in ps if not _is_prime(p)]


def cmd_hk(a) -> Report:
    r = hk.e_hk(a.p, a.n)
    data = _hk_row(r)
    text = (f"e_HK(A_{a.p},{a.n}) = {data['e_hk']}\nbound 1 + E_n/n! = {data['bound']}\n"
            f"margin = {data['margin']}  satisfied: {r.satisfied}")
    return Report(data, text, r.satisfied, [data], _prime_warnings([a.p]))


def cmd_verify_wy(a) -> Report:
    ps = _int_list(a.p_list)
    rep = hk.verify_wy(ps, range(a.n_min, a.n_max + 1))
    rows = [_hk_row(r) for r in rep.rows]
    data = {"ok": rep.ok, "rows": rows, "equality_cases": [list(c) for c in rep.equality_cases()]}
    lines = [f"{'n':>3} {'p':>4}  margin"]
    lines += [f"{r['n']:>3} {r['p']:>4}  {r['margin']}{'' if r['satisfied'] else '  FAIL'}" for r in rows]
    lines.append(f"all satisfied: {rep.ok}")
    fmt = "csv" if a.csv else a.format
    a.format = fmt
    return Report(data, "\n".join(lines), rep.ok, rows, _prime_warnings(ps))


def cmd_alt_check(a) -> Report:
    grid = alt.parse_grid(a.t_grid)
    bits = a.pi_bits or alt.default_pi_bits()
    rep = alt.positivity_certificate(range(a.n_min, a.n_max + 1), grid, bits, a.terms)
    rows = [
        {"n": c.n, "t": _r(c.t), "interval": c.interval.to_json(), "status": c.status,
         "terms": c.terms, "pi_bits": c.pi_bits}
        for c in rep.cells
    ]
    data = {"kind": rep.kind, "ok": rep.ok, "cells": rows}
    lines = [f"{c.n:>3} t={_r(c.t):<6} {c.status:<12} lo={float(c.interval.lo):.6g}" for c in rep.cells]
    lines.append(f"all positive: {rep.ok} ({len(rep.cells)} sampled cells)")
    table = [dict(r, lo=r["interval"][0], hi=r["interval"][1]) for r in rows]
    for r in table:
        del r["interval"]
    return Report(data, "\n".join(lines), rep.ok, table)


def cmd_crown(a) -> Report:
    two_n = a.n
    ks = [a.k] if a.k else list(range(1, two_n + 1))
    vals = [series.crown_coefficients(two_n, k) for k in ks]
    data = {"two_n": two_n, "k": ks, "coeffs": _rs(vals)}
    ok = True
    lines = [f"fhat_({two_n},{k}) = {_r(v)}" for k, v in zip(ks, vals)]
    if a.check:
        if two_n > op.MAX_BRUTE_SIZE:
            raise CapacityError(f"brute-force check supports 2n <= {op.MAX_BRUTE_SIZE}")
        shifted = op.order_poly_brute(crown(two_n)).poly.shift(Fraction(-1, 2)) * factorial(two_n)
        ref = [shifted.coeff(k) for k in ks]
        ok = ref == vals
        data["brute"] = _rs(ref)
        data["agree"] = ok
        lines.append(f"brute-force agreement: {ok}")
    table = [{"k": k, "coeff": _r(v)} for k, v in zip(ks, vals)]
    return Report(data, "\n".join(lines), ok, table)


# -- parser -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")

    parser = argparse.ArgumentParser(
        prog="zigzag-ehrhart",
        description="Exact order polynomials of zigzag posets and related checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("orderpoly", parents=[common], help="order polynomial of a zigzag or crown")
    p.add_argument("--poset", required=True, help="zigzag:N or crown:N")
    p.add_argument("--method", choices=op.METHODS + ("all",), default="all")
    p.add_argument("--shift", action="store_true", help="also print Omega(t - 1/2)")
    p.set_defaults(func=cmd_orderpoly)

    p = sub.add_parser("series", parents=[common], help="coefficients of a named series")
    p.add_argument("--name", required=True, choices=series.SERIES_NAMES)
    p.add_argument("--upto", type=int, default=10)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("weights", parents=[common], help="weighted sum over odd decompositions")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--list", action="store_true", help="list every decomposition")
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("grow", parents=[common], help="row G_n(x)")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_grow)

    p = sub.add_parser("hadamard-check", parents=[common], help="check Omega(Z_n; t-1/2) against E_k g_{n,k}/k!")
    p.add_argument("--n-max", type=int, default=12)
    p.set_defaults(func=cmd_hadamard)

    p = sub.add_parser("hk", parents=[common], help="Hilbert-Kunz multiplicity of A_{p,n}")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_hk)

    p = sub.add_parser("verify-wy", parents=[common], help="e_HK >= 1 + E_n/n! over a grid")
    p.add_argument("--p-list", default="3,5,7,11,13")
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--csv", action="store_true", help="same as --format csv")
    p.set_defaults(func=cmd_verify_wy)

    p = sub.add_parser("alt-check", parents=[common], help="certify Alt_t(H_n(2t/pi)) > 0 on a grid")
    p.add_argument("--n-min", type=int, default=8)
    p.add_argument("--n-max", type=int, default=16)
    p.add_argument("--t-grid", default="1.5:0.5:10", help="a:step:b or comma list")
    p.add_argument("--terms", type=int, default=alt.DEFAULT_TERMS)
    p.add_argument("--pi-bits", type=int, default=None,
                   help=f"pi precision (default ${alt.PI_BITS_ENV} or {alt.DEFAULT_PI_BITS})")
    p.set_defaults(func=cmd_alt_check)

    p = sub.add_parser("crown", parents=[common], help="shifted coefficients of the crown C_2n")
    p.add_argument("--n", type=int, required=True, help="size 2n of the crown")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--check", action="store_true", help="compare with brute force")
    p.set_defaults(func=cmd_crown)
    return parser


def _render(rep: Report, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rep.data, indent=2, sort_keys=False)
    if fmt == "csv":
        buf = io.StringIO()
        rows = rep.table if rep.table is not None else [
            {"key": k, "value": json.dumps(v) if isinstance(v, (list, dict)) else v}
            for k, v in rep.data.items()
        ]
        if rows:
            w = csv.DictWriter(buf, fieldnames=list(rows[0]), quoting=csv.QUOTE_NONNUMERIC,
                               lineterminator="\n")
            w.writeheader()
            w.writerows(rows)
        return buf.getvalue().rstrip("\n")
    return rep.text


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        rep = args.func(args)
    except CapacityError as e:
        print(f"capacity error: {e}", file=sys.stderr)
        return EXIT_CAPACITY
    except IntegrityError as e:
        print(f"integrity error: {e}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    for w in rep.warnings:
        print(w, file=sys.stderr)
    print(_render(rep, args.format))
    return EXIT_OK if rep.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
