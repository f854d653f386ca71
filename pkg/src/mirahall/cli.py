"""Command-line front end.

Every subcommand renders one deterministic artifact: the same invocation
produces the same bytes, whether the table came out of the cache or was
rebuilt.  Exit codes: 0 computed or verified, 1 a verification failed,
2 bad usage.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from collections import Counter
from typing import Mapping, Sequence

from . import cache
from .affine import (
    bruhat_leq,
    h_basis_check,
    hecke_quadratic_check,
    mass_check,
    pattern_check,
    ts_action,
    universe,
    validate,
)
from .bimodule import mhl_poly, pi_table
from .closedform import closed_form_G, rho_check, stable_right_constant, verify_closed_form
from .config import FORMATS, RunConfig, parse_primes, read_config_file, resolve
from .errors import IOFailure, MiraError, OracleMismatch, UsageError
from .hall import hall_mul, hall_mul_direct, psi, u_elt
from .laurent import LaurentPoly, QPoly
from .pairs import orbit_census
from .partitions import ah_leq, bipartitions_of, partitions_of, size, trim
from .symfunc import kostka_foulkes
from .traces import green_freeness_check, green_labels, trace_value, fiber_oracle_check

SUITES = (
    "census",
    "constants",
    "hall",
    "pi",
    "classical",
    "trace",
    "rho",
    "green",
    "iwahori",
)


# --- labels -----------------------------------------------------------------


def plabel(lam) -> str:
    return "(" + ",".join(str(part) for part in lam) + ")"


def bplabel(bp) -> str:
    return f"{plabel(bp[0])}|{plabel(bp[1])}"


def parse_partition(text: str):
    body = text.strip().strip("()")
    if not body:
        return ()
    try:
        parts = tuple(int(tok) for tok in body.split(","))
    except ValueError:
        raise UsageError(f"bad partition {text!r}") from None
    if any(a < b for a, b in zip(parts, parts[1:])) or any(p < 0 for p in parts):
        raise UsageError(f"parts must be weakly decreasing and nonnegative: {text!r}")
    return trim(parts)


def parse_bipartition(text: str):
    if text.count("|") != 1:
        raise UsageError(f"bipartition must look like '2,1|1', got {text!r}")
    left, right = text.split("|")
    return parse_partition(left), parse_partition(right)


def _ilabel(x) -> dict:
    return {
        "window": list(x.w.window),
        "lo": x.beta.lo,
        "extra": list(x.beta.extra),
    }


# --- payload builders ---------------------------------------------------------


def pi_payload(n: int, rank: int, cfg: RunConfig) -> dict:
    params = {"n": n, "N": rank}
    hit = cache.load("pi", params, cfg.cache_dir)
    if hit is not None:
        return hit
    table = pi_table(n, rank)

    def cells(tbl) -> list:
        out = []
        for row in table.order:
            for col in table.order:
                val = tbl.get((row, col))
                if val is not None and not val.is_zero():
                    out.append(
                        {"row": bplabel(row), "col": bplabel(col), "coeff": val.to_json()}
                    )
        return out

    payload = {
        "kind": "pi",
        "n": n,
        "N": rank,
        "order": [bplabel(bp) for bp in table.order],
        "calibrated": cells(table.calibrated),
        "raw": cells(table.raw),
        "diag_units": [
            {"col": bplabel(col), "unit": table.diag_units[col].to_json()}
            for col in table.order
        ],
    }
    cache.store("pi", params, payload, cfg.cache_dir)
    return payload


def mhl_payload(n: int, rank: int, cfg: RunConfig) -> dict:
    params = {"n": n, "N": rank}
    hit = cache.load("mhl", params, cfg.cache_dir)
    if hit is not None:
        return hit
    entries = []
    for bp in bipartitions_of(n):
        tensor, prefactor = mhl_poly(bp, rank)
        entries.append(
            {
                "label": bplabel(bp),
                "prefactor": prefactor.to_json(),
                "tensor": [
                    {"pair": bplabel(key), "coeff": val.to_json()}
                    for key, val in tensor.items()
                ],
            }
        )
    payload = {"kind": "mhl", "n": n, "N": rank, "entries": entries}
    cache.store("mhl", params, payload, cfg.cache_dir)
    return payload


def trace_payload(n: int, q: int, cfg: RunConfig) -> dict:
    params = {"n": n, "q": q}
    hit = cache.load("trace", params, cfg.cache_dir)
    if hit is not None:
        return hit
    table = pi_table(n, n)
    cells = []
    for row in table.order:
        for col in table.order:
            cell = trace_value(col, row, table, q)
            if not cell.is_zero():
                cells.append(
                    {
                        "row": bplabel(row),
                        "col": bplabel(col),
                        "plain": cell.a.to_json(),
                        "radical": cell.b.to_json(),
                    }
                )
    payload = {
        "kind": "trace",
        "n": n,
        "q": q,
        "order": [bplabel(bp) for bp in table.order],
        "cells": cells,
    }
    cache.store("trace", params, payload, cfg.cache_dir)
    return payload


def hall_payload(x, y, rank: int) -> dict:
    if len(x) > rank or len(y) > rank:
        raise UsageError(f"shapes {x} and {y} need rank above {rank}")
    prod = hall_mul(u_elt(x, rank), u_elt(y, rank))
    return {
        "kind": "hall",
        "N": rank,
        "x": plabel(x),
        "y": plabel(y),
        "terms": [
            {"label": plabel(lam), "coeff": c.to_json()} for lam, c in prod.items()
        ],
    }


def mirabolic_payload(src, r: int, side: str, rank: int) -> dict:
    if r < 1:
        raise UsageError(f"generator degree must be positive, got {r}")
    n = size(src[0]) + size(src[1]) + r
    if side == "left":
        table = closed_form_G(r, src)
        terms = [
            {"label": bplabel(tgt), "coeff": table[tgt].to_json()}
            for tgt in bipartitions_of(n)
            if tgt in table
        ]
    else:
        terms = []
        for tgt in bipartitions_of(n):
            val = stable_right_constant(tgt, src, r, rank)
            if not val.is_zero():
                terms.append({"label": bplabel(tgt), "coeff": val.to_json()})
    return {
        "kind": "mirabolic",
        "side": side,
        "r": r,
        "N": rank,
        "src": bplabel(src),
        "terms": terms,
    }


def green_payload(n: int, q: int) -> dict:
    return {
        "kind": "green",
        "n": n,
        "q": q,
        "labels": [lab.pretty() for lab in green_labels(n, q)],
        "freeness": green_freeness_check(n, q),
    }


def iwahori_payload(N: int, window: int, qs: tuple[int, ...], cfg: RunConfig) -> dict:
    params = {"N": N, "window": window, "qs": list(qs)}
    hit = cache.load("iwahori", params, cfg.cache_dir)
    if hit is not None:
        return hit
    products = []
    for x in universe(N, 1, window):
        for i in range(1, N + 1):
            prod = ts_action(x, i, qs)
            case = pattern_check(x, i, prod, qs)
            ordered = sorted(
                prod.items(),
                key=lambda kv: (kv[0].length(), kv[0].w.window, kv[0].beta.lo,
                                kv[0].beta.extra),
            )
            products.append(
                {
                    "source": _ilabel(x),
                    "i": i,
                    "case": case,
                    "terms": [
                        {"target": _ilabel(y), "coeff": c.to_json()}
                        for y, c in ordered
                    ],
                }
            )
    payload = {
        "kind": "iwahori",
        "N": N,
        "window": window,
        "qs": list(qs),
        "products": products,
    }
    cache.store("iwahori", params, payload, cfg.cache_dir)
    return payload


# --- verification suites ------------------------------------------------------


def _check(suite: str, name: str, fn) -> dict:
    try:
        detail = fn()
        return {"suite": suite, "name": name, "passed": True, "detail": str(detail)}
    except MiraError as exc:
        return {
            "suite": suite,
            "name": name,
            "passed": False,
            "detail": f"{type(exc).__name__}: {exc}",
        }


def _suite_census(cfg: RunConfig) -> list[dict]:
    out = []
    for n in range(1, cfg.max_n + 1):
        for q in cfg.primes:
            def run(n=n, q=q):
                sizes = orbit_census(n, q, seed=cfg.seed)
                want = len(bipartitions_of(n))
                if len(sizes) != want:
                    raise OracleMismatch(f"{len(sizes)} classes, expected {want}")
                return f"{len(sizes)} classes over {sum(sizes.values())} vectors"
            out.append(_check("census", f"n={n},q={q}", run))
    return out


def _suite_constants(cfg: RunConfig) -> list[dict]:
    out = []
    for n in range(1, min(cfg.max_n, 3) + 1):
        def run(n=n):
            tables = 0
            for r in (1, 2):
                if r > n:
                    continue
                for tgt in bipartitions_of(n):
                    verify_closed_form(tgt, r)
                    tables += 1
            return f"{tables} closed tables against counts"
        out.append(_check("constants", f"n={n}", run))
    return out


def _suite_hall(cfg: RunConfig) -> list[dict]:
    def square(rank=1):
        one_row = u_elt((1,), rank)
        prod = hall_mul(one_row, one_row)
        want = {(2,): LaurentPoly.one()}
        if rank >= 2:
            want[(1, 1)] = LaurentPoly.v_power(2) + 1
        if dict(prod.items()) != want:
            raise OracleMismatch(f"u_(1)^2 at rank {rank}: {prod!r}")
        return "square of the one-box class"

    def direct(rank=4):
        pairs_checked = 0
        for n in range(2, 5):
            for ka in range(1, n):
                for a in partitions_of(ka):
                    for b in partitions_of(n - ka):
                        x, y = u_elt(a, rank), u_elt(b, rank)
                        if hall_mul(x, y) != hall_mul_direct(x, y):
                            raise OracleMismatch(f"products disagree at {a} * {b}")
                        pairs_checked += 1
        return f"{pairs_checked} generator-route vs direct-count products"

    def multiplicative(rank=4):
        rng = random.Random(cfg.seed + 1)
        shapes = [lam for k in range(1, 3) for lam in partitions_of(k)]
        for _ in range(4):
            a, b = rng.choice(shapes), rng.choice(shapes)
            x, y = u_elt(a, rank), u_elt(b, rank)
            lhs = psi(hall_mul(x, y))
            rhs = psi(x) * psi(y)
            if lhs != rhs:
                raise OracleMismatch(f"character map not multiplicative at {a} * {b}")
        return "character map multiplicative on sampled products"

    return [
        _check("hall", "square-rank1", lambda: square(1)),
        _check("hall", "square-rank2", lambda: square(2)),
        _check("hall", "vs-direct", direct),
        _check("hall", "multiplicative", multiplicative),
    ]


def _suite_pi(cfg: RunConfig) -> list[dict]:
    out = []
    for n in range(0, cfg.max_n + 1):
        def run(n=n):
            table = pi_table(n, max(n, 1))
            for col in table.order:
                if table.raw_value(col, col) != LaurentPoly.one():
                    raise OracleMismatch(f"diagonal at {col} is not one")
                for row in table.order:
                    val = table.value(row, col)
                    if val.is_zero():
                        continue
                    if not ah_leq(row, col):
                        raise OracleMismatch(f"support at ({row}, {col}) breaks the order")
                    if row != col and any(e > -1 for e, _ in val.items()):
                        raise OracleMismatch(f"off-diagonal ({row}, {col}) too shallow")
                    if any(c <= 0 for _, c in val.items()):
                        raise OracleMismatch(f"negative entry at ({row}, {col})")
            return f"{len(table.order)} columns triangular and nonnegative"
        out.append(_check("pi", f"n={n}", run))

    def stability():
        for n in range(0, min(cfg.max_n, 3) + 1):
            rank = max(n, 1)
            lo, hi = pi_table(n, rank), pi_table(n, rank + 1)
            for col in lo.order:
                for row in lo.order:
                    if lo.value(row, col) != hi.value(row, col):
                        raise OracleMismatch(f"entry ({row}, {col}) moved with the rank")
        return "tables stable under a rank bump"

    out.append(_check("pi", "rank-stability", stability))
    return out


def _suite_classical(cfg: RunConfig) -> list[dict]:
    out = []
    for n in range(2, cfg.max_n + 1):
        def run(n=n):
            table = pi_table(n, n)
            for col in partitions_of(n):
                for row in partitions_of(n):
                    want = LaurentPoly.from_t_poly(kostka_foulkes(col, row))
                    if table.value(((), row), ((), col)) != want:
                        raise OracleMismatch(f"second-slot block at ({row}, {col})")
                    if table.value((row, ()), (col, ())) != want:
                        raise OracleMismatch(f"first-slot block at ({row}, {col})")
            return "both one-sided blocks match the classical matrix"
        out.append(_check("classical", f"n={n}", run))
    return out


def _suite_trace(cfg: RunConfig) -> list[dict]:
    out = []
    for n in range(1, min(cfg.max_n, 3) + 1):
        for q in cfg.primes:
            if n > 3 and q > 2:
                continue
            def run(n=n, q=q):
                report = fiber_oracle_check(n, q)
                return f"{len(report['cells'])} strata-step cells"
            out.append(_check("trace", f"n={n},q={q}", run))

    def golden():
        table = pi_table(2, 2)
        cell = trace_value(((1,), (1,)), ((), (1, 1)), table, 2)
        if cell.a != QPoly.q_power(1) + 1 or not cell.b.is_zero():
            raise OracleMismatch(f"marked cell reads {cell.pretty()}")
        if cell.as_integer() != 3:
            raise OracleMismatch(f"marked cell evaluates to {cell.as_integer()}")
        return "marked cell is q + 1, evaluating to 3"

    out.append(_check("trace", "golden-cell", golden))
    return out


def _suite_rho(cfg: RunConfig) -> list[dict]:
    def run():
        checked = 0
        for n in range(0, min(cfg.max_n, 2) + 1):
            for src in bipartitions_of(n):
                for r in (1, 2):
                    if not rho_check(src, r, 3):
                        raise OracleMismatch(f"mirror identity fails at {src}, r={r}")
                    checked += 1
        return f"{checked} mirror identities at rank 3"
    return [_check("rho", "mirror", run)]


def _suite_green(cfg: RunConfig) -> list[dict]:
    out = []
    for n in (1, 2):
        for q in cfg.primes:
            def run(n=n, q=q):
                report = green_freeness_check(n, q)
                return f"free of rank one through {report['dimension']} labels"
            out.append(_check("green", f"n={n},q={q}", run))
    return out


def _suite_iwahori(cfg: RunConfig) -> list[dict]:
    labs = universe(2, 1, cfg.window)

    def templates():
        hist: Counter = Counter()
        for x in labs:
            for i in (1, 2):
                prod = ts_action(x, i, cfg.primes)
                hist[pattern_check(x, i, prod, cfg.primes)] += 1
                if any(c.degree() > 1 for c in prod.values()):
                    raise OracleMismatch(f"coefficient degree above one at {x}, {i}")
                if not h_basis_check(x, i, cfg.primes):
                    raise OracleMismatch(f"normalized shape fails at {x}, {i}")
        counts = json.dumps({str(k): hist[k] for k in sorted(hist)})
        return f"cases {counts} over {len(labs)} sources"

    def quadratic():
        rng = random.Random(cfg.seed)
        for x in rng.sample(list(labs), min(30, len(labs))):
            for i in (1, 2):
                if not hecke_quadratic_check(x, i, cfg.primes):
                    raise OracleMismatch(f"quadratic relation fails at {x}, {i}")
                if not mass_check(x, i, cfg.primes):
                    raise OracleMismatch(f"fiber mass off at {x}, {i}")
        return "quadratic relation and fiber mass on a seeded sample"

    def support():
        for x in labs:
            for i in (1, 2):
                prod = ts_action(x, i, cfg.primes)
                top = max(prod, key=lambda y: y.length())
                for y in prod:
                    if not bruhat_leq(y, top):
                        raise OracleMismatch(f"support at {x}, {i} escapes below {top}")
        return "product supports sit under their top label"

    def spots():
        for args, i in ((((2, 1, 3), 0, ()), 2), (((-2, -1, 3), 0, (3,)), 3)):
            x = validate(*args)
            pattern_check(x, i, None, cfg.primes)
            if not mass_check(x, i, cfg.primes):
                raise OracleMismatch(f"fiber mass off at {x}, {i}")
        return "period-3 spot labels classified"

    return [
        _check("iwahori", "templates", templates),
        _check("iwahori", "quadratic", quadratic),
        _check("iwahori", "support", support),
        _check("iwahori", "period3", spots),
    ]


_SUITE_RUNNERS = {
    "census": _suite_census,
    "constants": _suite_constants,
    "hall": _suite_hall,
    "pi": _suite_pi,
    "classical": _suite_classical,
    "trace": _suite_trace,
    "rho": _suite_rho,
    "green": _suite_green,
    "iwahori": _suite_iwahori,
}


def verify_payload(suites: Sequence[str], cfg: RunConfig) -> dict:
    checks: list[dict] = []
    for name in suites:
        if cfg.verbosity:
            print(f"verify: running {name}", file=sys.stderr)
        checks.extend(_SUITE_RUNNERS[name](cfg))
    passed = sum(1 for c in checks if c["passed"])
    return {
        "kind": "verify",
        "suites": list(suites),
        "max_n": cfg.max_n,
        "primes": list(cfg.primes),
        "window": cfg.window,
        "seed": cfg.seed,
        "checks": checks,
        "counts": {"total": len(checks), "passed": passed},
        "passed": passed == len(checks),
    }


# --- rendering ----------------------------------------------------------------


def _poly_cell(d: Mapping[str, int], cls=LaurentPoly) -> tuple[str, str]:
    poly = cls.from_json(d)
    return poly.pretty(), f"${poly.latex()}$"


def _text_cell(text: str) -> tuple[str, str]:
    return text, rf"$\mathtt{{{text}}}$"


def _plain_cell(text) -> tuple[str, str]:
    return str(text), str(text)


def _grid(payload: dict) -> tuple[list[str], list[list[tuple[str, str]]]]:
    kind = payload["kind"]
    if kind == "pi":
        header = [""] + payload["order"]
        entries = {
            (cell["row"], cell["col"]): cell["coeff"] for cell in payload["calibrated"]
        }
        rows = []
        for row in payload["order"]:
            line = [_text_cell(row)]
            for col in payload["order"]:
                coeff = entries.get((row, col))
                line.append(_poly_cell(coeff) if coeff else _plain_cell(0))
            rows.append(line)
        return header, rows
    if kind == "trace":
        header = [""] + payload["order"]
        cells = {(c["row"], c["col"]): c for c in payload["cells"]}
        rows = []
        for row in payload["order"]:
            line = [_text_cell(row)]
            for col in payload["order"]:
                cell = cells.get((row, col))
                if cell is None:
                    line.append(_plain_cell(0))
                    continue
                a, b = QPoly.from_json(cell["plain"]), QPoly.from_json(cell["radical"])
                pretty = a.pretty() if b.is_zero() else f"{a.pretty()} + ({b.pretty()})*sqrt(q)"
                tex = a.latex() if b.is_zero() else rf"{a.latex()} + ({b.latex()})\sqrt{{q}}"
                line.append((pretty, f"${tex}$"))
            rows.append(line)
        return header, rows
    if kind == "mhl":
        header = ["label", "prefactor", "pair", "coeff"]
        rows = []
        for entry in payload["entries"]:
            for term in entry["tensor"]:
                rows.append(
                    [
                        _text_cell(entry["label"]),
                        _poly_cell(entry["prefactor"]),
                        _text_cell(term["pair"]),
                        _poly_cell(term["coeff"]),
                    ]
                )
        return header, rows
    if kind in ("hall", "mirabolic"):
        cls = LaurentPoly if kind == "hall" else QPoly
        header = ["label", "coeff"]
        rows = [
            [_text_cell(term["label"]), _poly_cell(term["coeff"], cls)]
            for term in payload["terms"]
        ]
        return header, rows
    if kind == "green":
        header = ["field", "value"]
        rows = [[_plain_cell("label"), _text_cell(lab)] for lab in payload["labels"]]
        rows.append([_plain_cell("dimension"), _plain_cell(payload["freeness"]["dimension"])])
        rows.append([_plain_cell("passed"), _plain_cell(payload["freeness"]["passed"])])
        return header, rows
    if kind == "iwahori":
        header = ["source", "i", "case", "target", "coeff"]
        rows = []
        for prod in payload["products"]:
            src = json.dumps(prod["source"], sort_keys=True)
            for term in prod["terms"]:
                rows.append(
                    [
                        _plain_cell(src),
                        _plain_cell(prod["i"]),
                        _plain_cell(prod["case"]),
                        _plain_cell(json.dumps(term["target"], sort_keys=True)),
                        _poly_cell(term["coeff"], QPoly),
                    ]
                )
        return header, rows
    if kind == "verify":
        header = ["suite", "name", "status", "detail"]
        rows = [
            [
                _plain_cell(c["suite"]),
                _plain_cell(c["name"]),
                _plain_cell("PASS" if c["passed"] else "FAIL"),
                _plain_cell(c["detail"]),
            ]
            for c in payload["checks"]
        ]
        return header, rows
    raise UsageError(f"no tabular view for payload kind {kind!r}")


def render(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=1) + "\n"
    header, rows = _grid(payload)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([cell[0] for cell in row])
        return buf.getvalue()
    if fmt == "latex":
        cols = "l" * len(header)
        lines = [
            r"\documentclass{article}",
            r"\usepackage{amsmath}",
            r"\begin{document}",
            r"\begin{center}",
            rf"\begin{{tabular}}{{{cols}}}",
            " & ".join(rf"$\mathtt{{{h}}}$" if h else "" for h in header) + r" \\",
            r"\hline",
        ]
        for row in rows:
            lines.append(" & ".join(cell[1] for cell in row) + r" \\")
        lines += [r"\end{tabular}", r"\end{center}", r"\end{document}"]
        return "\n".join(lines) + "\n"
    raise UsageError(f"format {fmt!r} not one of {FORMATS}")


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise IOFailure(f"cannot write {out}: {exc}") from exc


# --- argument parsing -----------------------------------------------------------


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--format", dest="fmt", choices=FORMATS, default=None)
    sp.add_argument("--out", default=None, help="artifact file (default stdout)")
    sp.add_argument("--cache-dir", dest="cache_dir", default=None)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("-v", "--verbose", action="count", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mirahall",
        description="Exact tables for the mirabolic Hall bimodule and its traces.",
    )
    parser.add_argument("--config", default=None, help="key=value file; flags win")
    sub = parser.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("pi", help="calibrated transition table at one size")
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--N", dest="rank", type=int, default=None)
    _add_common(sp)

    sp = sub.add_parser("mhl", help="two-sided deformed polynomials at one size")
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--N", dest="rank", type=int, default=None)
    _add_common(sp)

    sp = sub.add_parser("trace", help="trace table at one size and prime")
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--q", type=int, default=None)
    _add_common(sp)

    sp = sub.add_parser("hall", help="product of two plain classes")
    sp.add_argument("--x", required=True, help="partition, e.g. '2,1'")
    sp.add_argument("--y", required=True, help="partition, e.g. '1'")
    sp.add_argument("--N", dest="rank", type=int, default=None)
    _add_common(sp)

    sp = sub.add_parser("mirabolic", help="structure constants on one source")
    sp.add_argument("--src", required=True, help="bipartition, e.g. '|1' or '2|1'")
    sp.add_argument("--r", type=int, default=1)
    sp.add_argument("--side", choices=("left", "right"), default="left")
    sp.add_argument("--N", dest="rank", type=int, default=None)
    _add_common(sp)

    sp = sub.add_parser("green", help="class-ring labels and freeness report")
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--q", type=int, default=None)
    _add_common(sp)

    sp = sub.add_parser("iwahori", help="wall-crossing products at Iwahori level")
    isub = sp.add_subparsers(dest="icmd", required=True)
    mp = isub.add_parser("mult", help="product table with case assignments")
    mp.add_argument("--N", type=int, default=2)
    mp.add_argument("--window", type=int, default=None)
    mp.add_argument("--qs", default=None, help="comma-separated primes")
    _add_common(mp)

    sp = sub.add_parser("verify", help="run oracle suites and report")
    sp.add_argument("--suite", default="all", help="one of %s or all" % (SUITES,))
    sp.add_argument("--qs", default=None, help="comma-separated primes")
    sp.add_argument("--max-n", dest="max_n", type=int, default=None)
    _add_common(sp)

    return parser


_CONFIG_KEYS = ("n", "rank", "max_n", "window", "fmt", "cache_dir", "seed")


def _flag_values(args: argparse.Namespace) -> dict:
    out = {}
    for key in _CONFIG_KEYS:
        out[key] = getattr(args, key, None)
    qs = getattr(args, "qs", None)
    if qs is not None:
        out["primes"] = parse_primes(qs)
    verbose = getattr(args, "verbose", None)
    if verbose is not None:
        out["verbosity"] = verbose
    return out


# --- handlers -------------------------------------------------------------------


def _cmd_pi(args: argparse.Namespace, cfg: RunConfig) -> int:
    payload = pi_payload(cfg.n, cfg.resolved_rank(), cfg)
    _emit(render(payload, cfg.fmt), args.out)
    return 0


def _cmd_mhl(args: argparse.Namespace, cfg: RunConfig) -> int:
    payload = mhl_payload(cfg.n, cfg.resolved_rank(), cfg)
    _emit(render(payload, cfg.fmt), args.out)
    return 0


def _cmd_trace(args: argparse.Namespace, cfg: RunConfig) -> int:
    q = args.q if args.q is not None else cfg.primes[0]
    if q < 2:
        raise UsageError(f"prime must be at least 2, got {q}")
    payload = trace_payload(cfg.n, q, cfg)
    _emit(render(payload, cfg.fmt), args.out)
    return 0


def _cmd_hall(args: argparse.Namespace, cfg: RunConfig) -> int:
    x, y = parse_partition(args.x), parse_partition(args.y)
    rank = cfg.rank if cfg.rank else max(len(x) + len(y), 1)
    payload = hall_payload(x, y, rank)
    _emit(render(payload, cfg.fmt), args.out)
    return 0


def _cmd_mirabolic(args: argparse.Namespace, cfg: RunConfig) -> int:
    src = parse_bipartition(args.src)
    n = size(src[0]) + size(src[1]) + args.r
    rank = cfg.rank if cfg.rank else n
    payload = mirabolic_payload(src, args.r, args.side, rank)
    _emit(render(payload, cfg.fmt), args.out)
    return 0


def _cmd_green(args: argparse.Namespace, cfg: RunConfig) -> int:
    q = args.q if args.q is not None else cfg.primes[0]
    payload = green_payload(cfg.n, q)
    _emit(render(payload, cfg.fmt), args.out)
    return 0


def _cmd_iwahori(args: argparse.Namespace, cfg: RunConfig) -> int:
    if args.icmd != "mult":
        raise UsageError(f"unknown iwahori action {args.icmd!r}")
    if args.N < 2:
        raise UsageError(f"period must be at least 2, got {args.N}")
    payload = iwahori_payload(args.N, cfg.window, cfg.primes, cfg)
    _emit(render(payload, cfg.fmt), args.out)
    return 0


def _cmd_verify(args: argparse.Namespace, cfg: RunConfig) -> int:
    if args.suite == "all":
        suites: Sequence[str] = SUITES
    elif args.suite in SUITES:
        suites = (args.suite,)
    else:
        raise UsageError(f"suite {args.suite!r} not one of {SUITES} or all")
    payload = verify_payload(suites, cfg)
    _emit(render(payload, cfg.fmt), args.out)
    return 0 if payload["passed"] else 1


_HANDLERS = {
    "pi": _cmd_pi,
    "mhl": _cmd_mhl,
    "trace": _cmd_trace,
    "hall": _cmd_hall,
    "mirabolic": _cmd_mirabolic,
    "green": _cmd_green,
    "iwahori": _cmd_iwahori,
    "verify": _cmd_verify,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if not exc.code else 2
    try:
        file_values = read_config_file(args.config) if args.config else {}
        cfg = resolve(file_values, _flag_values(args))
        return _HANDLERS[args.cmd](args, cfg)
    except UsageError as exc:
        print(f"mirahall: usage error: {exc}", file=sys.stderr)
        return 2
    except MiraError as exc:
        print(f"mirahall: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
