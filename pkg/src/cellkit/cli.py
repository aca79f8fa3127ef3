"""Command line interface: ``cellkit <command> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__, kostant
from .cachefile import ENV_DIR, cache_build, cache_info, cache_load, default_path
from .errors import (
    BudgetExceeded,
    CacheNotFilled,
    CellkitError,
    ChecksumMismatch,
    VersionMismatch,
)
from .hecke import get_cache, install_cache
from .hecke.klcache import NORMALIZATION
from .permgroup import format_perm, parse_perm
from .suites import SUITES, run_suite
from .tableaux import Side, StandardTableau, rs, rs_inverse
from .tlalg import tl_from_fc

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

log = logging.getLogger("cellkit")


class UsageError(Exception):
    pass


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, indent=None if args.compact else 2))
    else:
        print(text)


def _perm(text: str, n: int | None = None):
    try:
        return parse_perm(text, n)
    except CellkitError as exc:
        raise UsageError(str(exc)) from None


def _tableau(text: str) -> StandardTableau:
    """Rows separated by '/', entries by ',' (or single digits): '13/24' or '1,3/2,4'."""
    try:
        if text.lstrip().startswith("{"):
            return StandardTableau.from_json(json.loads(text))
        rows = []
        for chunk in text.split("/"):
            chunk = chunk.strip()
            rows.append(tuple(int(a) for a in chunk.split(",")) if "," in chunk else tuple(int(c) for c in chunk))
        return StandardTableau(tuple(rows))
    except (ValueError, CellkitError) as exc:
        raise UsageError(f"cannot parse tableau {text!r}: {exc}") from None


def _maybe_load_cache(args, n: int | None):
    path = args.cache
    if path is None and n is not None:
        guess = default_path(n)
        if guess is not None and guess.exists():
            path = guess
    if path is not None:
        cache = cache_load(path)
        install_cache(cache)
        return cache
    return None


# --- commands -------------------------------------------------------------

def cmd_classify(args) -> int:
    w = _perm(args.perm, args.n)
    _maybe_load_cache(args, w.n)
    v = kostant.classify(w, args.method, kh_max_rank=args.kh_max_rank, crosscheck=args.crosscheck)
    text = f"{format_perm(w)}: {v.status.value} (method {v.method.value}, Duflo {format_perm(v.duflo)})"
    if v.witness:
        text += " witness " + json.dumps(v.witness)
    if v.conjectural:
        text += " [conjectural]"
    _emit(args, v.to_json(), text)
    return EXIT_OK


def cmd_cuspidal_scan(args) -> int:
    if args.n is None:
        raise UsageError("cuspidal-scan needs --n")
    _maybe_load_cache(args, args.n)
    table = kostant.cuspidal_scan(args.n, method=args.method, involutions_only=not args.all,
                                  kh_max_rank=args.kh_max_rank, jobs=args.jobs, paranoid=args.paranoid)
    payload = table.to_json()
    payload["method"] = args.method
    text = (f"S_{args.n}: {len(table.negatives)} negative involutions, {len(table.cuspidals)} cuspidal\n"
            f"negatives: {' '.join(payload['negatives'])}\ncuspidals: {' '.join(payload['cuspidals'])}")
    _emit(args, payload, text)
    return EXIT_OK


def cmd_verify_family(args) -> int:
    lo = args.min_n if args.min_n is not None else {"tau": 2, "inv2": 5, "u": 7, "sigma": 6}[args.family]
    hi = args.max_n if args.max_n is not None else (14 if args.family == "tau" else 7)
    report = kostant.verify_family(args.family, range(lo, hi + 1), method=args.method,
                                   kh_max_rank=args.kh_max_rank)
    lines = [f"{'PASS' if c.passed else 'FAIL'}  {c.member}: expected {c.expected}, got {c.actual}"
             for c in report.checks]
    lines.append(f"family {args.family}: {'PASS' if report.passed else 'FAIL'}")
    _emit(args, report.to_json(), "\n".join(lines))
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_verify_paper(args) -> int:
    names = list(SUITES) if args.suite == ["all"] else args.suite
    reports = []
    for name in names:
        cache = None
        if name == "s7":
            cache = _maybe_load_cache(args, 7)
            if cache is None:
                raise CacheNotFilled(f"suite s7 needs --cache or an s7.klc file under ${ENV_DIR}")
        elif args.cache:
            cache = _maybe_load_cache(args, None)
        reports.append(run_suite(name, cache=cache, jobs=args.jobs, paranoid=args.paranoid))
    ok = all(r.passed for r in reports)
    payload = {"normalization": NORMALIZATION, "pass": ok, "suites": [r.to_json() for r in reports]}
    _emit(args, payload, "\n".join(r.render() for r in reports))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_klpoly(args) -> int:
    x, w = _perm(args.x, args.n), _perm(args.w, args.n)
    if x.n != w.n:
        raise UsageError("x and w must have the same rank")
    cache = _maybe_load_cache(args, x.n) or get_cache(x.n)
    p = cache.kl_polynomial(x, w)
    payload = {"x": format_perm(x), "w": format_perm(w), "normalization": NORMALIZATION,
               "p": p.to_pairs()}
    text = f"p_(w,x) = {p}"
    if args.classical:
        coeffs = cache.classical(x, w)
        payload["classical"] = coeffs
        text += "\nP_(x,w)(q) = " + _q_poly(coeffs)
    _emit(args, payload, text)
    return EXIT_OK


def _q_poly(coeffs: list[int]) -> str:
    terms = []
    for k, a in enumerate(coeffs):
        if not a:
            continue
        mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
        terms.append(str(a) if not mono else (mono if a == 1 else f"{a}{mono}"))
    return " + ".join(terms) or "0"


def cmd_mu(args) -> int:
    x, w = _perm(args.x, args.n), _perm(args.w, args.n)
    if x.n != w.n:
        raise UsageError("x and w must have the same rank")
    cache = _maybe_load_cache(args, x.n) or get_cache(x.n)
    m = cache.mu(x, w)
    _emit(args, {"x": format_perm(x), "w": format_perm(w), "mu": m}, str(m))
    return EXIT_OK


def cmd_cells(args) -> int:
    if args.n is None:
        raise UsageError("cells needs --n")
    side = Side(args.side)
    cache = _maybe_load_cache(args, args.n) or get_cache(args.n)
    if side is Side.LEFT:
        cells = cache.left_cells()
    elif side is Side.RIGHT:
        cells = cache.right_cells()
    else:
        cells = cache.two_sided_cells()
    rows = [[format_perm(w) for w in cell] for cell in cells]
    _emit(args, {"n": args.n, "side": side.value, "cells": rows},
          "\n".join(" ".join(r) for r in rows))
    return EXIT_OK


def cmd_rs(args) -> int:
    w = _perm(args.perm, args.n)
    P, Q = rs(w)
    _emit(args, {"input": format_perm(w), "P": P.to_json(), "Q": Q.to_json(), "shape": list(P.shape.parts)},
          f"P:\n{P.render()}\nQ:\n{Q.render()}")
    return EXIT_OK


def cmd_rs_inverse(args) -> int:
    P, Q = _tableau(args.P), _tableau(args.Q)
    w = rs_inverse(P, Q)
    _emit(args, {"P": P.to_json(), "Q": Q.to_json(), "perm": format_perm(w)}, format_perm(w))
    return EXIT_OK


def cmd_tl(args) -> int:
    w = _perm(args.perm, args.n)
    d = tl_from_fc(w)
    _emit(args, d.to_json(), d.render() + "\n" + json.dumps(d.to_json()))
    return EXIT_OK


def cmd_cache_build(args) -> int:
    if args.n is None:
        raise UsageError("cache build needs --n")
    out = args.out or default_path(args.n)
    if out is None:
        raise UsageError(f"cache build needs --out or ${ENV_DIR}")
    Path(out).parent.mkdir(parents=True, exist_ok=True)
    cf = cache_build(args.n, out, resume=args.resume, max_rank=args.max_rank)
    _emit(args, cf.to_json(), f"wrote {cf.entries} entries for S_{cf.n} to {cf.path}")
    return EXIT_OK


def cmd_cache_info(args) -> int:
    path = args.path or args.cache or (default_path(args.n) if args.n else None)
    if path is None:
        raise UsageError("cache info needs a path")
    cf = cache_info(path)
    _emit(args, cf.to_json(), f"{cf.path}: S_{cf.n}, {cf.entries} entries, header {json.dumps(cf.header)}")
    return EXIT_OK


# --- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="rank (needed for word input and rank-wide commands)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--compact", action="store_true", help="single-line JSON")
    common.add_argument("--cache", help=f"KL cache file (default: ${ENV_DIR}/s<n>.klc if present)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for scans")
    common.add_argument("--paranoid", action="store_true", help="check every window, not only the maximal ones")
    common.add_argument("--kh-max-rank", type=int, default=kostant.DEFAULT_KH_MAX_RANK,
                        help="largest rank for the Kh oracles")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="cellkit", description=__doc__)
    parser.add_argument("--version", action="version", version=f"cellkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="Kostant verdict for a permutation")
    p.add_argument("perm")
    p.add_argument("--method", default="auto", choices=["auto", "table", "fc", "pattern", "kh5", "kh4"])
    p.add_argument("--crosscheck", action="store_true", help="also run kh5 and compare")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("cuspidal-scan", parents=[common], help="classify all involutions of S_n")
    p.add_argument("--method", default="kh5", choices=["auto", "kh5", "kh4", "table"])
    p.add_argument("--all", action="store_true", help="also check every element against its Duflo involution")
    p.set_defaults(func=cmd_cuspidal_scan)

    p = sub.add_parser("verify-family", parents=[common], help="check a cuspidal family")
    p.add_argument("family", choices=list(kostant.FAMILIES))
    p.add_argument("--min-n", type=int)
    p.add_argument("--max-n", type=int)
    p.add_argument("--method", default="kh5", choices=["auto", "kh5", "kh4"])
    p.set_defaults(func=cmd_verify_family)

    p = sub.add_parser("verify-paper", parents=[common], help="run verification suites")
    p.add_argument("suite", nargs="+", choices=[*SUITES, "all"])
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("klpoly", parents=[common], help="KL polynomial p_(w,x)")
    p.add_argument("x")
    p.add_argument("w")
    p.add_argument("--classical", action="store_true", help="also print P_(x,w)(q)")
    p.set_defaults(func=cmd_klpoly)

    p = sub.add_parser("mu", parents=[common], help="KL mu(x, w)")
    p.add_argument("x")
    p.add_argument("w")
    p.set_defaults(func=cmd_mu)

    p = sub.add_parser("cells", parents=[common], help="KL cells from the mu-graph")
    p.add_argument("--side", default="left", choices=[s.value for s in Side])
    p.set_defaults(func=cmd_cells)

    p = sub.add_parser("rs", parents=[common], help="Robinson-Schensted tableaux")
    p.add_argument("perm")
    p.set_defaults(func=cmd_rs)

    p = sub.add_parser("rs-inverse", parents=[common], help="permutation from tableaux, e.g. 14/2/3 14/2/3")
    p.add_argument("P")
    p.add_argument("Q")
    p.set_defaults(func=cmd_rs_inverse)

    p = sub.add_parser("tl", parents=[common], help="Temperley-Lieb diagram of an FC permutation")
    p.add_argument("perm")
    p.set_defaults(func=cmd_tl)

    p = sub.add_parser("cache", parents=[common], help="KL cache files")
    csub = p.add_subparsers(dest="cache_command", required=True)
    b = csub.add_parser("build", parents=[common], help="fill and write the KL table for S_n")
    b.add_argument("--out")
    b.add_argument("--resume", action="store_true")
    b.add_argument("--max-rank", type=int, default=8)
    b.set_defaults(func=cmd_cache_build)
    i = csub.add_parser("info", parents=[common], help="show a cache header")
    i.add_argument("path", nargs="?")
    i.set_defaults(func=cmd_cache_info)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    log.info("normalization %s", NORMALIZATION)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"cellkit: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetExceeded, CacheNotFilled, VersionMismatch, ChecksumMismatch, FileNotFoundError) as exc:
        print(f"cellkit: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except CellkitError as exc:
        print(f"cellkit: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
