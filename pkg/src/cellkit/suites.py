"""
Verification suites over the published small-rank data and lemmata.

Each suite returns a SuiteReport whose checks compare expected and actual
values exactly (strings, integers, sets or Laurent polynomials).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable

from . import kostant
from .errors import CacheNotFilled, OutOfRange
from .hecke import KLCache, a_function, dual_product, get_cache, install_cache
from .hecke.klcache import NORMALIZATION
from .laurent import ONE, QUANTUM_2, LaurentPoly
from .permgroup import (
    Permutation,
    all_perms,
    bruhat_leq,
    format_perm,
    from_word,
    inv,
    is_fully_commutative,
    mu_lemma_x,
    perm_from_one_line,
    sigma_ni,
    transposition,
    u_elem,
    x_ni,
    y_ni,
)
from .tlalg import fc_kostant_positive, tl_from_fc

SUITES = ("s4", "s5", "s6", "s7", "lemma-dualkl", "lemma-products", "mu-lemmas", "fc-theorem", "families")


@dataclass(frozen=True)
class Check:
    description: str
    expected: object
    actual: object

    @property
    def passed(self) -> bool:
        return self.expected == self.actual

    def to_json(self) -> dict:
        return {"description": self.description, "expected": _show(self.expected),
                "actual": _show(self.actual), "pass": self.passed}


def _show(value):
    if isinstance(value, (set, frozenset)):
        return sorted(_show(v) for v in value)
    if isinstance(value, dict):
        return {_show(k): _show(v) for k, v in sorted(value.items(), key=lambda t: str(t[0]))}
    if isinstance(value, Permutation):
        return format_perm(value)
    if isinstance(value, LaurentPoly):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_show(v) for v in value]
    return value


@dataclass
class SuiteReport:
    name: str
    checks: list[Check] = field(default_factory=list)
    wall_time: float = 0.0
    normalization: str = NORMALIZATION

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    def add(self, description: str, expected, actual):
        self.checks.append(Check(description, expected, actual))

    def to_json(self) -> dict:
        return {"suite": self.name, "pass": self.passed, "normalization": self.normalization,
                "wall_time": round(self.wall_time, 3), "checks": [c.to_json() for c in self.checks]}

    def render(self) -> str:
        lines = [f"suite {self.name} [{self.normalization}]"]
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            lines.append(f"  {mark}  {c.description}")
            if not c.passed:
                lines.append(f"        expected {_show(c.expected)}")
                lines.append(f"        actual   {_show(c.actual)}")
        lines.append(f"  {'PASS' if self.passed else 'FAIL'} ({len(self.checks)} checks, {self.wall_time:.2f}s)")
        return "\n".join(lines)


def P(text: str) -> Permutation:
    return perm_from_one_line(int(c) for c in text)


def W(word: str, n: int) -> Permutation:
    """Element given by a reduced word written as a digit string, e.g. '1232145'."""
    return from_word([int(c) for c in word], n)


# --- published data -------------------------------------------------------

DUAL_EXPANSION_S6: dict[str, LaurentPoly] = {
    **{k: ONE for k in ("32145", "1232145", "1321435", "3214543", "3454321",
                        "123214543", "123454321", "132454321")},
    **{k: QUANTUM_2 for k in ("132145", "321454", "12321454", "13214354", "13454321",
                              "32145432", "1232145432", "1324354321")},
    "13214543": QUANTUM_2 * 2,
    **{k: QUANTUM_2 ** 2 for k in ("1321454", "132143543", "132145432")},
    "1321435432": QUANTUM_2 ** 3,
}


def dual_expansion_s6() -> dict[Permutation, LaurentPoly]:
    return {W(k, 6): c for k, c in DUAL_EXPANSION_S6.items()}


# --- rank table suites ----------------------------------------------------

def _rank_suite(n: int, report: SuiteReport, jobs: int = 1, paranoid: bool = False):
    computed = kostant.cuspidal_scan(n, method="kh5", jobs=jobs, paranoid=paranoid)
    if n == 7:
        shipped = kostant.builtin_table(7)
        report.add("kh5 cuspidal involutions of S_7 match the published nine", shipped.cuspidals, computed.cuspidals)
        report.add("number of kh5 negative involutions of S_7", kostant.table_negative_count(7),
                   len(computed.negatives))
        report.add("negatives derived from the cuspidals by pattern propagation", len(shipped.negatives),
                   len(computed.negatives))
        report.add("kh5 negatives equal the derived negatives", shipped.negatives, computed.negatives)
        return
    shipped = kostant.builtin_table(n)
    report.add(f"kh5 negative involutions of S_{n}", shipped.negatives, computed.negatives)
    report.add(f"kh5 cuspidal involutions of S_{n}", shipped.cuspidals, computed.cuspidals)
    report.add(f"number of negative involutions of S_{n}", kostant.table_negative_count(n), len(computed.negatives))
    if n == 4:
        report.add("negative permutations of S_4 (left cells of the negatives)", {P("2143"), P("3142")},
                   set(kostant.negative_elements(computed)))


def suite_s4(report, **kw):
    _rank_suite(4, report, **kw)


def suite_s5(report, **kw):
    _rank_suite(5, report, **kw)


def suite_s6(report, **kw):
    _rank_suite(6, report, **kw)


def suite_s7(report, cache: KLCache | None = None, **kw):
    if cache is None:
        raise CacheNotFilled("the s7 suite needs a prebuilt S_7 cache (--cache or CELLKIT_CACHE_DIR)")
    if cache.n != 7:
        raise OutOfRange(f"the s7 suite needs an S_7 cache, got S_{cache.n}")
    install_cache(cache)
    _rank_suite(7, report, **kw)


# --- lemma suites ---------------------------------------------------------

def suite_lemma_dualkl(report, **kw):
    c = get_cache(6)
    s63, x63, y63 = sigma_ni(6, 3), x_ni(6, 3), y_ni(6, 3)
    expected = dual_expansion_s6()
    via_standard = c.express_in_dual_kl(c.dual_kl_element(s63) * c.kl_element(x63))
    report.add("dual(sigma_63) KL(x_63) in the dual KL basis (standard-basis product)", expected, via_standard)
    report.add("dual(sigma_63) KL(x_63) via the dual-coordinate recursion", expected, dual_product(s63, x63, c))
    report.add("dual(sigma_63) KL(y_63) via the dual-coordinate recursion", expected, dual_product(s63, y63, c))
    report.add("number of terms in the expansion", len(DUAL_EXPANSION_S6), len(via_standard))
    report.add("coefficient on dual(1321435432)", QUANTUM_2 ** 3, via_standard.get(W("1321435432", 6)))
    dual_ok = all(c.dual_kl_element(w) == c.dual_kl_element(w, method="longest") for w in all_perms(6)[::7])
    report.add("triangular and closed-form dual elements agree (every 7th element of S_6)", True, dual_ok)


def suite_lemma_products(report, **kw):
    c = get_cache(6)
    x63, y63, s63 = x_ni(6, 3), y_ni(6, 3), sigma_ni(6, 3)
    q3 = QUANTUM_2 ** 3
    report.add("KL(x_63) KL(y_63^-1) in the KL basis", {W("1232435", 6): q3},
               c.express_in_kl(c.kl_element(x63) * c.kl_element(y63.inverse())))
    report.add("KL(x_63) KL(x_63^-1) in the KL basis",
               {W("12321", 6): q3, W("12324321", 6): QUANTUM_2 ** 2},
               c.express_in_kl(c.kl_element(x63) * c.kl_element(x63.inverse())))
    report.add("dual(sigma_63) KL(12324321) vanishes", True,
               (c.dual_kl_element(s63) * c.kl_element(W("12324321", 6))).is_zero())
    report.add("the same vanishing via the left order", False,
               c.left_leq(W("12324321", 6).inverse(), s63))


def suite_mu_lemmas(report, **kw):
    for n in (4, 5, 6):
        c = get_cache(n)
        top, below = transposition(1, n, n), transposition(2, n, n)
        nonzero = [a for a in all_perms(n) if bruhat_leq(a, below) and c.mu(a, top) != 0]
        report.add(f"mu(a, (1,{n})) for all a <= (2,{n})", [], nonzero)
        poly = [math.comb(n - 3, k) for k in range(n - 2)]
        report.add(f"classical P_(s1 s{n - 1}, (1,{n})) = (1+q)^{n - 3}", poly,
                   c.classical(from_word([1, n - 1], n), top))
    c7 = get_cache(7)
    report.add(f"mu(x, u_7) with x = {format_perm(mu_lemma_x(7))}", 1, c7.mu(mu_lemma_x(7), u_elem(7)))


def suite_fc_theorem(report, **kw):
    for n in range(1, 9):
        fc = [w for w in all_perms(n) if is_fully_commutative(w)]
        report.add(f"fully commutative elements of S_{n} (Catalan)", math.comb(2 * n, n) // (n + 1), len(fc))
        report.add(f"distinct diagrams of FC elements of S_{n}", len(fc), len({tl_from_fc(w) for w in fc}))
    mismatches = []
    for n in range(1, 11):
        for w in kostant.fc_involutions(n):
            try:
                fc_kostant_positive(w)
            except Exception as exc:
                mismatches.append(f"{format_perm(w)}: {exc}")
    report.add("cup criterion agrees with the special-involution factorization, n <= 10", [], mismatches)
    for n in range(2, 15):
        r = kostant.verify_family("tau", [n])
        report.add(f"FC cuspidal involutions of S_{n}", r.checks[0].expected, r.checks[0].actual)


def suite_families(report, **kw):
    for name, ns in (("inv2", (5, 6, 7)), ("u", (7,)), ("sigma", (6, 7))):
        for chk in kostant.verify_family(name, ns).checks:
            report.add(f"{chk.member} (n={chk.n})", chk.expected, chk.actual)
    for m in range(4, 8):
        w = inv(1, m - 1, m)
        report.add(f"inv(1,{m - 1}) = {format_perm(w)} in S_{m} (kh5)", "positive",
                   kostant.classify(w, "kh5").status.value)
    for n in (3, 4, 5, 6):
        for i in range(1, n - 1):
            report.add(f"a(s{i} s{i + 1}) in S_{n}", 1, a_function(from_word([i, i + 1], n)))
    report.add("a(x_63)", 3, a_function(x_ni(6, 3)))
    report.add("a(y_63)", 3, a_function(y_ni(6, 3)))


_SUITES: dict[str, Callable] = {
    "s4": suite_s4,
    "s5": suite_s5,
    "s6": suite_s6,
    "s7": suite_s7,
    "lemma-dualkl": suite_lemma_dualkl,
    "lemma-products": suite_lemma_products,
    "mu-lemmas": suite_mu_lemmas,
    "fc-theorem": suite_fc_theorem,
    "families": suite_families,
}


def run_suite(name: str, cache: KLCache | None = None, jobs: int = 1, paranoid: bool = False) -> SuiteReport:
    if name not in _SUITES:
        raise OutOfRange(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    report = SuiteReport(name)
    start = time.perf_counter()
    kw = {}
    if name in ("s4", "s5", "s6", "s7"):
        kw = {"jobs": jobs, "paranoid": paranoid}
    if name == "s7":
        kw["cache"] = cache
    elif cache is not None:
        install_cache(cache)
    _SUITES[name](report, **kw)
    report.wall_time = time.perf_counter() - start
    return report
