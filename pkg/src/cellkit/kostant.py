"""
Kostant classifier, cuspidality test, rank scans and family verification.

Verdicts are computed on the Duflo involution of the left cell, since the
answer is constant on left cells. Routes, in order of precedence:

- ``table``: the shipped classification for n <= 7 (S_7 negatives are
  derived from the shipped cuspidals by pattern propagation);
- ``fc``: the cup criterion for fully commutative involutions;
- ``pattern``: a consecutive window that is known to be negative makes the
  whole permutation negative;
- ``kh5`` / ``kh4``: the Kh witness search (conjectural proxy).
"""

from __future__ import annotations

import enum
import hashlib
import json
import logging
import multiprocessing
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Iterable, Sequence

from .errors import BudgetExceeded, ChecksumMismatch, OutOfRange, RouteDisagreement
from .hecke import KhMode, get_cache, kh_witness
from .permgroup import (
    Permutation,
    all_perms,
    flatten,
    format_perm,
    inv,
    involutions,
    is_fully_commutative,
    parse_perm,
    perm_from_one_line,
    sigma_ni,
    tau,
    u_elem,
)
from .tableaux import duflo_of_left_cell, rs, rs_inverse, standard_tableaux, tableaux_with_at_most_two_rows
from .tlalg import fc_kostant_positive

log = logging.getLogger(__name__)

DEFAULT_KH_MAX_RANK = 7
TABLE_MAX_RANK = 7


class Status(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    UNKNOWN = "unknown"


class Method(enum.Enum):
    TABLE = "table"
    FC = "fc"
    PATTERN = "pattern"
    KH5 = "kh5"
    KH4 = "kh4"
    NONE = "none"


_KH_MODES = {Method.KH5: KhMode.AT_V, Method.KH4: KhMode.AT_ONE}


@dataclass(frozen=True)
class Verdict:
    input: Permutation
    duflo: Permutation
    status: Status
    method: Method
    witness: dict | None = None

    @property
    def conjectural(self) -> bool:
        return self.method in _KH_MODES

    @property
    def negative(self) -> bool:
        return self.status is Status.NEGATIVE

    @property
    def positive(self) -> bool:
        return self.status is Status.POSITIVE

    def to_json(self) -> dict:
        return {
            "input": format_perm(self.input),
            "duflo": format_perm(self.duflo),
            "status": self.status.value,
            "method": self.method.value,
            "witness": self.witness,
            "conjectural": self.conjectural,
        }


class TableSource(enum.Enum):
    BUILT_IN = "built-in"
    DERIVED = "derived"
    COMPUTED = "computed"


@dataclass(frozen=True)
class RankTable:
    n: int
    negatives: frozenset[Permutation]
    cuspidals: frozenset[Permutation]
    source: TableSource

    def __post_init__(self):
        if not self.cuspidals <= self.negatives:
            raise OutOfRange("cuspidal involutions must be negative")
        for w in self.negatives:
            if w.n != self.n or not w.is_involution():
                raise OutOfRange(f"{w} is not an involution of S_{self.n}")

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "source": self.source.value,
            "negatives": sorted(format_perm(w) for w in self.negatives),
            "cuspidals": sorted(format_perm(w) for w in self.cuspidals),
        }


# --- shipped tables -------------------------------------------------------

@lru_cache(maxsize=None)
def _raw_tables() -> dict:
    root = resources.files("cellkit") / "data"
    text = (root / "tables.json").read_text()
    expected = (root / "tables.json.sha256").read_text().split()[0]
    if hashlib.sha256(text.encode()).hexdigest() != expected:
        raise ChecksumMismatch("tables.json does not match tables.json.sha256")
    return json.loads(text)


def table_negative_count(n: int) -> int | None:
    entry = _raw_tables()["tables"].get(str(n))
    if entry is None:
        return 0 if n <= 3 else None
    return entry.get("negative_count", len(entry["negatives"] or ()))


def _window_negative_by_tables(p: Permutation) -> bool:
    if p.n <= 3:
        return False
    return duflo_of_left_cell(p) in builtin_table(p.n).negatives


@lru_cache(maxsize=None)
def builtin_table(n: int) -> RankTable:
    """Shipped table for n <= 7; S_n for n <= 3 has no negative elements."""
    if n <= 3:
        return RankTable(n, frozenset(), frozenset(), TableSource.BUILT_IN)
    if n > TABLE_MAX_RANK:
        raise BudgetExceeded(f"no shipped table for S_{n}")
    entry = _raw_tables()["tables"][str(n)]
    cusp = frozenset(perm_from_one_line(int(c) for c in s) for s in entry["cuspidals"])
    if entry["negatives"] is not None:
        neg = frozenset(perm_from_one_line(int(c) for c in s) for s in entry["negatives"])
        return RankTable(n, neg, cusp, TableSource.BUILT_IN)
    # non-cuspidal negatives are exactly those with a negative proper window
    neg = set(cusp)
    for w in involutions(n):
        if any(_window_negative_by_tables(p) for p, _ in _windows(w, proper=True)):
            neg.add(w)
    return RankTable(n, frozenset(neg), cusp, TableSource.DERIVED)


# --- patterns -------------------------------------------------------------

def _windows(w: Permutation, proper: bool = True, min_len: int = 1):
    """All consecutive windows (flattened, 1-based start), shorter first."""
    n = w.n
    top = n - 1 if proper else n
    for k in range(min_len, top + 1):
        for start in range(1, n - k + 2):
            yield flatten(w.images[start - 1:start - 1 + k]), start


@lru_cache(maxsize=None)
def family_members(n: int) -> frozenset[Permutation]:
    """Cuspidal family members of S_n (theorem-backed negatives)."""
    out = set()
    if n >= 4 and n % 2 == 0:
        out.update(tau(n // 2, a) for a in range(1, n // 2))
    if n >= 5:
        out.add(inv(2, n - 1, n))
    if n >= 7:
        out.add(u_elem(n))
    if n >= 6:
        out.update(sigma_ni(n, i) for i in range(3, n - 2))
    return frozenset(out)


def _known_negative_default(p: Permutation) -> bool:
    if p.n <= TABLE_MAX_RANK:
        return _window_negative_by_tables(p)
    return duflo_of_left_cell(p) in family_members(p.n)


def propagation_check(x: Permutation, known_negatives: Iterable[Permutation] | None = None
                      ) -> tuple[Permutation, int] | None:
    """
    First proper consecutive window of x that is a known negative, shorter first.

    A window matches when it, or the Duflo involution of its left cell, lies
    in ``known_negatives``. Without a base set the shipped tables (ranks up
    to 7) and the cuspidal families are used.
    """
    if known_negatives is None:
        test = _known_negative_default
    else:
        base = frozenset(known_negatives)

        def test(p):
            return p in base or duflo_of_left_cell(p) in base
    for p, start in _windows(x, proper=True, min_len=2):
        if test(p):
            return p, start
    return None


# --- classification -------------------------------------------------------

def _route(d: Permutation, method: Method, kh_max_rank: int) -> tuple[Status, dict | None] | None:
    n = d.n
    if method is Method.TABLE:
        if n > TABLE_MAX_RANK:
            return None
        return (Status.NEGATIVE if d in builtin_table(n).negatives else Status.POSITIVE), None
    if method is Method.FC:
        if not is_fully_commutative(d):
            return None
        return (Status.POSITIVE if fc_kostant_positive(d) else Status.NEGATIVE), None
    if method is Method.PATTERN:
        hit = propagation_check(d)
        if hit is None:
            return None
        return Status.NEGATIVE, {"pattern": format_perm(hit[0]), "start": hit[1]}
    if method in _KH_MODES:
        if n > kh_max_rank:
            return None
        pair = kh_witness(d, get_cache(n), _KH_MODES[method])
        if pair is None:
            return Status.POSITIVE, None
        return Status.NEGATIVE, {"x": format_perm(pair[0]), "y": format_perm(pair[1])}
    raise ValueError(f"unsupported method {method}")


_AUTO_ORDER = (Method.TABLE, Method.FC, Method.PATTERN, Method.KH5)


@lru_cache(maxsize=None)
def _classify_duflo(d: Permutation, method: Method | None, kh_max_rank: int,
                    crosscheck: bool) -> tuple[Status, Method, dict | None]:
    if method is not None:
        got = _route(d, method, kh_max_rank)
        if got is None:
            return Status.UNKNOWN, Method.NONE, None
        return got[0], method, got[1]
    first = None
    for m in _AUTO_ORDER:
        if m in _KH_MODES and first is not None and not crosscheck:
            break
        got = _route(d, m, kh_max_rank)
        if got is None:
            continue
        if first is None:
            first = (got[0], m, got[1])
            continue
        if got[0] is not first[0]:
            raise RouteDisagreement(
                f"{format_perm(d)}: {first[1].value} says {first[0].value}, {m.value} says {got[0].value}")
    if first is None:
        return Status.UNKNOWN, Method.NONE, None
    return first


def classify(w: Permutation, method: str | Method = "auto", kh_max_rank: int = DEFAULT_KH_MAX_RANK,
             crosscheck: bool = False) -> Verdict:
    """
    Kostant verdict for w, computed on its Duflo involution.

    ``method="auto"`` walks table, fc, pattern and kh5 and returns the first
    answer. The cheap theorem-backed routes are always compared with each
    other; ``crosscheck=True`` also runs kh5 and compares. Any disagreement
    raises RouteDisagreement.
    """
    if isinstance(method, str):
        method = None if method == "auto" else Method(method)
    d = duflo_of_left_cell(w)
    status, used, witness = _classify_duflo(d, method, kh_max_rank, crosscheck)
    return Verdict(w, d, status, used, witness)


class Cuspidality(enum.Enum):
    CUSPIDAL = "cuspidal"
    NOT_CUSPIDAL = "not-cuspidal"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class CuspidalityResult:
    w: Permutation
    status: Cuspidality
    reason: str
    verdict: Verdict
    windows: tuple[Verdict, ...] = ()

    @property
    def cuspidal(self) -> bool:
        return self.status is Cuspidality.CUSPIDAL

    def to_json(self) -> dict:
        return {
            "input": format_perm(self.w),
            "status": self.status.value,
            "reason": self.reason,
            "verdict": self.verdict.to_json(),
            "windows": [v.to_json() for v in self.windows],
        }


def _maximal_windows(w: Permutation) -> list[tuple[Permutation, int]]:
    if w.n < 2:
        return []
    return [(flatten(w.images[1:]), 2), (flatten(w.images[:-1]), 1)]


def _judge(w: Permutation, verdict: Verdict, windows: Sequence[tuple[Verdict, int]]) -> CuspidalityResult:
    vs = tuple(v for v, _ in windows)
    if verdict.status is Status.UNKNOWN:
        return CuspidalityResult(w, Cuspidality.UNKNOWN, "verdict unknown", verdict, vs)
    if verdict.positive:
        return CuspidalityResult(w, Cuspidality.NOT_CUSPIDAL, "positive", verdict, vs)
    for v, start in windows:
        if v.negative:
            return CuspidalityResult(w, Cuspidality.NOT_CUSPIDAL,
                                     f"negative window {format_perm(v.input)} at {start}", verdict, vs)
    if any(v.status is Status.UNKNOWN for v in vs):
        return CuspidalityResult(w, Cuspidality.UNKNOWN, "a window is unknown", verdict, vs)
    return CuspidalityResult(w, Cuspidality.CUSPIDAL, "negative with positive windows", verdict, vs)


def is_cuspidal(w: Permutation, method: str | Method = "auto", kh_max_rank: int = DEFAULT_KH_MAX_RANK,
                paranoid: bool = False) -> CuspidalityResult:
    """
    Cuspidal iff negative while both windows of length n-1 are positive.

    Negativity of a shorter window would propagate to a window of length
    n-1, so two windows suffice; ``paranoid=True`` checks every proper
    window as well and raises RouteDisagreement if the answers differ.
    """
    verdict = classify(w, method, kh_max_rank)
    windows = [(classify(p, method, kh_max_rank), s) for p, s in _maximal_windows(w)]
    result = _judge(w, verdict, windows)
    if paranoid:
        every = [(classify(p, method, kh_max_rank), s) for p, s in _windows(w, proper=True)]
        full = _judge(w, verdict, every)
        if full.status is not result.status:
            raise RouteDisagreement(
                f"{format_perm(w)}: maximal windows give {result.status.value}, all windows {full.status.value}")
    return result


def _needs_kh(method: str | Method) -> bool:
    return str(getattr(method, "value", method)) in ("kh5", "kh4")


def _scan_one(args) -> tuple[str, str, str]:
    w, method, kh_max_rank, paranoid = args
    r = is_cuspidal(w, method, kh_max_rank, paranoid)
    return format_perm(w), r.verdict.status.value, r.status.value


def cuspidal_scan(n: int, method: str | Method = "kh5", involutions_only: bool = True,
                  kh_max_rank: int = DEFAULT_KH_MAX_RANK, jobs: int = 1,
                  paranoid: bool = False) -> RankTable:
    """
    Classify every involution of S_n and collect negatives and cuspidals.

    The default method kh5 computes the table independently of the shipped
    data. With ``involutions_only=False`` all of S_n is classified as well
    and every element must agree with its Duflo involution.
    """
    if _needs_kh(method) and n > kh_max_rank:
        raise BudgetExceeded(f"Kh scan of S_{n} exceeds the rank budget {kh_max_rank}")
    if _needs_kh(method) or (method == "auto" and n <= kh_max_rank):
        for k in range(1, n + 1):
            get_cache(k)
    tasks = [(w, method, kh_max_rank, paranoid) for w in involutions(n)]
    if jobs > 1:
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(jobs) as pool:
            results = pool.map(_scan_one, tasks, chunksize=4)
    else:
        results = [_scan_one(t) for t in tasks]
    neg, cusp = set(), set()
    for text, status, cstatus in sorted(results):
        w = parse_perm(text)
        if status == Status.UNKNOWN.value or cstatus == Cuspidality.UNKNOWN.value:
            raise BudgetExceeded(f"{text} could not be decided with method {method}")
        if status == Status.NEGATIVE.value:
            neg.add(w)
        if cstatus == Cuspidality.CUSPIDAL.value:
            cusp.add(w)
    if not involutions_only:
        for w in all_perms(n):
            d = duflo_of_left_cell(w)
            if classify(w, method, kh_max_rank).negative != (d in neg):
                raise RouteDisagreement(f"{w} and its Duflo involution {d} disagree")
    log.info("S_%d scan with %s: %d negative, %d cuspidal", n, method, len(neg), len(cusp))
    return RankTable(n, frozenset(neg), frozenset(cusp), TableSource.COMPUTED)


def negative_elements(table: RankTable) -> frozenset[Permutation]:
    """All permutations whose left cell contains a negative involution."""
    out = set()
    for d in table.negatives:
        _, Q = rs(d)
        for P in standard_tableaux(Q.shape):
            out.add(rs_inverse(P, Q))
    return frozenset(out)


# --- families -------------------------------------------------------------

@dataclass(frozen=True)
class FamilyCheck:
    member: str
    n: int
    expected: str
    actual: str

    @property
    def passed(self) -> bool:
        return self.expected == self.actual

    def to_json(self) -> dict:
        return {"member": self.member, "n": self.n, "expected": self.expected,
                "actual": self.actual, "pass": self.passed}


@dataclass
class FamilyReport:
    name: str
    checks: list[FamilyCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {"family": self.name, "pass": self.passed, "checks": [c.to_json() for c in self.checks]}


def fc_involutions(n: int) -> list[Permutation]:
    """Fully commutative involutions: RS-inverse of (T, T) over tableaux with at most two rows."""
    return sorted(rs_inverse(t, t) for t in tableaux_with_at_most_two_rows(n))


def fc_cuspidal_involutions(n: int) -> list[Permutation]:
    """Cuspidal FC involutions of S_n, decided with the FC criterion only."""
    out = []
    for w in fc_involutions(n):
        if fc_kostant_positive(w):
            continue
        if all(fc_kostant_positive(p) for p, _ in _maximal_windows(w)):
            out.append(w)
    return out


FAMILIES = ("tau", "inv2", "u", "sigma")


def family_instances(name: str, n: int) -> list[tuple[str, Permutation]]:
    if name == "inv2":
        return [(f"inv(2,{n - 1})", inv(2, n - 1, n))] if n >= 5 else []
    if name == "u":
        return [(f"u_{n}", u_elem(n))] if n >= 7 else []
    if name == "sigma":
        return [(f"sigma_({n},{i})", sigma_ni(n, i)) for i in range(3, n - 2)] if n >= 6 else []
    if name == "tau":
        return [(f"tau_({n // 2},{a})", tau(n // 2, a)) for a in range(1, n // 2)] if n % 2 == 0 and n >= 4 else []
    raise OutOfRange(f"unknown family {name!r}")


def verify_family(name: str, ns: Iterable[int], method: str | Method = "kh5",
                  kh_max_rank: int = DEFAULT_KH_MAX_RANK) -> FamilyReport:
    """
    Check each family member in the given ranks for cuspidality.

    For ``tau`` the whole set of FC cuspidal involutions of S_n is computed
    with the FC criterion and compared with the tau elements (empty for odd n).
    """
    report = FamilyReport(name)
    for n in ns:
        if name == "tau":
            expected = sorted(format_perm(w) for _, w in family_instances("tau", n))
            actual = sorted(format_perm(w) for w in fc_cuspidal_involutions(n))
            report.checks.append(FamilyCheck(f"FC cuspidal involutions of S_{n}", n,
                                             " ".join(expected) or "none", " ".join(actual) or "none"))
            continue
        if _needs_kh(method) and n > kh_max_rank:
            raise BudgetExceeded(f"family {name} at n={n} exceeds the rank budget {kh_max_rank}")
        for label, w in family_instances(name, n):
            r = is_cuspidal(w, method, kh_max_rank)
            report.checks.append(FamilyCheck(f"{label} = {format_perm(w)}", n,
                                             Cuspidality.CUSPIDAL.value, r.status.value))
    return report
