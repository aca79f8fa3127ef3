"""Acceptance criteria. Every comparison is exact; each test reports one PASS/FAIL line."""

import json
import math
import os
import subprocess
import sys
import time

import networkx as nx
import pytest

from cellkit.hecke import a_function, get_cache
from cellkit.kostant import (
    Cuspidality,
    RankTable,
    Status,
    TableSource,
    classify,
    fc_cuspidal_involutions,
    fc_involutions,
    is_cuspidal,
    negative_elements,
)
from cellkit.laurent import ONE, QUANTUM_2
from cellkit.permgroup import (
    all_perms,
    bruhat_leq,
    format_perm,
    from_word,
    inv,
    is_fully_commutative,
    mu_lemma_x,
    parse_perm,
    sigma_ni,
    tau,
    transposition,
    u_elem,
    x_ni,
    y_ni,
)
from cellkit.tableaux import partitions, rs, standard_tableaux
from cellkit.tlalg import fc_kostant_positive, tl_from_fc

from oracles import DISPLAYS, disjoint_support_failures, display_failures, nonvanishing_mismatches


def P(text):
    return parse_perm(text)


def W(word, n):
    return from_word([int(c) for c in word], n)


def report(record_property, number, title, checks):
    """Print and record the verdict line, then fail if any check failed."""
    failed = [desc for desc, ok in checks if not ok]
    line = f"criterion {number:>2}: {'FAIL' if failed else 'PASS'}  {title}"
    if failed:
        line += "  [failed: " + "; ".join(failed) + "]"
    print(line)
    record_property("acceptance", line)
    assert not failed, line


def cli(*argv, timeout=None):
    """Run the CLI in a fresh interpreter so the timing includes every computation."""
    env = {k: v for k, v in os.environ.items() if k != "CELLKIT_CACHE_DIR"}
    start = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "cellkit.cli", *argv, "--json"], capture_output=True,
                          text=True, env=env, timeout=timeout, check=True)
    return json.loads(proc.stdout), time.perf_counter() - start


def as_set(texts):
    return {P(t) for t in texts}


# --- expected tables, kept independent of the shipped data -------------

S5_NEGATIVES = {"21435", "13254", "21543", "32154", "14325"}
S6_NEGATIVES = {
    "124365", "125436", "132546", "132654", "143256", "143265", "154326", "164352", "214356",
    "214365", "215436", "215634", "216453", "216543", "321546", "321654", "341265", "351624",
    "423165", "426153", "432165", "463152", "524316", "526413", "632541",
}
S6_CUSPIDALS = {"341265", "215634", "154326", "426153"}
S7_CUSPIDALS = {"1462537", "1536247", "1654327", "2167534", "3214765", "3614725", "4271563",
                "4531276", "5237164"}

# dual(sigma_63) KL(x_63) in the dual KL basis, keyed by reduced words
DUAL_EXPANSION = {
    "32145": ONE, "1232145": ONE, "1321435": ONE, "3214543": ONE, "3454321": ONE,
    "123214543": ONE, "123454321": ONE, "132454321": ONE,
    "132145": QUANTUM_2, "321454": QUANTUM_2, "12321454": QUANTUM_2, "13214354": QUANTUM_2,
    "13454321": QUANTUM_2, "32145432": QUANTUM_2, "1232145432": QUANTUM_2, "1324354321": QUANTUM_2,
    "13214543": QUANTUM_2 * 2,
    "1321454": QUANTUM_2 ** 2, "132143543": QUANTUM_2 ** 2, "132145432": QUANTUM_2 ** 2,
    "1321435432": QUANTUM_2 ** 3,
}


# --- 1-4: rank tables -----------------------------------------------------

def test_criterion_01_s4_table(record_property):
    data, elapsed = cli("cuspidal-scan", "--n", "4")
    table = RankTable(4, frozenset(as_set(data["negatives"])), frozenset(as_set(data["cuspidals"])),
                      TableSource.COMPUTED)
    report(record_property, 1, f"S_4 table ({elapsed:.2f} s cold)", [
        ("kh5 negatives = {2143}", set(data["negatives"]) == {"2143"}),
        ("negative permutations = {2143, 3142}", negative_elements(table) == {P("2143"), P("3142")}),
        ("runtime < 1 s", elapsed < 1),
    ])


def test_criterion_02_s5_table(record_property):
    data, elapsed = cli("cuspidal-scan", "--n", "5")
    report(record_property, 2, f"S_5 table ({elapsed:.1f} s cold)", [
        ("five negatives", set(data["negatives"]) == S5_NEGATIVES),
        ("cuspidals = {14325}", set(data["cuspidals"]) == {"14325"}),
        ("runtime < 30 s", elapsed < 30),
    ])


def test_criterion_03_s6_table(record_property, tmp_path):
    cold, t_cold = cli("cuspidal-scan", "--n", "6", timeout=600)
    cache = tmp_path / "s6.klc"
    cli("cache", "build", "--n", "6", "--out", str(cache))
    warm, t_warm = cli("cuspidal-scan", "--n", "6", "--cache", str(cache), timeout=60)
    report(record_property, 3, f"S_6 table ({t_cold:.1f} s cold, {t_warm:.1f} s with cache)", [
        ("the 25 known negatives", set(cold["negatives"]) == S6_NEGATIVES),
        ("four cuspidals", set(cold["cuspidals"]) == S6_CUSPIDALS),
        ("cached scan agrees", warm["negatives"] == cold["negatives"] and warm["cuspidals"] == cold["cuspidals"]),
        ("runtime < 10 min without cache", t_cold < 600),
        ("runtime < 1 min with cache", t_warm < 60),
    ])


@pytest.mark.slow
def test_criterion_04_s7_table(record_property, tmp_path):
    cache = tmp_path / "s7.klc"
    _, t_build = cli("cache", "build", "--n", "7", "--out", str(cache))
    data, t_scan = cli("cuspidal-scan", "--n", "7", "--cache", str(cache), timeout=7200)
    report(record_property, 4, f"S_7 table (cache build {t_build:.0f} s, scan {t_scan:.0f} s)", [
        ("the nine known cuspidals", set(data["cuspidals"]) == S7_CUSPIDALS),
        ("107 negatives", len(data["negatives"]) == 107),
        ("runtime < 2 h", t_build + t_scan < 7200),
    ])


# --- 5-7: explicit identities ---------------------------------------------

def test_criterion_05_dual_expansion(record_property):
    c = get_cache(6)
    s63, x63, y63 = sigma_ni(6, 3), x_ni(6, 3), y_ni(6, 3)
    dual = c.dual_kl_element(s63)
    via_x = c.express_in_dual_kl(dual * c.kl_element(x63))
    via_y = c.express_in_dual_kl(dual * c.kl_element(y63))
    expected = {W(k, 6): p for k, p in DUAL_EXPANSION.items()}
    # the expected expansion has 21 summands; the criterion wording says 22
    report(record_property, 5, f"dual KL expansion of dual(sigma_63) KL(x_63) ({len(via_x)} terms)", [
        ("expansion equals the known expansion", via_x == expected),
        ("coefficient v^3+3v+3v^-1+v^-3 on 1321435432",
         via_x.get(W("1321435432", 6)) == QUANTUM_2 ** 3),
        ("equals the y_63 product", via_x == via_y),
    ])


def test_criterion_06_product_identities(record_property):
    c = get_cache(6)
    x63, y63, s63 = x_ni(6, 3), y_ni(6, 3), sigma_ni(6, 3)
    q3 = QUANTUM_2 ** 3
    xy = c.express_in_kl(c.kl_element(x63) * c.kl_element(y63.inverse()))
    xx = c.express_in_kl(c.kl_element(x63) * c.kl_element(x63.inverse()))
    zero = (c.dual_kl_element(s63) * c.kl_element(W("12324321", 6))).is_zero()
    report(record_property, 6, "product identities in S_6", [
        ("KL(x)KL(y^-1) = [2]^3 KL(1232435)", xy == {W("1232435", 6): q3}),
        ("KL(x)KL(x^-1) = [2]^3 KL(12321) + [2]^2 KL(12324321)",
         xx == {W("12321", 6): q3, W("12324321", 6): QUANTUM_2 ** 2}),
        ("dual(sigma_63) KL(12324321) = 0", zero),
    ])


def test_criterion_07_mu_lemmata(record_property):
    checks = []
    for n in (4, 5, 6):
        c = get_cache(n)
        top, below = transposition(1, n, n), transposition(2, n, n)
        vanish = all(c.mu(a, top) == 0 for a in all_perms(n) if bruhat_leq(a, below))
        checks.append((f"mu(a,(1,{n})) = 0 for a <= (2,{n})", vanish))
        poly = [math.comb(n - 3, k) for k in range(n - 2)]
        checks.append((f"P_(s1 s{n - 1},(1,{n})) = (1+q)^{n - 3}",
                       c.classical(from_word([1, n - 1], n), top) == poly))
    x = mu_lemma_x(7)
    checks.append((f"mu({format_perm(x)}, u_7) = 1", get_cache(7).mu(x, u_elem(7)) == 1))
    report(record_property, 7, "mu lemmata", checks)


# --- 8-9: Hecke algebra and cells ------------------------------------------

def test_criterion_08_hecke_properties(record_property):
    c5 = get_cache(5)
    checks = [(f"{kind} display on S_5", display_failures(c5, kind) == []) for kind in DISPLAYS]
    for n in range(1, 6):
        c = get_cache(n)
        kls = [c.kl_element(w) for w in all_perms(n)]
        checks.append((f"bar invariance on S_{n}", all(k.bar() == k for k in kls)))
        in_vzv = all(p.min_degree() >= 1 for w, k in zip(all_perms(n), kls)
                     for x, p in k.terms.items() if x != w)
        checks.append((f"p in vZ[v] on S_{n}", in_vzv))
    bad, count = disjoint_support_failures(get_cache(6))
    checks.append((f"disjoint supports on S_6 ({count} pairs)", not bad))
    checks.append(("nonvanishing iff left order on S_5", nonvanishing_mismatches(c5) == []))
    report(record_property, 8, "Hecke property suite", checks)


def _dominates(a, b):
    """a dominates b (partitions of the same size)."""
    sa = sb = 0
    for i in range(max(len(a.parts), len(b.parts))):
        sa += a.parts[i] if i < len(a.parts) else 0
        sb += b.parts[i] if i < len(b.parts) else 0
        if sa < sb:
            return False
    return True


def test_criterion_09_cells(record_property):
    checks = []
    for n in range(1, 7):
        c = get_cache(n)
        by_q, by_p = {}, {}
        for w in all_perms(n):
            Pw, Qw = rs(w)
            by_q.setdefault(Qw, []).append(w)
            by_p.setdefault(Pw, []).append(w)
        checks.append((f"left cells = Q classes, n={n}",
                       sorted(map(sorted, by_q.values())) == sorted(c.left_cells())))
        checks.append((f"right cells = P classes, n={n}",
                       sorted(map(sorted, by_p.values())) == sorted(c.right_cells())))
        # an edge y -> x generates x >=_J y; dominance is transitive, so edges suffice
        G = c.two_sided_graph()
        perms = c.g.perms
        shape = [rs(w)[0].shape for w in perms]
        checks.append((f"x >=_J y implies shape(x) <| shape(y), n={n}",
                       all(_dominates(shape[y], shape[x]) for y, x in G.edges)))
        checks.append((f"two-sided cells = shape classes, n={n}",
                       all(len({shape[i] for i in comp}) == 1 for comp in nx.strongly_connected_components(G))
                       and len(c.two_sided_cells()) == sum(1 for _ in partitions(n))))
    for n in range(1, 8):
        total = sum(sum(1 for _ in standard_tableaux(lam)) ** 2 for lam in partitions(n))
        checks.append((f"sum of squared SYT counts = {n}!", total == math.factorial(n)))
    report(record_property, 9, "cell suite", checks)


# --- 10-11: families --------------------------------------------------------

def test_criterion_10_fc_theorem(record_property):
    start = time.perf_counter()
    checks = []
    agree = True
    for n in range(1, 11):
        for w in fc_involutions(n):
            try:
                fc_kostant_positive(w)
            except Exception:
                agree = False
    checks.append(("cup criterion agrees with special-involution factorization, n <= 10", agree))
    for n in range(1, 15):
        expected = {tau(n // 2, a) for a in range(1, n // 2)} if n % 2 == 0 else set()
        checks.append((f"FC cuspidals of S_{n}", set(fc_cuspidal_involutions(n)) == expected))
    for n in range(1, 9):
        fc = [w for w in all_perms(n) if is_fully_commutative(w)]
        checks.append((f"Catalan count of FC elements of S_{n}", len(fc) == math.comb(2 * n, n) // (n + 1)))
        checks.append((f"FC elements of S_{n} give distinct diagrams", len({tl_from_fc(w) for w in fc}) == len(fc)))
    elapsed = time.perf_counter() - start
    checks.append(("runtime < 1 min", elapsed < 60))
    report(record_property, 10, f"FC theorem suite ({elapsed:.1f} s)", checks)


def test_criterion_11_families(record_property):
    checks = []

    def cusp(w):
        return is_cuspidal(w, "kh5").status is Cuspidality.CUSPIDAL

    for n in (5, 6, 7):
        checks.append((f"inv(2,{n - 1}) cuspidal in S_{n}", cusp(inv(2, n - 1, n))))
    checks.append(("u_7 cuspidal", cusp(u_elem(7))))
    for n in (6, 7):
        for i in range(3, n - 2):
            checks.append((f"sigma_({n},{i}) cuspidal", cusp(sigma_ni(n, i))))
    for m in range(3, 8):
        checks.append((f"inv(1,{m - 1}) positive", classify(inv(1, m - 1, m), "kh5").status is Status.POSITIVE))
    for n in range(3, 8):
        for i in range(1, n - 1):
            checks.append((f"a(s{i} s{i + 1}) = 1 in S_{n}", a_function(from_word([i, i + 1], n)) == 1))
    checks.append(("a(x_63) = 3", a_function(x_ni(6, 3)) == 3))
    checks.append(("a(y_63) = 3", a_function(y_ni(6, 3)) == 3))
    report(record_property, 11, "family suite", checks)
