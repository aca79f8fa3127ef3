import pytest

from cellkit import kostant
from cellkit.errors import BudgetExceeded, OutOfRange
from cellkit.kostant import (
    Cuspidality,
    Method,
    RankTable,
    Status,
    TableSource,
    builtin_table,
    classify,
    cuspidal_scan,
    fc_cuspidal_involutions,
    is_cuspidal,
    negative_elements,
    propagation_check,
    table_negative_count,
    verify_family,
)
from cellkit.permgroup import (
    all_perms,
    consecutive_pattern,
    embed,
    format_perm,
    identity,
    inv,
    involutions,
    is_fully_commutative,
    perm_from_one_line,
    tau,
)
from cellkit.tableaux import rs

S5_NEGATIVES = {"21435", "13254", "21543", "32154", "14325"}


def P(text):
    return perm_from_one_line(int(c) for c in text)


@pytest.mark.parametrize("method", ["auto", "table", "fc", "kh5", "kh4"])
def test_2143_negative_by_every_route(method):
    assert classify(P("2143"), method).status is Status.NEGATIVE


def test_14325_negative_with_witness():
    v = classify(P("14325"), "kh5")
    assert v.status is Status.NEGATIVE and v.method is Method.KH5
    assert set(v.witness) == {"x", "y"} and v.witness["x"] != v.witness["y"]
    assert v.conjectural
    for start in (1, 2):
        assert classify(consecutive_pattern(P("14325"), start, 4), "kh5").positive


def test_inv_1_m_minus_1_positive():
    for method in ("auto", "kh5"):
        assert classify(inv(1, 5, 6), method).positive


def test_unknown_when_route_does_not_apply():
    v = classify(P("14325"), "fc")
    assert v.status is Status.UNKNOWN and v.method is Method.NONE
    assert classify(P("2143"), "pattern").status is Status.UNKNOWN


def test_verdict_json():
    v = classify(P("426153"), "kh5")
    data = v.to_json()
    assert data["input"] == data["duflo"] == "426153"
    assert data["status"] == "negative" and data["method"] == "kh5" and data["conjectural"] is True
    assert classify(P("426153"), "table").to_json()["conjectural"] is False


def test_crosscheck_runs_every_route():
    for w in involutions(5):
        assert classify(w, crosscheck=True).status is classify(w, "kh5").status


@pytest.mark.parametrize("w, status", [
    ("21435", Cuspidality.NOT_CUSPIDAL),
    ("426153", Cuspidality.CUSPIDAL),
    ("123456", Cuspidality.NOT_CUSPIDAL),
    ("14325", Cuspidality.CUSPIDAL),
])
def test_is_cuspidal_examples(w, status):
    assert is_cuspidal(P(w), "kh5").status is status
    assert is_cuspidal(P(w)).status is status


def test_not_cuspidal_reason():
    r = is_cuspidal(P("21435"), "kh5")
    assert "negative window" in r.reason
    assert is_cuspidal(identity(4)).reason == "positive"


@pytest.mark.parametrize("n", [4, 5, 6])
def test_paranoid_scan_matches_plain(n):
    assert cuspidal_scan(n, paranoid=True) == cuspidal_scan(n)


def test_scan_s5():
    t = cuspidal_scan(5)
    assert {format_perm(w) for w in t.negatives} == S5_NEGATIVES
    assert t.cuspidals == {P("14325")}
    assert t.source is TableSource.COMPUTED


def test_scan_all_elements_agree_with_duflo():
    cuspidal_scan(5, involutions_only=False)


def test_scan_parallel_matches_serial():
    assert cuspidal_scan(5, jobs=2) == cuspidal_scan(5, jobs=1)


def test_scan_kh4_equals_kh5_small_ranks():
    for n in (4, 5, 6):
        assert cuspidal_scan(n, "kh4") == cuspidal_scan(n, "kh5")


def test_scan_budget():
    with pytest.raises(BudgetExceeded):
        cuspidal_scan(8, "kh5", kh_max_rank=7)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_verdicts_constant_on_left_cells(n):
    by_q = {}
    for w in all_perms(n):
        by_q.setdefault(rs(w)[1], set()).add(classify(w).status)
    assert all(len(s) == 1 for s in by_q.values())


@pytest.mark.parametrize("n", [4, 5, 6])
def test_fc_and_kh5_agree_on_two_row_involutions(n):
    for w in kostant.fc_involutions(n):
        assert classify(w, "fc").status is classify(w, "kh5").status


def test_negativity_closed_under_windows_s6():
    for x in all_perms(6):
        if any(classify(p).negative for p, _ in kostant._windows(x, proper=True)):
            assert classify(x).negative


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_builtin_tables_consistent(n):
    t = builtin_table(n)
    assert t.cuspidals <= t.negatives
    assert len(t.negatives) == table_negative_count(n)
    for w in t.cuspidals:
        for p, _ in kostant._maximal_windows(w):
            assert classify(p).positive


def test_builtin_counts():
    assert [len(builtin_table(n).negatives) for n in range(1, 8)] == [0, 0, 0, 1, 5, 25, 107]
    assert [len(builtin_table(n).cuspidals) for n in range(4, 8)] == [1, 1, 4, 9]
    assert builtin_table(7).source is TableSource.DERIVED


def test_rank_table_validation():
    with pytest.raises(OutOfRange):
        RankTable(4, frozenset(), frozenset({P("2143")}), TableSource.COMPUTED)
    with pytest.raises(OutOfRange):
        RankTable(4, frozenset({P("2314")}), frozenset(), TableSource.COMPUTED)


def test_negative_elements_s4():
    assert negative_elements(builtin_table(4)) == {P("2143"), P("3142")}


def test_propagation_examples():
    assert propagation_check(embed(P("2143"), 6, 1)) == (P("2143"), 2)
    assert propagation_check(P("14325"), {P("2143"), P("3142")}) is None
    positives = [w for w in involutions(6) if w not in builtin_table(6).negatives]
    assert all(propagation_check(w) is None for w in positives)


def test_fc_cuspidal_classification():
    for n in range(2, 15):
        expected = {tau(n // 2, a) for a in range(1, n // 2)} if n % 2 == 0 and n >= 4 else set()
        assert set(fc_cuspidal_involutions(n)) == expected
        assert all(is_fully_commutative(w) for w in expected)


@pytest.mark.parametrize("name, ns", [("tau", range(2, 15)), ("inv2", (5, 6)), ("sigma", (6,))])
def test_verify_family(name, ns):
    report = verify_family(name, ns)
    assert report.passed and report.checks


def test_verify_family_unknown():
    with pytest.raises(OutOfRange):
        verify_family("nope", [5])
