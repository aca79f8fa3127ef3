import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cellkit.errors import DuplicateValue, ParamOutOfRange, RankMismatch, WindowOutOfRange
from cellkit.permgroup import (
    Permutation,
    SpecialInvolution,
    all_perms,
    bruhat_leq,
    compose,
    consecutive_pattern,
    contains_consecutive,
    d_elem,
    distant,
    embed,
    format_perm,
    from_word,
    identity,
    inv,
    involutions,
    is_fully_commutative,
    length_and_descents,
    longest,
    mu_lemma_x,
    named_element,
    parse_perm,
    perm_from_one_line,
    reduced_word,
    sigma_ni,
    simple_reflection,
    special_involution_factors,
    support,
    tau,
    transposition,
    u_elem,
    x_ni,
    y_ni,
)


def P(text):
    return perm_from_one_line(int(c) for c in text)


def perms(max_n=9):
    return st.integers(1, max_n).flatmap(lambda n: st.permutations(range(1, n + 1))).map(Permutation)


def test_one_line_construction():
    assert P("2143") == Permutation([2, 1, 4, 3])
    assert P("123") == identity(3)
    with pytest.raises(DuplicateValue):
        perm_from_one_line([2, 2, 1])


def test_compose_convention():
    s1 = simple_reflection(1, 3)
    assert compose(s1, s1) == identity(3)
    assert from_word([1, 2, 1], 3) == P("321")
    assert from_word([1, 2, 1, 5, 6, 5], 7) == P("3214765")
    p, q = P("231"), P("132")
    assert [compose(p, q)(i) for i in (1, 2, 3)] == [p(q(i)) for i in (1, 2, 3)]


@pytest.mark.parametrize("w, length, right", [
    ("2143", 2, {1, 3}),
    ("1234", 0, set()),
    ("4231", 5, {1, 3}),
])
def test_length_and_descents(w, length, right):
    ell, left, rd = length_and_descents(P(w))
    assert ell == length
    assert rd == frozenset(right)
    assert left == P(w).inverse().right_descents()


def test_bruhat_examples():
    assert all(bruhat_leq(identity(4), w) for w in all_perms(4))
    assert bruhat_leq(P("312"), P("321"))
    # s1 s3 is a subword of s2 s1 s3
    assert bruhat_leq(P("2143"), P("3142"))
    assert not bruhat_leq(P("3142"), P("2143"))


def _subwords(word):
    out = set()
    for mask in itertools.product((0, 1), repeat=len(word)):
        out.add(tuple(a for a, m in zip(word, mask) if m))
    return out


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_bruhat_matches_subword_property(n):
    ws = all_perms(n)
    below = {}
    for w in ws:
        below[w] = {from_word(s, n) for s in _subwords(reduced_word(w))}
    for x in ws:
        for w in ws:
            assert bruhat_leq(x, w) == (x in below[w])


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_reduced_word_length(n):
    for w in all_perms(n):
        word = reduced_word(w)
        assert len(word) == w.length()
        assert from_word(word, n) == w


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_group_laws_exhaustive(n):
    ws = all_perms(n)
    e = identity(n)
    for w in ws:
        assert compose(w, w.inverse()) == e
    for a, b, c in itertools.islice(itertools.product(ws, repeat=3), 3000):
        assert compose(compose(a, b), c) == compose(a, compose(b, c))


@given(st.integers(1, 9).flatmap(
    lambda n: st.tuples(*[st.permutations(range(1, n + 1))] * 3)))
def test_group_laws_random(triple):
    a, b, c = (Permutation(t) for t in triple)
    assert compose(compose(a, b), c) == compose(a, compose(b, c))
    assert compose(a, a.inverse()).is_identity()


@given(perms())
def test_rank_id_round_trip(w):
    assert Permutation.from_rank_id(w.n, w.rank_id()) == w
    assert parse_perm(format_perm(w)) == w


@pytest.mark.parametrize("w, start, k, expected", [
    ("21543", 1, 4, "2143"),
    ("154326", 2, 4, "4321"),
    ("426153", 1, 6, "426153"),
])
def test_consecutive_pattern(w, start, k, expected):
    assert consecutive_pattern(P(w), start, k) == P(expected)


def test_consecutive_pattern_out_of_range():
    with pytest.raises(WindowOutOfRange):
        consecutive_pattern(P("2143"), 3, 3)


@pytest.mark.parametrize("x, p, expected", [
    ("21435", "2143", 1),
    ("14325", "14325", 1),
    ("14325", "2143", None),
])
def test_contains_consecutive(x, p, expected):
    assert contains_consecutive(P(x), P(p)) == expected


def test_empty_pattern_contained_at_one():
    assert contains_consecutive(P("21"), Permutation([])) == 1


def test_contains_consecutive_round_trip():
    for x in all_perms(6):
        for k in range(1, 7):
            for start in range(1, 8 - k):
                p = consecutive_pattern(x, start, k)
                hit = contains_consecutive(x, p)
                assert hit is not None and hit <= start
                assert consecutive_pattern(x, hit, k) == p


@pytest.mark.parametrize("w, k, i, expected", [
    ("2143", 6, 1, "132546"),
    ("21", 4, 2, "1243"),
    ("2143", 4, 0, "2143"),
])
def test_embed(w, k, i, expected):
    assert embed(P(w), k, i) == P(expected)


@pytest.mark.parametrize("name, n, params, expected", [
    ("tau", 6, (3, 1), "215634"),
    ("sigma", 6, (3,), "426153"),
    ("inv", 6, (2, 5), "154326"),
])
def test_named_element(name, n, params, expected):
    assert named_element(name, n, *params) == P(expected)


def test_named_element_bad_params():
    with pytest.raises(ParamOutOfRange):
        named_element("tau", 6, 3)


def test_family_constructors():
    assert inv(2, 4, 5) == P("14325")
    assert longest(4) == P("4321")
    assert transposition(1, 4, 4) == P("4231")
    assert u_elem(7) == P("3214765")
    assert sigma_ni(6, 3) == P("426153")
    assert x_ni(6, 3) == from_word([3, 1, 2, 3, 4], 6)
    assert y_ni(6, 3) == from_word([3, 5, 4, 3, 2], 6)
    assert mu_lemma_x(7) == P("3724615")
    assert d_elem(6) == P("453126")


@pytest.mark.parametrize("k", range(2, 11))
def test_tau_involution_and_fc(k):
    for a in range(1, k):
        t = tau(k, a)
        assert t.n == 2 * k
        assert t.is_involution()
        assert is_fully_commutative(t)


@pytest.mark.parametrize("w, expected", [("2143", True), ("321", False), ("14325", False)])
def test_fully_commutative(w, expected):
    assert is_fully_commutative(P(w)) == expected


def test_support():
    assert support(identity(5)) == frozenset()
    assert support(simple_reflection(2, 5)) == {2}
    assert support(P("341256")) == {1, 2, 3}


@given(st.integers(2, 8).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.integers(1, n - 1), max_size=12), st.lists(st.integers(1, n - 1), max_size=12))))
def test_support_of_disjoint_product(data):
    n, wa, wb = data
    x, y = from_word(wa, n), from_word(wb, n)
    if support(x) & support(y):
        return
    xy = compose(x, y)
    if xy.length() == x.length() + y.length():
        assert support(xy) == support(x) | support(y)


def test_distant():
    assert distant(SpecialInvolution(1, 0, 5), SpecialInvolution(4, 0, 5))
    assert not distant(SpecialInvolution(1, 0, 4), SpecialInvolution(3, 0, 4))
    s = SpecialInvolution(2, 1, 6)
    assert not distant(s, s)


def test_special_involution_factors():
    assert special_involution_factors(identity(4)) == []
    f = special_involution_factors(P("2143"))
    assert f is not None and len(f) == 2
    assert special_involution_factors(P("321")) is None
    for w in involutions(6):
        f = special_involution_factors(w)
        if f is not None:
            prod = identity(6)
            for s in f:
                prod = compose(prod, s.perm())
            assert prod == w


def test_involution_count():
    assert [len(involutions(n)) for n in range(1, 8)] == [1, 2, 4, 10, 26, 76, 232]


def test_parse_perm_forms():
    assert parse_perm("426153") == P("426153")
    assert parse_perm("w:1,2,1", 3) == P("321")
    assert parse_perm("10,2,3,4,5,6,7,8,9,1").n == 10
    with pytest.raises(RankMismatch):
        parse_perm("2143", 5)


@settings(max_examples=50)
@given(perms(7))
def test_descents_from_simple_products(w):
    for i in range(1, w.n):
        assert (i in w.right_descents()) == (w.times_simple(i).length() < w.length())
        assert (i in w.left_descents()) == (w.simple_times(i).length() < w.length())
