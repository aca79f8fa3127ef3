import pytest
from hypothesis import given
from hypothesis import strategies as st

from cellkit.laurent import ONE, QUANTUM_2, V, V_INV, ZERO, LaurentPoly, parse_laurent

polys = st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=5).map(LaurentPoly)


@pytest.mark.parametrize("text, expected", [
    ("v^3 + 3v + 3v^-1 + v^-3", {3: 1, 1: 3, -1: 3, -3: 1}),
    ("2v+2v^-1", {1: 2, -1: 2}),
    ("v^2 + 2 + v^-2", {2: 1, 0: 2, -2: 1}),
    ("-v", {1: -1}),
    ("0", {}),
])
def test_parse(text, expected):
    assert parse_laurent(text) == LaurentPoly(expected)


def test_str_round_trip_examples():
    assert str(QUANTUM_2 ** 3) == "v^3 + 3v + 3v^-1 + v^-3"
    assert str(ZERO) == "0"
    assert str(V - ONE) == "v - 1"


def test_zero_coefficients_dropped():
    assert LaurentPoly({2: 0, 1: 1}) == V
    assert (V - V).is_zero()
    assert not ZERO


@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert a * ONE == a


@given(polys, polys)
def test_bar_is_ring_involution(a, b):
    assert a.bar().bar() == a
    assert (a * b).bar() == a.bar() * b.bar()
    assert (a + b).bar() == a.bar() + b.bar()


@given(polys)
def test_pairs_round_trip(a):
    assert LaurentPoly.from_pairs(a.to_pairs()) == a
    assert parse_laurent(str(a)) == a


@given(polys, st.integers(1, 10 ** 6))
def test_evaluate_is_homomorphism(a, x):
    p = 2 ** 31 - 1
    b = a * QUANTUM_2
    assert b.evaluate(x, p) == a.evaluate(x, p) * QUANTUM_2.evaluate(x, p) % p


def test_quantum_two_bar_invariant():
    assert QUANTUM_2.bar() == QUANTUM_2
    assert V.bar() == V_INV
    assert (V * V_INV) == ONE
