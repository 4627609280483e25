import pytest
from hypothesis import given, settings, strategies as st

from oracles import balanced_binomial
from qcoord.errors import NotRegular
from qcoord.qlaurent import ONE, Q, ZERO, LaurentPoly, q_binomial, q_factorial, q_int

polys = st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=5).map(LaurentPoly)
nonzero = polys.filter(lambda p: not p.is_zero())


def test_q_int_values():
    assert q_int(0) == ZERO
    assert q_int(1) == ONE
    assert q_int(2) == LaurentPoly({-1: 1, 1: 1})
    assert q_int(-3) == -q_int(3)


def test_q_binomial_example():
    assert str(q_binomial(4, 2)) == "q^-4 + q^-2 + 2 + q^2 + q^4"
    assert q_int(2) * q_int(2) == LaurentPoly({-2: 1, 0: 2, 2: 1})


@pytest.mark.parametrize("m,t", [(m, t) for m in range(8) for t in range(m + 1)])
def test_q_binomial_matches_gaussian_oracle(m, t):
    assert q_binomial(m, t).terms == balanced_binomial(m, t)


def test_q_binomial_negative_top():
    # [-m, t] = (-1)^t [m + t - 1, t]
    for m in range(1, 5):
        for t in range(4):
            assert q_binomial(-m, t) == q_binomial(m + t - 1, t) * (-1) ** t


def test_q_binomial_beyond_top_is_zero():
    assert q_binomial(3, 5) == ZERO
    assert q_binomial(0, 0) == ONE


def test_bar_invariance():
    for n in range(6):
        assert q_int(n).bar() == q_int(n)
        assert q_factorial(n).bar() == q_factorial(n)


def test_eval():
    p = LaurentPoly({0: 3, 2: -1})
    assert p.eval_at_zero() == 3
    assert p.eval_at_one() == 2
    with pytest.raises(NotRegular):
        LaurentPoly({-1: 1}).eval_at_zero()


def test_exact_div_rejects_non_multiple():
    with pytest.raises(ValueError):
        (q_int(2) + ONE).exact_div(q_int(2))
    with pytest.raises(ZeroDivisionError):
        ONE.exact_div(ZERO)


@pytest.mark.parametrize("text", ["q^-2 + 3 + q^4", "-2*q^-3 + 5 - q", "0", "q", "-1", "7*q^2"])
def test_parse_print_roundtrip(text):
    assert str(LaurentPoly.parse(text)) == text


@pytest.mark.parametrize("text", ["2*", "q^", "+", "3 q", "q^1.5"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        LaurentPoly.parse(text)


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO


@given(polys, nonzero)
def test_division_inverts_multiplication(a, b):
    assert (a * b).exact_div(b) == a


@given(polys)
def test_text_and_json_roundtrip(a):
    assert LaurentPoly.parse(str(a)) == a
    assert LaurentPoly.from_json(a.to_json()) == a


@settings(max_examples=50)
@given(polys, st.integers(-5, 5))
def test_shift_and_bar(a, k):
    assert a.shift(k) == a * Q.shift(k - 1)
    assert a.bar().bar() == a
    assert (a * a.shift(k)).bar() == a.bar() * a.bar().shift(-k)
