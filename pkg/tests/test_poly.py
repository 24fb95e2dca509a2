import pytest
from hypothesis import given, settings, strategies as st

from nflocus.poly import (
    DEGREVLEX, LEX, Polynomial, UsageError, VariableContext, compare_monomials, integer_content,
)

CTX = VariableContext(["x", "y", "z"])
x, y, z = CTX.gens()


def polys(max_terms=4, max_deg=3, max_coeff=20):
    term = st.tuples(st.integers(-max_coeff, max_coeff),
                     st.tuples(*[st.integers(0, max_deg)] * 3))
    return st.lists(term, max_size=max_terms).map(lambda ts: Polynomial(CTX, ts))


def test_binomial_square():
    assert (x + y) * (x + y) == x ** 2 + 2 * x * y + y ** 2


def test_add_zero_and_cancel():
    f = 2 * x + 4 * y
    assert f + CTX.zero() == f
    assert not (f - f)
    assert (f - f).terms() == []


def test_monomial_orders():
    assert compare_monomials((2, 1, 0), (1, 2, 0), DEGREVLEX) == 1
    assert compare_monomials((1, 1, 1), (1, 1, 1), LEX) == 0
    assert compare_monomials((0, 5, 0), (1, 0, 0), LEX) == -1


def test_content():
    assert integer_content(2 * x + 4 * y) == 2
    assert integer_content(x - y) == 1
    assert integer_content(-6 * x ** 2) == 6


def test_parse_and_format():
    ctx = VariableContext(["a1", "a2"])
    f = ctx.parse("a1*a2^2-2*a1*a2+a1-a2")
    a1, a2 = ctx.gens()
    assert f == a1 * a2 ** 2 - 2 * a1 * a2 + a1 - a2
    assert ctx.parse(str(f)) == f
    assert ctx.parse("-(a1+1)**2") == -(a1 + 1) ** 2
    assert ctx.parse("2a1") == 2 * a1


def test_context_mismatch_raises():
    other = VariableContext(["x", "y"])
    with pytest.raises(UsageError):
        _ = x + other.var("x")


def test_substitute_and_evaluate():
    f = x ** 2 * y - 3 * z
    g = f.substitute([y + 1, CTX.one(), x])
    assert g == (y + 1) ** 2 - 3 * x
    assert f.evaluate([2, 5, 1]) == 17


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == CTX.zero()


@settings(max_examples=60, deadline=None)
@given(polys(), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))
def test_evaluation_is_a_homomorphism(f, a, b, c):
    g = f * f + f
    v = f.evaluate([a, b, c])
    assert g.evaluate([a, b, c]) == v * v + v


@settings(max_examples=40, deadline=None)
@given(polys())
def test_format_parse_round_trip(f):
    assert CTX.parse(str(f)) == f
