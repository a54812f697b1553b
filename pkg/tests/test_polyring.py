import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from biquot.polyring import (
    ContextMismatch,
    Polynomial,
    VariableContext,
    elementary_symmetric,
    parse_polynomial,
    polynomial_sum,
    substitute,
    to_rational,
)

R3 = VariableContext.uniform("x", 3)


def brute_elementary(i, args):
    ring = args[0].ring
    total = ring.zero()
    for combo in itertools.combinations(args, i):
        prod = ring.one()
        for a in combo:
            prod = prod * a
        total = total + prod
    return total


small_ints = st.integers(min_value=-5, max_value=5)


@st.composite
def polys(draw, ring=R3, max_terms=5, max_exp=3):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        exps = tuple(draw(st.integers(0, max_exp)) for _ in range(ring.nvars))
        terms[exps] = draw(small_ints)
    return Polynomial(ring, terms)


def test_context_validation():
    with pytest.raises(ValueError):
        VariableContext(("x", "x"), (2, 2))
    with pytest.raises(ValueError):
        VariableContext(("x",), (3,))
    with pytest.raises(ValueError):
        VariableContext(("x", "y"), (2,))


def test_float_coefficients_rejected():
    with pytest.raises(TypeError):
        to_rational(0.5)
    assert to_rational("3/6") == Fraction(1, 2)


def test_canonical_text_and_parse_roundtrip():
    p = parse_polynomial(R3, "x1^2*x2*3 - 1/2*x2^3 + x1*x3")
    assert str(p) == "3*x1^2*x2 - 1/2*x2^3 + x1*x3"
    assert parse_polynomial(R3, str(p)) == p
    assert str(R3.zero()) == "0"
    assert str(R3.constant(-2)) == "-2"


def test_parse_rejects_unknown_variable():
    with pytest.raises(ValueError):
        parse_polynomial(R3, "x4 + 1")


def test_degree_and_homogeneity():
    x1, x2, x3 = R3.gens()
    assert (x1 * x2 + x3 * x3).degree() == 4
    assert (x1 * x2 + x3 * x3).is_homogeneous()
    assert not (x1 + x2 * x3).is_homogeneous()
    assert R3.zero().degree() == -1
    assert (x1 + x2 * x3).homogeneous_component(4) == x2 * x3


def test_mixing_contexts_fails():
    other = VariableContext.uniform("y", 3)
    with pytest.raises(ContextMismatch):
        R3.gen(0) + other.gen(0)


def test_power_matches_repeated_product():
    p = R3.gen(0) + 2 * R3.gen(1) - R3.gen(2)
    q = R3.one()
    for k in range(6):
        assert p**k == q
        q = q * p


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == R3.zero()


@given(polys())
def test_str_parse_roundtrip(p):
    assert parse_polynomial(R3, str(p)) == p


@pytest.mark.parametrize("n", range(1, 7))
def test_elementary_symmetric_matches_brute_force(n):
    ring = VariableContext.uniform("y", n)
    ys = ring.gens()
    for i in range(0, n + 2):
        assert elementary_symmetric(i, ys) == brute_elementary(i, ys)


@settings(max_examples=40, deadline=None)
@given(st.lists(polys(max_terms=3, max_exp=2), min_size=1, max_size=4), st.integers(0, 5))
def test_elementary_symmetric_on_polynomial_arguments(args, i):
    assert elementary_symmetric(i, args) == brute_elementary(i, args)


def test_elementary_symmetric_edge_cases():
    ys = VariableContext.uniform("y", 3).gens()
    assert elementary_symmetric(0, ys) == 1
    assert elementary_symmetric(4, ys).is_zero()
    with pytest.raises(ValueError):
        elementary_symmetric(1, [])
    with pytest.raises(ValueError):
        elementary_symmetric(-1, ys)


def test_substitute_linear_forms():
    y = VariableContext.uniform("y", 2)
    y1, y2 = y.gens()
    x1, x2, x3 = R3.gens()
    assert substitute(y1 * y1 - y2, [x1 + x2, x3], R3) == (x1 + x2) ** 2 - x3
    q = y1 * y2
    assert substitute(q, [x1 + x2, x1 - x3], R3) == (x1 + x2) * (x1 - x3)


def test_substitute_rejects_wrong_degree():
    y = VariableContext.uniform("y", 1)
    with pytest.raises(ValueError):
        substitute(y.gen(0), [R3.gen(0) * R3.gen(1)], R3)


def test_polynomial_sum():
    assert polynomial_sum(R3.gens(), R3) == R3.linear_form([1, 1, 1])
    assert polynomial_sum([], R3).is_zero()


def test_monomials_of_degree_count():
    # stars and bars: C(d + n - 1, n - 1) monomials of degree d in n variables
    for d in range(6):
        assert len(R3.monomials_of_degree(2 * d)) == (d + 2) * (d + 1) // 2
    assert R3.monomials_of_degree(3) == []


@st.composite
def homogeneous_y_polys(draw):
    y = VariableContext.uniform("y", 2)
    d = draw(st.integers(0, 3))
    terms = {(a, d - a): draw(small_ints) for a in range(d + 1)}
    return Polynomial(y, terms)


@settings(max_examples=60, deadline=None)
@given(homogeneous_y_polys(), homogeneous_y_polys(), st.lists(small_ints, min_size=6, max_size=6))
def test_substitute_is_multiplicative(p, q, cs):
    x1, x2, x3 = R3.gens()
    images = [cs[0] * x1 + cs[1] * x2 + cs[2] * x3, cs[3] * x1 + cs[4] * x2 + cs[5] * x3]
    assert substitute(p * q, images, R3) == substitute(p, images, R3) * substitute(q, images, R3)


@pytest.mark.parametrize("n", range(1, 6))
def test_newton_identity(n):
    ys = VariableContext.uniform("y", n).gens()
    e1, e2 = elementary_symmetric(1, ys), elementary_symmetric(2, ys)
    assert e1 * e1 - 2 * e2 == polynomial_sum([y * y for y in ys], ys[0].ring)


@given(polys())
def test_homogeneous_components_reassemble(p):
    top = max(p.degree(), 0)
    parts = [p.homogeneous_component(d) for d in range(top + 1)]
    assert polynomial_sum(parts, R3) == p
    assert all(c.is_zero() or (c.is_homogeneous() and c.degree() == d) for d, c in enumerate(parts))
