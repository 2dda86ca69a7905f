from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from hodgestar.polynomial import SPACETIME, Polynomial, PolynomialSyntaxError

from strategies import polynomials

T, X, Y, Z = sympy.symbols("t x y z")
SYMS = dict(zip(SPACETIME, (T, X, Y, Z)))


def to_sympy(p):
    expr = sympy.Integer(0)
    for mono, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for g, e in zip(p.gens, mono):
            term *= SYMS[g] ** e
        expr += term
    return sympy.expand(expr)


@given(polynomials(), polynomials())
def test_ring_ops_match_sympy(p, q):
    assert to_sympy(p + q) == sympy.expand(to_sympy(p) + to_sympy(q))
    assert to_sympy(p - q) == sympy.expand(to_sympy(p) - to_sympy(q))
    assert to_sympy(p * q) == sympy.expand(to_sympy(p) * to_sympy(q))


@given(polynomials(), st.sampled_from(SPACETIME))
def test_diff_matches_sympy(p, v):
    assert to_sympy(p.diff(v)) == sympy.expand(sympy.diff(to_sympy(p), SYMS[v]))


@given(polynomials())
def test_text_roundtrip(p):
    assert Polynomial.parse(str(p)) == p


@given(polynomials())
def test_parse_agrees_with_sympy(p):
    assert to_sympy(Polynomial.parse(str(p))) == sympy.expand(sympy.sympify(str(p).replace("^", "**")))


@given(polynomials(max_degree=2), polynomials(max_degree=1), polynomials(max_degree=1))
def test_compose_matches_sympy(p, a, b):
    images = [a, b, Polynomial.var("y"), Polynomial.var("z")]
    want = sympy.expand(to_sympy(p).subs({T: to_sympy(a), X: to_sympy(b)}, simultaneous=True))
    assert to_sympy(p.compose(images)) == want


def test_format_example():
    p = Polynomial.parse("3*x^2*y - t")
    assert str(p) == "3*x^2*y - t"


def test_evaluate():
    p = Polynomial.parse("x^2 - 1/2 * t")
    assert p.evaluate([2, 3, 0, 0]) == 8


def test_power_operator_spellings():
    assert Polynomial.parse("x**3") == Polynomial.parse("x^3") == Polynomial.var("x") ** 3


@pytest.mark.parametrize("bad", ["", "x +", "q", "x/y", "x/0", "(x", "x^y", "2 x"])
def test_parse_errors(bad):
    with pytest.raises(PolynomialSyntaxError):
        Polynomial.parse(bad)


def test_zero_polys_equal_across_generators():
    assert Polynomial({}, ("a",)) == Polynomial({}, SPACETIME) == 0


def test_constants_compare_with_numbers():
    assert Polynomial.constant(Fraction(3, 2)) == Fraction(3, 2)
