import pytest
from hypothesis import given, settings

from agcodes.parse import parse_expression, parse_poly
from agcodes.poly import MultiPoly, NotRegularError, RationalFunction, monomials, multivariate_gcd

from strategies import F9, NAMES, nonzero_polys, polys


def P(s, names=NAMES, F=F9):
    return parse_poly(s, names, F)


def test_gcd_of_known_factorisations():
    f = P("(x+y)^2*(x-a*y)")
    g = P("(x+y)*(x+1)")
    assert multivariate_gcd(f, g).monic() == P("x+y")


def test_divmod_reconstructs():
    f = P("x^3*y + a*x*y^2 + 2")
    g = P("x*y + 1")
    q, r = f.divmod(g)
    assert q * g + r == f


def test_exact_div():
    assert P("x^2 - y^2").exact_div(P("x - y")) == P("x + y")


def test_homogeneity_and_degrees():
    f = P("x^2*y + a*y^3")
    assert f.is_homogeneous() and f.degree() == 3
    assert f.degree_in(0) == 2 and f.min_degree() == 3
    assert not P("x + 1").is_homogeneous()


def test_monomial_count():
    # C(d+n-1, n-1) monomials of degree d in n variables
    assert len(monomials(3, 2)) == 6
    assert len(monomials(3, 4)) == 15


def test_translate_moves_center():
    f = P("x^2 + a*y + 1")
    c = [F9.parse("a"), F9(2)]
    t = f.translate(c)
    assert t.constant_coeff() == f.evaluate(c)


def test_derivative_in_characteristic_three():
    assert P("x^3 + x*y").derivative(0) == P("y")


def test_rational_function_reduces():
    h = parse_expression("(x^2-y^2)/(x-y)", NAMES, F9)
    assert h.is_polynomial() and h.as_poly() == P("x+y")


def test_rational_function_not_regular():
    h = parse_expression("1/x", NAMES, F9)
    assert not h.is_regular_at([F9.zero, F9.one])
    with pytest.raises(NotRegularError):
        h.evaluate([F9.zero, F9.one])


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(f, g, h):
    assert (f + g) * h == f * h + g * h
    assert (f * g) * h == f * (g * h)
    assert f - f == MultiPoly.zero(F9, NAMES)


@settings(max_examples=40, deadline=None)
@given(nonzero_polys(max_deg=2, max_terms=3), nonzero_polys(max_deg=2, max_terms=3),
       nonzero_polys(max_deg=2, max_terms=3))
def test_gcd_divides_and_contains_common_factor(f, g, h):
    d = multivariate_gcd(f * h, g * h)
    assert d.divides(f * h) and d.divides(g * h)
    assert h.divides(d)


@settings(max_examples=60, deadline=None)
@given(polys(), polys())
def test_evaluation_is_a_homomorphism(f, g):
    pt = [F9.parse("a+1"), F9(2)]
    assert (f * g).evaluate(pt) == f.evaluate(pt) * g.evaluate(pt)
    assert (f + g).evaluate(pt) == f.evaluate(pt) + g.evaluate(pt)


@settings(max_examples=40, deadline=None)
@given(nonzero_polys(max_deg=2), nonzero_polys(max_deg=2))
def test_rational_inverse(f, g):
    h = RationalFunction(f, g)
    assert h * h.inverse() == RationalFunction.of(MultiPoly.one(F9, NAMES))
