import pytest

from agcodes import fixtures
from agcodes.geom import (PROD, PROJ, Chart, Divisor, LocalAlgebra, LocalFrame, NotProperError,
                          Variety, bezout_number, choose_chart, enumerate_points,
                          intersection_scheme, is_transversal_at)
from agcodes.gf import GF
from agcodes.parse import parse_expression, parse_poly


def test_point_normalisation():
    ex = fixtures.example_3_1()
    assert [str(P) for P in ex.points] == ["[0:0:1]", "[0:1:0]", "[0:a+1:1]", "[0:a:1]"]
    assert ex.variety.point([0, "a", "a"]) == ex.variety.point([0, 1, 1])


def test_rational_point_counts():
    F = GF(3, 2, "a^2+1")
    assert len(enumerate_points(Variety(F, PROJ, 2))) == 81 + 9 + 1
    assert len(enumerate_points(Variety(GF(2, 2, "a^2+a+1"), PROD, 2))) == 25


def test_example_3_1_intersection():
    ex = fixtures.example_3_1()
    I = intersection_scheme(ex.variety, ex.divisors)
    assert I.certified
    assert set(I.points) == set(ex.points)
    assert all(m == 1 for _, m in I)
    assert bezout_number(ex.variety, ex.divisors) == 4


def test_example_3_2_multiplicities():
    ex = fixtures.example_3_2()
    I = intersection_scheme(ex.variety, ex.divisors)
    assert [I.multiplicity(P) for P in ex.points] == [1, 1, 1, 1, 2]
    assert sum(m for _, m in I) == bezout_number(ex.variety, ex.divisors) == 6


def test_local_algebra_at_tangency():
    ex = fixtures.example_3_2()
    P = ex.points[4]
    frame = LocalFrame(P, P.standard_chart(), ex.divisors)
    assert not is_transversal_at(frame)
    assert LocalAlgebra(frame.local_equations, frame.field).multiplicity() == 2


def test_conjugate_points_over_extension():
    F = GF(2)
    V = Variety(F, PROJ, 2)
    n = V.names
    D = [Divisor.of(V, parse_poly("Z", n, F)),
         Divisor.of(V, parse_poly("X^2+X*Y+Y^2+Z^2", n, F))]
    I = intersection_scheme(V, D)
    assert I.certified and I.rational_points() == []
    assert [P.e for P in I.points] == [2, 2]


def test_improper_intersection_rejected():
    F = GF(2)
    V = Variety(F, PROJ, 2)
    n = V.names
    D = [Divisor.of(V, parse_poly("X", n, F)), Divisor.of(V, parse_poly("X*Y", n, F))]
    with pytest.raises(NotProperError):
        intersection_scheme(V, D)


def test_canonical_divisors():
    ex = fixtures.example_3_1()
    assert ex.variety.canonical_divisor().degree() == (-3,)
    tr = fixtures.tensor_rs(4)
    assert tr.variety.canonical_divisor().degree() == (-2, -2)


def test_divisor_of_a_rational_function_has_degree_zero():
    ex = fixtures.example_3_2()
    D = Divisor.from_fraction(ex.variety, ex.theta_strict)
    assert D.degree() == (0,)
    pos, neg = D.net_parts()
    assert neg == ex.G


def test_divisor_arithmetic():
    ex = fixtures.example_3_2()
    D1, D2 = ex.divisors
    assert (D1 + D2).degree() == (5,)
    assert (D1 - D1).is_zero()
    assert (2 * D2).is_effective() and not (D2 - D1).is_effective()


def test_chart_choice_avoids_points():
    ex = fixtures.example_3_2()
    C = choose_chart(ex.variety, ex.points)
    assert all(C.contains(P) for P in ex.points)


def test_chart_round_trip():
    ex = fixtures.example_3_1()
    F = ex.field
    C = Chart(ex.variety, [(F(1), F(1), F(0))])
    for P in ex.points:
        if C.contains(P):
            assert C.point_from_affine(C.affine_coords(P)) == P
    h = parse_expression("X/(Y+Z)", ex.variety.names, F)
    assert C.homogenize(C.dehomogenize(h)) == h
