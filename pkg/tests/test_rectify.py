import pytest

from agcodes import fixtures
from agcodes.geom import Divisor, LocalFrame, PROJ, Variety, intersection_scheme
from agcodes.gf import GF
from agcodes.parse import parse_expression, parse_poly
from agcodes.poly import NotRegularError
from agcodes.rectify import (NOT_RECTIFYING, RECTIFYING, STRICT, RectifierError,
                             check_rectifying, class_exponents, construct_rectifier, crt_glue,
                             local_rectifier)
from agcodes.series import series_expand


def _setup(ex):
    return intersection_scheme(ex.variety, ex.divisors)


def test_class_exponent_order():
    assert class_exponents(2, 2) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert class_exponents(3, 1) == [(0, 0, 0)]


def test_constant_one_on_transversal_fixture():
    ex = fixtures.example_3_1()
    rep = check_rectifying(1, ex.divisors, ex.points, _setup(ex))
    assert rep.overall == STRICT
    assert [str(c) for c in rep.c_values()] == ["1", "a+1", "a", "1"]


def test_constant_one_fails_on_proper_subset():
    ex = fixtures.example_3_1()
    rep = check_rectifying(1, ex.divisors, ex.P0, _setup(ex))
    assert rep.overall == NOT_RECTIFYING
    by_point = {p["point"]: p["verdict"] for p in rep.per_point}
    assert by_point[ex.points[3]] == NOT_RECTIFYING
    assert all(by_point[P] == STRICT for P in ex.P0)


def test_fixture_rectifier_on_p0():
    ex = fixtures.example_3_1()
    rep = check_rectifying(ex.theta_strict, ex.divisors, ex.P0, _setup(ex))
    assert rep.overall == STRICT
    outside = [p for p in rep.per_point if not p["in_P"]]
    assert [p["point"] for p in outside] == [ex.points[3]]
    assert outside[0]["c"] == ex.field.zero


def test_example_3_2_verdicts():
    ex = fixtures.example_3_2()
    inter = _setup(ex)
    r1 = check_rectifying(ex.theta_1, ex.divisors, ex.points, inter)
    assert r1.overall == RECTIFYING
    by_point = {p["point"]: p for p in r1.per_point}
    assert [by_point[P]["a"] for P in ex.points] == [1, 1, 1, 1, 2]
    assert by_point[ex.points[4]]["c"] == ex.field.zero
    assert all(by_point[P]["verdict"] == STRICT for P in ex.points[:4])
    r2 = check_rectifying(ex.theta_strict, ex.divisors, ex.points, inter)
    assert r2.overall == STRICT


def test_pole_at_intersection_point_is_an_error():
    ex = fixtures.example_3_2()
    theta = parse_expression("Z/X", ex.variety.names, ex.field)
    with pytest.raises(NotRegularError, match=r"\[0:1:0\]"):
        check_rectifying(theta, ex.divisors, ex.points, _setup(ex))


@pytest.mark.parametrize("method", ["auto", "linear", "crt"])
@pytest.mark.parametrize("name", ["example_3_1", "example_3_2"])
def test_synthesis_is_strict(method, name):
    ex = getattr(fixtures, name)()
    pts = ex.P0 if name == "example_3_1" else ex.points
    inter = _setup(ex)
    theta, rep = construct_rectifier(ex.divisors, pts, inter, method=method)
    assert rep.is_strict
    assert check_rectifying(theta, ex.divisors, pts, inter).is_strict


def test_synthesis_is_seeded():
    ex = fixtures.example_3_2()
    inter = _setup(ex)
    a, _ = construct_rectifier(ex.divisors, ex.points[:3], inter, seed=5)
    b, _ = construct_rectifier(ex.divisors, ex.points[:3], inter, seed=5)
    assert a == b


def test_local_rectifiers():
    a = fixtures.example_3_1()
    P = a.points[1]
    frame = LocalFrame(P, P.standard_chart(), a.divisors)
    # the chart at [0:1:0] has coordinates (x, z)
    assert local_rectifier(frame) == parse_poly("z^2+z+1", ["x", "z"], a.field)
    b = fixtures.example_3_2()
    P = b.points[4]
    frame = LocalFrame(P, P.standard_chart(), b.divisors)
    assert local_rectifier(frame) == parse_poly("x + 2*x*z", frame.local_equations[0].names, b.field)


def test_crt_glue_matches_targets():
    F = GF(3, 2, "a^2+1")
    n = ["x", "y"]
    pts = [[F(0), F(0)], [F(1), F.parse("a")], [F(2), F(1)]]
    targets = [parse_expression(s, n, F) for s in ("1 + x", "y/(1+y)", "x*y")]
    a = [2, 1, 3]
    theta = crt_glue(pts, targets, a)
    for P, t, ai in zip(pts, targets, a):
        l = 2 * (ai - 1) + 1
        want = series_expand(t, P, l).terms
        got = series_expand(theta, P, l).terms
        for e in set(want) | set(got):
            if max(e) < ai:
                assert got.get(e, F.zero) == want.get(e, F.zero)


def test_extension_points_refused():
    F = GF(2)
    V = Variety(F, PROJ, 2)
    n = V.names
    D = [Divisor.of(V, parse_poly("Z", n, F)),
         Divisor.of(V, parse_poly("X^2+X*Y+Y^2+Z^2", n, F))]
    inter = intersection_scheme(V, D)
    with pytest.raises(RectifierError):
        construct_rectifier(D, [], inter)
