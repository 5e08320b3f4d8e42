import pytest
from hypothesis import given, settings

from agcodes.parse import parse_expression, parse_poly
from agcodes.series import NotAUnitError, TruncatedSeries, series_expand, series_invert

from strategies import F9, NAMES, polys

ZERO = [F9.zero, F9.zero]


def test_geometric_series():
    s = series_expand(parse_expression("x/(1-x*y)", NAMES, F9), ZERO, 6)
    want = {(1, 0): 1, (2, 1): 1, (3, 2): 1}
    assert {e: c for e, c in s.terms.items()} == {e: F9(c) for e, c in want.items()}


def test_non_unit_inversion_fails():
    with pytest.raises(NotAUnitError):
        series_invert(TruncatedSeries.from_poly(parse_poly("x+y", NAMES, F9), 4))


def test_expansion_at_shifted_center():
    c = [F9.parse("a"), F9(1)]
    s = series_expand(parse_expression("1/(x - a + y)", NAMES, F9), c, 3)
    # 1/(u + (1 + v)) = 1 - u - v + ... around the shifted origin
    assert s.constant() == F9.one
    assert s.coeff((1, 0)) == F9(-1) and s.coeff((0, 1)) == F9(-1)


@settings(max_examples=50, deadline=None)
@given(polys(max_deg=3))
def test_inverse_times_unit_is_one(f):
    u = f + (1 - f.constant_coeff())
    N = 5
    s = TruncatedSeries.from_poly(u, N)
    prod = (s * series_invert(s)).terms
    assert prod == {(0, 0): F9.one}
