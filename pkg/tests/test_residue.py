import pytest

from agcodes import fixtures
from agcodes.codes import omega_space_basis
from agcodes.forms import DifferentialForm
from agcodes.geom import Divisor, GeometryError, LocalFrame, Variety, PROJ, intersection_scheme
from agcodes.gf import GF
from agcodes.parse import parse_poly
from agcodes.residue import (ResidueContext, find_param_representation, minimal_exponent,
                             residue_wrt_divisors, verify_residue_theorem)


def _forms(ex):
    V = ex.variety
    return [DifferentialForm(V, V.standard_chart(), w) for w in ex.omega_coeffs]


def _strs(v):
    return [str(x) for x in v]


def _jacobian_residue(h, f, pt):
    """h(P) / det(df_i/dx_j)(P): the residue at a simple zero of (f_1, f_2)."""
    J = [[fi.derivative(j).evaluate(pt) for j in range(2)] for fi in f]
    return h.evaluate(pt) / (J[0][0] * J[1][1] - J[0][1] * J[1][0])


def test_example_3_1_table():
    ex = fixtures.example_3_1()
    ctx = ResidueContext(ex.variety, ex.divisors)
    got = [_strs(ctx.residue_vector(w, ex.points)) for w in _forms(ex)]
    assert got == [["1", "0", "a+1", "a"], ["0", "0", "0", "0"], ["0", "1", "a", "a+1"]]


def test_example_3_2_vectors():
    ex = fixtures.example_3_2()
    ctx = ResidueContext(ex.variety, ex.divisors)
    got = [_strs(ctx.residue_vector(w, ex.points)) for w in _forms(ex)]
    assert got == [["1", "2", "2*a", "a", "0"], ["1", "1", "1", "1", "2"],
                   ["1", "2", "0", "0", "0"]]


@pytest.mark.parametrize("name", ["example_3_1", "example_3_2"])
def test_jacobian_oracle_at_affine_transversal_points(name):
    ex = getattr(fixtures, name)()
    F = ex.field
    n = ["x", "y"]
    if name == "example_3_1":
        f = [parse_poly("x", n, F),
             parse_poly("x*y^3 + x^2 + x^2*y^2 + x^3 + y^3 + y^2 + y", n, F)]
    else:
        f = [parse_poly("y*(y-x^2)", n, F), parse_poly("y+x^2-2", n, F)]
    ctx = ResidueContext(ex.variety, ex.divisors)
    for w, h in zip(_forms(ex), ex.omega_coeffs):
        for P in ex.points:
            if not P.coords[2]:
                continue
            pt = [P.coords[0], P.coords[1]]
            prodf = f[0] * f[1]
            phi = (h * prodf)
            assert phi.is_polynomial()
            assert ctx.residue(w, P) == _jacobian_residue(phi.as_poly(), f, pt)


def test_representation_exponent_and_check():
    ex = fixtures.example_3_2()
    ctx = ResidueContext(ex.variety, ex.divisors)
    assert [ctx.rep(P).a for P in ex.points] == [1, 1, 1, 1, 2]
    assert all(ctx.rep(P).check() for P in ex.points)


def test_residue_independent_of_representation():
    ex = fixtures.example_3_2()
    ctx = ResidueContext(ex.variety, ex.divisors)
    for P in ex.points:
        frame = ctx.frame(P)
        alt = find_param_representation(frame, a=ctx.rep(P).a + 1, d_start=1)
        assert alt.check()
        for w in _forms(ex):
            assert residue_wrt_divisors(w, ex.divisors, P, frame, alt) == ctx.residue(w, P)


def test_residue_is_linear_in_the_form():
    ex = fixtures.example_3_1()
    F = ex.field
    w1, w2, w3 = _forms(ex)
    ctx = ResidueContext(ex.variety, ex.divisors)
    c = F.parse("a")
    combo = DifferentialForm(ex.variety, w1.chart, w1.phi * c + w3.phi)
    for P in ex.points:
        assert ctx.residue(combo, P) == c * ctx.residue(w1, P) + ctx.residue(w3, P)


@pytest.mark.parametrize("name", ["example_3_1", "example_3_2"])
def test_residue_theorem_on_fixtures(name):
    ex = getattr(fixtures, name)()
    V = ex.variety
    I = intersection_scheme(V, ex.divisors)
    H = sum(ex.divisors, Divisor.zero(V)) - ex.G
    for w in omega_space_basis(V, H) + _forms(ex):
        assert verify_residue_theorem(V, ex.divisors, w, I)["total"] == V.field.zero


def test_residue_theorem_with_conjugate_points():
    F = GF(2)
    V = Variety(F, PROJ, 2)
    n = V.names
    D = [Divisor.of(V, parse_poly("Z", n, F)),
         Divisor.of(V, parse_poly("X^2+X*Y+Y^2+Z^2", n, F))]
    I = intersection_scheme(V, D)
    for w in omega_space_basis(V, D[0] + D[1]):
        rep = verify_residue_theorem(V, D, w, I)
        assert rep["total"] == F.zero
        assert [p["field_degree"] for p in rep["per_point"]] == [2, 2]


def test_minimal_exponent_at_tangency():
    ex = fixtures.example_3_2()
    P = ex.points[4]
    assert minimal_exponent(LocalFrame(P, P.standard_chart(), ex.divisors)) == 2


def test_point_off_divisors_is_rejected():
    ex = fixtures.example_3_1()
    P = ex.variety.point([1, 1, 1])
    with pytest.raises(GeometryError):
        residue_wrt_divisors(_forms(ex)[0], ex.divisors, P)
