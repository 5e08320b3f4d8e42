import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from agcodes import fixtures
from agcodes.acceptance import reed_solomon, wilson_check
from agcodes.codes import (LinearCode, differential_code_plain, differential_code_rectified,
                           find_rescaling, functional_as_strict_differential, functional_code,
                           omega_space_basis, product_code_check, rr_space_basis, span,
                           strict_differential_as_functional)
from agcodes.geom import PROD, PROJ, Divisor, Variety, intersection_scheme
from agcodes.gf import GF
from agcodes.parse import parse_poly
from agcodes.rectify import RectifierError, construct_rectifier

F9 = GF(3, 2, "a^2+1")


def _vecs(F, rows):
    return [[F.parse(x) for x in r] for r in rows]


def _brute_dual(C):
    """Every vector of GF(q)^n orthogonal to all generators."""
    F = C.field
    els = F.elements()
    out = []
    for v in itertools.product(els, repeat=C.n):
        if all(sum((x * y for x, y in zip(v, g)), F.zero) == F.zero for g in C.rows):
            out.append(list(v))
    return out


# -- LinearCode -------------------------------------------------------------------

def test_rref_canonical_form():
    F = GF(2, 2, "a^2+a+1")
    a = F.gen
    C = LinearCode(F, 3, [[a, a, 0], [1, 0, 1], [a + 1, 1, a]])
    assert C.k == 2
    assert [[str(x) for x in r] for r in C.rows] == [["1", "0", "1"], ["0", "1", "1"]]


def test_zero_rows_are_dropped_by_rref():
    C = LinearCode(F9, 3, [[0, 0, 0], [1, 2, 0], [0, 0, 0]])
    assert C.k == 1


def test_kronecker_dimensions():
    A = reed_solomon(F9, 3)
    B = LinearCode.full(F9, 9)
    K = A.kronecker(B)
    assert (K.n, K.k) == (81, 27)
    assert K.dual() == A.dual().kronecker(B)


def test_sum_and_subcode():
    A = LinearCode(F9, 4, [[1, 0, 0, 0]])
    B = LinearCode(F9, 4, [[0, 1, 0, 0]])
    assert (A + B).k == 2
    assert A.is_subcode_of(A + B) and not (A + B).is_subcode_of(A)


def test_find_rescaling():
    C = reed_solomon(F9, 4)
    beta = [F9.parse(s) for s in ["1", "a", "2", "a+1", "2*a", "1", "1", "a", "2"]]
    D = C.rescale(beta)
    got = find_rescaling(C, D)
    assert got is not None and C.rescale(got) == D
    assert find_rescaling(C, reed_solomon(F9, 5)) is None


def test_json_shape():
    ex = fixtures.example_3_1()
    j = functional_code(ex.points, ex.G).to_json("deadbeef")
    assert j == {"field": {"p": 2, "m": 2}, "n": 4, "k": 2, "provenance": "deadbeef",
                 "generator_rows": [["1", "0", "a+1", "a"], ["0", "1", "a", "a+1"]]}


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 7).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.lists(st.integers(0, 8), min_size=n, max_size=n), max_size=n))))
def test_dual_involution(t):
    n, raw = t
    C = LinearCode(F9, n, [[F9.elem(x) for x in r] for r in raw])
    assert C.dual().k == n - C.k
    assert C.dual().dual() == C
    assert C.is_orthogonal_to(C.dual())


# -- Riemann-Roch and differential spaces -------------------------------------------

@pytest.mark.parametrize("d", [0, 1, 2, 3])
def test_rr_dimension_on_plane(d):
    V = Variety(F9, PROJ, 2)
    G = d * Divisor.of(V, parse_poly("Z", V.names, F9))
    assert len(rr_space_basis(V, G)) == (d + 1) * (d + 2) // 2


@pytest.mark.parametrize("m", [(0, 0), (1, 2), (3, 1)])
def test_rr_dimension_on_p1_squared(m):
    V = Variety(F9, PROD, 2)
    n = V.names
    G = (m[0] * Divisor.of(V, parse_poly("Z1", n, F9))
         + m[1] * Divisor.of(V, parse_poly("Z2", n, F9)))
    assert len(rr_space_basis(V, G)) == (m[0] + 1) * (m[1] + 1)


def test_rr_basis_with_non_monomial_denominator():
    ex = fixtures.example_3_2()
    G = ex.G + Divisor.of(ex.variety, parse_poly("X-Z", ex.variety.names, ex.field))
    assert len(rr_space_basis(ex.variety, G)) == 6


def test_omega_space_dimension():
    ex = fixtures.example_3_1()
    V = ex.variety
    H = sum(ex.divisors, Divisor.zero(V)) - ex.G
    # Omega(-H) = L(H + K) with deg H + K = 5 - 1 - 3 = 1
    assert len(omega_space_basis(V, H)) == 3


# -- fixtures -----------------------------------------------------------------------

def test_example_3_1_codes():
    ex = fixtures.example_3_1()
    F = ex.field
    CL = functional_code(ex.points, ex.G)
    assert CL == span(F, _vecs(F, [["1", "0", "a+1", "a"], ["0", "1", "a", "a+1"]]))
    assert differential_code_plain(ex.divisors, ex.points, ex.G) == CL.dual()
    R = differential_code_rectified(ex.divisors, ex.P0, ex.theta_strict, ex.G)
    assert R == span(F, _vecs(F, [["1", "a+1", "a"]]))
    assert R == functional_code(ex.P0, ex.G).dual()


def test_example_3_2_codes():
    ex = fixtures.example_3_2()
    F = ex.field
    CL = functional_code(ex.points, ex.G)
    plain = differential_code_plain(ex.divisors, ex.points, ex.G)
    assert not plain.is_subcode_of(CL.dual())
    C1 = differential_code_rectified(ex.divisors, ex.points, ex.theta_1, ex.G)
    C2 = differential_code_rectified(ex.divisors, ex.points, ex.theta_strict, ex.G)
    assert C1 == span(F, _vecs(F, [["1", "2", "2*a", "a", "0"]]))
    assert C2 == span(F, _vecs(F, [["1", "1", "1", "1", "2"]]))
    assert C1 + C2 == CL.dual()


def test_non_rectifying_theta_refused():
    ex = fixtures.example_3_1()
    with pytest.raises(RectifierError):
        differential_code_rectified(ex.divisors, ex.P0, 1, ex.G)


def test_plain_equals_rectified_with_constant_one():
    ex = fixtures.example_3_1()
    assert (differential_code_plain(ex.divisors, ex.points, ex.G)
            == differential_code_rectified(ex.divisors, ex.points, 1, ex.G))


def test_reed_solomon_on_p1_against_brute_force_dual():
    rs = fixtures.p1_reed_solomon()
    F = rs.field
    CL = functional_code(rs.points, rs.G)
    els = F.elements()[:5]
    assert CL == LinearCode(F, 5, [[x ** i for x in els] for i in range(3)])
    dual = _brute_dual(CL)
    assert len(dual) == F.q ** 2
    D = differential_code_plain(rs.divisors, rs.points, rs.G)
    assert D == span(F, dual)


def test_goppa_on_p1_full_line():
    F = GF(2, 2, "a^2+a+1")
    V = Variety(F, PROJ, 1)
    pts = [V.point([x, 1]) for x in F.elements()]
    D = [Divisor.of(V, parse_poly("X^4 - X*Z^3", V.names, F))]
    for d in range(4):
        G = d * Divisor.of(V, parse_poly("Z", V.names, F))
        CL = functional_code(pts, G)
        assert CL == reed_solomon(F, d + 1)
        assert differential_code_plain(D, pts, G) == span(F, _brute_dual(CL))


def test_rectified_code_inside_dual_on_random_subsets():
    rng = random.Random(11)
    ex = fixtures.example_3_2()
    inter = intersection_scheme(ex.variety, ex.divisors)
    for _ in range(5):
        k = rng.randint(1, 5)
        P = sorted(rng.sample(range(5), k))
        pts = [ex.points[i] for i in P]
        theta, rep = construct_rectifier(ex.divisors, pts, inter, seed=rng.randrange(100))
        C = differential_code_rectified(ex.divisors, pts, theta, ex.G, inter, rep)
        CL = functional_code(pts, ex.G)
        assert C.is_orthogonal_to(CL)
        assert C.k <= len(pts) - CL.k


# -- round trips --------------------------------------------------------------------

def test_strict_differential_as_functional_example_3_1():
    ex = fixtures.example_3_1()
    r = strict_differential_as_functional(ex.divisors, ex.P0, ex.theta_strict, ex.G)
    assert r["equal"]
    assert r["G_prime"].degree() == (0,)
    assert r["functional"] == span(ex.field, _vecs(ex.field, [["1", "a+1", "a"]]))


def test_functional_as_strict_differential_is_seeded():
    rs = fixtures.p1_reed_solomon()
    a = functional_as_strict_differential(rs.points, rs.G, seed=3)
    b = functional_as_strict_differential(rs.points, rs.G, seed=3)
    assert a["equal"] and b["equal"]
    assert str(a["theta"]) == str(b["theta"])


# -- tensor Reed-Solomon ------------------------------------------------------------

@pytest.mark.parametrize("q", [4, 5])
def test_tensor_reed_solomon(q):
    tr = fixtures.tensor_rs(q, (1, 1))
    F = tr.field
    RS = reed_solomon(F, 2)
    full = LinearCode.full(F, q)
    CL = functional_code(tr.points, tr.G)
    assert CL == RS.kronecker(RS) and CL.k == 4
    C1 = differential_code_rectified(tr.families[1], tr.points, None, tr.G)
    C2 = differential_code_rectified(tr.families[2], tr.points, None, tr.G)
    # points are x1-major, so the first Kronecker factor indexes x1; the
    # Reed-Solomon factor of C(D_i) sits at position i
    assert C1 == RS.dual().kronecker(full)
    assert C2 == full.kronecker(RS.dual())
    assert C1 + C2 == CL.dual()
    assert CL.dual().k == q * q - 4


def test_tensor_duals_with_higher_degrees():
    tr = fixtures.tensor_rs(4, (2, 1))
    F = tr.field
    CL = functional_code(tr.points, tr.G)
    assert CL == reed_solomon(F, 3).kronecker(reed_solomon(F, 2))
    C1 = differential_code_rectified(tr.families[1], tr.points, None, tr.G)
    C2 = differential_code_rectified(tr.families[2], tr.points, None, tr.G)
    assert C1 + C2 == CL.dual()


def test_wilson_linear_parts():
    assert wilson_check(fixtures.tensor_rs(4, (1, 1)))
    assert wilson_check(fixtures.tensor_rs(5, (1, 1)))


# -- products -----------------------------------------------------------------------

def test_product_checks():
    pair = fixtures.p1_product_pair()
    r = product_code_check(pair.X, pair.Y)
    assert r["b"] and r["c"] and r["d"]
    assert r["code_product"] == r["code_X"].kronecker(r["code_Y"])
    assert r["code_product"].n == 12
