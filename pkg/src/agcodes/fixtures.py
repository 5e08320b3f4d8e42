"""
Worked configurations: the two plane examples, the tensor Reed-Solomon
family on (P^1)^2, a Reed-Solomon configuration on P^1 and a P^1 x P^1
product pair.
"""

from __future__ import annotations

from types import SimpleNamespace

from .geom import PROD, PROJ, Divisor, Variety
from .gf import GF
from .parse import parse_expression, parse_poly


def _ns(**kw):
    return SimpleNamespace(**kw)


def example_3_1():
    """GF(4), D1 = V(X), D2 a quartic; four transversal points."""
    F = GF(2, 2, "a^2+a+1")
    V = Variety(F, PROJ, 2)
    n = V.names
    D1 = Divisor.of(V, parse_poly("X", n, F))
    D2 = Divisor.of(V, parse_poly(
        "Y*Z^3 + Y^3*Z + X*Y^3 + X^2*Z^2 + X^2*Y^2 + X^3*Z + Z^2*Y^2", n, F))
    points = [V.point(c) for c in ([0, 0, 1], [0, 1, 0], [0, 1, "a"], [0, 1, "a+1"])]
    G = Divisor.of(V, parse_poly("Y+Z", n, F))
    den = "x*(x*y^3 + x^2 + x^2*y^2 + x^3 + y^3 + y^2 + y)"
    # omega_1, omega_2, omega_3 in the affine chart Z != 0
    omegas = [parse_expression(f"({h})/({den})", ["x", "y"], F)
              for h in ("y+1", "(y+1)*x", "(y+1)*y")]
    return _ns(field=F, variety=V, divisors=[D1, D2], points=points, P0=points[:3], G=G,
               omega_coeffs=omegas,
               theta_strict=parse_expression("(Z-(a+1)*Y)/(Y+Z)", n, F),
               residues=[["1", "0", "a+1", "a"], ["0", "0", "0", "0"], ["0", "1", "a", "a+1"]],
               functional_rows=[["0", "0", "0", "0"], ["0", "1", "a", "a+1"],
                                ["1", "0", "a+1", "a"]],
               rectified_P0=[["1", "a+1", "a"]])


def example_3_2():
    """GF(9), a conic pair meeting with multiplicity 2 at [0:1:0]."""
    F = GF(3, 2, "a^2+1")
    V = Variety(F, PROJ, 2)
    n = V.names
    D1 = Divisor.of(V, parse_poly("Y*(Y*Z-X^2)", n, F))
    D2 = Divisor.of(V, parse_poly("Y*Z+X^2-2*Z^2", n, F))
    points = [V.point(c) for c in ([1, 1, 1], [2, 1, 1], ["a", 0, 1], ["2*a", 0, 1], [0, 1, 0])]
    G = Divisor.of(V, parse_poly("Y+Z", n, F))
    den = "y*(y-x^2)*(y+x^2-2)"
    omegas = [parse_expression(f"({h})/({den})", ["x", "y"], F)
              for h in ("y+1", "(y+1)*x", "(y+1)*y")]
    return _ns(field=F, variety=V, divisors=[D1, D2], points=points, G=G,
               omega_coeffs=omegas,
               theta_1=parse_expression("Z/(Y+Z)", n, F),
               theta_strict=parse_expression("X/(Y+Z)", n, F),
               residues=[["1", "2", "2*a", "a", "0"], ["1", "1", "1", "1", "2"],
                         ["1", "2", "0", "0", "0"]],
               functional_rows=[["2", "1", "a", "2*a", "0"], ["2", "2", "0", "0", "1"],
                                ["2", "2", "1", "1", "0"]],
               rectified_1=[["1", "2", "2*a", "a", "0"]],
               rectified_strict=[["1", "1", "1", "1", "2"]])


def _prod_linear(F, var, Zvar):
    """prod over the field of (var - c*Zvar)."""
    return "*".join(f"({var} - ({c})*{Zvar})" for c in F.elements())


def tensor_rs(q=4, m=(1, 1)):
    """(P^1)^2 over GF(q): all affine points, G = m1*E1 + m2*E2, families D_1, D_2."""
    F = GF(q) if q in (2, 3, 5, 7) else _gf_prime_power(q)
    V = Variety(F, PROD, 2)
    n = V.names  # X1, Z1, X2, Z2
    elems = F.elements()
    points = [V.point([[x1, 1], [x2, 1]]) for x1 in elems for x2 in elems]
    G = (m[0] * Divisor.of(V, parse_poly("Z1", n, F))
         + m[1] * Divisor.of(V, parse_poly("Z2", n, F)))
    f_x1 = parse_poly(_prod_linear(F, "X1", "Z1"), n, F)
    f_x2 = parse_poly(_prod_linear(F, "X2", "Z2"), n, F)
    f_sum = parse_poly("*".join(f"(X1*Z2 + X2*Z1 - ({c})*Z1*Z2)" for c in elems), n, F)
    families = {
        1: [Divisor.of(V, f_sum), Divisor.of(V, f_x2)],
        2: [Divisor.of(V, f_x1), Divisor.of(V, f_sum)],
    }
    return _ns(field=F, variety=V, points=points, G=G, m=tuple(m), q=q, families=families)


def _gf_prime_power(q):
    moduli = {4: (2, 2, "a^2+a+1"), 8: (2, 3, "a^3+a+1"), 9: (3, 2, "a^2+1")}
    p, k, mod = moduli[q]
    return GF(p, k, mod)


def p1_reed_solomon():
    """P^1 over GF(8): five affine points, G = 2*(point at infinity)."""
    F = _gf_prime_power(8)
    V = Variety(F, PROJ, 1)
    n = V.names  # X, Z
    elems = F.elements()[:5]
    points = [V.point([x, 1]) for x in elems]
    D = Divisor.of(V, parse_poly("*".join(f"(X - ({c})*Z)" for c in elems), n, F))
    G = 2 * Divisor.of(V, parse_poly("Z", n, F))
    return _ns(field=F, variety=V, points=points, divisors=[D], G=G)


def p1_product_pair():
    """Two P^1 configurations over GF(4) for the product checks."""
    F = _gf_prime_power(4)
    V = Variety(F, PROJ, 1)
    n = V.names
    D = Divisor.of(V, parse_poly("X^4 - X*Z^3", n, F))
    elems = F.elements()
    pts = [V.point([x, 1]) for x in elems]
    a4 = elems[-1]
    X = {"divisors": [D], "points": pts[:-1],
         "theta": parse_expression(f"(X - ({a4})*Z)/Z", n, F),
         "G": Divisor.of(V, parse_poly("Z", n, F))}
    Y = {"divisors": [D], "points": pts, "theta": None,
         "G": Divisor.of(V, parse_poly("Z", n, F))}
    return _ns(field=F, variety=V, X=X, Y=Y)
