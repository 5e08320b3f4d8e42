"""
Seeded random configurations on P^2 for the residue-theorem and
orthogonality sweeps.
"""

from __future__ import annotations

import random

from .geom import PROJ, Divisor, GeometryError, NotProperError, Variety, intersection_scheme
from .gf import GF
from .poly import MultiPoly, monomials, multivariate_gcd

FIELDS = {4: (2, 2, "a^2+a+1"), 9: (3, 2, "a^2+1")}


def plane(q):
    p, m, mod = FIELDS[q]
    return Variety(GF(p, m, mod), PROJ, 2)


def random_form(V, d, rng):
    F = V.field
    while True:
        t = {e: rng.randrange(F.q) for e in monomials(V.nvars, d)}
        p = MultiPoly._raw(F, V.names, {e: c for e, c in t.items() if c})
        if p:
            return p


def random_line(V, rng):
    return random_form(V, 1, rng)


def product_of_lines(V, d, rng):
    p = V.ring_zero() + 1
    for _ in range(d):
        p = p * random_line(V, rng)
    return p


def _proper(V, polys):
    return all(multivariate_gcd(a, b).is_constant()
               for i, a in enumerate(polys) for b in polys[i + 1:])


def random_certified_pair(V, rng, max_degree=3, E_max=4, rational=False, tries=200):
    """Two divisors of degree <= max_degree with a certified proper intersection.

    With ``rational`` the first divisor is a product of lines and every
    intersection point is required to be rational.
    """
    for _ in range(tries):
        d1 = rng.randint(1, max_degree)
        d2 = rng.randint(1, max_degree)
        if rational:
            f1 = product_of_lines(V, d1, rng)
            f2 = product_of_lines(V, d2, rng) if rng.random() < 0.4 else random_form(V, d2, rng)
        else:
            f1 = random_form(V, d1, rng)
            f2 = random_form(V, d2, rng)
        if f1.is_constant() or f2.is_constant() or not _proper(V, [f1, f2]):
            continue
        divisors = [Divisor.of(V, f1), Divisor.of(V, f2)]
        try:
            inter = intersection_scheme(V, divisors, E_max=E_max)
        except NotProperError:
            continue
        if not inter.certified:
            continue
        if rational and any(P.e != 1 for P in inter.points):
            continue
        return divisors, inter
    raise GeometryError("no certified random configuration found")


def random_effective_G(V, points, rng, max_degree=2, tries=100):
    """Effective divisor of degree <= max_degree avoiding ``points`` (may be 0)."""
    for _ in range(tries):
        d = rng.randint(0, max_degree)
        if d == 0:
            return Divisor.zero(V)
        g = random_form(V, d, rng)
        if all(g.evaluate(P.coords) for P in points):
            return Divisor.of(V, g)
    return Divisor.zero(V)


def random_subset(points, rng):
    k = rng.randint(1, len(points))
    idx = sorted(rng.sample(range(len(points)), k))
    return [points[i] for i in idx]
