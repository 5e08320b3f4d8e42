"""
Top-degree differential forms phi * du_1 ^ ... ^ du_r on a chart.

Every top form is Psi * Omega with Omega the Euler form (product of the
per-block Euler forms) and Psi homogeneous of degree -(block size) in each
block; on a chart Omega restricts to a constant multiple of du.
"""

from __future__ import annotations

from .geom import Divisor
from .poly import RationalFunction


class DifferentialForm:
    __slots__ = ("variety", "chart", "phi")

    def __init__(self, variety, chart, phi):
        self.variety = variety
        self.chart = chart
        self.phi = RationalFunction.of(phi)

    @classmethod
    def from_homogeneous(cls, variety, psi, chart=None):
        """The form Psi * Omega, written on ``chart`` (default: standard chart)."""
        chart = chart or variety.standard_chart()
        psi = RationalFunction.of(psi)
        phi = chart.dehomogenize(psi) * chart.euler_factor()
        return cls(variety, chart, phi)

    def homogeneous_coefficient(self):
        """Psi with self = Psi * Omega."""
        V = self.variety
        C = self.chart
        h = C.homogenize(self.phi)
        den = V.ring_zero() + 1
        for L, b in zip(C.linear_forms(), V.blocks):
            den = den * L ** len(b)
        return RationalFunction(h.num, h.den * den) * C.euler_factor().inverse()

    def divisor(self):
        return Divisor.from_fraction(self.variety, self.homogeneous_coefficient())

    def to_chart(self, chart):
        """Transport by the exact Jacobian determinant of the coordinate change."""
        if chart == self.chart:
            return self
        V = self.variety
        sec = chart.section()
        # old coordinates u_i = X_i / L_b as functions of the new coordinates
        Ls = [L.substitute(sec) for L in self.chart.linear_forms()]
        blk = {}
        for k, b in enumerate(V.blocks):
            for i in b:
                blk[i] = k
        u = [RationalFunction(sec[i], Ls[blk[i]]) for i in self.chart.coord_index]
        r = len(u)
        jac = [[u[i].derivative(j) for j in range(r)] for i in range(r)]
        J = _rf_det(jac)
        phi = _compose(self.phi, u)
        return DifferentialForm(V, chart, phi * J)

    def to_chart_euler(self, chart):
        """Transport through the homogeneous coefficient (independent route)."""
        return DifferentialForm.from_homogeneous(self.variety, self.homogeneous_coefficient(), chart)

    def __add__(self, other):
        other = other.to_chart(self.chart)
        return DifferentialForm(self.variety, self.chart, self.phi + other.phi)

    def __neg__(self):
        return DifferentialForm(self.variety, self.chart, -self.phi)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return DifferentialForm(self.variety, self.chart, self.phi * c)

    def times(self, f):
        """Multiply by a function; ``f`` homogeneous of degree 0 or already in chart coordinates."""
        f = RationalFunction.of(f)
        if f.nvars == self.variety.nvars and f.nvars != self.chart.r:
            f = self.chart.dehomogenize(f)
        return DifferentialForm(self.variety, self.chart, self.phi * f)

    def __eq__(self, other):
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        return self.phi == other.to_chart(self.chart).phi

    def __str__(self):
        du = "^".join("d" + n for n in self.chart.names)
        return f"({self.phi}) {du}"

    def __repr__(self):
        return f"DifferentialForm({self} on {self.chart})"


def _compose(f, u):
    """f(u_1, ..., u_r) for rational arguments u_i."""
    f = RationalFunction.of(f)

    def ev(p):
        acc = RationalFunction(u[0].num.like(0))
        cache = {}
        for e, c in p.terms.items():
            t = RationalFunction(u[0].num.like(c))
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in cache:
                        cache[(i, k)] = u[i] ** k
                    t = t * cache[(i, k)]
            acc = acc + t
        return acc

    return ev(f.num) / ev(f.den)


def _rf_det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = None
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        t = m[0][j] * _rf_det(minor)
        if j % 2:
            t = -t
        total = t if total is None else total + t
    return total


def volume_form(variety, chart=None):
    chart = chart or variety.standard_chart()
    return DifferentialForm(variety, chart, chart.chart_ring() + 1)
