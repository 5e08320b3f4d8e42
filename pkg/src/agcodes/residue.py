"""
Grothendieck residues at points of a proper intersection of divisors.
"""

from __future__ import annotations

from .geom import GeometryError, LocalAlgebra, LocalFrame, NotProperError, as_divisor
from .gf import trace_to_subfield
from .linalg import solve
from .poly import MultiPoly, RationalFunction, NotRegularError, monomials_upto
from .series import series_expand

A_MAX = 8


class RepresentationError(ArithmeticError):
    pass


class ParamRepresentation:
    """u_i * x_i^a = sum_j rt[i][j] * f_j exactly, with u_i(P) = 1.

    Everything lives in the translated local coordinates over the point's
    field.  R = det(rt) / prod(u_i).
    """

    def __init__(self, frame, a, u, rt):
        self.frame = frame
        self.a = a
        self.u = u
        self.rt = rt
        self.R = _det_poly(rt) if len(rt) > 1 else rt[0][0]
        den = u[0]
        for x in u[1:]:
            den = den * x
        self.R = RationalFunction(self.R, den)

    def check(self):
        f = self.frame.local_equations
        r = len(f)
        for i in range(r):
            x = MultiPoly.var(self.frame.field, f[i].names, i) ** self.a
            lhs = self.u[i] * x
            rhs = f[0].like(0)
            for j in range(r):
                rhs = rhs + self.rt[i][j] * f[j]
            if lhs != rhs:
                return False
            if self.u[i].constant_coeff() != 1:
                return False
        return True

    def __repr__(self):
        return f"ParamRepresentation(a={self.a}, R={self.R})"


def _det_poly(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = None
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        t = m[0][j] * _det_poly(minor)
        if j % 2:
            t = -t
        total = t if total is None else total + t
    return total


def _solve_row(frame, i, a, d):
    """Find u_i (deg <= d, u_i(0) = 1) and rt_ij (deg <= d); None if impossible."""
    K = frame.field
    f = frame.local_equations
    r = len(f)
    names = f[0].names
    umons = [m for m in monomials_upto(r, d) if sum(m)]
    rmons = monomials_upto(r, d)
    xa = tuple(a if k == i else 0 for k in range(r))
    unknowns = [("u", m) for m in umons] + [("r", j, m) for j in range(r) for m in rmons]
    cols = {}
    # build columns: each unknown contributes a polynomial
    contrib = []
    for unk in unknowns:
        if unk[0] == "u":
            m = unk[1]
            p = {tuple(x + y for x, y in zip(m, xa)): 1}
        else:
            _, j, m = unk
            p = {}
            for e, c in f[j].raw_terms().items():
                ee = tuple(x + y for x, y in zip(m, e))
                p[ee] = K.neg(c)
        contrib.append(p)
        for e in p:
            cols.setdefault(e, len(cols))
    cols.setdefault(xa, len(cols))
    nrows = len(cols)
    mat = [[0] * len(unknowns) for _ in range(nrows)]
    for k, p in enumerate(contrib):
        for e, c in p.items():
            mat[cols[e]][k] = K.add(mat[cols[e]][k], c)
    rhs = [0] * nrows
    rhs[cols[xa]] = K.neg(1)
    sol = solve(K, mat, rhs, len(unknowns))
    if sol is None:
        return None
    u = MultiPoly._raw(K, names, {(0,) * r: 1})
    rt = [MultiPoly._raw(K, names, {}) for _ in range(r)]
    for unk, v in zip(unknowns, sol):
        if not v:
            continue
        if unk[0] == "u":
            u = u + MultiPoly._raw(K, names, {unk[1]: v})
        else:
            _, j, m = unk
            rt[j] = rt[j] + MultiPoly._raw(K, names, {m: v})
    return u, rt


def minimal_exponent(frame, a_max=A_MAX):
    """Smallest a with every x_i^a in the ideal of the local equations."""
    alg = LocalAlgebra(frame.local_equations, frame.field)
    alg.multiplicity()
    r = frame.r
    names = frame.local_equations[0].names
    for a in range(1, a_max + 1):
        if all(alg.contains(MultiPoly.var(frame.field, names, i) ** a) for i in range(r)):
            return a
    raise RepresentationError(f"no exponent a <= {a_max} with m^a inside the ideal")


def find_param_representation(frame, a=None, a_max=A_MAX, d_max=None, d_start=0):
    """Exact representation of x_i^a through the local equations.

    The smallest admissible a is found first (local-algebra membership), then
    for each i the degree bound d grows until the linear system is solvable.
    """
    f = frame.local_equations
    if len(f) != frame.r:
        raise GeometryError("need r local equations")
    if any(p.constant_coeff() for p in f):
        raise GeometryError(f"{frame.point} is not on every divisor")
    if a is None:
        a = minimal_exponent(frame, a_max)
    maxdeg = max(p.degree() for p in f)
    if d_max is None:
        d_max = 4 * a * maxdeg
    u, rt = [], []
    for i in range(frame.r):
        for d in range(d_start, d_max + 1):
            res = _solve_row(frame, i, a, d)
            if res is not None:
                u.append(res[0])
                rt.append(res[1])
                break
        else:
            raise RepresentationError(
                f"no representation of x_{i}^{a} with degree <= {d_max} (a <= {a_max})")
    return ParamRepresentation(frame, a, u, rt)


def residue_symbol(phi, frame, a_vec, local=True, trace=True):
    """Coefficient of x^(a-1) in phi's expansion at the frame's point, traced."""
    phi = RationalFunction.of(phi)
    if not local:
        phi = frame.local(phi)
    r = frame.r
    N = sum(x - 1 for x in a_vec) + 1
    zero = [frame.field.zero] * r
    s = series_expand(phi, zero, N)
    c = s.coeff(tuple(x - 1 for x in a_vec))
    if trace:
        return _trace(c, frame)
    return c


def _trace(c, frame):
    base = frame.point.variety.field
    if c.field is base:
        return c
    return trace_to_subfield(c, c.field.base_degree)


def _local_phi(omega, frame):
    """f_1 ... f_r * (coefficient of omega on the frame's chart), regular at P."""
    w = omega.to_chart(frame.chart)
    prodf = frame.equations[0]
    for f in frame.equations[1:]:
        prodf = prodf * f
    phi = w.phi * prodf
    phi_loc = frame.local(phi)
    if not phi_loc.den.constant_coeff():
        raise NotRegularError(
            f"f_1...f_r * omega is not regular at {frame.point}", frame.point)
    return phi_loc


def residue_wrt_divisors(omega, divisors, P, frame=None, rep=None, trace=True):
    """Res_P [omega / D_1, ..., D_r]."""
    V = P.variety
    if frame is None:
        frame = LocalFrame(P, P.standard_chart(), divisors)
    if not frame.on_all():
        raise GeometryError(f"{P} does not lie on every divisor")
    if rep is None:
        rep = find_param_representation(frame)
    phi = _local_phi(omega, frame)
    a = rep.a
    return residue_symbol(rep.R * phi, frame, [a] * V.r, trace=trace)


class ResidueContext:
    """Caches frames and representations for one divisor family."""

    def __init__(self, variety, divisors, intersection=None, chart=None):
        self.variety = variety
        self.divisors = [as_divisor(variety, D) for D in divisors]
        self.intersection = intersection
        self.chart = chart
        self._frames = {}
        self._reps = {}

    def frame(self, P):
        if P not in self._frames:
            chart = self.chart if self.chart is not None and self.chart.contains(P) else P.standard_chart()
            self._frames[P] = LocalFrame(P, chart, self.divisors)
        return self._frames[P]

    def rep(self, P):
        if P not in self._reps:
            self._reps[P] = find_param_representation(self.frame(P))
        return self._reps[P]

    def residue(self, omega, P, trace=True):
        return residue_wrt_divisors(omega, self.divisors, P, self.frame(P), self.rep(P), trace)

    def residue_vector(self, omega, points):
        return [self.residue(omega, P) for P in points]


def verify_residue_theorem(variety, divisors, omega, intersection):
    """Sum of residues of omega over all geometric intersection points."""
    if not intersection.certified:
        raise NotProperError("residue theorem needs a certified intersection")
    ctx = ResidueContext(variety, divisors, intersection)
    base = variety.field
    per_point = []
    by_field = {}
    for P, m in intersection:
        frame = ctx.frame(P)
        rep = ctx.rep(P)
        res = residue_wrt_divisors(omega, ctx.divisors, P, frame, rep, trace=False)
        per_point.append({"point": str(P), "field_degree": P.e, "residue": str(res),
                          "a": rep.a, "multiplicity": m})
        K = res.field
        by_field[K] = by_field.get(K, K.zero) + res
    total = base.zero
    for K, s in by_field.items():
        total = total + (s if K is base else K.pullback(s))
    return {"per_point": per_point, "total": total}


def residue_vector(omega, divisors, points, ctx=None):
    V = points[0].variety
    ctx = ctx or ResidueContext(V, divisors)
    return ctx.residue_vector(omega, points)

