"""
Rectifying functions: verification, local rectifiers, CRT gluing and
synthesis.
"""

from __future__ import annotations

import random
from itertools import count, product as iproduct

from .geom import ChartError, GeometryError, LocalFrame, as_divisor, choose_chart
from .gf import FieldElement
from .linalg import kernel
from .poly import MultiPoly, RationalFunction, NotRegularError, multidegree_monomials
from .residue import _det_poly, find_param_representation
from .series import series_expand

NOT_RECTIFYING = "NotRectifying"
RECTIFYING = "Rectifying"
STRICT = "StrictlyRectifying"


class RectifierError(ArithmeticError):
    pass


def class_exponents(r, a):
    """Exponents with every entry <= a-1, lexicographic; the last one is (a-1,...)."""
    return list(iproduct(range(a), repeat=r))


class RectifierReport:
    def __init__(self, theta, per_point, overall):
        self.theta = theta
        self.per_point = per_point
        self.overall = overall

    @property
    def is_rectifying(self):
        return self.overall in (RECTIFYING, STRICT)

    @property
    def is_strict(self):
        return self.overall == STRICT

    def c_values(self):
        return [p["c"] for p in self.per_point if p["in_P"]]

    def to_json(self):
        return {
            "theta": str(self.theta),
            "overall": self.overall,
            "monomial_order": "lexicographic over exponents with every entry <= a-1",
            "per_point": [
                {"point": str(p["point"]), "in_P": p["in_P"], "a": p["a"],
                 "class_coeffs": [str(c) for c in p["class_coeffs"]],
                 "c": str(p["c"]), "verdict": p["verdict"]}
                for p in self.per_point
            ],
        }


class _PointData:
    """Frame and representation at one intersection point."""

    def __init__(self, P, divisors, chart=None):
        chart = chart if chart is not None and chart.contains(P) else P.standard_chart()
        self.frame = LocalFrame(P, chart, divisors)
        self.rep = find_param_representation(self.frame)


def as_function(V, theta):
    """Coerce None, constants and polynomials to a RationalFunction on V."""
    if theta is None:
        theta = 1
    if isinstance(theta, (int, FieldElement)):
        return RationalFunction(MultiPoly.const(V.field, V.names, theta))
    return RationalFunction.of(theta)


def _local_theta(theta, frame):
    """theta (homogeneous, degree 0) in the translated coordinates at the frame."""
    theta = RationalFunction.of(theta)
    if not theta.den.evaluate(frame.point.coords):
        raise NotRegularError(f"theta is not regular at {frame.point}", frame.point)
    return frame.local(frame.chart.dehomogenize(theta))


def class_coefficients(R, f_local, frame, a):
    """Coefficients of R*f modulo (x_1^a, ..., x_r^a), in class_exponents order."""
    r = frame.r
    N = r * (a - 1) + 1
    s = series_expand(RationalFunction.of(R) * f_local, [frame.field.zero] * r, N)
    return [s.coeff(e) for e in class_exponents(r, a)]


def check_rectifying(theta, divisors, points, intersection, data=None, chart=None):
    """Apply the rectifying definition at every intersection point.

    The verdict does not depend on the local coordinates, but the constants
    c do; they refer to ``chart`` where it contains the point, else to the
    point's standard chart.
    """
    V = intersection.variety
    intersection.require_certified()
    divisors = [as_divisor(V, D) for D in divisors]
    theta = as_function(V, theta)
    data = data or {}
    inP = set(points)
    for P in points:
        if intersection.multiplicity(P) == 0:
            raise GeometryError(f"{P} is not an intersection point")
    per_point = []
    rect, strict = True, True
    for P, _ in intersection:
        d = data.get(P) or _PointData(P, divisors, chart)
        data[P] = d
        a = d.rep.a
        coeffs = class_coefficients(d.rep.R, _local_theta(theta, d.frame), d.frame, a)
        c = coeffs[-1]
        others_zero = not any(coeffs[:-1])
        if P in inP:
            ok = others_zero
            verdict = (STRICT if c else RECTIFYING) if ok else NOT_RECTIFYING
            if not c:
                strict = False
        else:
            ok = others_zero and not c
            verdict = RECTIFYING if ok else NOT_RECTIFYING
        rect = rect and ok
        per_point.append({"point": P, "in_P": P in inP, "a": a,
                          "class_coeffs": coeffs, "c": c, "verdict": verdict})
    overall = NOT_RECTIFYING if not rect else (STRICT if strict else RECTIFYING)
    return RectifierReport(theta, per_point, overall)


def local_rectifier(frame):
    """s_P = det[s_jl] with f_j = sum_l s_jl x_l (Taylor splitting at the point)."""
    eqs = frame.local_equations
    r = frame.r
    K = frame.field
    names = eqs[0].names
    mat = []
    for f in eqs:
        if f.constant_coeff():
            raise GeometryError(f"{frame.point} is not on every divisor")
        row = [{} for _ in range(r)]
        for e, c in f.raw_terms().items():
            l = next(i for i, x in enumerate(e) if x)
            ee = list(e)
            ee[l] -= 1
            row[l][tuple(ee)] = c
        mat.append([MultiPoly._raw(K, names, t) for t in row])
    return _det_poly(mat)


def _taylor_poly(f, center, l):
    """Polynomial in chart coordinates agreeing with f at ``center`` modulo m^l."""
    f = RationalFunction.of(f)
    s = series_expand(f, center, l)
    p = s.to_poly(f.names)
    return p.translate([-c for c in center])


def crt_glue(points, targets, exponents):
    """theta with theta = theta_i modulo (x_i1^a_i, ..., x_ir^a_i) at every point.

    ``points`` are affine coordinates in one chart; ``targets`` are functions
    (polynomials or fractions in chart coordinates) regular at their point.
    """
    n = len(points)
    if len({tuple(c.v for c in P) for P in points}) != n:
        raise GeometryError("coincident points in CRT gluing")
    r = len(points[0])
    K = points[0][0].field
    names = RationalFunction.of(targets[0]).names
    l = max(r * (a - 1) + 1 for a in exponents)
    one = MultiPoly.const(K, names, 1)
    theta = MultiPoly.zero(K, names)
    for i, Pi in enumerate(points):
        delta = one
        for j, Pj in enumerate(points):
            if j == i:
                continue
            k = next(k for k in range(r) if Pi[k] != Pj[k])
            lam = (MultiPoly.var(K, names, k) - Pj[k]).scale((Pi[k] - Pj[k]).inverse())
            delta = delta * lam ** l
        delta = one - (one - delta) ** l
        t = RationalFunction.of(targets[i])
        if t.field is not K:
            t = t.to_field(K)
        theta = theta + delta * _taylor_poly(t, list(Pi), l)
    return theta


def _require_rational(intersection):
    if any(P.e != 1 for P in intersection.points):
        raise RectifierError(
            "rectifier synthesis with non-rational intersection points is not supported")


def _candidate_monomials(V, chart, k):
    degs = [k] * len(V.blocks)
    return multidegree_monomials(V.blocks, degs, V.nvars)


def _chart_power(V, chart, k):
    p = V.ring_zero() + 1
    for L in chart.linear_forms():
        p = p * L ** k
    return p


def _linear_search(V, divisors, points, intersection, data, max_degree, rng, tries=64):
    chart = choose_chart(V, intersection.points)
    inP = set(points)
    F = V.field
    # without an explicit bound, stop two degrees after the unknowns outnumber the conditions
    nconds = sum(data[P].rep.a ** V.r for P, _ in intersection)
    for k in count():
        if max_degree is not None and k > max_degree:
            break
        mons = _candidate_monomials(V, chart, k)
        if max_degree is None and len(mons) > nconds:
            max_degree = k + 2
        den = _chart_power(V, chart, k)
        rows = []
        crow = []
        for P, _ in intersection:
            d = data[P]
            a = d.rep.a
            cols = []
            for m in mons:
                th = RationalFunction(MultiPoly.monomial(F, V.names, m), den, reduce=False)
                cols.append(class_coefficients(d.rep.R, _local_theta(th, d.frame), d.frame, a))
            nclass = len(cols[0])
            last = nclass - 1 if P in inP else nclass
            for t in range(last):
                rows.append([cols[c][t].v for c in range(len(mons))])
            if P in inP:
                crow.append([cols[c][-1].v for c in range(len(mons))])
        ker = kernel(F, rows, len(mons)) if rows else [
            [1 if i == j else 0 for i in range(len(mons))] for j in range(len(mons))]
        if not ker:
            continue

        def cvals(v):
            return [sum_raw(F, row, v) for row in crow]

        cands = list(ker)
        for _ in range(tries):
            coeffs = [rng.randrange(F.q) for _ in ker]
            v = [0] * len(mons)
            for cf, b in zip(coeffs, ker):
                for i, x in enumerate(b):
                    v[i] = F.add(v[i], F.mul(cf, x))
            cands.append(v)
        for v in cands:
            if any(v) and all(cvals(v)):
                num = MultiPoly._raw(F, V.names, {m: x for m, x in zip(mons, v) if x})
                return RationalFunction(num, den)
    return None


def sum_raw(F, row, v):
    acc = 0
    for x, y in zip(row, v):
        if x and y:
            acc = F.add(acc, F.mul(x, y))
    return acc


def _crt_rectifier(V, divisors, points, intersection):
    chart = choose_chart(V, intersection.points)
    inP = set(points)
    pts, targets, exps = [], [], []
    for P, _ in intersection:
        frame = LocalFrame(P, chart, divisors)
        rep = find_param_representation(frame)
        s = local_rectifier(frame)
        if P not in inP:
            s = s * MultiPoly.var(frame.field, s.names, 0)
        # back to chart coordinates
        s = s.translate([-c for c in frame.center])
        pts.append(frame.center)
        targets.append(s)
        exps.append(rep.a)
    theta = crt_glue(pts, targets, exps)
    return chart.homogenize(theta)


def construct_rectifier(divisors, points, intersection, method="auto", max_degree=None,
                        seed=0, data=None):
    """A strictly rectifying function for (divisors, points)."""
    V = intersection.variety
    intersection.require_certified()
    divisors = [as_divisor(V, D) for D in divisors]
    _require_rational(intersection)
    try:
        choose_chart(V, intersection.points)
    except ChartError as exc:
        raise RectifierError(str(exc)) from None
    data = data if data is not None else {}
    for P, _ in intersection:
        if P not in data:
            data[P] = _PointData(P, divisors)
    theta = None
    if method in ("auto", "linear"):
        theta = _linear_search(V, divisors, points, intersection, data, max_degree,
                               random.Random(seed))
        if theta is None and method == "linear":
            raise RectifierError(f"no rectifier of degree <= {max_degree} found"
                                 if max_degree is not None else "no rectifier found")
    if theta is None:
        theta = _crt_rectifier(V, divisors, points, intersection)
    report = check_rectifying(theta, divisors, points, intersection, data)
    if not report.is_strict:
        raise RectifierError(f"synthesized function is not strictly rectifying: {report.overall}")
    return theta, report


__all__ = [
    "RectifierReport", "RectifierError", "check_rectifying", "local_rectifier",
    "crt_glue", "construct_rectifier", "as_function", "class_exponents", "NOT_RECTIFYING",
    "RECTIFYING", "STRICT",
]
