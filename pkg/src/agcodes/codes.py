"""
Linear codes, Riemann-Roch and differential bases, and the functional,
differential and rectified differential constructions.
"""

from __future__ import annotations

import random
from itertools import product as iproduct

from .forms import DifferentialForm
from .geom import (PROD, PROJ, ChartError, Divisor, GeometryError, NotProperError, Variety,
                   as_divisor, choose_chart, intersection_scheme, principal_divisor_parts)
from .gf import FieldElement
from .linalg import kernel, rref
from .poly import MultiPoly, RationalFunction, multidegree_monomials, multivariate_gcd
from .rectify import (RectifierError, as_function, check_rectifying, construct_rectifier,
                      crt_glue)
from .residue import ResidueContext


class VerificationError(AssertionError):
    """A postcondition that must hold by theory failed."""

    def __init__(self, msg, report=None):
        super().__init__(msg)
        self.report = report


class LinearCode:
    """Row space of a generator matrix, kept in RREF."""

    def __init__(self, field, n, rows=()):
        self.field = field
        self.n = n
        raw = []
        for row in rows:
            if len(row) != n:
                raise ValueError(f"row of length {len(row)} in a code of length {n}")
            raw.append([x.v if isinstance(x, FieldElement) else field(x).v for x in row])
        self._rows, self.pivots = rref(field, raw, n) if raw else ([], [])

    @classmethod
    def _from_raw(cls, field, n, raw):
        C = cls(field, n)
        C._rows, C.pivots = rref(field, raw, n) if raw else ([], [])
        return C

    @classmethod
    def full(cls, field, n):
        return cls._from_raw(field, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def k(self):
        return len(self._rows)

    dimension = k

    @property
    def rows(self):
        F = self.field
        return [[FieldElement(F, x) for x in r] for r in self._rows]

    def raw_rows(self):
        return [list(r) for r in self._rows]

    def dual(self):
        if not self._rows:
            return LinearCode.full(self.field, self.n)
        return LinearCode._from_raw(self.field, self.n, kernel(self.field, self._rows, self.n))

    def contains(self, v):
        raw = [x.v if isinstance(x, FieldElement) else self.field(x).v for x in v]
        return len(rref(self.field, self._rows + [raw], self.n)[0]) == self.k

    def is_subcode_of(self, other):
        self._check(other)
        return all(other.contains(r) for r in self._rows)

    def is_orthogonal_to(self, other):
        self._check(other)
        F = self.field
        for a in self._rows:
            for b in other._rows:
                acc = 0
                for x, y in zip(a, b):
                    if x and y:
                        acc = F.add(acc, F.mul(x, y))
                if acc:
                    return False
        return True

    def __add__(self, other):
        self._check(other)
        return LinearCode._from_raw(self.field, self.n, self._rows + other._rows)

    def kronecker(self, other):
        if other.field is not self.field:
            raise ValueError("Kronecker product of codes over different fields")
        F = self.field
        rows = [[F.mul(x, y) for x in a for y in b] for a in self._rows for b in other._rows]
        return LinearCode._from_raw(F, self.n * other.n, rows)

    def rescale(self, beta):
        F = self.field
        b = [x.v if isinstance(x, FieldElement) else F(x).v for x in beta]
        return LinearCode._from_raw(F, self.n, [[F.mul(x, s) for x, s in zip(r, b)] for r in self._rows])

    def _check(self, other):
        if other.field is not self.field or other.n != self.n:
            raise ValueError("codes of different length or field")

    def __eq__(self, other):
        if not isinstance(other, LinearCode):
            return NotImplemented
        return self.field is other.field and self.n == other.n and self._rows == other._rows

    def __hash__(self):
        return hash((self.n, tuple(map(tuple, self._rows))))

    def to_json(self, provenance=None):
        F = self.field
        out = {"field": {"p": F.p, "m": F.m}, "n": self.n, "k": self.k,
               "generator_rows": [[F.format(x) for x in r] for r in self._rows]}
        if provenance is not None:
            out["provenance"] = provenance
        return out

    def __repr__(self):
        return f"LinearCode(n={self.n}, k={self.k})"

    def __str__(self):
        F = self.field
        body = "; ".join("(" + ", ".join(F.format(x) for x in r) + ")" for r in self._rows)
        return f"[{self.n}, {self.k}] span{{{body}}}"


def code_dual(C):
    return C.dual()


def code_kronecker(C1, C2):
    return C1.kronecker(C2)


def span(field, vectors):
    n = len(vectors[0])
    return LinearCode(field, n, vectors)


# -- bases ---------------------------------------------------------------------

def rr_space_basis(V, G):
    """Basis h*g_B/g_A of L(G), h running over monomials of degree deg g_A - deg g_B."""
    if V.kind not in (PROJ, PROD):
        raise GeometryError(f"unsupported variety kind {V.kind!r}")
    G = as_divisor(V, G) if not isinstance(G, int) else Divisor.zero(V)
    f = G.fraction()
    gA, gB = f.num, f.den
    da = V.degree_of(gA)
    db = V.degree_of(gB)
    degs = [x - y for x, y in zip(da, db)]
    out = []
    for e in multidegree_monomials(V.blocks, degs, V.nvars):
        h = MultiPoly.monomial(V.field, V.names, e)
        b = RationalFunction(h * gB, gA)
        if not (b * f).is_polynomial():
            raise VerificationError(f"{b} is not in L({G})")
        out.append(b)
    return out


def omega_space_basis(V, H, chart=None):
    """phi * du with phi in L(H + K), K the divisor of du on the chart."""
    chart = chart or V.standard_chart()
    H = as_divisor(V, H) if not isinstance(H, int) else Divisor.zero(V)
    if chart != V.standard_chart():
        raise ChartError("differential bases are built on the standard chart")
    return [DifferentialForm(V, chart, chart.dehomogenize(f))
            for f in rr_space_basis(V, H + V.canonical_divisor())]


def _check_support(G, points):
    for P in points:
        if G.support_contains(P):
            raise GeometryError(f"{P} lies on the support of G")


def evaluate_homogeneous(f, P):
    """Value at P of a degree-zero homogeneous fraction."""
    return RationalFunction.of(f).evaluate(P.coords)


def functional_code(points, G):
    points = list(points)
    V = points[0].variety
    G = as_divisor(V, G) if not isinstance(G, int) else Divisor.zero(V)
    _check_support(G, points)
    if any(P.e != 1 for P in points):
        raise GeometryError("code points must be rational")
    rows = [[evaluate_homogeneous(f, P) for P in points] for f in rr_space_basis(V, G)]
    return LinearCode(V.field, len(points), rows)


def _certified(V, divisors, intersection):
    if intersection is None:
        intersection = intersection_scheme(V, divisors)
    intersection.require_certified()
    return intersection


def _residue_code(V, divisors, points, H, chart=None):
    ctx = ResidueContext(V, divisors, chart=chart)
    basis = omega_space_basis(V, H)
    rows = [ctx.residue_vector(w, points) for w in basis]
    return LinearCode(V.field, len(points), rows), basis, ctx


def differential_code_plain(divisors, points, G, intersection=None):
    points = list(points)
    V = points[0].variety
    divisors = [as_divisor(V, D) for D in divisors]
    G = as_divisor(V, G) if not isinstance(G, int) else Divisor.zero(V)
    _check_support(G, points)
    _certified(V, divisors, intersection)
    H = sum(divisors, Divisor.zero(V)) - G
    return _residue_code(V, divisors, points, H)[0]


def theta_positive_part(V, theta):
    return principal_divisor_parts(theta, V)[0]


def differential_code_rectified(divisors, points, theta, G, intersection=None, report=None,
                                check_dual=True):
    points = list(points)
    V = points[0].variety
    divisors = [as_divisor(V, D) for D in divisors]
    G = as_divisor(V, G) if not isinstance(G, int) else Divisor.zero(V)
    _check_support(G, points)
    intersection = _certified(V, divisors, intersection)
    theta = as_function(V, theta)
    if report is None:
        report = check_rectifying(theta, divisors, points, intersection)
    if not report.is_rectifying:
        raise RectifierError(f"theta = {theta} is not rectifying: {report.overall}")
    H = sum(divisors, Divisor.zero(V)) - G
    if not theta.is_constant():
        H = H - theta_positive_part(V, theta)
    C = _residue_code(V, divisors, points, H)[0]
    if check_dual:
        CL = functional_code(points, G)
        if not C.is_orthogonal_to(CL):
            raise VerificationError("rectified differential code is not orthogonal to C_L")
    return C


# -- eta and the round trips ------------------------------------------------------

def eta_construct(divisors, theta, points, intersection, chart=None):
    """eta = g / (f_1 ... f_r) du with Res(theta * eta) = 1 at every point of P."""
    points = list(points)
    V = points[0].variety
    divisors = [as_divisor(V, D) for D in divisors]
    theta = as_function(V, theta)
    intersection.require_certified()
    if chart is None:
        chart = choose_chart(V, intersection.points)
    report = check_rectifying(theta, divisors, points, intersection, chart=chart)
    if not report.is_strict:
        raise RectifierError(f"eta needs a strictly rectifying function, got {report.overall}")
    cs = {p["point"]: p["c"] for p in report.per_point if p["in_P"]}
    centers = [chart.affine_coords(P) for P in points]
    names = chart.names
    targets = [MultiPoly.const(V.field, names, cs[P].inverse()) for P in points]
    g = crt_glue(centers, targets, [1] * len(points))
    prodf = MultiPoly.const(V.field, names, 1)
    for D in divisors:
        prodf = prodf * chart.dehomogenize(D.defining_poly())
    eta = DifferentialForm(V, chart, RationalFunction(g, prodf))
    ctx = ResidueContext(V, divisors, chart=chart)
    te = eta.times(theta)
    for P in points:
        if ctx.residue(te, P) != V.field.one:
            raise VerificationError(f"Res(theta*eta) != 1 at {P}")
    return eta


def _theta_negative_part(V, theta):
    theta = as_function(V, theta)
    if theta.is_constant():
        return Divisor.zero(V)
    return principal_divisor_parts(theta, V)[1]


def strict_differential_as_functional(divisors, points, theta, G, intersection=None):
    """C_Omega(D, P, theta, G) = C_L(P, sum D - G + (eta) - theta^-)."""
    points = list(points)
    V = points[0].variety
    divisors = [as_divisor(V, D) for D in divisors]
    G = as_divisor(V, G) if not isinstance(G, int) else Divisor.zero(V)
    intersection = _certified(V, divisors, intersection)
    eta = eta_construct(divisors, theta, points, intersection)
    Gp = sum(divisors, Divisor.zero(V)) - G + eta.divisor() - _theta_negative_part(V, theta)
    C_omega = differential_code_rectified(divisors, points, theta, G, intersection)
    C_L = functional_code(points, Gp)
    return {"eta": eta, "G_prime": Gp, "differential": C_omega, "functional": C_L,
            "equal": C_omega == C_L}


def find_divisors_through_points(V, points, max_degree=6, trials=40, seed=0, E_max=4,
                                 require_rational=False, degrees=None):
    """r divisors through ``points`` meeting properly (certified)."""
    points = list(points)
    rng = random.Random(seed)
    F = V.field
    if degrees is not None:
        schedule = [list(degrees)]
    else:
        schedule = [[d] * V.r for d in range(1, max_degree + 1)]
    for degs in schedule:
        systems = []
        for d in degs:
            dv = [d] * len(V.blocks)
            mons = multidegree_monomials(V.blocks, dv, V.nvars)
            mat = [[MultiPoly.monomial(F, V.names, e).evaluate(P.coords).v for e in mons]
                   for P in points]
            ker = kernel(F, mat, len(mons)) if mat else [
                [1 if i == j else 0 for i in range(len(mons))] for j in range(len(mons))]
            systems.append((mons, ker))
        if any(not ker for _, ker in systems):
            continue
        for _ in range(trials):
            polys = []
            for mons, ker in systems:
                v = [0] * len(mons)
                for b in ker:
                    c = rng.randrange(F.q)
                    if c:
                        v = [F.add(x, F.mul(c, y)) for x, y in zip(v, b)]
                if not any(v):
                    v = ker[rng.randrange(len(ker))]
                polys.append(MultiPoly._raw(F, V.names, {m: x for m, x in zip(mons, v) if x}))
            if V.r > 1 and any(not multivariate_gcd(a, b).is_constant()
                               for i, a in enumerate(polys) for b in polys[i + 1:]):
                continue
            divisors = [Divisor.of(V, p) for p in polys]
            try:
                inter = intersection_scheme(V, divisors, E_max=E_max)
            except NotProperError:
                continue
            if not inter.certified:
                continue
            if require_rational and any(P.e != 1 for P in inter.points):
                continue
            return divisors, inter
    raise GeometryError(f"no properly intersecting divisors through the points "
                        f"(degrees <= {max_degree}, {trials} trials each)")


def functional_as_strict_differential(points, G, max_degree=6, trials=40, seed=0, attempts=20):
    """Realise C_L(P, G) as a strictly rectified differential code."""
    points = list(points)
    V = points[0].variety
    G = as_divisor(V, G) if not isinstance(G, int) else Divisor.zero(V)
    _check_support(G, points)
    CL = functional_code(points, G)
    last = None
    for k in range(attempts):
        try:
            divisors, inter = find_divisors_through_points(
                V, points, max_degree, trials, seed + 1000 * k, require_rational=True)
            theta, report = construct_rectifier(divisors, points, inter, seed=seed)
        except (GeometryError, RectifierError) as exc:
            last = exc
            continue
        eta = eta_construct(divisors, theta, points, inter)
        Gpp = (sum(divisors, Divisor.zero(V)) + eta.divisor() - G
               - _theta_negative_part(V, theta))
        C = differential_code_rectified(divisors, points, theta, Gpp, inter, report)
        return {"divisors": divisors, "theta": theta, "eta": eta, "G_second": Gpp,
                "functional": CL, "differential": C, "equal": C == CL,
                "attempt": k, "seed": seed}
    raise GeometryError(f"no strict-differential representation found: {last}")


def find_rescaling(A, B, exhaustive_limit=4096, tries=4000, seed=0):
    """beta (all nonzero) with diag(beta) A = B, or None."""
    A._check(B)
    if A.k != B.k:
        return None
    F = A.field
    n = A.n
    Bd = B.dual()
    cons = []
    for a in A.raw_rows():
        for y in Bd.raw_rows():
            cons.append([F.mul(x, z) for x, z in zip(a, y)])
    ker = kernel(F, cons, n) if cons else [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    if not ker:
        return None

    def combine(cf):
        v = [0] * n
        for c, b in zip(cf, ker):
            if c:
                v = [F.add(x, F.mul(c, y)) for x, y in zip(v, b)]
        return v

    def ok(v):
        return all(v) and A.rescale([FieldElement(F, x) for x in v]) == B

    if F.q ** len(ker) <= exhaustive_limit:
        cands = (combine(cf) for cf in iproduct(range(F.q), repeat=len(ker)))
    else:
        rng = random.Random(seed)
        cands = (combine([rng.randrange(F.q) for _ in ker]) for _ in range(tries))
    for v in cands:
        if ok(v):
            return [FieldElement(F, x) for x in v]
    return None


# -- products -----------------------------------------------------------------

def _factor_blocks(V):
    if V.kind == PROJ:
        if V.r != 1:
            raise GeometryError("products are supported for P^1 factors only")
        return 1
    return V.r


def product_variety(VX, VY):
    return Variety(VX.field, PROD, _factor_blocks(VX) + _factor_blocks(VY))


def pullback(f, names, offset):
    """Pull a polynomial or fraction back along a projection to a factor.

    ``names`` are the variables of the product ring; the factor's variables
    land at positions offset, offset+1, ...
    """
    positions = [offset + i for i in range(f.nvars)]
    if isinstance(f, RationalFunction):
        return RationalFunction(f.num.embed_vars(names, positions),
                                f.den.embed_vars(names, positions))
    return f.embed_vars(names, positions)


def pullback_divisor(D, W, offset):
    return Divisor(W, [(pullback(H.poly, W.names, offset), m) for H, m in D.components])


def product_code_check(X, Y):
    """Theorem-style checks for products; X and Y are dicts with keys
    divisors, points, theta, G (points rational, on P^1 or (P^1)^k)."""
    VX = X["points"][0].variety
    VY = Y["points"][0].variety
    if VX.field is not VY.field:
        raise GeometryError("factors over different fields")
    W = product_variety(VX, VY)
    off = VX.nvars
    F = VX.field
    facts = []
    for S, V in ((X, VX), (Y, VY)):
        divs = [as_divisor(V, D) for D in S["divisors"]]
        G = as_divisor(V, S["G"]) if not isinstance(S["G"], int) else Divisor.zero(V)
        theta = as_function(V, S.get("theta"))
        inter = intersection_scheme(V, divs)
        inter.require_certified()
        rep = check_rectifying(theta, divs, S["points"], inter)
        facts.append({"V": V, "divisors": divs, "G": G, "theta": theta, "inter": inter,
                      "report": rep, "points": list(S["points"])})
    fx, fy = facts
    mu = pullback(fx["theta"], W.names, 0) * pullback(fy["theta"], W.names, off)
    divs = ([pullback_divisor(D, W, 0) for D in fx["divisors"]]
            + [pullback_divisor(D, W, off) for D in fy["divisors"]])
    G = pullback_divisor(fx["G"], W, 0) + pullback_divisor(fy["G"], W, off)
    pts = [W.point(list(P.coords) + list(Q.coords)) for P in fx["points"] for Q in fy["points"]]
    inter = intersection_scheme(W, divs)
    inter.require_certified()
    rep = check_rectifying(mu, divs, pts, inter)
    both_strict = fx["report"].is_strict and fy["report"].is_strict
    b_ok = rep.is_rectifying and (rep.is_strict or not both_strict)

    # (c) residues of pulled-back wedge products
    c_ok = True
    bases = []
    for f in facts:
        H = sum(f["divisors"], Divisor.zero(f["V"])) - f["G"]
        if not f["theta"].is_constant():
            H = H - theta_positive_part(f["V"], f["theta"])
        bases.append(omega_space_basis(f["V"], H))
    ctxX = ResidueContext(VX, fx["divisors"])
    ctxY = ResidueContext(VY, fy["divisors"])
    ctxW = ResidueContext(W, divs)
    chartW = W.standard_chart()
    rx = [ctxX.residue_vector(w, fx["points"]) for w in bases[0]]
    ry = [ctxY.residue_vector(w, fy["points"]) for w in bases[1]]
    checked = 0
    for w, vx in zip(bases[0], rx):
        for chi, vy in zip(bases[1], ry):
            phi = (pullback(w.phi, chartW.names, 0)
                   * pullback(chi.phi, chartW.names, w.chart.r))
            psi = DifferentialForm(W, chartW, phi)
            vw = ctxW.residue_vector(psi, pts)
            if vw != [a * b for a in vx for b in vy]:
                c_ok = False
            checked += 1

    # (d) Kronecker equality of the rectified codes
    CX = differential_code_rectified(fx["divisors"], fx["points"], fx["theta"], fx["G"],
                                     fx["inter"], fx["report"])
    CY = differential_code_rectified(fy["divisors"], fy["points"], fy["theta"], fy["G"],
                                     fy["inter"], fy["report"])
    CW = differential_code_rectified(divs, pts, mu, G, inter, rep)
    d_ok = CW == CX.kronecker(CY)
    return {"variety": W, "mu": mu, "points": pts, "report": rep,
            "b": b_ok, "c": c_ok, "d": d_ok, "pairs_checked": checked,
            "code_X": CX, "code_Y": CY, "code_product": CW}

