"""
Ambient varieties P^r and (P^1)^r, points, divisors, charts, local frames and
intersections of divisor families.
"""

from __future__ import annotations

from itertools import permutations, product as iproduct
from math import gcd, prod

from .gf import FieldElement, min_field_degree
from .linalg import rank
from .poly import MultiPoly, RationalFunction, monomials_upto


class GeometryError(ValueError):
    """Precondition violated on geometric input."""


class ChartError(GeometryError):
    pass


class NotProperError(GeometryError):
    pass


PROJ = "ProjSpace"
PROD = "ProductP1"


def _default_names(kind, r):
    if kind == PROJ:
        if r == 1:
            return ("X", "Z")
        if r == 2:
            return ("X", "Y", "Z")
        return tuple(f"X{i}" for i in range(r + 1))
    return tuple(n for i in range(1, r + 1) for n in (f"X{i}", f"Z{i}"))


class Variety:
    def __init__(self, field, kind, r, names=None):
        if kind not in (PROJ, PROD):
            raise GeometryError(f"unsupported variety kind {kind!r}")
        if r < 1:
            raise GeometryError("dimension must be at least 1")
        self.field = field
        self.kind = kind
        self.r = r
        self.names = tuple(names) if names else _default_names(kind, r)
        if kind == PROJ:
            self.blocks = [tuple(range(r + 1))]
        else:
            self.blocks = [(2 * i, 2 * i + 1) for i in range(r)]
        if len(self.names) != sum(len(b) for b in self.blocks):
            raise GeometryError("wrong number of coordinate names")

    @property
    def nvars(self):
        return len(self.names)

    def ring_zero(self):
        return MultiPoly.zero(self.field, self.names)

    def var(self, i):
        return MultiPoly.var(self.field, self.names, i)

    def __eq__(self, other):
        return (isinstance(other, Variety) and self.field is other.field
                and self.kind == other.kind and self.r == other.r)

    def __hash__(self):
        return hash((id(self.field), self.kind, self.r))

    def __repr__(self):
        return f"Variety({self.kind}, r={self.r}, {self.field!r})"

    def degree_of(self, poly):
        """(Multi)degree vector of a (multi)homogeneous polynomial."""
        if not poly:
            raise GeometryError("zero polynomial has no degree")
        if not poly.is_homogeneous(self.blocks):
            raise GeometryError(f"{poly} is not homogeneous for {self.kind}")
        e = next(iter(poly.raw_terms()))
        return tuple(sum(e[i] for i in b) for b in self.blocks)

    def point(self, coords, field=None):
        return VarietyPoint(self, coords, field)

    def standard_chart(self):
        forms = []
        for b in self.blocks:
            forms.append(tuple([0] * (len(b) - 1) + [1]))
        return Chart(self, forms)

    def rational_points(self):
        """All GF(q)-points, in the order of :func:`enumerate_points`."""
        return enumerate_points(self, 1)

    def canonical_divisor(self):
        """Divisor of the standard-chart volume form dx."""
        if self.kind == PROJ:
            return Divisor(self, [(Hypersurface(self, self.var(self.nvars - 1)), -(self.r + 1))])
        return Divisor(self, [(Hypersurface(self, self.var(b[1])), -2) for b in self.blocks])


# -- points ----------------------------------------------------------------

class VarietyPoint:
    """Normalized so the last nonzero coordinate of every block is 1."""

    __slots__ = ("variety", "coords", "field", "e")

    def __init__(self, variety, coords, field=None):
        flat = []
        for c in coords:
            if isinstance(c, (list, tuple)):
                flat.extend(c)
            else:
                flat.append(c)
        if len(flat) != variety.nvars:
            raise GeometryError(f"point needs {variety.nvars} coordinates, got {len(flat)}")
        if field is None:
            fields = {c.field for c in flat if isinstance(c, FieldElement)}
            if len(fields) > 1:
                raise GeometryError("point coordinates lie in different fields")
            field = fields.pop() if fields else variety.field
        vals = [field(c) if not isinstance(c, FieldElement) or c.field is not field else c
                for c in flat]
        for b in variety.blocks:
            nz = [i for i in b if vals[i]]
            if not nz:
                raise GeometryError("all coordinates of a factor are zero")
            s = vals[nz[-1]].inverse()
            for i in b:
                vals[i] = vals[i] * s
        self.variety = variety
        self.coords = tuple(vals)
        self.field = field
        e = 1
        if field is not variety.field:
            for v in vals:
                d = min_field_degree(v)
                e = e * d // gcd(e, d)
        self.e = e

    def block(self, k):
        return tuple(self.coords[i] for i in self.variety.blocks[k])

    def pivots(self):
        """Index of the last nonzero coordinate in every block."""
        return [max(i for i in b if self.coords[i]) for b in self.variety.blocks]

    def is_rational(self):
        return self.e == 1

    def standard_chart(self):
        V = self.variety
        forms = []
        for b, j in zip(V.blocks, self.pivots()):
            forms.append(tuple(1 if i == j else 0 for i in b))
        return Chart(V, forms)

    def to_field(self, K):
        return VarietyPoint(self.variety, [K(c) for c in self.coords], K)

    def key(self):
        return tuple(c.v for c in self.coords)

    def __eq__(self, other):
        return (isinstance(other, VarietyPoint) and self.field is other.field
                and self.coords == other.coords)

    def __hash__(self):
        return hash((id(self.field), self.key()))

    def __str__(self):
        parts = ["[" + ":".join(str(self.coords[i]) for i in b) + "]" for b in self.variety.blocks]
        if len(parts) == 1:
            return parts[0]
        return "(" + ", ".join(parts) + ")"

    def __repr__(self):
        return f"VarietyPoint({self})"


# -- hypersurfaces and divisors ----------------------------------------------

class Hypersurface:
    def __init__(self, variety, poly):
        if isinstance(poly, RationalFunction):
            poly = poly.as_poly()
        if not poly:
            raise GeometryError("hypersurface of the zero polynomial")
        if poly.nvars != variety.nvars:
            raise GeometryError("polynomial has the wrong number of variables")
        self.variety = variety
        self.poly = poly
        self._key = poly.monic()
        self.degree = variety.degree_of(poly)

    def contains(self, P):
        return not self.poly.evaluate(P.coords)

    def __eq__(self, other):
        # equal up to a nonzero scalar
        return isinstance(other, Hypersurface) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __str__(self):
        return f"V({self.poly})"


class Divisor:
    """Formal integer combination of hypersurfaces."""

    def __init__(self, variety, components=()):
        self.variety = variety
        merged = {}
        order = []
        for H, m in components:
            if not isinstance(H, Hypersurface):
                H = Hypersurface(variety, H)
            if H.poly.is_constant():
                continue
            if H not in merged:
                order.append(H)
                merged[H] = 0
            merged[H] += m
        self.components = [(H, merged[H]) for H in order if merged[H]]

    @classmethod
    def zero(cls, variety):
        return cls(variety, [])

    @classmethod
    def of(cls, variety, poly, mult=1):
        return cls(variety, [(Hypersurface(variety, poly), mult)])

    @classmethod
    def from_fraction(cls, variety, f):
        """V(num) - V(den) of a reduced homogeneous fraction."""
        f = RationalFunction.of(f)
        comps = []
        if not f.num.is_constant():
            comps.append((Hypersurface(variety, f.num), 1))
        if not f.den.is_constant():
            comps.append((Hypersurface(variety, f.den), -1))
        return cls(variety, comps)

    def __add__(self, other):
        if other == 0:
            return self
        return Divisor(self.variety, self.components + other.components)

    __radd__ = __add__

    def __neg__(self):
        return Divisor(self.variety, [(H, -m) for H, m in self.components])

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k):
        return Divisor(self.variety, [(H, k * m) for H, m in self.components])

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.components
        if not isinstance(other, Divisor):
            return NotImplemented
        return set(self.components) == set(other.components)

    def __hash__(self):
        return hash(frozenset(self.components))

    def is_zero(self):
        return not self.components

    def degree(self):
        n = len(self.variety.blocks)
        d = [0] * n
        for H, m in self.components:
            for i in range(n):
                d[i] += m * H.degree[i]
        return tuple(d)

    def is_effective(self):
        return all(m > 0 for _, m in self.components)

    def positive_part(self):
        return Divisor(self.variety, [(H, m) for H, m in self.components if m > 0])

    def negative_part(self):
        return Divisor(self.variety, [(H, -m) for H, m in self.components if m < 0])

    def defining_poly(self):
        """Product of component polynomials to their multiplicities (effective only)."""
        if not self.is_effective():
            raise GeometryError("defining polynomial of a non-effective divisor")
        p = self.variety.ring_zero() + 1
        for H, m in self.components:
            p = p * H.poly ** m
        return p

    def fraction(self):
        """Reduced g_A / g_B with (formal) cancellations between components removed."""
        num = self.variety.ring_zero() + 1
        den = self.variety.ring_zero() + 1
        for H, m in self.components:
            if m > 0:
                num = num * H.poly ** m
            else:
                den = den * H.poly ** (-m)
        return RationalFunction(num, den)

    def net_parts(self):
        """(A, B) effective with A - B linearly... equal to self, no shared factors."""
        f = self.fraction()
        V = self.variety
        A = Divisor.of(V, f.num) if not f.num.is_constant() else Divisor.zero(V)
        B = Divisor.of(V, f.den) if not f.den.is_constant() else Divisor.zero(V)
        return A, B

    def support_contains(self, P):
        f = self.fraction()
        return (not f.num.evaluate(P.coords)) or (not f.den.evaluate(P.coords))

    def __str__(self):
        if not self.components:
            return "0"
        return " + ".join(f"{m}*{H}" for H, m in self.components)

    def __repr__(self):
        return f"Divisor({self})"


def as_divisor(V, d):
    if isinstance(d, Divisor):
        return d
    if isinstance(d, Hypersurface):
        return Divisor(V, [(d, 1)])
    return Divisor.of(V, d)


# -- charts ----------------------------------------------------------------

class Chart:
    """Complement of V(L_1 ... L_k), one linear form per block."""

    def __init__(self, variety, forms):
        F = variety.field
        self.variety = variety
        fs = []
        for b, f in zip(variety.blocks, forms):
            f = tuple(F(c) for c in f)
            if len(f) != len(b) or not any(f):
                raise ChartError(f"bad chart form {f}")
            fs.append(f)
        if len(fs) != len(variety.blocks):
            raise ChartError("need one linear form per block")
        self.forms = tuple(fs)
        self.pivots = []
        self.coord_index = []
        for b, f in zip(variety.blocks, fs):
            j = max(k for k in range(len(b)) if f[k])
            self.pivots.append(b[j])
            self.coord_index.extend(i for i in b if i != b[j])
        self.names = tuple(variety.names[i].lower() for i in self.coord_index)

    @property
    def r(self):
        return len(self.coord_index)

    def key(self):
        return tuple(tuple(c.v for c in f) for f in self.forms)

    def __eq__(self, other):
        return isinstance(other, Chart) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def linear_forms(self):
        V = self.variety
        out = []
        for b, f in zip(V.blocks, self.forms):
            L = V.ring_zero()
            for i, c in zip(b, f):
                if c:
                    L = L + V.var(i).scale(c)
            out.append(L)
        return out

    def __str__(self):
        return "; ".join(str(L) + "!=0" for L in self.linear_forms())

    def __repr__(self):
        return f"Chart({self})"

    def block_values(self, P):
        V = self.variety
        out = []
        for b, f in zip(V.blocks, self.forms):
            acc = P.field.zero
            for i, c in zip(b, f):
                acc = acc + P.field(c) * P.coords[i] if P.field is not c.field else acc + c * P.coords[i]
            out.append(acc)
        return out

    def contains(self, P):
        return all(self.block_values(P))

    def affine_coords(self, P):
        if P.variety != self.variety:
            raise ChartError("point on a different variety")
        vals = self.block_values(P)
        if not all(vals):
            raise ChartError(f"{P} is not in the chart {self}")
        blk = {}
        for k, b in enumerate(self.variety.blocks):
            for i in b:
                blk[i] = k
        return tuple(P.coords[i] / vals[blk[i]] for i in self.coord_index)

    def point_from_affine(self, u, field=None):
        """Inverse of affine_coords."""
        field = field or (u[0].field if u and isinstance(u[0], FieldElement) else self.variety.field)
        sec = self.section()
        vals = [p.evaluate(list(u)) if p.nvars else p.constant_coeff() for p in sec]
        vals = [field(v) if v.field is not field else v for v in vals]
        return VarietyPoint(self.variety, vals, field)

    def chart_ring(self, field=None):
        return MultiPoly.zero(field or self.variety.field, self.names)

    def section(self):
        """Homogeneous coordinates as polynomials in the chart coordinates (L_b = 1)."""
        V = self.variety
        F = V.field
        pos = {i: k for k, i in enumerate(self.coord_index)}
        out = [None] * V.nvars
        for b, f, j in zip(V.blocks, self.forms, self.pivots):
            jj = b.index(j)
            lj_inv = f[jj].inverse()
            acc = MultiPoly.const(F, self.names, 1)
            for i, c in zip(b, f):
                if i == j:
                    continue
                u = MultiPoly.var(F, self.names, pos[i])
                out[i] = u
                if c:
                    acc = acc - u.scale(c)
            out[j] = acc.scale(lj_inv)
        return out

    def dehomogenize(self, f):
        sec = self.section()
        if isinstance(f, RationalFunction):
            return RationalFunction(f.num.substitute(sec), f.den.substitute(sec))
        return f.substitute(sec)

    def homogenize_poly(self, p):
        """(P, degrees) with P(X) = p(X/L) * prod L_b^{d_b}; d_b = block degree of p."""
        V = self.variety
        F = p.field
        Ls = self.linear_forms()
        if F is not V.field:
            Ls = [L.to_field(F) for L in Ls]
        nb = len(V.blocks)
        blk_of = []
        for k, b in enumerate(V.blocks):
            blk_of.extend([k] * (len(b) - 1))
        degs = [0] * nb
        for e in p.raw_terms():
            bd = [0] * nb
            for k, x in zip(blk_of, e):
                bd[k] += x
            degs = [max(a, c) for a, c in zip(degs, bd)]
        out = MultiPoly.zero(F, V.names)
        Lpow = [[L ** k for k in range(d + 1)] for L, d in zip(Ls, degs)]
        for e, c in p.raw_terms().items():
            ee = [0] * V.nvars
            bd = [0] * nb
            for k, (i, x) in enumerate(zip(self.coord_index, e)):
                ee[i] = x
                bd[blk_of[k]] += x
            term = MultiPoly.monomial(F, V.names, ee, FieldElement(F, c))
            for k in range(nb):
                if degs[k] - bd[k]:
                    term = term * Lpow[k][degs[k] - bd[k]]
            out = out + term
        return out, tuple(degs)

    def homogenize(self, f):
        """Degree-zero homogeneous fraction equal to f on the chart."""
        f = RationalFunction.of(f)
        n, dn = self.homogenize_poly(f.num)
        d, dd = self.homogenize_poly(f.den)
        Ls = self.linear_forms()
        for k, L in enumerate(Ls):
            diff = dd[k] - dn[k]
            if diff > 0:
                n = n * L.to_field(n.field) ** diff
            elif diff < 0:
                d = d * L.to_field(d.field) ** (-diff)
        if not f.den.is_constant():
            return RationalFunction(n, d)
        # d is a product of chart forms, so trial division replaces the gcd
        for L in Ls:
            L = L.to_field(n.field)
            while not d.is_constant() and L.divides(d) and L.divides(n):
                n, d = n.exact_div(L), d.exact_div(L)
        return RationalFunction(n, d, reduce=False)

    def euler_factor(self):
        """Constant c with Omega = c * du on this chart."""
        V = self.variety
        c = V.field.one
        for b, f, j in zip(V.blocks, self.forms, self.pivots):
            jj = b.index(j)
            s = f[jj].inverse()
            c = c * (s if jj % 2 == 0 else -s)
        return c


def _forms_in_order(F, n):
    """Nonzero linear forms in n variables up to scaling (last nonzero coeff 1)."""
    elems = F.elements()
    nonzero = [x for x in elems if x]
    supports = []
    for size in range(1, n + 1):
        subs = [s for s in _subsets(n, size)]
        subs.sort(key=lambda S: tuple(-i for i in sorted(S, reverse=True)))
        supports.extend(subs)
    for S in supports:
        S = sorted(S)
        free = S[:-1]
        for combo in iproduct(nonzero, repeat=len(free)):
            f = [F.zero] * n
            f[S[-1]] = F.one
            for i, c in zip(free, combo):
                f[i] = c
            yield tuple(f)


def _subsets(n, k):
    if k == 0:
        yield ()
        return
    for i in range(n):
        for rest in _subsets(n - i - 1, k - 1):
            yield (i,) + tuple(x + i + 1 for x in rest)


def choose_chart(V, pts):
    """A chart over the base field containing every point of ``pts``."""
    pts = list(pts)
    forms = []
    for k, b in enumerate(V.blocks):
        found = None
        for f in _forms_in_order(V.field, len(b)):
            ok = True
            for P in pts:
                acc = P.field.zero
                for i, c in zip(b, f):
                    if c:
                        acc = acc + P.field(c) * P.coords[i] if P.field is not c.field else acc + c * P.coords[i]
                if not acc:
                    ok = False
                    break
            if ok:
                found = f
                break
        if found is None:
            raise ChartError("no common affine chart over the base field")
        forms.append(found)
    return Chart(V, forms)


# -- local frames ------------------------------------------------------------

class LocalFrame:
    """Chart coordinates translated to P, and local equations of divisors.

    ``equations`` are the dehomogenized defining polynomials (chart
    coordinates, base field); ``local_equations`` are the same translated to
    the point, over the point's field.
    """

    def __init__(self, P, chart, divisors):
        if not chart.contains(P):
            raise ChartError(f"{P} is not in the chart {chart}")
        V = P.variety
        self.point = P
        self.chart = chart
        self.field = P.field
        self.center = chart.affine_coords(P)
        self.local_vars = tuple(
            n if not c else f"{n}-({c})" for n, c in zip(chart.names, self.center))
        self.divisors = [as_divisor(V, D) for D in divisors]
        self.equations = [chart.dehomogenize(D.defining_poly()) for D in self.divisors]
        self.local_equations = [f.translate(self.center) for f in self.equations]

    @property
    def r(self):
        return self.chart.r

    def local(self, f):
        """Translate a chart-coordinate polynomial or fraction to the point."""
        if isinstance(f, RationalFunction):
            return RationalFunction(f.num.translate(self.center), f.den.translate(self.center))
        return f.translate(self.center)

    def on_all(self):
        return all(not f.constant_coeff() for f in self.local_equations)

    def __repr__(self):
        return f"LocalFrame({self.point}, {self.chart})"


def local_frame(P, chart, divisors):
    return LocalFrame(P, chart, divisors)


def principal_divisor_parts(f, V, chart=None):
    """((f)^+, (f)^-) for a reduced fraction.

    ``f`` is either a degree-zero homogeneous fraction or, with ``chart``,
    a function in chart coordinates that is homogenized first.
    """
    f = RationalFunction.of(f)
    if f.is_zero():
        raise GeometryError("the zero function has no divisor")
    if chart is not None:
        f = chart.homogenize(f)
    if f.num.nvars != V.nvars:
        raise GeometryError("function is not in the homogeneous coordinate ring")
    dn = V.degree_of(f.num)
    dd = V.degree_of(f.den)
    if dn != dd:
        raise GeometryError("numerator and denominator have different degrees")
    D = Divisor.from_fraction(V, f)
    return D.positive_part(), D.negative_part()


def bezout_number(V, divisors):
    divisors = [as_divisor(V, D) for D in divisors]
    if len(divisors) != V.r:
        raise GeometryError(f"need exactly {V.r} divisors, got {len(divisors)}")
    if not all(D.is_effective() for D in divisors):
        raise GeometryError("Bezout number needs effective divisors")
    degs = [D.degree() for D in divisors]
    if V.kind == PROJ:
        return prod(d[0] for d in degs)
    n = V.r
    return sum(prod(degs[i][s[i]] for i in range(n)) for s in permutations(range(n)))


# -- local algebra -----------------------------------------------------------

class LocalAlgebra:
    """Truncations K[x]/(I + m^N) of the local ring at a point modulo I."""

    def __init__(self, equations, field, N_max=20):
        self.eqs = [e for e in equations]
        self.field = field
        self.n = equations[0].nvars if equations else 0
        self.N_max = N_max
        self._mult = None
        self._N = None
        self._ech = None
        self._cols = None

    def _rows(self, N):
        mons = monomials_upto(self.n, N - 1)
        col = {m: i for i, m in enumerate(mons)}
        F = self.field
        rows = []
        for f in self.eqs:
            t = f.raw_terms()
            mind = f.min_degree()
            if mind < 0:
                continue
            for m in monomials_upto(self.n, N - 1 - mind):
                row = [0] * len(mons)
                nz = False
                for e, c in t.items():
                    ee = tuple(a + b for a, b in zip(e, m))
                    if sum(ee) < N:
                        row[col[ee]] = F.add(row[col[ee]], c)
                        nz = True
                if nz:
                    rows.append(row)
        return mons, col, rows

    def dimension(self, N):
        mons, _, rows = self._rows(N)
        return len(mons) - (rank(self.field, rows) if rows else 0)

    def multiplicity(self):
        if self._mult is None:
            prev = self.dimension(1)
            for N in range(2, self.N_max + 1):
                d = self.dimension(N)
                if d == prev:
                    self._mult, self._N = d, N - 1
                    break
                prev = d
            else:
                raise GeometryError(
                    f"local algebra dimension did not stabilize by N = {self.N_max}")
        return self._mult

    @property
    def stable_order(self):
        """N with m^N contained in the ideal."""
        self.multiplicity()
        return self._N

    def contains(self, g):
        """Whether the polynomial g (local coordinates) lies in the ideal of O_P."""
        from .linalg import Echelon
        N = self.stable_order
        if self._ech is None:
            mons, col, rows = self._rows(N)
            ech = Echelon(self.field, len(mons))
            for row in rows:
                ech.add(row)
            self._ech, self._cols = ech, col
        row = [0] * len(self._cols)
        for e, c in g.raw_terms().items():
            if sum(e) < N:
                row[self._cols[e]] = self.field.add(row[self._cols[e]], c)
        return self._ech.contains(row)


def is_transversal_at(frame):
    """True iff the linear parts of the local equations are independent."""
    from .linalg import det
    eqs = frame.local_equations
    r = frame.r
    if len(eqs) != r:
        raise GeometryError("need r local equations")
    F = frame.field
    mat = []
    for f in eqs:
        if f.constant_coeff():
            return False
        t = f.raw_terms()
        row = []
        for i in range(r):
            e = tuple(1 if k == i else 0 for k in range(r))
            row.append(t.get(e, 0))
        mat.append(row)
    return det(F, mat) != 0


# -- intersection ----------------------------------------------------------

def _strata(V):
    """Per block: (pivot, free indices); later pivots first."""
    per_block = []
    for b in V.blocks:
        opts = []
        for jj in range(len(b) - 1, -1, -1):
            opts.append((b[jj], b[:jj]))
        per_block.append(opts)
    return list(iproduct(*per_block))


def _partial_eval(F, t, v):
    """Substitute value v (raw) for the first variable of a raw term dict."""
    out = {}
    pw = {}
    for e, c in t.items():
        k = e[0]
        if k:
            p = pw.get(k)
            if p is None:
                p = pw[k] = F.power(v, k)
            c = F.mul(c, p)
        if c:
            key = e[1:]
            x = F.add(out.get(key, 0), c)
            if x:
                out[key] = x
            else:
                out.pop(key, None)
    return out


def _uni_dense(t):
    d = max(e[0] for e in t)
    c = [0] * (d + 1)
    for e, x in t.items():
        c[e[0]] = x
    return c


def _uni_gcd(F, a, b):
    a, b = list(a), list(b)
    while b:
        while b and not b[-1]:
            b.pop()
        if not b:
            break
        inv = F.inv(b[-1])
        r = list(a)
        while len(r) >= len(b) and r:
            if r[-1]:
                f = F.mul(r[-1], inv)
                sh = len(r) - len(b)
                for i, y in enumerate(b):
                    if y:
                        r[sh + i] = F.sub(r[sh + i], F.mul(f, y))
            r.pop()
            while r and not r[-1]:
                r.pop()
        a, b = b, r
    return a


def _uni_roots(F, c, elems):
    out = []
    for x in elems:
        acc = 0
        for y in reversed(c):
            acc = F.add(F.mul(acc, x), y)
        if not acc:
            out.append(x)
    return out


def _solve(F, polys, k, elems):
    """Common zeros (tuples of raw values) of raw-dict polynomials in k variables."""
    polys = [t for t in polys if t]
    if any(len(t) == 1 and not any(next(iter(t))) for t in polys):
        return []
    if not polys:
        if k == 0:
            return [()]
        raise NotProperError("divisors share a positive-dimensional component")
    if k == 0:
        return []
    if k == 1:
        g = None
        for t in polys:
            d = _uni_dense(t)
            g = d if g is None else _uni_gcd(F, g, d)
        while g and not g[-1]:
            g.pop()
        if len(g) <= 1:
            return []
        return [(x,) for x in _uni_roots(F, g, elems)]
    out = []
    for v in elems:
        sub = [_partial_eval(F, t, v) for t in polys]
        for rest in _solve(F, sub, k - 1, elems):
            out.append((v,) + rest)
    return out


def enumerate_points(V, e=1):
    """All points of V with coordinates in GF(q^e), normalized, stratum order."""
    K = V.field.extension(e) if e > 1 else V.field
    elems = list(range(K.q))
    pts = []
    for stratum in _strata(V):
        free = [i for _, fr in stratum for i in fr]
        for vals in iproduct(elems, repeat=len(free)):
            coords = [K.zero] * V.nvars
            for piv, _ in stratum:
                coords[piv] = K.one
            for i, v in zip(free, vals):
                coords[i] = FieldElement(K, v)
            pts.append(VarietyPoint(V, coords, K))
    return pts


class IntersectionResult:
    def __init__(self, variety, divisors, points, multiplicities, bezout, certified, e_searched):
        self.variety = variety
        self.divisors = divisors
        self.points = points
        self.multiplicities = multiplicities
        self.bezout = bezout
        self.certified = certified
        self.e_searched = e_searched

    def __iter__(self):
        return iter(zip(self.points, self.multiplicities))

    def __len__(self):
        return len(self.points)

    def multiplicity(self, P):
        for Q, m in self:
            if Q == P:
                return m
        return 0

    def index(self, P):
        return self.points.index(P)

    def rational_points(self):
        return [P for P in self.points if P.e == 1]

    def require_certified(self):
        if not self.certified:
            raise NotProperError(
                f"intersection not certified: found multiplicity sum "
                f"{sum(self.multiplicities)} of Bezout number {self.bezout} "
                f"over extensions up to degree {self.e_searched}")
        return self


def intersection_scheme(V, divisors, E_max=4, N_max=20):
    """Points of the intersection over GF(q^e), e <= E_max, with multiplicities."""
    divisors = [as_divisor(V, D) for D in divisors]
    B = bezout_number(V, divisors)
    polys = [D.defining_poly() for D in divisors]
    base = V.field
    found, mults = [], []
    total = 0
    e_done = 0
    for e in range(1, E_max + 1):
        K = base.extension(e) if e > 1 else base
        elems = list(range(K.q))
        for stratum in _strata(V):
            free = [i for _, fr in stratum for i in fr]
            names = tuple(V.names[i].lower() for i in free) or ("_",)
            sec = []
            pos = {i: k for k, i in enumerate(free)}
            piv = {p for p, _ in stratum}
            for i in range(V.nvars):
                if i in pos:
                    sec.append(MultiPoly.var(base, names, pos[i]))
                elif i in piv:
                    sec.append(MultiPoly.const(base, names, 1))
                else:
                    sec.append(MultiPoly.zero(base, names))
            loc = [p.substitute(sec).to_field(K) for p in polys]
            if not free:
                vals_list = [()] if all(not p for p in loc) or all(
                    not p.constant_coeff() for p in loc) else []
            else:
                vals_list = _solve(K, [dict(p.raw_terms()) for p in loc], len(free), elems)
            for vals in vals_list:
                coords = [K.zero] * V.nvars
                for p_, _ in stratum:
                    coords[p_] = K.one
                for i, v in zip(free, vals):
                    coords[i] = FieldElement(K, v)
                P = VarietyPoint(V, coords, K)
                if P.e != e:
                    continue
                frame = LocalFrame(P, P.standard_chart(), divisors)
                m = LocalAlgebra(frame.local_equations, K, N_max).multiplicity()
                found.append(P)
                mults.append(m)
                total += m
                if total > B:
                    raise NotProperError(
                        f"multiplicity sum exceeds the Bezout number {B}; intersection not proper")
        e_done = e
        if total == B:
            break
    return IntersectionResult(V, divisors, found, mults, B, total == B, e_done)
