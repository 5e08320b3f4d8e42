"""
Sparse multivariate polynomials and reduced rational functions over a
FiniteField.

Coefficients are stored as raw packed field ints; ``terms`` exposes them as
FieldElements.  Term order is graded lexicographic throughout.
"""

from __future__ import annotations

from itertools import product as _iproduct

from .gf import FieldElement, FieldError


class NotRegularError(ArithmeticError):
    """A rational function has a pole at the requested point."""

    def __init__(self, msg, point=None):
        super().__init__(msg)
        self.point = point


def grlex_key(e):
    return (sum(e), e)


def _coerce_scalar(field, c):
    if isinstance(c, FieldElement):
        if c.field is field:
            return c.v
        return field(c).v
    if isinstance(c, int):
        return field.from_int(c)
    raise TypeError(f"bad coefficient {c!r}")


class MultiPoly:
    __slots__ = ("field", "names", "_t")

    def __init__(self, field, names, terms=None):
        self.field = field
        self.names = tuple(names)
        t = {}
        if terms:
            n = len(self.names)
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n:
                    raise ValueError(f"exponent {e} has wrong length for {n} variables")
                v = _coerce_scalar(field, c)
                if v:
                    t[e] = field.add(t.get(e, 0), v)
                    if not t[e]:
                        del t[e]
        self._t = t

    @classmethod
    def _raw(cls, field, names, t):
        p = cls.__new__(cls)
        p.field = field
        p.names = names
        p._t = t
        return p

    def _new(self, t):
        return MultiPoly._raw(self.field, self.names, t)

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, field, names):
        return cls._raw(field, tuple(names), {})

    @classmethod
    def const(cls, field, names, c):
        names = tuple(names)
        v = _coerce_scalar(field, c)
        return cls._raw(field, names, {(0,) * len(names): v} if v else {})

    @classmethod
    def one(cls, field, names):
        return cls.const(field, names, 1)

    @classmethod
    def var(cls, field, names, i):
        names = tuple(names)
        if isinstance(i, str):
            i = names.index(i)
        e = [0] * len(names)
        e[i] = 1
        return cls._raw(field, names, {tuple(e): 1})

    @classmethod
    def monomial(cls, field, names, e, c=1):
        names = tuple(names)
        v = _coerce_scalar(field, c)
        return cls._raw(field, names, {tuple(e): v} if v else {})

    def like(self, c):
        """Constant polynomial in the same ring."""
        return MultiPoly.const(self.field, self.names, c)

    # -- inspection ----------------------------------------------------------

    @property
    def nvars(self):
        return len(self.names)

    @property
    def terms(self):
        F = self.field
        return {e: FieldElement(F, c) for e, c in self._t.items()}

    def raw_terms(self):
        return self._t

    def coeff(self, e):
        return FieldElement(self.field, self._t.get(tuple(e), 0))

    def is_zero(self):
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def is_constant(self):
        return not self._t or (len(self._t) == 1 and not any(next(iter(self._t))))

    def constant_coeff(self):
        return FieldElement(self.field, self._t.get((0,) * self.nvars, 0))

    def degree(self):
        if not self._t:
            return -1
        return max(sum(e) for e in self._t)

    def min_degree(self):
        if not self._t:
            return -1
        return min(sum(e) for e in self._t)

    def degree_in(self, i):
        if not self._t:
            return -1
        return max(e[i] for e in self._t)

    def block_degree(self, block):
        if not self._t:
            return -1
        return max(sum(e[i] for i in block) for e in self._t)

    def is_homogeneous(self, blocks=None):
        if blocks is None:
            blocks = [range(self.nvars)]
        for b in blocks:
            degs = {sum(e[i] for i in b) for e in self._t}
            if len(degs) > 1:
                return False
        return True

    def lead(self):
        e = max(self._t, key=grlex_key)
        return e, self._t[e]

    def lead_coeff(self):
        return FieldElement(self.field, self.lead()[1])

    def variables(self):
        return {i for e in self._t for i, x in enumerate(e) if x}

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.field is not self.field:
                raise FieldError("polynomials over different fields")
            if other.nvars != self.nvars:
                raise ValueError("polynomials in different rings")
            return other
        if isinstance(other, (int, FieldElement)):
            return self.like(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        add = self.field.add
        t = dict(self._t)
        for e, c in other._t.items():
            v = add(t.get(e, 0), c)
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return self._new(t)

    __radd__ = __add__

    def __neg__(self):
        neg = self.field.neg
        return self._new({e: neg(c) for e, c in self._t.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._new(_mul_raw(self.field, self._t, other._t))

    __rmul__ = __mul__

    def scale(self, c):
        v = _coerce_scalar(self.field, c)
        if not v:
            return self._new({})
        mul = self.field.mul
        return self._new({e: mul(x, v) for e, x in self._t.items()})

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative exponent")
        result = self.like(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, FieldElement)):
            other = self.like(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return other.field is self.field and self.nvars == other.nvars and self._t == other._t

    def __hash__(self):
        return hash((id(self.field), frozenset(self._t.items())))

    def monic(self):
        if not self._t:
            return self
        return self.scale(FieldElement(self.field, self.field.inv(self.lead()[1])))

    def truncate(self, N):
        """Drop every term of total degree >= N."""
        return self._new({e: c for e, c in self._t.items() if sum(e) < N})

    def homogeneous_part(self, d):
        return self._new({e: c for e, c in self._t.items() if sum(e) == d})

    # -- division ------------------------------------------------------------

    def divmod(self, g):
        """Division by a single polynomial using grlex leading terms."""
        if g.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        F = self.field
        ge, gc = g.lead()
        ginv = F.inv(gc)
        r = dict(self._t)
        q = {}
        rem = {}
        while r:
            e = max(r, key=grlex_key)
            c = r[e]
            if all(a >= b for a, b in zip(e, ge)):
                shift = tuple(a - b for a, b in zip(e, ge))
                f = F.mul(c, ginv)
                q[shift] = F.add(q.get(shift, 0), f)
                nf = F.neg(f)
                for ge2, gc2 in g._t.items():
                    ee = tuple(a + b for a, b in zip(shift, ge2))
                    v = F.add(r.get(ee, 0), F.mul(nf, gc2))
                    if v:
                        r[ee] = v
                    else:
                        r.pop(ee, None)
            else:
                rem[e] = c
                del r[e]
        q = {e: c for e, c in q.items() if c}
        return self._new(q), self._new(rem)

    def exact_div(self, g):
        q, r = self.divmod(g)
        if r:
            raise ArithmeticError("polynomial division is not exact")
        return q

    def divides(self, g):
        """True if self divides g."""
        return not g.divmod(self)[1]

    # -- evaluation and substitution -----------------------------------------

    def to_field(self, K):
        """Coefficients mapped into K (an extension registered over self.field)."""
        if K is self.field:
            return self
        chain = []
        f = K
        while f is not self.field:
            if f.base is None:
                raise FieldError(f"{K} is not an extension of {self.field}")
            chain.append(f)
            f = f.base
        t = dict(self._t)
        for f in reversed(chain):
            t = {e: f.embed_raw(c) for e, c in t.items()}
        return MultiPoly._raw(K, self.names, t)

    def evaluate(self, values):
        """Value at a point; values may live in an extension of the field."""
        vals = [v if isinstance(v, FieldElement) else self.field(v) for v in values]
        K = vals[0].field if vals else self.field
        for v in vals:
            if v.field is not K:
                raise FieldError("point coordinates in different fields")
        p = self.to_field(K) if K is not self.field else self
        return FieldElement(K, _eval_raw(K, p._t, [v.v for v in vals]))

    def __call__(self, *values):
        return self.evaluate(values)

    def substitute(self, polys):
        """Compose with polynomials (one per variable) from a common target ring."""
        if len(polys) != self.nvars:
            raise ValueError("need one polynomial per variable")
        target = polys[0]
        result = MultiPoly.zero(target.field, target.names)
        cache = {}
        for e, c in self._t.items():
            term = target.like(FieldElement(target.field, c) if target.field is self.field
                               else target.field(FieldElement(self.field, c)))
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = polys[i] ** k
                    term = term * cache[key]
            result = result + term
        return result

    def translate(self, center, N=None):
        """f(x + c) in the same variables, optionally truncated below degree N."""
        vals = [v if isinstance(v, FieldElement) else self.field(v) for v in center]
        K = vals[0].field if vals else self.field
        p = self.to_field(K)
        F = K
        c = [v.v for v in vals]
        n = self.nvars
        maxdeg = [max((e[i] for e in p._t), default=0) for i in range(n)]
        # binomial expansions (x + c_i)^k as {j: coeff of x^j}
        expand = []
        for i in range(n):
            rows = [{0: 1}]
            for k in range(1, maxdeg[i] + 1):
                prev = rows[-1]
                nxt = {}
                for j, v in prev.items():
                    nxt[j + 1] = F.add(nxt.get(j + 1, 0), v)
                    nxt[j] = F.add(nxt.get(j, 0), F.mul(v, c[i]))
                rows.append({j: v for j, v in nxt.items() if v})
            expand.append(rows)
        out = {}
        for e, coef in p._t.items():
            partial = {(): coef}
            for i in range(n):
                nxt = {}
                for pe, pv in partial.items():
                    s = sum(pe)
                    for j, v in expand[i][e[i]].items():
                        if N is not None and s + j >= N:
                            continue
                        key = pe + (j,)
                        nxt[key] = F.add(nxt.get(key, 0), F.mul(pv, v))
                partial = nxt
            for pe, pv in partial.items():
                if pv:
                    v = F.add(out.get(pe, 0), pv)
                    if v:
                        out[pe] = v
                    else:
                        out.pop(pe, None)
        return MultiPoly._raw(K, self.names, out)

    def derivative(self, i):
        F = self.field
        t = {}
        for e, c in self._t.items():
            if e[i]:
                v = F.mul(c, F.from_int(e[i]))
                if v:
                    ee = list(e)
                    ee[i] -= 1
                    t[tuple(ee)] = v
        return self._new(t)

    def coeff_in(self, i, d):
        """Coefficient of x_i^d, as a polynomial in the same ring (x_i absent)."""
        t = {}
        for e, c in self._t.items():
            if e[i] == d:
                ee = list(e)
                ee[i] = 0
                t[tuple(ee)] = c
        return self._new(t)

    def rename(self, names):
        return MultiPoly._raw(self.field, tuple(names), self._t)

    def embed_vars(self, names, positions):
        """Same polynomial in a larger ring; variable i goes to positions[i]."""
        n = len(names)
        t = {}
        for e, c in self._t.items():
            ee = [0] * n
            for i, k in enumerate(e):
                ee[positions[i]] = k
            t[tuple(ee)] = c
        return MultiPoly._raw(self.field, tuple(names), t)

    # -- printing ------------------------------------------------------------

    def __str__(self):
        if not self._t:
            return "0"
        F = self.field
        parts = []
        for e in sorted(self._t, key=grlex_key, reverse=True):
            c = self._t[e]
            mon = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(self.names, e) if k)
            cs = F.format(c)
            if not mon:
                parts.append(cs)
            elif c == 1:
                parts.append(mon)
            else:
                if "+" in cs:
                    cs = f"({cs})"
                parts.append(f"{cs}*{mon}")
        return " + ".join(parts)

    def __repr__(self):
        return f"MultiPoly({self})"


def _mul_raw(F, a, b):
    if len(a) > len(b):
        a, b = b, a
    out = {}
    add, mul = F.add, F.mul
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            v = add(out.get(e, 0), mul(c1, c2))
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def _eval_raw(F, t, vals):
    acc = 0
    powers = [dict() for _ in vals]
    for e, c in t.items():
        term = c
        for i, k in enumerate(e):
            if k:
                pw = powers[i].get(k)
                if pw is None:
                    pw = powers[i][k] = F.power(vals[i], k)
                term = F.mul(term, pw)
                if not term:
                    break
        acc = F.add(acc, term)
    return acc


# -- gcd ------------------------------------------------------------------

def _prem(A, B, v):
    dB = B.degree_in(v)
    lcB = B.coeff_in(v, dB)
    R = A
    xv = MultiPoly.var(A.field, A.names, v)
    while R and R.degree_in(v) >= dB:
        dR = R.degree_in(v)
        lcR = R.coeff_in(v, dR)
        R = lcB * R - lcR * (xv ** (dR - dB)) * B
    return R


def _content(f, v):
    d = f.degree_in(v)
    g = None
    for k in range(d, -1, -1):
        c = f.coeff_in(v, k)
        if not c:
            continue
        g = c if g is None else _gcd(g, c)
        if g.is_constant():
            return g.like(1)
    return g


def _pp(f, v):
    if not f:
        return f
    return f.exact_div(_content(f, v))


def _gcd(f, g):
    if not f:
        return g.monic()
    if not g:
        return f.monic()
    if f.is_constant() or g.is_constant():
        return f.like(1)
    present = f.variables() | g.variables()
    v = max(present)
    if v not in f.variables():
        return _gcd(f, _content(g, v))
    if v not in g.variables():
        return _gcd(_content(f, v), g)
    cf, cg = _content(f, v), _content(g, v)
    c = _gcd(cf, cg)
    A, B = f.exact_div(cf), g.exact_div(cg)
    if A.degree_in(v) < B.degree_in(v):
        A, B = B, A
    while True:
        if not B:
            h = A
            break
        if B.degree_in(v) == 0:
            h = A.like(1)
            break
        R = _prem(A, B, v)
        A, B = B, (_pp(R, v) if R else R)
    return (c * _pp(h, v)).monic()


def multivariate_gcd(f, g):
    """Monic gcd (grlex leading coefficient 1) of two polynomials."""
    if not f and not g:
        return f
    return _gcd(f, g)


# -- rational functions ------------------------------------------------------

class RationalFunction:
    """num/den with coprime parts and den monic in grlex order."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduce=True):
        if den is None:
            den = num.like(1)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.field is not den.field or num.nvars != den.nvars:
            raise ValueError("numerator and denominator in different rings")
        if not num:
            den = den.like(1)
        elif reduce and not den.is_constant():
            g = _gcd(num, den)
            if not g.is_constant():
                num = num.exact_div(g)
                den = den.exact_div(g)
        lc = den.lead()[1]
        if lc != 1:
            s = FieldElement(den.field, den.field.inv(lc))
            num, den = num.scale(s), den.scale(s)
        self.num = num
        self.den = den

    @property
    def field(self):
        return self.num.field

    @property
    def names(self):
        return self.num.names

    @property
    def nvars(self):
        return self.num.nvars

    @classmethod
    def of(cls, x):
        if isinstance(x, RationalFunction):
            return x
        return cls(x)

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, MultiPoly):
            return RationalFunction(other, reduce=False)
        if isinstance(other, (int, FieldElement)):
            return RationalFunction(self.num.like(other), reduce=False)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.den.is_constant() and self.den.is_constant():
            return RationalFunction(self.num * o.num, self.den * o.den, reduce=False)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return RationalFunction(self.den, self.num, reduce=False)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunction(self.num ** n, self.den ** n, reduce=False)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def is_zero(self):
        return not self.num

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def is_polynomial(self):
        return self.den.is_constant()

    def as_poly(self):
        if not self.den.is_constant():
            raise ValueError("not a polynomial")
        return self.num.scale(self.den.constant_coeff().inverse())

    def degree(self):
        return self.num.degree() - self.den.degree()

    def is_regular_at(self, values):
        return bool(self.den.evaluate(values))

    def evaluate(self, values):
        d = self.den.evaluate(values)
        if not d:
            raise NotRegularError(f"{self} is not regular at {tuple(str(v) for v in values)}",
                                  tuple(values))
        return self.num.evaluate(values) / d

    def __call__(self, *values):
        return self.evaluate(values)

    def to_field(self, K):
        return RationalFunction(self.num.to_field(K), self.den.to_field(K), reduce=False)

    def substitute(self, polys):
        return RationalFunction(self.num.substitute(polys), self.den.substitute(polys))

    def derivative(self, i):
        n, d = self.num, self.den
        return RationalFunction(n.derivative(i) * d - n * d.derivative(i), d * d)

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RationalFunction({self})"


def monomials(nvars, degree):
    """Exponent vectors of total degree exactly ``degree``, grlex descending."""
    if nvars == 0:
        return [()] if degree == 0 else []
    out = []
    for first in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - first):
            out.append((first,) + rest)
    return out


def monomials_upto(nvars, degree):
    out = []
    for d in range(degree + 1):
        out.extend(monomials(nvars, d))
    return out


def multidegree_monomials(blocks, degrees, nvars):
    """Exponent vectors with block degrees exactly ``degrees``."""
    if any(d < 0 for d in degrees):
        return []
    per_block = [monomials(len(b), d) for b, d in zip(blocks, degrees)]
    out = []
    for combo in _iproduct(*per_block):
        e = [0] * nvars
        for b, part in zip(blocks, combo):
            for i, k in zip(b, part):
                e[i] = k
        out.append(tuple(e))
    return out
