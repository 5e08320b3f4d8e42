"""
Truncated multivariate power series (total-degree truncation).
"""

from __future__ import annotations

from .gf import FieldElement
from .poly import MultiPoly, RationalFunction, NotRegularError, _mul_raw


class NotAUnitError(ArithmeticError):
    pass


class TruncatedSeries:
    """Series with every stored exponent of total degree < N."""

    __slots__ = ("field", "nvars", "N", "_t")

    def __init__(self, field, nvars, N, terms=None):
        self.field = field
        self.nvars = nvars
        self.N = N
        t = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if sum(e) < N:
                v = c.v if isinstance(c, FieldElement) else field.from_int(c)
                if v:
                    t[e] = v
        self._t = t

    @classmethod
    def _raw(cls, field, nvars, N, t):
        s = cls.__new__(cls)
        s.field, s.nvars, s.N, s._t = field, nvars, N, t
        return s

    @classmethod
    def from_poly(cls, p, N):
        return cls._raw(p.field, p.nvars, N, {e: c for e, c in p.raw_terms().items() if sum(e) < N})

    def to_poly(self, names):
        return MultiPoly._raw(self.field, tuple(names), dict(self._t))

    @property
    def terms(self):
        return {e: FieldElement(self.field, c) for e, c in self._t.items()}

    def raw_terms(self):
        return self._t

    def coeff(self, e):
        return FieldElement(self.field, self._t.get(tuple(e), 0))

    def constant(self):
        return self.coeff((0,) * self.nvars)

    def is_zero(self):
        return not self._t

    def __add__(self, other):
        N = min(self.N, other.N)
        F = self.field
        t = {e: c for e, c in self._t.items() if sum(e) < N}
        for e, c in other._t.items():
            if sum(e) < N:
                v = F.add(t.get(e, 0), c)
                if v:
                    t[e] = v
                else:
                    t.pop(e, None)
        return TruncatedSeries._raw(F, self.nvars, N, t)

    def __neg__(self):
        F = self.field
        return TruncatedSeries._raw(F, self.nvars, self.N, {e: F.neg(c) for e, c in self._t.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            v = other.v if isinstance(other, FieldElement) else self.field.from_int(other)
            F = self.field
            return TruncatedSeries._raw(F, self.nvars, self.N,
                                        {e: F.mul(c, v) for e, c in self._t.items() if F.mul(c, v)})
        N = min(self.N, other.N)
        return TruncatedSeries._raw(self.field, self.nvars, N, _mul_trunc(self.field, self._t, other._t, N))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        N = min(self.N, other.N)
        a = {e: c for e, c in self._t.items() if sum(e) < N}
        b = {e: c for e, c in other._t.items() if sum(e) < N}
        return self.field is other.field and a == b

    def __repr__(self):
        return f"TruncatedSeries(N={self.N}, {self.terms})"


def _mul_trunc(F, a, b, N):
    out = {}
    add, mul = F.add, F.mul
    bl = [(e, sum(e), c) for e, c in b.items()]
    for e1, c1 in a.items():
        d1 = sum(e1)
        if d1 >= N:
            continue
        for e2, d2, c2 in bl:
            if d1 + d2 >= N:
                continue
            e = tuple(x + y for x, y in zip(e1, e2))
            v = add(out.get(e, 0), mul(c1, c2))
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def series_invert(u):
    """Inverse of a unit: c^-1 * sum_k w^k with w = 1 - u/c."""
    F = u.field
    zero = (0,) * u.nvars
    c = u._t.get(zero, 0)
    if not c:
        raise NotAUnitError("series has zero constant term; not a unit")
    ci = F.inv(c)
    N = u.N
    # w = -(u/c - 1), no constant term
    w = {e: F.neg(F.mul(v, ci)) for e, v in u._t.items() if e != zero}
    # Horner: s = 1 + w(1 + w(1 + ...)), N-1 levels suffice
    s = {zero: 1}
    for _ in range(N - 1):
        s = _mul_trunc(F, w, s, N)
        s[zero] = F.add(s.get(zero, 0), 1)
        if not s[zero]:
            del s[zero]
    s = {e: F.mul(v, ci) for e, v in s.items()}
    return TruncatedSeries._raw(F, u.nvars, N, {e: v for e, v in s.items() if v})


def series_expand(f, center, N):
    """Taylor expansion of f at ``center`` in translated coordinates, degree < N.

    ``f`` is a MultiPoly or RationalFunction in chart coordinates; the
    center may have coordinates in an extension field.
    """
    if isinstance(f, MultiPoly):
        f = RationalFunction(f, reduce=False)
    num = f.num.translate(center, N)
    den = f.den.translate(center, N)
    K = num.field
    n = f.nvars
    dser = TruncatedSeries._raw(K, n, N, dict(den.raw_terms()))
    if not den.raw_terms().get((0,) * n, 0):
        raise NotRegularError(f"{f} is not regular here", tuple(center))
    nser = TruncatedSeries._raw(K, n, N, dict(num.raw_terms()))
    if den.is_constant():
        return nser * FieldElement(K, K.inv(den.raw_terms()[(0,) * n]))
    return nser * series_invert(dser)
