"""
Finite fields GF(p^m) with exact arithmetic.

Elements are coefficient vectors over GF(p) in the power basis of the
generator, packed into a single integer ``sum(c_i * p**i)``.  Multiplication,
inversion and (for odd p) addition go through exp/log tables built once per
field; the plain polynomial routines are kept as the reference path.
"""

from __future__ import annotations

from functools import lru_cache

TABLE_LIMIT = 1 << 20


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# -- polynomials over GF(p), coefficient lists low -> high ------------------

def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, b, p):
    a = list(a)
    _ptrim(a)
    db = len(b) - 1
    inv = pow(b[-1], p - 2, p)
    while len(a) - 1 >= db and a:
        c = a[-1] * inv % p
        shift = len(a) - 1 - db
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _ptrim(a)
    return a


def _pdivmod(a, b, p):
    a = list(a)
    _ptrim(a)
    db = len(b) - 1
    inv = pow(b[-1], p - 2, p)
    q = [0] * max(len(a) - db, 1)
    while a and len(a) - 1 >= db:
        c = a[-1] * inv % p
        shift = len(a) - 1 - db
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _ptrim(a)
    return _ptrim(q), a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _psub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _ptrim(out)


def _pgcdex(a, b, p):
    """Extended Euclid: returns (g, s) with s*a = g mod b."""
    r0, r1 = _ptrim(list(a)), _ptrim(list(b))
    s0, s1 = [1], []
    while r1:
        q, r = _pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(s0, _pmul(q, s1, p), p)
    return r0, s0


def find_factor(modulus, p):
    """A monic factor of degree <= deg/2, or None if the polynomial is irreducible."""
    m = len(modulus) - 1
    for d in range(1, m // 2 + 1):
        for n in range(p ** d):
            cand = [(n // p ** i) % p for i in range(d)] + [1]
            if not _pmod(modulus, cand, p):
                return cand
    return None


def smallest_irreducible(p, m):
    if m == 1:
        return [0, 1]
    # lexicographic in (c_{m-1}, ..., c_0)
    for n in range(p ** m):
        cand = [(n // p ** i) % p for i in range(m)] + [1]
        if cand[0] == 0:
            continue
        if find_factor(cand, p) is None:
            return cand
    raise FieldError(f"no irreducible polynomial of degree {m} over GF({p})")


def _poly_str(coeffs, name):
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            mon = name if i == 1 else f"{name}^{i}"
            parts.append(mon if c == 1 else f"{c}*{mon}")
    return "+".join(parts) if parts else "0"


class FiniteField:
    """GF(p^m) presented as GF(p)[a]/(modulus).

    Extension fields created by :meth:`extension` remember the field they
    extend (``base``) and the embedding of it.
    """

    def __init__(self, p, m=1, modulus=None, name="a", _check=True):
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if m < 1:
            raise FieldError("extension degree must be positive")
        if modulus is None:
            modulus = smallest_irreducible(p, m)
        elif isinstance(modulus, str):
            modulus = _parse_modulus(modulus, p, name)
        modulus = [c % p for c in modulus]
        _ptrim(modulus)
        if len(modulus) - 1 != m:
            raise FieldError(f"modulus has degree {len(modulus) - 1}, expected {m}")
        if modulus[-1] != 1:
            raise FieldError("modulus must be monic")
        if _check and m > 1:
            f = find_factor(modulus, p)
            if f is not None:
                raise FieldError(
                    f"modulus {_poly_str(modulus, name)} is reducible: "
                    f"divisible by {_poly_str(f, name)}")
        self.p = p
        self.m = m
        self.q = p ** m
        self.modulus = tuple(modulus)
        self.name = name
        self.base = None
        self.base_degree = 1
        self._embed = None
        self._pullback = None
        self._extensions = {}
        self._fast = m > 1 and self.q <= TABLE_LIMIT
        if self._fast:
            self._build_tables()

    # -- construction helpers -------------------------------------------------

    def _decode(self, v):
        p = self.p
        out = []
        for _ in range(self.m):
            out.append(v % p)
            v //= p
        return out

    def _encode(self, coeffs):
        v = 0
        for c in reversed(list(coeffs)[:self.m]):
            v = v * self.p + (c % self.p)
        return v

    def _slow_mul(self, a, b):
        r = _pmod(_pmul(self._decode(a), self._decode(b), self.p), self.modulus, self.p)
        return self._encode(r)

    def _slow_inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        g, s = _pgcdex(self._decode(a), list(self.modulus), self.p)
        # g is a nonzero constant since the modulus is irreducible
        c = pow(g[0], self.p - 2, self.p)
        return self._encode(_pmod([x * c for x in s], self.modulus, self.p) if s else [])

    def _slow_add(self, a, b):
        p = self.p
        out, mul = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * mul
            a //= p
            b //= p
            mul *= p
        return out

    def _build_tables(self):
        q1 = self.q - 1
        for g in range(2, self.q):
            exp = [1]
            x = 1
            for _ in range(q1 - 1):
                x = self._slow_mul(x, g)
                if x == 1:
                    break
                exp.append(x)
            if len(exp) == q1:
                break
        else:
            raise FieldError("no primitive element found")
        self.primitive = g
        log = [None] * self.q
        for i, v in enumerate(exp):
            log[v] = i
        self._exp = exp + exp
        self._log = log
        if self.p != 2:
            # Zech logarithms: 1 + g^k = g^zech[k]
            self._zech = [None] * q1
            for k in range(q1):
                s = self._slow_add(1, exp[k])
                self._zech[k] = log[s] if s else None
            self._neg_shift = q1 // 2

    # -- raw arithmetic on packed ints ---------------------------------------

    def add(self, a, b):
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if not a:
            return b
        if not b:
            return a
        if not self._fast:
            return self._slow_add(a, b)
        la, lb = self._log[a], self._log[b]
        z = self._zech[(lb - la) % (self.q - 1)]
        if z is None:
            return 0
        return self._exp[la + z]

    def neg(self, a):
        if self.m == 1:
            return (-a) % self.p
        if self.p == 2 or not a:
            return a
        if not self._fast:
            return self._encode([(-c) % self.p for c in self._decode(a)])
        return self._exp[self._log[a] + self._neg_shift]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not a or not b:
            return 0
        if self.m == 1:
            return a * b % self.p
        if not self._fast:
            return self._slow_mul(a, b)
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        if not self._fast:
            return self._slow_inv(a)
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, n):
        if n < 0:
            a, n = self.inv(a), -n
        if n == 0:
            return 1
        if not a:
            return 0
        if self.m == 1:
            return pow(a, n, self.p)
        if self._fast:
            return self._exp[(self._log[a] * n) % (self.q - 1)]
        r = 1
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r

    def from_int(self, n):
        return n % self.p

    # -- element-level API ---------------------------------------------------

    def __call__(self, x):
        if isinstance(x, FieldElement):
            if x.field is self:
                return x
            if x.field is self.base:
                return self.embed(x)
            raise FieldError(f"cannot coerce element of {x.field} into {self}")
        if isinstance(x, int):
            return FieldElement(self, self.from_int(x))
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, (list, tuple)):
            return FieldElement(self, self._encode(x))
        raise TypeError(f"cannot make a field element from {x!r}")

    def elem(self, v):
        return FieldElement(self, v)

    @property
    def zero(self):
        return FieldElement(self, 0)

    @property
    def one(self):
        return FieldElement(self, 1)

    @property
    def gen(self):
        if self.m == 1:
            return FieldElement(self, 0 if self.modulus[0] == 0 else (-self.modulus[0]) % self.p)
        return FieldElement(self, self.p)

    def elements(self):
        return [FieldElement(self, v) for v in range(self.q)]

    def format(self, v):
        if self.m == 1:
            return str(v)
        return _poly_str(self._decode(v), self.name)

    def parse(self, s):
        from .parse import parse_expression
        poly = parse_expression(s, [], self)
        if not poly.is_constant():
            raise FieldError(f"{s!r} is not a field element")
        return poly.constant_coeff()

    def __repr__(self):
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m}, {_poly_str(list(self.modulus), self.name)})"

    # -- extensions ----------------------------------------------------------

    def extension(self, e):
        """GF(q^e) with a registered embedding of this field (cached)."""
        if e == 1:
            return self
        if e in self._extensions:
            return self._extensions[e]
        big = FiniteField(self.p, self.m * e, name=self.name + str(e) if self.m > 1 else "b" + str(e),
                          _check=True)
        big.base = self
        big.base_degree = e
        # root of our modulus among the copy of GF(q) inside big
        step = (big.q - 1) // (self.q - 1)
        root = None
        if self.m == 1:
            root = big.from_int((-self.modulus[0]) % self.p)
        else:
            for k in range(self.q - 1):
                cand = big.power(big.primitive, k * step) if big._fast else None
                if cand is None:
                    raise FieldError("extension too large for embedding search")
                acc = 0
                for c in reversed(self.modulus):
                    acc = big.add(big.mul(acc, cand), big.from_int(c))
                if acc == 0:
                    root = cand
                    break
        if root is None:
            raise FieldError("no root of the modulus in the extension")
        table = []
        for v in range(self.q):
            acc = 0
            for c in reversed(self._decode(v) if self.m > 1 else [v]):
                acc = big.add(big.mul(acc, root), big.from_int(c))
            table.append(acc)
        big._embed = table
        big._pullback = {w: v for v, w in enumerate(table)}
        big._gen_image = root
        self._extensions[e] = big
        return big

    def embed(self, x):
        """Map an element of ``self.base`` into this field."""
        if self.base is None:
            raise FieldError(f"{self} is not a registered extension")
        if x.field is not self.base:
            raise FieldError("element is not in the base field")
        return FieldElement(self, self._embed[x.v])

    def embed_raw(self, v):
        return self._embed[v]

    def pullback(self, x):
        """Inverse of :meth:`embed` on its image."""
        try:
            return FieldElement(self.base, self._pullback[x.v])
        except KeyError:
            raise FieldError(f"{x} does not lie in the base field") from None

    def in_base(self, v):
        return v in self._pullback

    def root_field(self):
        f = self
        while f.base is not None:
            f = f.base
        return f


class FieldElement:
    __slots__ = ("field", "v")

    def __init__(self, field, v):
        self.field = field
        self.v = v

    @property
    def coeffs(self):
        return tuple(self.field._decode(self.v)) if self.field.m > 1 else (self.v,)

    def _other(self, x):
        if isinstance(x, FieldElement):
            if x.field is self.field:
                return x.v
            return self.field(x).v
        if isinstance(x, int):
            return self.field.from_int(x)
        return NotImplemented

    def __add__(self, x):
        o = self._other(x)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.add(self.v, o))

    __radd__ = __add__

    def __sub__(self, x):
        o = self._other(x)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.sub(self.v, o))

    def __rsub__(self, x):
        o = self._other(x)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.sub(o, self.v))

    def __mul__(self, x):
        o = self._other(x)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.mul(self.v, o))

    __rmul__ = __mul__

    def __truediv__(self, x):
        o = self._other(x)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.div(self.v, o))

    def __rtruediv__(self, x):
        o = self._other(x)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.div(o, self.v))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.v))

    def __pow__(self, n):
        return FieldElement(self.field, self.field.power(self.v, n))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.v))

    def frobenius(self, k=1):
        """x -> x^(p^k)."""
        return self ** (self.field.p ** k)

    def __bool__(self):
        return self.v != 0

    def __eq__(self, x):
        if isinstance(x, FieldElement):
            return x.field is self.field and x.v == self.v
        if isinstance(x, int):
            return self.v == self.field.from_int(x)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.v))

    def __str__(self):
        return self.field.format(self.v)

    def __repr__(self):
        return f"<{self} in {self.field!r}>"


def _parse_modulus(s, p, name):
    from .parse import parse_expression
    prime = field_construct(p)
    poly = parse_expression(s, [name], prime)
    deg = poly.degree()
    coeffs = [0] * (deg + 1)
    for e, c in poly.raw_terms().items():
        coeffs[e[0]] = c
    return coeffs


@lru_cache(maxsize=None)
def _cached_field(p, m, modulus, name):
    return FiniteField(p, m, list(modulus) if modulus is not None else None, name)


def field_construct(p, m=1, modulus=None, name="a"):
    """Construct (and cache) GF(p^m); ``modulus`` is a coefficient list or a string."""
    if isinstance(modulus, str):
        modulus = tuple(c % p for c in _parse_modulus(modulus, p, name))
    elif modulus is not None:
        modulus = tuple(c % p for c in modulus)
    return _cached_field(p, m, modulus, name)


GF = field_construct


def trace_to_subfield(x, e=None):
    """Trace of ``x`` from GF(q^e) down to GF(q); identity when e == 1."""
    F = x.field
    if e is None:
        e = F.base_degree
    if e == 1 and (F.base is None or F.base_degree == 1):
        return x
    if F.base is None and e == F.m:
        # absolute trace down to the prime field
        acc, y = F.zero, x
        for _ in range(e):
            acc = acc + y
            y = y ** F.p
        return field_construct(F.p)(acc.coeffs[0])
    if F.base is None or F.base_degree != e:
        raise FieldError(f"{F} is not a registered degree-{e} extension")
    q = F.base.q
    acc = F.zero
    y = x
    for _ in range(e):
        acc = acc + y
        y = y ** q
    return F.pullback(acc)


def embed_into_extension(F, e):
    """(GF(q^e), embedding map) for the field F = GF(q)."""
    if e == 1:
        return F, (lambda x: x)
    E = F.extension(e)
    return E, E.embed


def min_field_degree(x):
    """Smallest d dividing the extension degree with x in GF(q^d)."""
    F = x.field
    e = F.base_degree
    if F.base is None:
        return 1
    q = F.base.q
    for d in range(1, e + 1):
        if e % d == 0 and x ** (q ** d) == x:
            return d
    return e
