"""Sparse multivariate polynomials over Q or F_p, optionally with coefficients in k[t].

A monomial is packed into one Python int.  From the most significant end the
32-bit slots hold: total x-degree, e_0, e_1, ..., e_n and finally (for rings
with the parameter) the exponent of t.  Integer comparison of packed
monomials is therefore graded-lex order on the x variables (x0 > x1 > ...)
refined by the t exponent, and multiplying monomials is integer addition.

The parameter t is part of the coefficient domain: degrees, homogeneity and
substitution only ever look at the x variables.
"""

from __future__ import annotations

import heapq
from collections import namedtuple
from functools import lru_cache
from math import lcm

from gmpy2 import mpq, mpz

from .errors import ArityMismatch, DomainMismatch, InvalidParameter
from .fields import QQ, FieldDescriptor, FieldScalar

WIDTH = 32
MASK = (1 << WIDTH) - 1

CoeffDomain = namedtuple("CoeffDomain", ["base", "with_parameter"])


class PolyRing:
    """k[x0..x_{nvars-1}] or k[t][x0..x_{nvars-1}]; use :func:`poly_ring` to obtain one."""

    __slots__ = (
        "field", "nvars", "param", "nslots", "deg_shift", "x_shift",
        "x_unit", "t_unit", "guard", "__weakref__",
    )

    def __init__(self, field: FieldDescriptor, nvars: int, param: bool):
        self.field = field
        self.nvars = nvars
        self.param = bool(param)
        base = WIDTH if self.param else 0
        self.x_shift = tuple(base + WIDTH * (nvars - 1 - i) for i in range(nvars))
        self.deg_shift = base + WIDTH * nvars
        self.nslots = nvars + 1 + int(self.param)
        self.x_unit = tuple((1 << s) | (1 << self.deg_shift) for s in self.x_shift)
        self.t_unit = 1 if self.param else None
        self.guard = sum(1 << (WIDTH * k + WIDTH - 1) for k in range(self.nslots))

    def __repr__(self):
        coeffs = f"{self.field!r}[t]" if self.param else repr(self.field)
        return f"PolyRing({coeffs}, x0..x{self.nvars - 1})"

    def __reduce__(self):
        return (poly_ring, (self.field, self.nvars, self.param))

    @property
    def n(self) -> int:
        """Projective dimension: the ring has variables x0..xn."""
        return self.nvars - 1

    @property
    def domain(self) -> CoeffDomain:
        return CoeffDomain(self.field, self.param)

    # monomials --------------------------------------------------------

    def pack(self, exps, t: int = 0) -> int:
        if len(exps) != self.nvars:
            raise ArityMismatch(f"expected {self.nvars} exponents, got {len(exps)}")
        m = 0
        for e, s in zip(exps, self.x_shift):
            if e < 0:
                raise InvalidParameter("negative exponent")
            m |= e << s
        m |= sum(exps) << self.deg_shift
        if t:
            if not self.param:
                raise DomainMismatch("t used in a ring without the parameter")
            m |= t
        return m

    def unpack(self, m: int):
        """Return ``(x_exponents, t_exponent)``."""
        exps = tuple((m >> s) & MASK for s in self.x_shift)
        return exps, (m & MASK) if self.param else 0

    def xdeg(self, m: int) -> int:
        return m >> self.deg_shift

    def tdeg(self, m: int) -> int:
        return m & MASK if self.param else 0

    def divides(self, a: int, b: int) -> bool:
        """Monomial a divides monomial b."""
        d = b - a
        return d >= 0 and not (d & self.guard)

    # elements ---------------------------------------------------------

    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {})

    def one(self) -> "MultiPoly":
        return MultiPoly(self, {0: self.field.one})

    def const(self, c) -> "MultiPoly":
        c = self.field.coerce(c)
        return MultiPoly(self, {0: c} if c else {})

    def var(self, i: int) -> "MultiPoly":
        return MultiPoly(self, {self.x_unit[i]: self.field.one})

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def t(self) -> "MultiPoly":
        if not self.param:
            raise DomainMismatch("this ring has no parameter t")
        return MultiPoly(self, {1: self.field.one})

    def monomial(self, exps, t: int = 0, coeff=1) -> "MultiPoly":
        c = self.field.coerce(coeff)
        return MultiPoly(self, {self.pack(exps, t): c} if c else {})

    def from_terms(self, terms) -> "MultiPoly":
        """Build from ``{exps: c}`` or ``{(exps, t): c}``."""
        out = {}
        for key, c in terms.items():
            if self.param and len(key) == 2 and isinstance(key[0], tuple):
                m = self.pack(key[0], key[1])
            else:
                m = self.pack(tuple(key))
            c = self.field.coerce(c)
            out[m] = self.field.reduce(out.get(m, 0) + c)
        return MultiPoly(self, {m: c for m, c in out.items() if c})

    def with_param(self) -> "PolyRing":
        return poly_ring(self.field, self.nvars, True)

    def without_param(self) -> "PolyRing":
        return poly_ring(self.field, self.nvars, False)


@lru_cache(maxsize=None)
def poly_ring(field: FieldDescriptor = QQ, nvars: int = 3, param: bool = False) -> PolyRing:
    if nvars < 0:
        raise InvalidParameter("negative number of variables")
    return PolyRing(field, nvars, param)


def _clean(field, acc):
    if field.is_rational:
        return {m: c for m, c in acc.items() if c}
    p = field.p
    out = {}
    for m, c in acc.items():
        c %= p
        if c:
            out[m] = c
    return out


# Above this many coefficient products, rational multiplication clears
# denominators first and accumulates in machine-friendly Python ints.
_INTEGER_PRODUCT_THRESHOLD = 256


def _integral(terms):
    den = 1
    for c in terms.values():
        den = lcm(den, c.denominator)
    return [(m, int(c.numerator) * (den // int(c.denominator))) for m, c in terms.items()], den


def _rational_product(a, b):
    ai, da = _integral(a)
    bi, db = _integral(b)
    acc = {}
    get = acc.get
    for ma, ca in ai:
        for mb, cb in bi:
            m = ma + mb
            acc[m] = get(m, 0) + ca * cb
    den = mpz(da * db)
    return {m: mpq(c, den) for m, c in acc.items() if c}


class MultiPoly:
    """Immutable sparse polynomial; ``terms`` maps packed monomials to nonzero raw coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict, homogeneous: bool = False):
        self.ring = ring
        self.terms = terms
        self._hash = None
        if homogeneous and not self.is_homogeneous():
            raise InvalidParameter("polynomial flagged homogeneous is not")

    # basic queries ----------------------------------------------------

    @property
    def field(self) -> FieldDescriptor:
        return self.ring.field

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def x_degrees(self) -> set:
        sh = self.ring.deg_shift
        return {m >> sh for m in self.terms}

    def degree(self) -> int:
        """Total degree in the x variables (-1 for zero)."""
        return max(self.x_degrees(), default=-1)

    def t_degree(self) -> int:
        if not self.ring.param:
            return 0 if self.terms else -1
        return max((m & MASK for m in self.terms), default=-1)

    def t_valuation(self) -> int:
        if not self.ring.param:
            return 0
        return min((m & MASK for m in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        return len(self.x_degrees()) <= 1

    def degree_in(self, i: int) -> int:
        s = self.ring.x_shift[i]
        return max(((m >> s) & MASK for m in self.terms), default=-1)

    def sorted_terms(self):
        """Terms in canonical (descending graded-lex) order."""
        return sorted(self.terms.items(), reverse=True)

    def leading(self):
        m = max(self.terms)
        return m, self.terms[m]

    def leading_coefficient(self):
        return self.terms[max(self.terms)] if self.terms else self.field.zero

    def coefficient(self, exps, t: int = 0) -> FieldScalar:
        return FieldScalar(self.field, self.terms.get(self.ring.pack(exps, t), self.field.zero))

    def constant_term(self):
        return self.terms.get(0, self.field.zero)

    # arithmetic -------------------------------------------------------

    def _check(self, other):
        if self.ring is not other.ring:
            raise DomainMismatch(f"{self.ring!r} vs {other.ring!r}")

    def _lift(self, other):
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._lift(other)
        if len(other.terms) > len(self.terms):
            self, other = other, self
        acc = dict(self.terms)
        for m, c in other.terms.items():
            acc[m] = acc.get(m, 0) + c
        return MultiPoly(self.ring, _clean(self.field, acc))

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        return MultiPoly(self.ring, {m: f.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "MultiPoly":
        c = self.field.coerce(c)
        if not c:
            return self.ring.zero()
        f = self.field
        if f.is_rational:
            return MultiPoly(self.ring, {m: a * c for m, a in self.terms.items()})
        p = f.p
        return MultiPoly(self.ring, {m: a * c % p for m, a in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        self._check(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return self.ring.zero()
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (mb, cb), = b.items()
            return MultiPoly(self.ring, _clean(self.field, {m + mb: c * cb for m, c in a.items()}))
        if self.field.is_rational and len(a) * len(b) > _INTEGER_PRODUCT_THRESHOLD:
            return MultiPoly(self.ring, _rational_product(a, b))
        acc = {}
        get = acc.get
        bi = list(b.items())
        for ma, ca in a.items():
            for mb, cb in bi:
                m = ma + mb
                acc[m] = get(m, 0) + ca * cb
        return MultiPoly(self.ring, _clean(self.field, acc))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise InvalidParameter("negative power")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def mul_monomial(self, m: int) -> "MultiPoly":
        return MultiPoly(self.ring, {k + m: c for k, c in self.terms.items()})

    def monic(self) -> "MultiPoly":
        """Scale so that the graded-lex leading coefficient is 1."""
        if not self.terms:
            return self
        lc = self.leading_coefficient()
        if lc == 1:
            return self
        return self.scale(self.field.inv(lc))

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.ring is other.ring and self.terms == other.terms
        if isinstance(other, (int, FieldScalar)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.nvars, self.ring.param, frozenset(self.terms.items())))
        return self._hash

    # structure --------------------------------------------------------

    def diff(self, i: int) -> "MultiPoly":
        """Formal partial derivative with respect to x_i."""
        if not 0 <= i < self.ring.nvars:
            raise InvalidParameter(f"no variable x{i}")
        s = self.ring.x_shift[i]
        unit = self.ring.x_unit[i]
        acc = {}
        for m, c in self.terms.items():
            e = (m >> s) & MASK
            if e:
                acc[m - unit] = c * e
        return MultiPoly(self.ring, _clean(self.field, acc))

    def graded_component(self, j: int) -> "MultiPoly":
        """Sum of the terms of total x-degree exactly j."""
        sh = self.ring.deg_shift
        return MultiPoly(self.ring, {m: c for m, c in self.terms.items() if m >> sh == j})

    def homogenize(self, d: int | None = None) -> "MultiPoly":
        """Multiply each term by a power of x0 to reach total degree d (default: the degree)."""
        if d is None:
            d = self.degree()
        sh = self.ring.deg_shift
        u0 = self.ring.x_unit[0]
        out = {}
        for m, c in self.terms.items():
            k = d - (m >> sh)
            if k < 0:
                raise InvalidParameter("degree below the polynomial's degree")
            out[m + k * u0] = c
        return MultiPoly(self.ring, out)

    def dehomogenize(self, i: int = 0) -> "MultiPoly":
        """Set x_i = 1."""
        s = self.ring.x_shift[i]
        unit = self.ring.x_unit[i]
        acc = {}
        for m, c in self.terms.items():
            e = (m >> s) & MASK
            k = m - e * unit
            acc[k] = acc.get(k, 0) + c
        return MultiPoly(self.ring, _clean(self.field, acc))

    def promote(self) -> "MultiPoly":
        """View a polynomial without t as one in the parameter ring."""
        if self.ring.param:
            return self
        return MultiPoly(self.ring.with_param(), {m << WIDTH: c for m, c in self.terms.items()})

    def specialize_t(self, a) -> "MultiPoly":
        """Substitute t = a; the result lives in the ring without parameter."""
        ring = self.ring
        if not ring.param:
            return self
        f = ring.field
        a = f.coerce(a)
        target = ring.without_param()
        acc = {}
        powers = {}
        for m, c in self.terms.items():
            e = m & MASK
            if e not in powers:
                powers[e] = f.pow(a, e)
            k = m >> WIDTH
            acc[k] = acc.get(k, 0) + c * powers[e]
        return MultiPoly(target, _clean(f, acc))

    def t_coefficients(self) -> dict:
        """Map x-exponent tuples to dense coefficient lists in t (low degree first)."""
        ring = self.ring
        out = {}
        for m, c in self.terms.items():
            exps, e = ring.unpack(m)
            lst = out.setdefault(exps, [])
            if len(lst) <= e:
                lst.extend([ring.field.zero] * (e + 1 - len(lst)))
            lst[e] = c
        return out

    def evaluate(self, point) -> object:
        """Evaluate at raw field values for x0..xn (t must be absent); returns a raw value."""
        ring = self.ring
        if ring.param and self.t_degree() > 0:
            raise DomainMismatch("specialize t before evaluating")
        if len(point) != ring.nvars:
            raise ArityMismatch(f"expected {ring.nvars} coordinates")
        f = ring.field
        pows = [dict() for _ in point]
        total = 0
        for m, c in self.terms.items():
            exps, _ = ring.unpack(m)
            term = c
            for i, e in enumerate(exps):
                if e:
                    cache = pows[i]
                    if e not in cache:
                        cache[e] = f.pow(point[i], e)
                    term = term * cache[e]
            total = total + term
        return f.reduce(total)

    def substitute(self, images) -> "MultiPoly":
        """Replace x_i by ``images[i]`` (all in one ring); t is carried along unchanged."""
        ring = self.ring
        images = list(images)
        if len(images) != ring.nvars:
            raise ArityMismatch(f"need {ring.nvars} images, got {len(images)}")
        if not images:
            return self
        target = images[0].ring
        for im in images:
            if im.ring is not target:
                raise DomainMismatch("images live in different rings")
        if target.field != ring.field:
            raise DomainMismatch("field mismatch in substitution")
        if ring.param and not target.param:
            target = target.with_param()
            images = [im.promote() for im in images]
        if not self.terms:
            return target.zero()

        rows = []
        for m, c in self.terms.items():
            exps, e = ring.unpack(m)
            rows.append((exps, e, c))
        powers = [{0: target.one(), 1: im} for im in images]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                j = max(e for e in cache if e <= k)
                acc = cache[j]
                while j < k:
                    acc = acc * images[i]
                    j += 1
                    cache[j] = acc
            return cache[k]

        def tail(group):
            acc = {}
            for _, e, c in group:
                acc[e] = acc.get(e, 0) + c
            return MultiPoly(target, _clean(target.field, acc))

        def rec(group, i):
            if i == ring.nvars:
                return tail(group)
            buckets = {}
            for row in group:
                buckets.setdefault(row[0][i], []).append(row)
            result = None
            for k in sorted(buckets):
                part = rec(buckets[k], i + 1)
                if k:
                    part = power(i, k) * part
                result = part if result is None else result + part
            return result

        return rec(rows, 0)

    # formatting -------------------------------------------------------

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"MultiPoly({self})"

    @classmethod
    def parse(cls, text: str, ring: PolyRing) -> "MultiPoly":
        from .parsing import parse_poly

        return parse_poly(text, ring)


def format_poly(f: MultiPoly) -> str:
    if not f.terms:
        return "0"
    ring = f.ring
    pieces = []
    for m, c in f.sorted_terms():
        exps, e = ring.unpack(m)
        names = [f"x{i}" if k == 1 else f"x{i}^{k}" for i, k in enumerate(exps) if k]
        if e:
            names.append("t" if e == 1 else f"t^{e}")
        neg = False
        if ring.field.is_rational and c < 0:
            neg, c = True, -c
        cs = str(c)
        if names:
            body = "*".join(names) if cs == "1" else cs + "*" + "*".join(names)
        else:
            body = cs
        pieces.append((neg, body))
    out = ("-" if pieces[0][0] else "") + pieces[0][1]
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out


# exact division ---------------------------------------------------------


def divide_exact(a: MultiPoly, b: MultiPoly):
    """Return q with a == q*b, or None when b does not divide a."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return a.ring.zero()
    ring = a.ring
    f = ring.field
    if len(b.terms) == 1:
        (mb, cb), = b.terms.items()
        inv = f.inv(cb)
        out = {}
        for m, c in a.terms.items():
            if not ring.divides(mb, m):
                return None
            out[m - mb] = f.reduce(c * inv)
        return MultiPoly(ring, out)
    lb_m, lb_c = b.leading()
    inv = f.inv(lb_c)
    rest = [(m, c) for m, c in b.terms.items() if m != lb_m]
    rem = dict(a.terms)
    heap = [-m for m in rem]
    heapq.heapify(heap)
    quot = {}
    rational = f.is_rational
    p = f.p
    while heap:
        m = -heapq.heappop(heap)
        c = rem.pop(m, None)
        if c is None:
            continue
        if not rational:
            c %= p
        if not c:
            continue
        if not ring.divides(lb_m, m):
            return None
        qm = m - lb_m
        qc = c * inv if rational else c * inv % p
        quot[qm] = qc
        for mb, cb in rest:
            k = qm + mb
            old = rem.get(k)
            if old is None:
                rem[k] = -qc * cb
                heapq.heappush(heap, -k)
            else:
                v = old - qc * cb
                if rational and not v:
                    del rem[k]
                else:
                    rem[k] = v
        # drop duplicate heap entries lazily
        while heap and -heap[0] not in rem:
            heapq.heappop(heap)
    return MultiPoly(ring, quot)


def poly_arith_ring(*polys) -> PolyRing:
    ring = polys[0].ring
    for p in polys[1:]:
        if p.ring is not ring:
            raise DomainMismatch(f"{ring!r} vs {p.ring!r}")
    return ring
