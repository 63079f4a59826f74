"""Exact scalars over the rationals and prime fields.

Internally a field element is a *raw* value: a ``gmpy2.mpq`` over Q and a
Python ``int`` in ``[0, p)`` over F_p.  The polynomial kernel works on raw
values directly; :class:`FieldScalar` wraps one together with its field for
the public API.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

import gmpy2
from gmpy2 import mpq, mpz

from .errors import DivisionByZero, FieldMismatch, InvalidParameter, ParseError

_SCALAR_RE = re.compile(r"^\s*([+-]?)\s*(\d+)\s*(?:/\s*(\d+))?\s*$")


class FieldKind(Enum):
    RATIONALS = "q"
    PRIME_FIELD = "fp"


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    for d in range(3, math.isqrt(p) + 1, 2):
        if p % d == 0:
            return False
    return True


@dataclass(frozen=True)
class FieldDescriptor:
    kind: FieldKind
    characteristic: int = 0

    def __post_init__(self):
        if self.kind is FieldKind.RATIONALS:
            if self.characteristic != 0:
                raise InvalidParameter("the rationals have characteristic 0")
        else:
            p = self.characteristic
            if not (isinstance(p, int) and p < 2**31 and _is_prime(p)):
                raise InvalidParameter(f"{p!r} is not a prime below 2^31")

    # construction -----------------------------------------------------

    @staticmethod
    def parse(selector: str) -> "FieldDescriptor":
        """Parse a field selector: ``"q"`` or ``"fp:<p>"``."""
        s = selector.strip().lower()
        if s == "q":
            return QQ
        m = re.fullmatch(r"fp:(\d+)", s)
        if not m:
            raise ParseError(f"bad field selector {selector!r}")
        return prime_field(int(m.group(1)))

    @property
    def selector(self) -> str:
        return "q" if self.is_rational else f"fp:{self.characteristic}"

    @property
    def is_rational(self) -> bool:
        return self.kind is FieldKind.RATIONALS

    @property
    def p(self) -> int:
        return self.characteristic

    def __repr__(self):
        return "QQ" if self.is_rational else f"GF({self.characteristic})"

    # raw arithmetic ---------------------------------------------------

    def coerce(self, x):
        """Turn an int, Fraction, mpq, string or FieldScalar into a raw value."""
        if isinstance(x, FieldScalar):
            if x.field != self:
                raise FieldMismatch(f"{x.field!r} value used in {self!r}")
            return x.value
        if isinstance(x, str):
            return self.parse_raw(x)
        if self.is_rational:
            if isinstance(x, Fraction):
                return mpq(x.numerator, x.denominator)
            return mpq(x)
        p = self.characteristic
        if isinstance(x, (int, type(mpz(0)))):
            return int(x) % p
        if isinstance(x, (Fraction, type(mpq(0)))):
            den = int(x.denominator) % p
            if den == 0:
                raise DivisionByZero(f"denominator of {x} vanishes mod {p}")
            return int(x.numerator) * pow(den, -1, p) % p
        raise TypeError(f"cannot coerce {type(x).__name__} into {self!r}")

    def parse_raw(self, text: str):
        m = _SCALAR_RE.match(text)
        if not m:
            raise ParseError(f"bad scalar literal {text!r}")
        sign, num, den = m.groups()
        value = Fraction(int(num), int(den) if den else 1)
        if den is not None and int(den) == 0:
            raise DivisionByZero("zero denominator")
        if sign == "-":
            value = -value
        return self.coerce(value)

    @property
    def zero(self):
        return mpq(0) if self.is_rational else 0

    @property
    def one(self):
        return mpq(1) if self.is_rational else 1

    def add(self, a, b):
        return a + b if self.is_rational else (a + b) % self.characteristic

    def sub(self, a, b):
        return a - b if self.is_rational else (a - b) % self.characteristic

    def mul(self, a, b):
        return a * b if self.is_rational else (a * b) % self.characteristic

    def neg(self, a):
        return -a if self.is_rational else (-a) % self.characteristic

    def inv(self, a):
        if not a:
            raise DivisionByZero("inverse of zero")
        if self.is_rational:
            return 1 / a
        return pow(a, -1, self.characteristic)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self.is_rational:
            return a**e
        return pow(a, e, self.characteristic)

    def reduce(self, a):
        """Canonicalise the result of raw ``+``/``*`` on raw values."""
        return a if self.is_rational else a % self.characteristic

    def format(self, a) -> str:
        return str(a)

    def scalar(self, x) -> "FieldScalar":
        return FieldScalar(self, self.coerce(x))


QQ = FieldDescriptor(FieldKind.RATIONALS, 0)


@lru_cache(maxsize=None)
def prime_field(p: int) -> FieldDescriptor:
    return FieldDescriptor(FieldKind.PRIME_FIELD, int(p))


def rationals() -> FieldDescriptor:
    return QQ


@dataclass(frozen=True)
class FieldScalar:
    """An exact element of Q or F_p."""

    field: FieldDescriptor
    value: object

    def __post_init__(self):
        raw = self.value
        if self.field.is_rational:
            if not isinstance(raw, type(mpq(0))):
                object.__setattr__(self, "value", self.field.coerce(raw))
        elif not (isinstance(raw, int) and 0 <= raw < self.field.p):
            object.__setattr__(self, "value", self.field.coerce(raw))

    @classmethod
    def parse(cls, text: str, field: FieldDescriptor = QQ) -> "FieldScalar":
        return cls(field, field.parse_raw(text))

    def _other(self, other):
        if isinstance(other, FieldScalar):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other.value
        return self.field.coerce(other)

    def __add__(self, other):
        return FieldScalar(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldScalar(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldScalar(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldScalar(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldScalar(self.field, self.field.neg(self.value))

    def inverse(self) -> "FieldScalar":
        return FieldScalar(self.field, self.field.inv(self.value))

    def __truediv__(self, other):
        return self * FieldScalar(self.field, self._other(other)).inverse()

    def __rtruediv__(self, other):
        return FieldScalar(self.field, self._other(other)) * self.inverse()

    def __pow__(self, e: int):
        return FieldScalar(self.field, self.field.pow(self.value, e))

    def __eq__(self, other):
        if isinstance(other, FieldScalar):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field.coerce(other)
        except (TypeError, DivisionByZero):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return bool(self.value)

    def to_fraction(self) -> Fraction:
        v = self.value
        if self.field.is_rational:
            return Fraction(int(v.numerator), int(v.denominator))
        return Fraction(v)

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return f"FieldScalar({self.field!r}, {self.value})"


def _exact_root(a: int, n: int):
    """Return the integer n-th root of a >= 0, or None if a is not a perfect power."""
    r, exact = gmpy2.iroot(mpz(a), n)
    return int(r) if exact else None


def nth_power_class(a: FieldScalar, n: int):
    """Decide whether ``a`` lies in (k*)^n.

    Returns ``(True, w)`` with ``w**n == a`` exactly, or ``(False, None)``.
    Over Q the test is exact: a reduced fraction is an n-th power iff its sign
    allows it and numerator and denominator are perfect n-th powers.
    """
    if n < 1:
        raise InvalidParameter("n must be a positive integer")
    if not a:
        raise InvalidParameter("nth_power_class needs a nonzero scalar")
    field = a.field
    if field.is_rational:
        num, den = int(a.value.numerator), int(a.value.denominator)
        if num < 0 and n % 2 == 0:
            return False, None
        rn, rd = _exact_root(abs(num), n), _exact_root(den, n)
        if rn is None or rd is None:
            return False, None
        w = FieldScalar(field, mpq(-rn if num < 0 else rn, rd))
        return True, w

    p = field.p
    x = a.value
    g = math.gcd(n, p - 1)
    if pow(x, (p - 1) // g, p) != 1:
        return False, None
    if g == 1:
        w = pow(x, pow(n, -1, p - 1), p)
    else:
        from sympy.ntheory import nthroot_mod

        w = int(nthroot_mod(x, n, p))
    w_scalar = FieldScalar(field, w)
    assert w_scalar**n == a
    return True, w_scalar
