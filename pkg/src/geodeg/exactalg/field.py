"""Exact coefficient fields: the rationals and simple extensions Q(alpha).

Rational elements are plain :class:`fractions.Fraction` values.  Elements of
``Q(alpha)`` are :class:`AlgebraicNumber` instances carrying their coordinate
vector in the power basis ``1, alpha, ..., alpha^(d-1)`` and a handle to the
:class:`ExtensionDescriptor`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from . import univariate as up


class FieldError(ArithmeticError):
    """Base class for coefficient-field failures."""


class IncompatibleFieldError(FieldError, TypeError):
    """Raised when elements of different fields are combined."""


@dataclass(frozen=True)
class ExtensionDescriptor:
    """``Q(alpha)`` with ``alpha`` a root of a monic irreducible polynomial.

    ``minimal_polynomial`` holds rational coefficients, lowest degree first.
    Irreducibility is certified at construction.
    """

    minimal_polynomial: tuple
    degree: int = field(init=False)

    def __post_init__(self):
        coeffs = up.trim(Fraction(c) for c in self.minimal_polynomial)
        if len(coeffs) < 2:
            raise FieldError("minimal polynomial must have degree >= 1")
        if coeffs[-1] != 1:
            raise FieldError("minimal polynomial must be monic")
        if not up.is_irreducible(coeffs):
            raise FieldError(f"polynomial {coeffs} is reducible over Q")
        object.__setattr__(self, "minimal_polynomial", coeffs)
        object.__setattr__(self, "degree", len(coeffs) - 1)

    def element(self, coords) -> "AlgebraicNumber":
        return AlgebraicNumber(self, coords)

    @property
    def generator(self) -> "AlgebraicNumber":
        if self.degree == 1:
            return self.element([-self.minimal_polynomial[0]])
        return self.element([0, 1])

    def zero(self):
        return self.element([0])

    def one(self):
        return self.element([1])


class AlgebraicNumber:
    """An element of a simple algebraic extension of the rationals."""

    __slots__ = ("field", "coords", "_hash")

    def __init__(self, ext: ExtensionDescriptor, coords):
        coords = [Fraction(c) for c in coords]
        poly = up.trim(coords)
        if len(poly) > ext.degree:
            poly = up.divmod_(poly, ext.minimal_polynomial)[1]
        coords = list(poly) + [Fraction(0)] * (ext.degree - len(poly))
        self.field = ext
        self.coords = tuple(coords)
        self._hash = None

    # coercion -------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, AlgebraicNumber):
            if other.field != self.field:
                raise IncompatibleFieldError("elements of different extension fields")
            return other
        if isinstance(other, (int, Fraction)):
            return AlgebraicNumber(self.field, [other])
        return NotImplemented

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return AlgebraicNumber(self.field, [a + b for a, b in zip(self.coords, other.coords)])

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicNumber(self.field, [-a for a in self.coords])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return AlgebraicNumber(self.field, [a - b for a, b in zip(self.coords, other.coords)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prod = up.mul(up.trim(self.coords), up.trim(other.coords))
        return AlgebraicNumber(self.field, prod)

    __rmul__ = __mul__

    def inverse(self) -> "AlgebraicNumber":
        poly = up.trim(self.coords)
        if not poly:
            raise ZeroDivisionError("inverse of zero in an extension field")
        g, s, _ = up.xgcd(poly, self.field.minimal_polynomial)
        # irreducible modulus => gcd is 1
        return AlgebraicNumber(self.field, s)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.field.one(), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, AlgebraicNumber):
            return self.field == other.field and self.coords == other.coords
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coords[0])
        if self._hash is None:
            self._hash = hash((self.field, self.coords))
        return self._hash

    def __bool__(self):
        return any(c != 0 for c in self.coords)

    def __repr__(self):
        return f"AlgebraicNumber({format_element(self)})"


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_element(c) -> str:
    """Text form of a field element; extension elements use ``t`` for alpha."""
    if not isinstance(c, AlgebraicNumber):
        return format_rational(c)
    parts = []
    for i, a in enumerate(c.coords):
        if a == 0:
            continue
        mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
        if not mono:
            body = format_rational(abs(a))
        elif abs(a) == 1:
            body = mono
        else:
            body = f"{format_rational(abs(a))}*{mono}"
        sign = "-" if a < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def same_field(a, b):
    fa = a.field if isinstance(a, AlgebraicNumber) else None
    fb = b.field if isinstance(b, AlgebraicNumber) else None
    return fa is None or fb is None or fa == fb


def field_arithmetic(a, b, op: str):
    """Exact ``add``, ``sub``, ``mul``, ``div`` or ``eq`` on field elements."""
    if isinstance(a, AlgebraicNumber) and isinstance(b, AlgebraicNumber) and a.field != b.field:
        raise IncompatibleFieldError("elements of different extension fields")
    if not isinstance(a, AlgebraicNumber):
        a = Fraction(a)
    if not isinstance(b, AlgebraicNumber):
        b = Fraction(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise ZeroDivisionError("division by zero field element")
        return a / b
    if op == "eq":
        return a == b
    raise ValueError(f"unknown field operation {op!r}")


# enumeration -------------------------------------------------------------
#
# phi(1) = 0, phi(2k) = q_k, phi(2k+1) = -q_k where q_1, q_2, ... lists the
# positive rationals diagonal by diagonal: for s = 2, 3, ... and p = 1..s-1,
# emit p/(s-p) when gcd(p, s) = 1.  So q = 1, 1/2, 2, 1/3, 3, 1/4, 2/3, ...

@lru_cache(maxsize=None)
def _totient(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _positive_rational(k: int) -> Fraction:
    s = 2
    while k > _totient(s):
        k -= _totient(s)
        s += 1
    for p in range(1, s):
        if gcd(p, s) == 1:
            k -= 1
            if k == 0:
                return Fraction(p, s - p)
    raise AssertionError("unreachable")


def _positive_rational_index(q: Fraction) -> int:
    p, s = q.numerator, q.numerator + q.denominator
    k = sum(_totient(t) for t in range(2, s))
    return k + sum(1 for a in range(1, p + 1) if gcd(a, s) == 1)


def cantor_pair(a: int, b: int) -> int:
    return (a + b) * (a + b + 1) // 2 + b


def cantor_unpair(n: int) -> tuple[int, int]:
    w = (isqrt(8 * n + 1) - 1) // 2
    b = n - w * (w + 1) // 2
    return w - b, b


def tuple_unpair(n: int, length: int) -> tuple[int, ...]:
    """Bijection from naturals to ``length``-tuples of naturals."""
    if length == 1:
        return (n,)
    a, rest = cantor_unpair(n)
    return (a,) + tuple_unpair(rest, length - 1)


def tuple_pair(values) -> int:
    values = tuple(values)
    if len(values) == 1:
        return values[0]
    return cantor_pair(values[0], tuple_pair(values[1:]))


def field_enumerate(index: int, ext: ExtensionDescriptor | None = None):
    """The ``index``-th element (1-based) of the fixed listing of the field."""
    if index < 1:
        raise ValueError("field enumeration is indexed from 1")
    if ext is not None:
        parts = tuple_unpair(index - 1, ext.degree)
        return ext.element([field_enumerate(p + 1) for p in parts])
    if index == 1:
        return Fraction(0)
    q = _positive_rational(index // 2)
    return q if index % 2 == 0 else -q


def field_index(value, ext: ExtensionDescriptor | None = None) -> int:
    """Inverse of :func:`field_enumerate`."""
    if ext is not None:
        if not isinstance(value, AlgebraicNumber):
            value = ext.element([value])
        return tuple_pair(field_index(c) - 1 for c in value.coords) + 1
    if isinstance(value, AlgebraicNumber):
        if not value.is_rational():
            raise IncompatibleFieldError("irrational element has no rational index")
        value = value.coords[0]
    value = Fraction(value)
    if value == 0:
        return 1
    k = _positive_rational_index(abs(value))
    return 2 * k if value > 0 else 2 * k + 1
