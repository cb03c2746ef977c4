"""Dense univariate polynomials over an exact field.

A polynomial is a tuple of coefficients, lowest degree first, with no
trailing zeros.  The empty tuple is the zero polynomial.  These helpers back
the extension-field arithmetic and the rational-root machinery.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import gcd

import sympy


def trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def degree(p) -> int:
    return len(p) - 1


def add(p, q):
    n = max(len(p), len(q))
    zero = 0
    return trim((p[i] if i < len(p) else zero) + (q[i] if i < len(q) else zero)
                for i in range(n))


def sub(p, q):
    return add(p, tuple(-c for c in q))


def mul(p, q):
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return trim(out)


def scale(p, c):
    return trim(a * c for a in p)


def divmod_(p, q):
    """Quotient and remainder of ``p`` by nonzero ``q``."""
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    p = list(p)
    dq = len(q) - 1
    lead_inv = 1 / Fraction(q[-1]) if not hasattr(q[-1], "inverse") else q[-1].inverse()
    quot = [0] * max(len(p) - dq, 0)
    while len(p) - 1 >= dq and p:
        shift = len(p) - 1 - dq
        c = p[-1] * lead_inv
        quot[shift] = c
        for i, b in enumerate(q):
            p[shift + i] = p[shift + i] - c * b
        p = list(trim(p))
    return trim(quot), trim(p)


def monic(p):
    if not p:
        return p
    lead = p[-1]
    inv = lead.inverse() if hasattr(lead, "inverse") else 1 / Fraction(lead)
    return trim(c * inv for c in p)


def gcd_(p, q):
    """Monic greatest common divisor (zero if both inputs are zero)."""
    while q:
        p, q = q, divmod_(p, q)[1]
    return monic(p)


def xgcd(p, q):
    """Return ``(g, s, t)`` with ``s*p + t*q = g`` and ``g`` monic."""
    r0, r1 = p, q
    s0, s1 = (Fraction(1),), ()
    t0, t1 = (), (Fraction(1),)
    while r1:
        quo, rem = divmod_(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, sub(s0, mul(quo, s1))
        t0, t1 = t1, sub(t0, mul(quo, t1))
    if not r0:
        return (), s0, t0
    inv = 1 / Fraction(r0[-1])
    return scale(r0, inv), scale(s0, inv), scale(t0, inv)


def derivative(p):
    return trim(i * p[i] for i in range(1, len(p)))


def evaluate(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def squarefree_part(p):
    if len(p) <= 2:
        return monic(p)
    g = gcd_(p, derivative(p))
    return monic(divmod_(p, g)[0])


def primitive_integer(p):
    """Scale a rational polynomial to a primitive integer polynomial."""
    p = [Fraction(c) for c in p]
    den = 1
    for c in p:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if g == 0:
        return ()
    if ints[-1] < 0:
        g = -g
    return tuple(c // g for c in ints)


def rational_roots(p) -> set[Fraction]:
    """All rational roots of a nonzero rational polynomial.

    Candidates are ``a/b`` with ``a | p(0)`` and ``b | lead(p)`` after
    clearing denominators and removing the power of the variable.
    """
    p = trim(p)
    if not p:
        raise ValueError("the zero polynomial has every element as a root")
    roots: set[Fraction] = set()
    shift = 0
    while p[shift] == 0:
        shift += 1
    if shift:
        roots.add(Fraction(0))
    p = squarefree_part(p[shift:])
    ints = primitive_integer(p)
    if len(ints) <= 1:
        return roots
    if len(ints) == 2:
        roots.add(Fraction(-ints[0], ints[1]))
        return roots
    const, lead = abs(ints[0]), abs(ints[-1])
    n = len(ints) - 1
    for b in sympy.divisors(lead):
        for a in sympy.divisors(const):
            if gcd(a, b) != 1:
                continue
            for num in (a, -a):
                # b^n * p(num/b), kept in the integers
                total = sum(c * num ** i * b ** (n - i) for i, c in enumerate(ints))
                if total == 0:
                    roots.add(Fraction(num, b))
    return roots


def is_irreducible(p) -> bool:
    """Irreducibility over the rationals of a polynomial of degree >= 1."""
    p = trim(p)
    if len(p) < 2:
        return False
    if len(p) == 2:
        return True
    if len(p) == 3 and p[1] == 0:
        # t^2 + c: reducible iff -c is a rational square
        v = -Fraction(p[0]) / Fraction(p[2])
        if v < 0:
            return True
        rn, rd = math.isqrt(v.numerator), math.isqrt(v.denominator)
        return rn * rn != v.numerator or rd * rd != v.denominator
    if len(p) <= 4:
        return not rational_roots(p)
    t = sympy.Symbol("t")
    expr = sum(sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) * t ** i
               for i, c in enumerate(p))
    return sympy.Poly(expr, t, domain=sympy.QQ).is_irreducible
