"""Weierstrass invariants and the three curve families with their rigidity
certificates: fibres with distinct j, a superelliptic genus ladder, and a
non-isogenous family built by congruence search."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import sympy
from sympy.ntheory.modular import crt


class CurveError(ValueError):
    pass


class SingularCurveError(CurveError, ZeroDivisionError):
    pass


def weierstrass_invariants(A, B):
    """``(Delta, j)`` for ``y^2 = x^3 + A x + B``."""
    A, B = Fraction(A), Fraction(B)
    core = 4 * A ** 3 + 27 * B ** 2
    delta = -16 * core
    if core == 0:
        raise SingularCurveError(f"singular curve: 4A^3 + 27B^2 = 0 for A={A}, B={B}")
    return delta, 1728 * 4 * A ** 3 / core


def discriminant(A, B) -> Fraction:
    A, B = Fraction(A), Fraction(B)
    return -16 * (4 * A ** 3 + 27 * B ** 2)


@dataclass(frozen=True)
class WeierstrassCurve:
    A: Fraction
    B: Fraction

    def __post_init__(self):
        object.__setattr__(self, "A", Fraction(self.A))
        object.__setattr__(self, "B", Fraction(self.B))

    @property
    def discriminant(self) -> Fraction:
        return discriminant(self.A, self.B)

    @property
    def j_invariant(self) -> Fraction:
        return weierstrass_invariants(self.A, self.B)[1]

    def contains(self, x, y) -> bool:
        return y * y == x ** 3 + self.A * x + self.B

    def equation(self, nvars: int = 2, xi: int = 0, yi: int = 1):
        """``y^2 - x^3 - A x - B`` as a polynomial in the given variable slots."""
        from .exactalg.poly import SparsePolynomial
        X = SparsePolynomial.variable(xi, nvars)
        Y = SparsePolynomial.variable(yi, nvars)
        return Y * Y - X ** 3 - X.scale(self.A) - self.B


def j_at_unit_A(B) -> Fraction:
    """``-1728 * 4^3 / Delta`` for ``A = 1``."""
    return Fraction(-1728 * 4 ** 3) / discriminant(1, B)


def elliptic_family_gen(count: int) -> list:
    """``y^2 = x^3 + x + n`` for ``n = 1..count``; all smooth with distinct j."""
    if count < 1:
        raise CurveError("count must be positive")
    out, seen = [], set()
    n = 0
    while len(out) < count:
        n += 1
        c = WeierstrassCurve(1, n)
        if c.discriminant == 0 or c.j_invariant in seen:
            continue
        seen.add(c.j_invariant)
        out.append(c)
    return out


@dataclass(frozen=True)
class SuperellipticCurve:
    """``y^d = (x + 1)(x + 2)`` with ``d`` odd, ``d >= 3``."""
    d: int

    def __post_init__(self):
        if self.d < 3 or self.d % 2 == 0:
            raise CurveError("superelliptic exponent must be odd and at least 3")

    @property
    def genus(self) -> int:
        return superelliptic_genus(self.d)

    def equation(self, nvars: int = 2, xi: int = 0, yi: int = 1):
        from .exactalg.poly import SparsePolynomial
        X = SparsePolynomial.variable(xi, nvars)
        Y = SparsePolynomial.variable(yi, nvars)
        return Y ** self.d - (X + 1) * (X + 2)


def superelliptic_genus(d: int) -> int:
    """Genus of ``y^d = (x+1)(x+2)``, ``d`` odd.

    Riemann-Hurwitz for the degree-``d`` map to the x-line: three totally
    ramified points (``-1``, ``-2``, infinity) give ``2g - 2 = -2d + 3(d-1)``.
    """
    if not isinstance(d, int) or d < 3 or d % 2 == 0:
        raise CurveError("d must be an odd integer >= 3")
    return (d - 1) // 2


def superelliptic_family_gen(count: int) -> list:
    return [SuperellipticCurve(2 * i + 1) for i in range(1, count + 1)]


# appendix family ---------------------------------------------------------------

def has_cube_root_of_4(p: int) -> bool:
    return any(pow(z, 3, p) == 4 % p for z in range(p))


def cube_roots_of_4(p: int) -> list:
    return [z for z in range(p) if pow(z, 3, p) == 4 % p]


def appendix_prime_list(count: int) -> list:
    """First ``count`` primes other than 2, 3 in which ``z^3 = 4`` is solvable."""
    if count < 1:
        raise CurveError("count must be positive")
    out, p = [], 5
    while len(out) < count:
        if has_cube_root_of_4(p):
            out.append(p)
        p = int(sympy.nextprime(p))
    return out


def padic_order(q, p: int) -> int:
    """Exponent of the prime ``p`` in the nonzero rational ``q``."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("the order of zero is infinite")
    if p < 2 or not sympy.isprime(p):
        raise ValueError(f"{p} is not prime")
    r = 0
    num, den = abs(q.numerator), q.denominator
    while num % p == 0:
        num //= p
        r += 1
    while den % p == 0:
        den //= p
        r -= 1
    return r


@dataclass
class AppendixFamilyState:
    """Generated prefix of the non-isogenous family ``y^2 = x^3 + A_k x + 1``.

    ``modulus`` is the product of the values ``4A_i^3 + 27`` so far.  These
    are pairwise coprime, so a prime lies in the bad set G(k) exactly when
    it divides ``modulus``; no factorisation is ever needed.
    """
    prime_list: list = field(default_factory=list)
    A_sequence: list = field(default_factory=list)
    targets: list = field(default_factory=list)
    modulus: int = 1

    @property
    def values(self) -> list:
        return [4 * a ** 3 + 27 for a in self.A_sequence]

    def in_bad_set(self, p: int, k: int | None = None) -> bool:
        """``p`` divides some ``4A_i^3 + 27`` with ``i < k`` (1-based ``k``)."""
        vals = self.values if k is None else self.values[:k - 1]
        return any(v % p == 0 for v in vals)

    def bad_prime_set(self, k: int, limit: int = 10 ** 5) -> tuple:
        """Prime factors of ``4A_k^3 + 27`` below ``limit`` and the cofactor left."""
        v = self.values[k - 1]
        small = sympy.factorint(v, limit=limit)
        found = sorted(p for p in small if p < limit)
        rest = v
        for p in found:
            while rest % p == 0:
                rest //= p
        return tuple(found), rest

    def curves(self) -> list:
        return [WeierstrassCurve(a, 1) for a in self.A_sequence]


def _next_A(state: AppendixFamilyState):
    M = state.modulus
    q = next((p for p in state.prime_list if M % p), None)
    if q is None:
        raise CurveError("prime list exhausted: every listed prime is already bad")
    roots = cube_roots_of_4(q)
    if not roots:
        raise CurveError(f"no cube root of 4 modulo {q}")
    best = None
    for z in roots:
        r = (-3 * pow(z, -1, q)) % q
        mods, res = [3, q], [1, r]
        if M > 1:
            mods.append(M)
            res.append(0)
        a = int(crt(mods, res)[0])
        if best is None or a < best:
            best = a
    return q, best


def appendix_A_sequence(count: int, state: AppendixFamilyState | None = None,
                        prime_count: int | None = None) -> AppendixFamilyState:
    """Extend the state until it holds ``count`` values of ``A``.

    Each ``A_k`` is the least positive solution of ``A = 1 (mod 3)``,
    ``4A^3 + 27 = 0 (mod q_k)`` and ``A = 0`` modulo the product of the
    earlier values ``4A_i^3 + 27``.  ``q_k`` is the first listed prime outside
    the bad set.  When those earlier values are squarefree the product is
    exactly the product of the bad primes.
    """
    if state is None:
        state = AppendixFamilyState(appendix_prime_list(prime_count or max(count + 2, 6)))
    while len(state.A_sequence) < count:
        try:
            q, a = _next_A(state)
        except CurveError:
            state.prime_list = appendix_prime_list(len(state.prime_list) * 2)
            continue
        v = 4 * a ** 3 + 27
        if gcd(v, state.modulus) != 1 or v % q or gcd(v, 6) != 1:
            raise CurveError(f"internal: congruence search produced a bad A={a}")
        state.A_sequence.append(a)
        state.targets.append(q)
        state.modulus *= v
    return state


@dataclass
class CheckReport:
    passed: bool
    failures: list = field(default_factory=list)
    witness: object = None

    def __bool__(self):
        return self.passed


def appendix_conditions(state: AppendixFamilyState) -> CheckReport:
    """Valuation conditions on the generated prefix, checked by direct ord."""
    fails, witness = [], None
    vals = state.values
    for k, v in enumerate(vals, start=1):
        if v == 0:
            fails.append(f"A_{k}: 4A^3+27 vanishes")
        if gcd(v, 6) != 1:
            fails.append(f"A_{k}: 4A^3+27 divisible by 2 or 3")
        earlier = 1
        for u in vals[:k - 1]:
            earlier *= u
        if gcd(v, earlier) != 1:
            witness = witness or (k, gcd(v, earlier))
            fails.append(f"A_{k}: shares a prime with an earlier discriminant")
        for p in state.prime_list:
            if earlier % p == 0 and padic_order(v, p) != 0:
                fails.append(f"A_{k}: ord_{p} > 0 on the bad set")
                witness = witness or (k, p)
        q = state.targets[k - 1] if k - 1 < len(state.targets) else None
        first = next((p for p in state.prime_list if earlier % p), None)
        if q is None or q != first or padic_order(v, q) < 1:
            fails.append(f"A_{k}: target prime does not divide 4A^3+27")
            witness = witness or (k, q)
    return CheckReport(not fails, fails, witness)


def reduction_disjointness(state: AppendixFamilyState, prefix: int | None = None) -> CheckReport:
    """Each curve's witness prime divides its own discriminant and no other."""
    n = len(state.A_sequence) if prefix is None else prefix
    vals = state.values[:n]
    fails, witness = [], None
    for i in range(n):
        q = state.targets[i]
        if vals[i] % q:
            fails.append(f"witness {q} does not divide curve {i + 1}")
            witness = witness or (i + 1, q)
        for k in range(n):
            if k != i and vals[k] % q == 0:
                fails.append(f"witness {q} of curve {i + 1} also divides curve {k + 1}")
                witness = witness or ((i + 1, k + 1), q)
    return CheckReport(not fails, fails, witness)


def rigidity_certify(kind: str, prefix: int, family=None) -> CheckReport:
    """Pairwise distinctness of the declared invariant over a family prefix.

    ``family`` defaults to the canonical family of the given kind; pass a list
    of curves (or an appendix state) to certify something else.
    """
    if kind == "distinct-j-invariant":
        curves = family if family is not None else elliptic_family_gen(prefix)
        keys = [c.j_invariant for c in curves[:prefix]]
    elif kind == "distinct-genus":
        curves = family if family is not None else superelliptic_family_gen(prefix)
        keys = [c.genus for c in curves[:prefix]]
    elif kind == "distinct-bad-primes":
        state = family if family is not None else appendix_A_sequence(prefix)
        rep = reduction_disjointness(state, prefix)
        if rep:
            return CheckReport(True, [], kind)
        return rep
    else:
        raise CurveError(f"unknown certificate kind {kind!r}")
    seen = {}
    for i, key in enumerate(keys):
        if key in seen:
            return CheckReport(False, [f"components {seen[key] + 1} and {i + 1} collide"],
                               (seen[key] + 1, i + 1))
        seen[key] = i
    return CheckReport(True, [], kind)


# family files --------------------------------------------------------------------

def format_family(lines_kind: str, items) -> str:
    out = ["seed-free"]
    if lines_kind == "elliptic":
        from .exactalg.field import format_rational
        out += [f"ELLIPTIC {format_rational(c.A)} {format_rational(c.B)}" for c in items]
    elif lines_kind == "super":
        out += [f"SUPER {c.d}" for c in items]
    elif lines_kind == "appendix":
        state = items
        out += [f"APPX {q} {a}" for q, a in zip(state.targets, state.A_sequence)]
    else:
        raise CurveError(f"unknown family kind {lines_kind!r}")
    return "\n".join(out) + "\n"


def parse_family(text: str):
    """Inverse of :func:`format_family`; returns ``(kind, items)``."""
    kind, items = None, []
    state = AppendixFamilyState()
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line or line == "seed-free":
            continue
        parts = line.split()
        tag = {"ELLIPTIC": "elliptic", "SUPER": "super", "APPX": "appendix"}.get(parts[0])
        if tag is None:
            raise CurveError(f"unknown family line {line!r}")
        if kind not in (None, tag):
            raise CurveError("mixed family kinds in one file")
        kind = tag
        if tag == "elliptic":
            items.append(WeierstrassCurve(Fraction(parts[1]), Fraction(parts[2])))
        elif tag == "super":
            items.append(SuperellipticCurve(int(parts[1])))
        else:
            q, a = int(parts[1]), int(parts[2])
            state.targets.append(q)
            state.A_sequence.append(a)
            state.modulus *= 4 * a ** 3 + 27
    if kind == "appendix":
        state.prime_list = appendix_prime_list(max(len(state.targets) + 2, 6))
        return kind, state
    return kind, items
