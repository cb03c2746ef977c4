"""Spec-style ringed spaces over Q and Q[x_1..x_n] localizations.

Two encodings of a set ``X`` live here.  The integer one keeps the primes of
even index, drops ``2`` and keeps ``p_(2n+1)`` exactly when ``n`` is in
``X``; the ring of global sections then contains ``1/p_(2n+1)`` iff ``n``
is not in ``X``.  The linear one does the same with primes ``(x_j - a)`` of
a polynomial ring, indexed through the field listing.

The function-field layer works in ``K = k(x)[z]/(F)``.  Arithmetic in
``k(x)`` is delegated to sympy's rational function field.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

import sympy
from sympy.polys.matrices import DomainMatrix

from .curves import padic_order
from .exactalg.field import field_enumerate, field_index
from .exactalg.poly import SparsePolynomial
from .geometry import linear_factors_in_variable, linear_multiplicity
from .harness.oracle import OracleSet

__all__ = ["padic_order", "SchemeError", "DerivedOracle", "LocalizedRingDescriptor",
           "SpecPresentation", "P_member", "R_member", "valuation_scheme_member",
           "spec_points", "build_ZX_scheme", "scheme_decide_pair", "FunctionField",
           "FunctionFieldElement", "minpoly_in_K", "norm_K", "integral_member",
           "order_at_linear_prime", "canonical_field", "format_scheme_dump", "scheme_roundtrip",
           "SchemeCopy", "probe_element", "encoding_prime", "localization_representation",
           "norm_divisible", "element_divisible", "certify_substitution_irreducible",
           "odd_even_join"]


class SchemeError(ValueError):
    pass


# oracle plumbing ------------------------------------------------------------------

class DerivedOracle:
    """A set computed from another oracle; every base query is logged there.

    ``rule(n, ask)`` decides membership of ``n`` using ``ask`` for the base.
    """

    def __init__(self, base: OracleSet, rule: Callable, name: str = ""):
        self.base = base
        self.rule = rule
        self.name = name
        self.log = []

    def query(self, n: int) -> bool:
        ans = bool(self.rule(n, self.base.query))
        self.log.append((n, ans))
        return ans

    @property
    def query_count(self) -> int:
        return self.base.query_count


def odd_even_join(X: OracleSet) -> DerivedOracle:
    """``{2n+1 : n in X} ∪ {2, 4, 6, ...}``."""
    def rule(m, ask):
        if m < 1:
            return False
        if m % 2 == 0:
            return True
        n = (m - 1) // 2
        return n >= 1 and ask(n)
    return DerivedOracle(X, rule, "odd-even")


class EmptyOracle:
    log: list = []

    def query(self, n):
        return False

    query_count = 0


# localized polynomial rings ---------------------------------------------------------

@dataclass
class LocalizedRingDescriptor:
    """``R_{I_1..I_n}``: rational functions whose denominators avoid
    ``x_j - a`` for ``a`` in ``phi(I_j)``.

    ``oracles[j]`` answers membership in ``I_(j+1)``; ``phi`` is the fixed
    field listing, so ``a in phi(I_j)`` costs one query of index
    ``field_index(a)``.
    """
    nvars: int
    oracles: list
    kind: str = "polynomial-localization"

    def forbidden(self, j: int, a) -> bool:
        return self.oracles[j].query(field_index(Fraction(a)))

    @property
    def query_count(self):
        return sum(getattr(o, "query_count", 0) for o in {id(o): o for o in self.oracles}.values())


def P_member(h: SparsePolynomial, descriptor: LocalizedRingDescriptor) -> bool:
    """``h`` has no forbidden linear factor ``x_j - a``."""
    if not h:
        raise SchemeError("the zero polynomial is not a denominator")
    for j in range(descriptor.nvars):
        for a in sorted(linear_factors_in_variable(h, j)):
            if descriptor.forbidden(j, a):
                return False
    return True


def _cancel_linear(num: SparsePolynomial, den: SparsePolynomial):
    from .geometry import divide_linear_power
    for j in range(den.nvars):
        for a in sorted(linear_factors_in_variable(den, j)):
            k = min(linear_multiplicity(den, j, a), linear_multiplicity(num, j, a)) if num else 0
            if k:
                num = divide_linear_power(num, j, a, k)
                den = divide_linear_power(den, j, a, k)
    return num, den


def R_member(g, descriptor: LocalizedRingDescriptor) -> bool:
    """Membership of ``g = (numerator, denominator)`` in ``R_{I_1..I_n}``.

    Common linear factors are cancelled first, so the answer does not depend
    on the representation.  One oracle query per remaining linear factor of
    the denominator.
    """
    if isinstance(g, SparsePolynomial):
        return True
    num, den = g
    if not den:
        raise SchemeError("zero denominator")
    if not num:
        return True
    num, den = _cancel_linear(num, den)
    if den.is_constant():
        return True
    return P_member(den, descriptor)


# Spec presentations -------------------------------------------------------------

def prime_text(pr) -> str:
    if pr[0] == "zero":
        return "PRIME zero"
    if pr[0] == "int":
        return f"PRIME int {pr[1]}"
    from .exactalg.field import format_rational
    return f"PRIME lin {pr[1]} {format_rational(pr[2])}"


class SpecPresentation:
    """Prime ideals with the cofinite topology and ``F(O) = ⋂ R_p``.

    Opens are given by a finite set of excluded nonzero primes; the generic
    point ``(0)`` lies in every nonempty open.
    """

    def __init__(self, flavor: str, contains: Callable, primes: Callable,
                 descriptor: LocalizedRingDescriptor | None = None, oracle=None):
        if flavor not in ("integer", "linear"):
            raise SchemeError(f"unknown flavor {flavor!r}")
        self.flavor = flavor
        self._contains = contains
        self._primes = primes
        self.descriptor = descriptor
        self.oracle = oracle

    def contains(self, pr) -> bool:
        if pr[0] == "zero":
            return True
        return self._contains(pr)

    def primes(self, budget: int | None = None) -> Iterator:
        yield ("zero",)
        yield from self._primes(budget)

    def member(self, f, excluded=frozenset()) -> bool:
        """Is ``f`` a section over the open missing ``excluded``?"""
        if self.flavor == "integer":
            return valuation_scheme_member(f, self, excluded)
        num, den = f if isinstance(f, tuple) else (f, None)
        if den is None or not num:
            return True
        num, den = _cancel_linear(num, den)
        for j in range(den.nvars):
            for a in sorted(linear_factors_in_variable(den, j)):
                if ("lin", j + 1, a) in excluded:
                    continue
                if self.contains(("lin", j + 1, a)):
                    return False
        return True


def valuation_scheme_member(f, zx: SpecPresentation, excluded=frozenset()) -> bool:
    """``ord_p(f) >= 0`` for every prime ``p`` of the open; zero is always a member."""
    f = Fraction(f)
    if f == 0:
        return True
    for p in sorted(sympy.factorint(f.denominator)):
        if ("int", p) in excluded:
            continue
        if zx.contains(("int", p)):
            return False
    return True


def _integer_contains(X: OracleSet):
    def contains(pr):
        if pr[0] != "int":
            raise SchemeError("integer schemes hold only rational primes")
        p = pr[1]
        if not sympy.isprime(p):
            raise SchemeError(f"{p} is not prime")
        idx = int(sympy.primepi(p))
        if idx == 1:
            return False
        if idx % 2 == 0:
            return True
        return X.query((idx - 1) // 2)
    return contains


def _integer_primes(X: OracleSet):
    def gen(budget):
        idx = 1
        while budget is None or idx <= budget:
            idx += 1
            if idx % 2 == 0 or X.query((idx - 1) // 2):
                yield ("int", int(sympy.prime(idx)))
    return gen


def spec_points(descriptor: LocalizedRingDescriptor) -> SpecPresentation:
    """``{(x_j - a) : a in phi(I_j)} ∪ {(0)}``."""
    def contains(pr):
        if pr[0] != "lin":
            raise SchemeError("polynomial schemes hold only linear primes")
        _, j, a = pr
        return descriptor.forbidden(j - 1, a)

    def gen(budget):
        m = 0
        while budget is None or m < budget:
            m += 1
            for j in range(descriptor.nvars):
                if descriptor.oracles[j].query(m):
                    yield ("lin", j + 1, field_enumerate(m))

    return SpecPresentation("linear", contains, gen, descriptor)


def build_ZX_scheme(oracle: OracleSet, flavor: str = "integer", nvars: int = 2) -> SpecPresentation:
    if flavor in ("integer", "integer-valuations"):
        return SpecPresentation("integer", _integer_contains(oracle), _integer_primes(oracle),
                                oracle=oracle)
    if flavor in ("linear", "linear-primes"):
        oracles = [odd_even_join(oracle)] + [EmptyOracle() for _ in range(nvars - 1)]
        sp = spec_points(LocalizedRingDescriptor(nvars, oracles))
        sp.oracle = oracle
        return sp
    raise SchemeError(f"unknown flavor {flavor!r}")


def encoding_prime(n: int, flavor: str = "integer"):
    """``e(n)``: the prime whose presence records ``n in X``."""
    if flavor == "integer":
        return ("int", int(sympy.prime(2 * n + 1)))
    return ("lin", 1, field_enumerate(2 * n + 1))


def probe_element(n: int, flavor: str = "integer", nvars: int = 2):
    """``1/e(n)`` as a section candidate."""
    pr = encoding_prime(n, flavor)
    if flavor == "integer":
        return Fraction(1, pr[1])
    x = SparsePolynomial.variable(0, nvars)
    return (SparsePolynomial.constant(1, nvars), x - pr[2])


class SchemeCopy:
    """A renamed presentation: primes listed in a seeded shuffled order.

    The section ring is intrinsic, so membership answers are unchanged; the
    renaming only affects the order in which points are listed.
    """

    def __init__(self, spec: SpecPresentation, seed: int, block: int = 16):
        self.spec = spec
        self.seed = seed
        self.block = block

    def primes(self, budget: int) -> list:
        pts = list(self.spec.primes(budget))
        out = []
        for b in range(0, len(pts), self.block):
            chunk = pts[b:b + self.block]
            random.Random(f"{self.seed}:{b}").shuffle(chunk)
            out += chunk
        return out

    def ask(self, f) -> bool:
        return self.spec.member(f)


def scheme_decide_pair(copy, i: int, j: int, flavor: str = "integer") -> int:
    """Exactly one of ``e(i)``, ``e(j)`` is a point of the copy: which?"""
    if not copy.ask(probe_element(i, flavor)):
        return i
    if not copy.ask(probe_element(j, flavor)):
        return j
    raise SchemeError(f"neither e({i}) nor e({j}) is a point of the copy")


def scheme_roundtrip(X: OracleSet, seed: int = 0, bound: int = 64, flavor: str = "integer"):
    from .harness.roundtrip import Audit
    enc = X.fresh()
    spec = build_ZX_scheme(enc, flavor)
    copy = SchemeCopy(spec, seed)
    got = [n for n in range(1, bound + 1) if not copy.ask(probe_element(n, flavor))]
    return Audit("scheme", got, enc.query_count, 0, sorted(X.prefix(bound)))


def format_scheme_dump(spec: SpecPresentation, count: int, oracle_ref: str = "") -> str:
    out = [f"FLAVOR {spec.flavor}"]
    if oracle_ref:
        out.append(f"ORACLE {oracle_ref}")
    for k, pr in enumerate(spec.primes()):
        if k >= count:
            break
        out.append(prime_text(pr))
    return "\n".join(out) + "\n"


# function fields -----------------------------------------------------------------

class FunctionField:
    """``K = k(x_1..x_n)[z]/(F)`` with ``F`` monic of degree ``m`` in ``z``."""

    def __init__(self, F, nvars: int, check: bool = True):
        self.nvars = nvars
        self.xs = sympy.symbols(f"x1:{nvars + 1}")
        self.z = sympy.Symbol("z")
        self.base = sympy.QQ.frac_field(*self.xs)
        if isinstance(F, str):
            F = sympy.sympify(F, locals={str(s): s for s in self.xs + (self.z,)})
        self.F = sympy.Poly(F, self.z, domain=self.base)
        self.m = self.F.degree()
        if self.F.LC() != 1:
            raise SchemeError("defining polynomial must be monic in z")
        if check:
            certify_substitution_irreducible(self)

    def element(self, coords) -> "FunctionFieldElement":
        coords = [self.base.from_sympy(sympy.sympify(c, locals=self._locals())) if not
                  isinstance(c, type(self.base.one)) else c for c in coords]
        coords += [self.base.zero] * (self.m - len(coords))
        return FunctionFieldElement(self, tuple(coords))

    def _locals(self):
        return {str(s): s for s in self.xs + (self.z,)}

    def from_expr(self, expr) -> "FunctionFieldElement":
        """An element from a sympy expression (or text) in ``x_i`` and ``z``."""
        if isinstance(expr, str):
            expr = sympy.sympify(expr, locals=self._locals())
        num, den = sympy.fraction(sympy.together(expr))
        if den.has(self.z):
            raise SchemeError("denominators must lie in k(x)")
        p = sympy.Poly(num, self.z, domain=self.base).rem(self.F)
        d = self.base.from_sympy(den)
        cs = list(reversed(p.all_coeffs()))
        return self.element([self.base.from_sympy(c) / d for c in cs])

    @property
    def generator(self):
        return self.element([0, 1]) if self.m > 1 else self.from_expr(self.z)


def certify_substitution_irreducible(K: FunctionField) -> bool:
    """``F = z^m - A(x)`` with, for every ``j``, some ``r != j`` such that
    ``A`` is monic in ``x_r`` of degree prime to ``m``.

    Substituting a constant for ``x_j`` then leaves an irreducible
    polynomial, so the residue extensions keep degree ``m``.
    """
    if K.nvars < 2:
        raise SchemeError("the function-field layer needs at least two variables")
    coeffs = K.F.all_coeffs()
    if any(c != 0 for c in coeffs[1:-1]):
        raise SchemeError("defining polynomial must have the shape z^m - A(x)")
    A = sympy.expand(-coeffs[-1])
    good = []
    for r, xr in enumerate(K.xs):
        P = sympy.Poly(A, xr)
        lc = P.LC()
        if sympy.sympify(lc).is_number and lc == 1 and sympy.gcd(P.degree(), K.m) == 1:
            good.append(r)
    for j in range(K.nvars):
        if not any(r != j for r in good):
            raise SchemeError(f"no certificate for substitutions in x{j + 1}")
    return True


def canonical_field() -> FunctionField:
    """``z^3 = x1^2 + x1 x2 + x2^2``."""
    return FunctionField("z**3 - (x1**2 + x1*x2 + x2**2)", 2)


@dataclass(frozen=True)
class FunctionFieldElement:
    field: FunctionField
    coords: tuple

    def _poly(self):
        K = self.field
        return sympy.Poly(list(reversed(self.coords)), K.z, domain=K.base) if any(self.coords) \
            else sympy.Poly(0, K.z, domain=K.base)

    def _wrap(self, p):
        p = p.rem(self.field.F)
        cs = list(reversed(p.all_coeffs())) if not p.is_zero else []
        return self.field.element(cs)

    def __add__(self, other):
        return self._wrap(self._poly() + other._poly())

    def __sub__(self, other):
        return self._wrap(self._poly() - other._poly())

    def __mul__(self, other):
        if not isinstance(other, FunctionFieldElement):
            other = self.field.element([other])
        return self._wrap(self._poly() * other._poly())

    def __truediv__(self, other):
        """Division by an element of ``k(x)`` (or a sympy expression for one)."""
        K = self.field
        if isinstance(other, FunctionFieldElement):
            if any(c != K.base.zero for c in other.coords[1:]):
                raise SchemeError("only division by base-field elements is supported")
            d = other.coords[0]
        else:
            d = K.base.from_sympy(sympy.sympify(other, locals=K._locals()))
        if d == K.base.zero:
            raise ZeroDivisionError("division by zero in K")
        return K.element([c / d for c in self.coords])

    def __pow__(self, n: int):
        out = self.field.element([1])
        for _ in range(n):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return all(c == self.field.base.zero for c in self.coords)

    def mult_matrix(self) -> DomainMatrix:
        K = self.field
        cols = []
        basis = [K.element([0] * i + [1]) for i in range(K.m)]
        for b in basis:
            cols.append(list((self * b).coords))
        rows = [[cols[c][r] for c in range(K.m)] for r in range(K.m)]
        return DomainMatrix(rows, (K.m, K.m), K.base)

    def to_sympy(self):
        K = self.field
        return sum(K.base.to_sympy(c) * K.z ** i for i, c in enumerate(self.coords))

    def __str__(self):
        return str(sympy.factor(self.to_sympy()))


def minpoly_in_K(y: FunctionFieldElement):
    """Monic coefficients ``[1, c_{d-1}, ..., c_0]`` of the minimal polynomial over ``k(x)``.

    Powers of ``y`` are stacked until the first linear dependency.
    """
    K = y.field
    p = K.element([1])
    vecs = [list(p.coords)]
    for d in range(1, K.m + 1):
        p = p * y
        aug = DomainMatrix([[v[r] for v in vecs] + [p.coords[r]] for r in range(K.m)],
                           (K.m, d + 1), K.base)
        R, piv = aug.rref()
        if d not in piv:
            sol = [K.base.zero] * d
            for r, c in enumerate(piv):
                sol[c] = R[r, d].element
            return [K.base.one] + [-sol[i] for i in reversed(range(d))]
        vecs.append(list(p.coords))
    raise SchemeError("no dependency found among powers (field degree mismatch)")


def norm_K(y: FunctionFieldElement):
    """``N(y)``, the determinant of multiplication by ``y``."""
    return y.mult_matrix().det()


def _base_expr(K, c):
    return K.base.to_sympy(c)


def _in_base(K, c, base) -> bool:
    num, den = sympy.fraction(sympy.cancel(_base_expr(K, c)))
    if base == "poly":
        return not sympy.sympify(den).free_symbols
    if isinstance(base, tuple) and base[0] == "local":
        _, j, a = base
        return sympy.expand(den.subs(K.xs[j - 1], a)) != 0
    if isinstance(base, LocalizedRingDescriptor):
        n = _to_sparse(num, K)
        d = _to_sparse(den, K)
        return R_member((n, d), base)
    raise SchemeError(f"unknown base ring {base!r}")


def _to_sparse(expr, K) -> SparsePolynomial:
    P = sympy.Poly(expr, *K.xs, domain=sympy.QQ)
    terms = {tuple(m): Fraction(int(c.p), int(c.q)) for m, c in P.terms()}
    return SparsePolynomial(K.nvars, terms)


def integral_member(y: FunctionFieldElement, base="poly") -> bool:
    """Every non-leading coefficient of the minimal polynomial lies in ``base``.

    ``base`` is ``"poly"`` for ``k[x]``, ``("local", j, a)`` for the
    localization at ``x_j - a``, or a :class:`LocalizedRingDescriptor`.
    """
    K = y.field
    return all(_in_base(K, c, base) for c in minpoly_in_K(y)[1:])


def _norm_order(K, y, j, a) -> int:
    N = sympy.factor(_base_expr(K, norm_K(y)))
    num, den = sympy.fraction(sympy.cancel(N))
    xj = K.xs[j - 1]
    r = 0
    P = sympy.Poly(num, *K.xs)
    L = sympy.Poly(xj - a, *K.xs)
    while True:
        q, rem = sympy.div(P, L)
        if not rem.is_zero:
            break
        P, r = q, r + 1
    return r


def order_at_linear_prime(y: FunctionFieldElement, j: int, a) -> int:
    """Largest ``r`` with ``y / (x_j - a)^r`` integral at ``x_j - a``.

    The norm of ``y`` is divisible by ``(x_j - a)^(r m)``, which bounds the
    search.
    """
    if y.is_zero():
        raise SchemeError("the zero element has no order")
    K = y.field
    base = ("local", j, a)
    if not integral_member(y, base):
        raise SchemeError("element is not integral at this prime")
    bound = _norm_order(K, y, j, a) // K.m
    lin = K.xs[j - 1] - a
    r = 0
    while r < bound and integral_member(y / lin ** (r + 1), base):
        r += 1
    return r


def norm_divisible(y: FunctionFieldElement, j: int, a) -> bool:
    return _norm_order(y.field, y, j, a) >= 1


def element_divisible(y: FunctionFieldElement, j: int, a) -> bool:
    K = y.field
    return integral_member(y / (K.xs[j - 1] - a), ("local", j, a))


def localization_representation(y: FunctionFieldElement, j: int, a):
    """``(y1, y2)`` with ``y = y1 / y2``, ``y1`` integral over ``k[x]`` and
    ``y2`` a polynomial that is a unit at ``x_j - a``.

    ``y2`` clears the denominators of the minimal polynomial of ``y``; when
    ``y`` is integral at ``x_j - a`` none of them vanishes there.
    """
    K = y.field
    if not integral_member(y, ("local", j, a)):
        raise SchemeError("element is not integral at this prime")
    dens = [sympy.fraction(sympy.cancel(_base_expr(K, c)))[1] for c in minpoly_in_K(y)[1:]]
    d = sympy.lcm_list(dens) if dens else sympy.Integer(1)
    y2 = K.element([K.base.from_sympy(d)])
    return y * y2, y2
