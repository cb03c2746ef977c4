"""Division, Buchberger's algorithm and the ideal-theoretic decision kernels."""

from __future__ import annotations

import threading
from fractions import Fraction

from . import univariate as up
from .field import AlgebraicNumber, IncompatibleFieldError
from .poly import (SparsePolynomial, monomial_divides, monomial_lcm, monomial_quotient,
                   order_key)


def _inv(c):
    return c.inverse() if isinstance(c, AlgebraicNumber) else Fraction(1) / c


def poly_divide(f: SparsePolynomial, divisors):
    """Multivariate division: ``f = sum(q_i * d_i) + r``.

    Zero divisors get a zero quotient.  No term of ``r`` is divisible by the
    head term of any nonzero divisor.
    """
    divisors = list(divisors)
    if not divisors:
        return [], f
    order = f.order
    divisors = [d.with_order(order) for d in divisors]
    heads = [d.leading_term() if d else None for d in divisors]
    quots = [dict() for _ in divisors]
    rem = {}
    p = dict(f.terms)
    key = order_key(order)
    while p:
        e = max(p, key=key)
        c = p[e]
        for i, h in enumerate(heads):
            if h is not None and monomial_divides(h[0], e):
                m = monomial_quotient(e, h[0])
                q = c * _inv(h[1])
                quots[i][m] = quots[i].get(m, 0) + q
                for e2, c2 in divisors[i].terms.items():
                    e3 = tuple(a + b for a, b in zip(e2, m))
                    v = p.get(e3, 0) - q * c2
                    if v == 0:
                        p.pop(e3, None)
                    else:
                        p[e3] = v
                break
        else:
            rem[e] = c
            del p[e]
    qs = [SparsePolynomial(f.nvars, q, order, f.field) for q in quots]
    return qs, SparsePolynomial(f.nvars, rem, order, f.field)


def normal_form(f: SparsePolynomial, basis) -> SparsePolynomial:
    """Remainder of ``f`` on division by ``basis`` (quotients discarded)."""
    basis = [g for g in basis if g]
    if not basis:
        return f
    order = f.order
    key = order_key(order)
    heads = [(g.leading_monomial(), _inv(g.leading_coefficient()), g) for g in basis]
    p = dict(f.terms)
    rem = {}
    while p:
        e = max(p, key=key)
        c = p[e]
        for he, hinv, g in heads:
            if monomial_divides(he, e):
                m = monomial_quotient(e, he)
                q = c * hinv
                for e2, c2 in g.terms.items():
                    e3 = tuple(a + b for a, b in zip(e2, m))
                    v = p.get(e3, 0) - q * c2
                    if v == 0:
                        p.pop(e3, None)
                    else:
                        p[e3] = v
                break
        else:
            rem[e] = c
            del p[e]
    return SparsePolynomial(f.nvars, rem, order, f.field)


def s_polynomial(f, g):
    ef, cf = f.leading_term()
    eg, cg = g.leading_term()
    lcm = monomial_lcm(ef, eg)
    return f.scale(_inv(cf), monomial_quotient(lcm, ef)) - g.scale(_inv(cg), monomial_quotient(lcm, eg))


def _coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _update(basis, G, pairs, ih):
    """Gebauer-Moeller installation of ``basis[ih]`` into ``G`` and ``pairs``."""
    mh = basis[ih].leading_monomial()
    C = list(G)
    D = []
    while C:
        ig = C.pop()
        lcm_hg = monomial_lcm(mh, basis[ig].leading_monomial())

        def covers(ix):
            return monomial_divides(monomial_lcm(mh, basis[ix].leading_monomial()), lcm_hg)

        if _coprime(mh, basis[ig].leading_monomial()) or (
                not any(covers(ix) for ix in C) and not any(covers(ix) for ix in D)):
            D.append(ig)
    E = [(ih, ig) for ig in D if not _coprime(mh, basis[ig].leading_monomial())]
    kept = []
    for g1, g2 in pairs:
        m1, m2 = basis[g1].leading_monomial(), basis[g2].leading_monomial()
        lcm12 = monomial_lcm(m1, m2)
        if (not monomial_divides(mh, lcm12) or monomial_lcm(m1, mh) == lcm12
                or monomial_lcm(m2, mh) == lcm12):
            kept.append((g1, g2))
    kept.extend(E)
    G = [ig for ig in G if not monomial_divides(mh, basis[ig].leading_monomial())]
    G.append(ih)
    return G, kept


def groebner_basis(generators, order: str = "grevlex"):
    """Reduced Groebner basis (monic, sorted by descending head) of the generators."""
    gens = [g.with_order(order).monic() for g in generators if g]
    if not gens:
        return []
    for g in gens:
        if g.is_constant():
            return [SparsePolynomial.constant(1, g.nvars, order, g.field)]
    key = order_key(order)
    basis: list[SparsePolynomial] = []
    G: list[int] = []
    pairs: list[tuple[int, int]] = []
    # lower heads first keeps early reductions cheap
    for g in sorted(gens, key=lambda p: key(p.leading_monomial())):
        h = normal_form(g, [basis[i] for i in G]).monic()
        if not h:
            continue
        if h.is_constant():
            return [SparsePolynomial.constant(1, h.nvars, order, h.field)]
        basis.append(h)
        G, pairs = _update(basis, G, pairs, len(basis) - 1)

    def pair_key(pr):
        lcm = monomial_lcm(basis[pr[0]].leading_monomial(), basis[pr[1]].leading_monomial())
        return (sum(lcm), key(lcm))

    while pairs:
        # normal selection strategy
        best = min(range(len(pairs)), key=lambda i: pair_key(pairs[i]))
        i, j = pairs.pop(best)
        h = normal_form(s_polynomial(basis[i], basis[j]), [basis[k] for k in G])
        if not h:
            continue
        h = h.monic()
        if h.is_constant():
            return [SparsePolynomial.constant(1, h.nvars, order, h.field)]
        basis.append(h)
        G, pairs = _update(basis, G, pairs, len(basis) - 1)
    return _reduce([basis[i] for i in G], order)


def _reduce(polys, order):
    key = order_key(order)
    polys = sorted(polys, key=lambda p: key(p.leading_monomial()))
    minimal = []
    for p in polys:
        if not any(monomial_divides(q.leading_monomial(), p.leading_monomial()) for q in minimal):
            minimal.append(p)
    reduced = []
    for i, p in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        reduced.append(normal_form(p, others).monic())
    reduced.sort(key=lambda p: key(p.leading_monomial()), reverse=True)
    return reduced


def is_reduced_basis(basis) -> bool:
    """No head divides another term of the basis; all elements monic."""
    for i, g in enumerate(basis):
        if g.leading_coefficient() != 1:
            return False
        for j, h in enumerate(basis):
            if i == j:
                continue
            hm = h.leading_monomial()
            if any(monomial_divides(hm, e) for e in g.terms):
                return False
    return True


class IdealPresentation:
    """Generators in a polynomial ring together with a lazily cached basis."""

    def __init__(self, generators, nvars: int | None = None, order: str = "grevlex",
                 field=None):
        gens = tuple(generators)
        if nvars is None:
            if not gens:
                raise ValueError("nvars is required for an empty generator list")
            nvars = gens[0].nvars
        for g in gens:
            if g.nvars != nvars:
                raise ValueError("generators live in different rings")
            if field is not None and g.field is not None and g.field != field:
                raise IncompatibleFieldError("generators over different fields")
            field = field or g.field
        self.nvars = nvars
        self.order = order
        self.field = field
        self.generators = tuple(g.with_order(order) for g in gens)
        self._gb = None
        self._lock = threading.Lock()

    @classmethod
    def unit(cls, nvars, order="grevlex", field=None):
        return cls([SparsePolynomial.constant(1, nvars, order)], nvars, order, field)

    @classmethod
    def zero(cls, nvars, order="grevlex", field=None):
        return cls([], nvars, order, field)

    def groebner_basis(self) -> list[SparsePolynomial]:
        if self._gb is None:
            with self._lock:
                if self._gb is None:
                    self._gb = groebner_basis(self.generators, self.order)
        return list(self._gb)

    @property
    def groebner_cache(self):
        return None if self._gb is None else list(self._gb)

    def is_unit(self) -> bool:
        gb = self.groebner_basis()
        return len(gb) == 1 and gb[0].is_constant()

    def is_zero(self) -> bool:
        return not self.groebner_basis()

    def reduce(self, f: SparsePolynomial) -> SparsePolynomial:
        return normal_form(f.with_order(self.order), self.groebner_basis())

    def __contains__(self, f):
        return ideal_member(f, self)

    def __add__(self, other: "IdealPresentation") -> "IdealPresentation":
        return IdealPresentation(self.generators + other.generators, self.nvars,
                                 self.order, self.field or other.field)

    def with_generators(self, extra) -> "IdealPresentation":
        return IdealPresentation(self.generators + tuple(extra), self.nvars, self.order, self.field)

    def __repr__(self):
        return f"IdealPresentation([{', '.join(map(str, self.generators))}])"


def buchberger(ideal: IdealPresentation) -> IdealPresentation:
    """A new presentation whose generators are the reduced basis."""
    gb = ideal.groebner_basis()
    out = IdealPresentation(gb, ideal.nvars, ideal.order, ideal.field)
    out._gb = list(gb)
    return out


def ideal_member(f: SparsePolynomial, ideal: IdealPresentation) -> bool:
    if f.nvars != ideal.nvars:
        raise ValueError("polynomial and ideal live in different rings")
    if not f:
        return True
    return not ideal.reduce(f)


def _with_fresh_variable(ideal: IdealPresentation, order: str):
    n = ideal.nvars
    gens = [g.extend(1, order) for g in ideal.generators]
    t = SparsePolynomial.variable(n, n + 1, order, ideal.field)
    return gens, t


def radical_member(f: SparsePolynomial, ideal: IdealPresentation) -> bool:
    """``f`` lies in the radical iff ``1`` lies in ``I + <1 - t*f>``."""
    if f.nvars != ideal.nvars:
        raise ValueError("polynomial and ideal live in different rings")
    if not f:
        return True
    if ideal_member(f, ideal):
        return True
    gens, t = _with_fresh_variable(ideal, "grevlex")
    one = SparsePolynomial.constant(1, ideal.nvars + 1, "grevlex", ideal.field)
    gens.append(one - t * f.extend(1, "grevlex"))
    gb = groebner_basis(gens, "grevlex")
    return len(gb) == 1 and gb[0].is_constant()


def ideal_intersect(a: IdealPresentation, b: IdealPresentation) -> IdealPresentation:
    """Generators of ``a ∩ b`` by eliminating ``t`` from ``t*a + (1-t)*b``."""
    if a.nvars != b.nvars:
        raise ValueError("ideals live in different rings")
    n = a.nvars
    if a.is_unit():
        return IdealPresentation(b.groebner_basis(), n, a.order, a.field or b.field)
    if b.is_unit():
        return IdealPresentation(a.groebner_basis(), n, a.order, a.field or b.field)
    if a.is_zero() or b.is_zero():
        return IdealPresentation.zero(n, a.order, a.field or b.field)
    order = "elim1"
    fld = a.field or b.field
    t = SparsePolynomial.variable(n, n + 1, order, fld)
    one = SparsePolynomial.constant(1, n + 1, order, fld)
    gens = [t * g.extend(1, order) for g in a.groebner_basis()]
    gens += [(one - t) * g.extend(1, order) for g in b.groebner_basis()]
    gb = groebner_basis(gens, order)
    kept = [g.drop_last(1, a.order) for g in gb if g.degree_in(n) == 0]
    return IdealPresentation(kept, n, a.order, fld)


def ideal_quotient(a: IdealPresentation, f: SparsePolynomial) -> IdealPresentation:
    """``(a : f) = {g : g*f in a}``, computed as ``(a ∩ <f>) / f``."""
    if not f:
        raise ValueError("ideal quotient by the zero polynomial")
    if f.nvars != a.nvars:
        raise ValueError("polynomial and ideal live in different rings")
    n = a.nvars
    f = f.with_order(a.order)
    if f.is_constant() or a.is_zero():
        return IdealPresentation(a.groebner_basis(), n, a.order, a.field)
    if ideal_member(f, a):
        return IdealPresentation.unit(n, a.order, a.field)
    inter = ideal_intersect(a, IdealPresentation([f], n, a.order, a.field))
    quots = []
    for g in inter.generators:
        qs, r = poly_divide(g, [f])
        if r:
            raise ArithmeticError("intersection generator not divisible by f")
        quots.append(qs[0])
    return IdealPresentation(quots, n, a.order, a.field)


def univariate_rational_roots(p: SparsePolynomial) -> set:
    """Rational roots of a polynomial in at most one variable."""
    if not p:
        raise ValueError("the zero polynomial has every element as a root")
    if p.field is not None:
        raise ValueError("rational-root search needs rational coefficients")
    used = p.variables()
    if len(used) > 1:
        raise ValueError("polynomial is not univariate")
    if not used:
        return set()
    return up.rational_roots(p.to_univariate(used.pop()))


def ideals_equal(a: IdealPresentation, b: IdealPresentation) -> bool:
    return (all(ideal_member(g.with_order(b.order), b) for g in a.generators)
            and all(ideal_member(g.with_order(a.order), a) for g in b.generators))
