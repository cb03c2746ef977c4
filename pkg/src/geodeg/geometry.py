"""Presented varieties, rational functions on them and the decision procedures
for definedness, vanishing and constancy."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactalg import univariate as up
from .exactalg.field import ExtensionDescriptor, field_enumerate, tuple_unpair
from .exactalg.groebner import (IdealPresentation, ideal_intersect, ideal_member,
                                ideal_quotient, poly_divide, radical_member)
from .exactalg.poly import SparsePolynomial, parse_polynomial

CERTIFICATES = ("trusted-metadata", "single-linear-fiber", "none")


class GeometryError(ValueError):
    pass


class NowhereDefinedError(GeometryError):
    """The denominator vanishes identically on the closed set."""


class VarietyPresentation:
    """``V = V(I)`` in affine ``n``-space, ``I`` a proper ideal."""

    def __init__(self, ideal: IdealPresentation, certificate: str = "none"):
        if certificate not in CERTIFICATES:
            raise GeometryError(f"unknown irreducibility certificate {certificate!r}")
        if ideal.is_unit():
            raise GeometryError("the unit ideal defines the empty set")
        self.ideal = ideal
        self.certificate = certificate

    @classmethod
    def from_polys(cls, polys, nvars, certificate="none", field=None):
        return cls(IdealPresentation(polys, nvars, field=field), certificate)

    @classmethod
    def affine_space(cls, nvars, field=None):
        return cls(IdealPresentation.zero(nvars, field=field), "trusted-metadata")

    @property
    def ambient_dimension(self) -> int:
        return self.ideal.nvars

    @property
    def field(self):
        return self.ideal.field

    def contains(self, point) -> bool:
        return all(g.evaluate(point) == 0 for g in self.ideal.generators)

    def fiber(self, j: int, a) -> "VarietyPresentation":
        """``V ∩ {x_{j+1} = a}``; carries the linear-fiber certificate."""
        n = self.ambient_dimension
        lin = SparsePolynomial.variable(j, n, self.ideal.order) - a
        return VarietyPresentation(self.ideal.with_generators([lin]), "single-linear-fiber")

    def poly(self, text: str) -> SparsePolynomial:
        return parse_polynomial(text, self.ambient_dimension, self.ideal.order, self.field)

    def __repr__(self):
        return f"VarietyPresentation({list(map(str, self.ideal.generators))})"


@dataclass(frozen=True)
class PointOnVariety:
    coordinates: tuple


def linear_factors_in_variable(g: SparsePolynomial, j: int) -> set:
    """All ``a`` in Q with ``(x_j - a) | g``, ``j`` zero-based."""
    if not g:
        raise GeometryError("the zero polynomial is divisible by everything")
    if g.field is not None:
        raise GeometryError("linear-factor detection needs rational coefficients")
    common = ()
    for coeffs in g.coefficients_in(j).values():
        common = up.gcd_(common, coeffs) if common else up.monic(coeffs)
        if len(common) <= 1:
            return set()
    return up.rational_roots(common)


def divide_linear_power(g: SparsePolynomial, j: int, a, times: int = 1):
    """``g / (x_j - a)^times``, exact."""
    lin = SparsePolynomial.variable(j, g.nvars, g.order, g.field) - a
    for _ in range(times):
        (q,), r = poly_divide(g, [lin])
        if r:
            raise ArithmeticError("not divisible")
        g = q
    return g


def linear_multiplicity(g: SparsePolynomial, j: int, a) -> int:
    """Largest ``r`` with ``(x_j - a)^r | g``."""
    r = 0
    lin = SparsePolynomial.variable(j, g.nvars, g.order, g.field) - a
    while g:
        (q,), rem = poly_divide(g, [lin])
        if rem:
            break
        g, r = q, r + 1
    return r


class RationalFunction:
    """``f1 / f2`` on a variety, stored with common linear factors removed.

    The denominator must not lie in ``I(V)``; it is scaled to leading
    coefficient one.
    """

    def __init__(self, numerator: SparsePolynomial, denominator: SparsePolynomial,
                 variety: VarietyPresentation, normalize: bool = True):
        order = variety.ideal.order
        num, den = numerator.with_order(order), denominator.with_order(order)
        if not den or ideal_member(den, variety.ideal):
            raise GeometryError("denominator vanishes identically on the variety")
        if normalize:
            num, den = _cancel_linear(num, den)
        lc = den.leading_coefficient()
        if lc != 1:
            inv = Fraction(1) / lc if not hasattr(lc, "inverse") else lc.inverse()
            num, den = num.scale(inv), den.scale(inv)
        self.numerator = num
        self.denominator = den
        self.variety = variety

    @classmethod
    def polynomial(cls, f: SparsePolynomial, variety):
        one = SparsePolynomial.constant(1, f.nvars, f.order, f.field)
        return cls(f, one, variety)

    def evaluate(self, point):
        """Value at ``point`` or ``None`` where the denominator vanishes."""
        d = self.denominator.evaluate(point)
        if d == 0:
            return None
        return self.numerator.evaluate(point) / d

    def same_class(self, other: "RationalFunction") -> bool:
        """Equality in the function field, by cross multiplication modulo I(V)."""
        diff = self.numerator * other.denominator - other.numerator * self.denominator
        return ideal_member(diff, self.variety.ideal)

    def __str__(self):
        return f"{self.numerator} / {self.denominator}"

    def __repr__(self):
        return f"RationalFunction({self})"


def _cancel_linear(num, den):
    if not num or den.is_constant() or num.field is not None or den.field is not None:
        return num, den
    for j in range(den.nvars):
        if not den.degree_in(j):
            continue
        for a in sorted(linear_factors_in_variable(den, j)):
            k = min(linear_multiplicity(num, j, a), linear_multiplicity(den, j, a))
            if k:
                num = divide_linear_power(num, j, a, k)
                den = divide_linear_power(den, j, a, k)
    return num, den


def format_rational_function(f: RationalFunction) -> str:
    return str(f)


def parse_rational_function(text: str, variety: VarietyPresentation) -> RationalFunction:
    n, order, fld = variety.ambient_dimension, variety.ideal.order, variety.field
    if " / " in text:
        num, den = text.split(" / ", 1)
    else:
        num, den = text, "1"
    return RationalFunction(parse_polynomial(num, n, order, fld),
                            parse_polynomial(den, n, order, fld), variety)


# point search ---------------------------------------------------------------

def _field_tuple(index: int, length: int, ext):
    return tuple(field_enumerate(c + 1, ext) for c in tuple_unpair(index, length))


def variety_points_enumerate(v: VarietyPresentation, budget: int,
                             ext: ExtensionDescriptor | None = None) -> list:
    """Points of ``V`` found within ``budget`` search steps.

    Step ``m`` tests the ``m``-th tuple of the field listing; for ``n >= 2``
    it also fixes the first ``n-1`` coordinates to the ``m``-th
    ``(n-1)``-tuple and collects the rational roots of the fibre gcd in the
    last variable.  The result is monotone in ``budget`` and deterministic.
    """
    if budget < 0:
        raise GeometryError("budget must be nonnegative")
    ext = ext or v.field
    n = v.ambient_dimension
    gens = [g for g in v.ideal.generators if g]
    seen, out = set(), []

    def emit(pt):
        if pt not in seen and all(g.evaluate(pt) == 0 for g in gens):
            seen.add(pt)
            out.append(PointOnVariety(pt))

    for m in range(budget):
        emit(_field_tuple(m, n, ext))
        if n >= 2 and ext is None:
            prefix = _field_tuple(m, n - 1, None)
            common, free = None, True
            for g in gens:
                for k, c in enumerate(prefix):
                    g = g.substitute(k, c)
                if not g:
                    continue
                free = False
                dense = g.to_univariate(n - 1)
                common = dense if common is None else up.gcd_(common, dense)
            if free or common is None or len(common) <= 1:
                continue
            for r in sorted(up.rational_roots(common)):
                emit(prefix + (r,))
    return out


# decision procedures ----------------------------------------------------------

def _sum_ideal(variety, extra):
    return variety.ideal.with_generators(
        [g.with_order(variety.ideal.order) for g in extra])


def division_test(f: RationalFunction, complement: IdealPresentation) -> bool:
    """Sufficient test: every generator of the complement ideal divides out by ``f2``
    modulo ``I(V)``."""
    J = _sum_ideal(f.variety, [f.denominator])
    return all(ideal_member(g.with_order(J.order), J) for g in complement.generators)


def denominator_ideal(f: RationalFunction) -> IdealPresentation:
    """``D = (<f2> + I(V)) : f1``, the polynomials ``h`` with ``h*f`` regular."""
    base = _sum_ideal(f.variety, [f.denominator])
    if ideal_member(f.numerator, f.variety.ideal) or ideal_member(f.numerator, base):
        return IdealPresentation.unit(base.nvars, base.order, base.field)
    return ideal_quotient(base, f.numerator)


def fn_defined_on_open(f: RationalFunction, complement: IdealPresentation,
                       mode: str = "denominator") -> bool:
    """Is ``f`` defined on ``U = V minus V(complement)``?

    ``mode="denominator"`` asks whether the zero set of the stored
    denominator inside ``V`` lies in the complement.  ``mode="regular"``
    asks the representation-free question through the denominator ideal.
    """
    if division_test(f, complement):
        return True
    if mode == "denominator":
        J = _sum_ideal(f.variety, [f.denominator])
    elif mode == "regular":
        J = denominator_ideal(f)
    else:
        raise GeometryError(f"unknown definedness mode {mode!r}")
    return all(radical_member(g.with_order(J.order), J) for g in complement.generators)


def fn_vanishes_on_closed(f: RationalFunction, closed: IdealPresentation) -> bool:
    """Does ``f`` vanish on ``W = V(closed) ∩ V`` where it is defined?"""
    W = _sum_ideal(f.variety, closed.generators)
    if radical_member(f.denominator, W):
        raise NowhereDefinedError("the denominator vanishes identically on the closed set")
    return radical_member(f.numerator, W)


@dataclass(frozen=True)
class ConstancyResult:
    kind: str  # constant | nonconstant | inconclusive
    value: object = None

    def __str__(self):
        if self.kind == "constant":
            from .exactalg.field import format_element
            return f"constant({format_element(self.value)})"
        return self.kind


def fn_is_constant(f: RationalFunction, search_budget: int) -> ConstancyResult:
    """Constancy via a witness point ``c`` and ``f1*f2(c) - f2*f1(c) in I(V)``."""
    if f.numerator.is_constant() and f.denominator.is_constant():
        return ConstancyResult("constant", f.numerator.constant_term() / f.denominator.constant_term())
    for p in variety_points_enumerate(f.variety, search_budget):
        c = p.coordinates
        d = f.denominator.evaluate(c)
        if d == 0:
            continue
        n_c = f.numerator.evaluate(c)
        test = f.numerator.scale(d) - f.denominator.scale(n_c)
        if ideal_member(test, f.variety.ideal):
            return ConstancyResult("constant", n_c / d)
        return ConstancyResult("nonconstant")
    return ConstancyResult("inconclusive")


def ideal_of_union(components, cofinite_flag: bool,
                   ambient: VarietyPresentation | None = None) -> IdealPresentation:
    """Ideal of the union of pairwise disjoint components.

    With infinitely many components a function vanishing on all of them is
    zero on the ambient variety, so the answer is ``I(V)`` itself.
    """
    components = list(components)
    if cofinite_flag:
        if ambient is not None:
            return ambient.ideal
        if not components:
            raise GeometryError("cofinite union needs an ambient variety")
        n = components[0].ambient_dimension
        return IdealPresentation.zero(n, components[0].ideal.order, components[0].field)
    if not components:
        n = ambient.ambient_dimension if ambient is not None else 1
        return IdealPresentation.unit(n)
    acc = components[0].ideal
    for c in components[1:]:
        acc = ideal_intersect(acc, c.ideal)
    return acc


def components_disjoint(components) -> bool:
    """Exact pairwise disjointness over the algebraic closure: ``I_a + I_b = <1>``."""
    comps = list(components)
    for i in range(len(comps)):
        for j in range(i + 1, len(comps)):
            if not (comps[i].ideal + comps[j].ideal).is_unit():
                return False
    return True


def compose_polynomial(f: SparsePolynomial, images, nvars: int, order: str = "grevlex"):
    """``f(images[0], ..., images[n-1])`` for polynomial images in ``nvars`` variables."""
    if len(images) != f.nvars:
        raise GeometryError("one image per variable is required")
    total = SparsePolynomial.zero(nvars, order, f.field)
    powers: dict = {}
    for e, c in f.terms.items():
        term = SparsePolynomial.constant(c, nvars, order, f.field)
        for i, k in enumerate(e):
            if k:
                if (i, k) not in powers:
                    powers[(i, k)] = images[i].with_order(order) ** k
                term = term * powers[(i, k)]
        total = total + term
    return total


def compose_function(f: RationalFunction, images, source: VarietyPresentation) -> RationalFunction:
    """Pull ``f`` back along a polynomial map ``source -> f.variety``."""
    n, order = source.ambient_dimension, source.ideal.order
    return RationalFunction(compose_polynomial(f.numerator, images, n, order),
                            compose_polynomial(f.denominator, images, n, order), source)
