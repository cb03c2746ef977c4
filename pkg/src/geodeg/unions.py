"""Unions of rigid curve families indexed by an oracle set.

Two shapes are supported.  In ``subspace`` mode the components are the
fibres ``E_i = Z ∩ {z = i}`` of the surface ``Z: y^2 = x^3 + x + z`` and the
union ``Y`` is a ringed subspace of ``Z``.  In ``disjoint`` mode the
components are separate curves glued along nothing.  Either way a point
remembers which component it came from, so a renamed copy can still be
decoded by looking at its points.

Structure constants are natural numbers:

* point id ``cantor_pair(i - 1, k)``: the ``k``-th point of component ``i``;
* open id ``0`` is the empty open, ``m >= 1`` is ``Y`` minus the points whose
  ids are the set bits of ``m - 1``;
* function ids decode through bit-gap sequences (see :func:`bitgap_decode`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator, NamedTuple

from . import curves
from .exactalg import univariate as up
from .exactalg.field import (ExtensionDescriptor, cantor_pair, cantor_unpair, field_enumerate,
                             field_index, tuple_pair, tuple_unpair)
from .exactalg.groebner import IdealPresentation, ideal_intersect, ideal_member, normal_form
from .exactalg.poly import SparsePolynomial
from .geometry import RationalFunction, VarietyPresentation
from .harness.oracle import OracleSet
from .spaces import (SHAPES, CofiniteOpen, LRSentence, Report, SheafPresentation, TopologyPresentation,
                     ZariskiOpen, point_ideal, regular_on)

MODES = ("subspace", "disjoint")
KINDS = {"elliptic": "distinct-j-invariant", "super": "distinct-genus",
         "appendix": "distinct-bad-primes"}
APPENDIX_LIMIT = 8


class UnionError(ValueError):
    pass


class DivergenceGuard(UnionError):
    """``decide_pair`` ran out of steps; its precondition was probably violated."""


class TaggedPoint(NamedTuple):
    component: int
    coords: tuple


# id codings ---------------------------------------------------------------------

def bitgap_decode(n: int) -> list:
    """Bijection from naturals to finite sequences of naturals.

    The set bits of ``n`` sit at positions ``p_1 < p_2 < ...``; the sequence
    is the list of gaps ``p_1, p_2 - p_1 - 1, ...``.
    """
    out, prev, pos = [], -1, 0
    while n:
        if n & 1:
            out.append(pos - prev - 1)
            prev = pos
        n >>= 1
        pos += 1
    return out


def bitgap_encode(seq) -> int:
    n, pos = 0, -1
    for s in seq:
        pos += s + 1
        n |= 1 << pos
    return n


def bits(n: int) -> list:
    return [i for i in range(n.bit_length()) if n >> i & 1]


def poly_from_id(fid: int, nvars: int = 2) -> SparsePolynomial:
    """The ``fid``-th polynomial of ``Q[x, y]``.

    Monomials are listed by degree (``1, x, y, x^2, xy, y^2, ...``); the
    sequence ``bitgap_decode(fid)`` gives coefficient indices, the final one
    shifted so it is never zero.
    """
    seq = bitgap_decode(fid)
    terms = {}
    for m, s in enumerate(seq):
        c = field_enumerate(s + 2 if m == len(seq) - 1 else s + 1)
        if c:
            a, b = cantor_unpair(m)
            e = (a, b) + (0,) * (nvars - 2)
            terms[e] = c
    return SparsePolynomial(nvars, terms)


def poly_to_id(p: SparsePolynomial) -> int:
    if not p:
        return 0
    idx = {}
    for e, c in p.terms.items():
        if any(e[2:]):
            raise UnionError("only polynomials in the first two variables have ids")
        idx[cantor_pair(e[0], e[1])] = c
    top = max(idx)
    seq = [field_index(idx.get(m, Fraction(0))) - 1 for m in range(top)]
    seq.append(field_index(idx[top]) - 2)
    return bitgap_encode(seq)


def sentence_from_index(n: int) -> LRSentence:
    shapes = list(SHAPES)
    shape = shapes[n % 5]
    return LRSentence(shape, tuple_unpair(n // 5, SHAPES[shape]))


def sentence_index(s: LRSentence) -> int:
    return 5 * tuple_pair(s.args) + list(SHAPES).index(s.shape)


# component families ------------------------------------------------------------

@lru_cache(maxsize=None)
def _sqrt_in_field(v: Fraction):
    """``sqrt(v)`` as a rational, or as the generator of ``Q(sqrt v)``."""
    if v >= 0:
        rn, rd = math.isqrt(v.numerator), math.isqrt(v.denominator)
        if rn * rn == v.numerator and rd * rd == v.denominator:
            return Fraction(rn, rd)
    return ExtensionDescriptor((-v, Fraction(0), Fraction(1))).generator


class ComponentFamily:
    """A computable list of pairwise non-isomorphic curves ``V_1, V_2, ...``.

    ``kind`` is ``elliptic`` (``y^2 = x^3 + x + i``), ``super``
    (``y^(2i+1) = (x+1)(x+2)``) or ``appendix`` (``y^2 = x^3 + A_i x + 1``).
    """

    def __init__(self, kind: str):
        if kind not in KINDS:
            raise UnionError(f"unknown family {kind!r}")
        self.kind = kind
        self.rigidity_certificate = KINDS[kind]
        self._appendix = None
        self._eqs = {}

    def __repr__(self):
        return f"ComponentFamily({self.kind})"

    def check_index(self, i: int):
        if i < 1:
            raise UnionError("component indices start at 1")
        if self.kind == "appendix" and i > APPENDIX_LIMIT:
            raise UnionError(f"appendix components are generated only up to {APPENDIX_LIMIT}")

    def curve(self, i: int):
        self.check_index(i)
        if self.kind == "elliptic":
            return curves.WeierstrassCurve(1, i)
        if self.kind == "super":
            return curves.SuperellipticCurve(2 * i + 1)
        if self._appendix is None or len(self._appendix.A_sequence) < i:
            self._appendix = curves.appendix_A_sequence(i, self._appendix)
        return curves.WeierstrassCurve(self._appendix.A_sequence[i - 1], 1)

    def equation(self, i: int) -> SparsePolynomial:
        if i not in self._eqs:
            self._eqs[i] = self.curve(i).equation(2)
        return self._eqs[i]

    def variety(self, i: int) -> VarietyPresentation:
        return VarietyPresentation.from_polys([self.equation(i)], 2, certificate="trusted-metadata")

    def point(self, i: int, k: int):
        """The ``k``-th point of ``V_i``, or ``None`` when there is none."""
        return _family_point(self, i, k)

    def builder(self, i: int) -> VarietyPresentation:
        return self.variety(i)

    def on_component(self, i: int, coords) -> bool:
        x, y = coords
        return self.equation(i).evaluate((x, y)) == 0

    def chi(self, p) -> int:
        """Component index of an intrinsic point."""
        if isinstance(p, TaggedPoint):
            if not self.on_component(p.component, p.coords):
                raise UnionError(f"point {p} is not on component {p.component}")
            return p.component
        if self.kind != "elliptic" or len(p) != 3:
            raise UnionError("ambient points only exist for the elliptic surface")
        x, y, z = p
        z = Fraction(z) if not hasattr(z, "field") else z
        if z != int(z) or int(z) < 1 or y * y != x ** 3 + x + z:
            raise UnionError(f"{p} is not on a component of the surface")
        return int(z)


_POINT_CACHE: dict = {}


def _family_point(fam: ComponentFamily, i: int, k: int):
    key = (fam.kind, i, k)
    if key in _POINT_CACHE:
        return _POINT_CACHE[key]
    fam.check_index(i)
    t, sign = divmod(k, 2)
    u = field_enumerate(t + 1)
    if fam.kind == "super":
        d = 2 * i + 1
        disc = 1 + 4 * u ** d
        r = _sqrt_in_field(disc)
        x = (-3 + (r if sign == 0 else -r)) / 2
        pt = (x, u)
    else:
        c = fam.curve(i)
        v = u ** 3 + c.A * u + c.B
        if v == 0:
            pt = (u, Fraction(0)) if sign == 0 else None
        else:
            r = _sqrt_in_field(v)
            pt = (u, r if sign == 0 else -r)
    _POINT_CACHE[key] = pt
    return pt


def rigidity_certify(family: ComponentFamily, prefix: int):
    """Pairwise distinctness of the family's invariant on components ``1..prefix``."""
    if family.kind == "appendix":
        prefix = min(prefix, APPENDIX_LIMIT)
        family.curve(prefix)
        return curves.rigidity_certify(family.rigidity_certificate, prefix, family._appendix)
    items = [family.curve(i) for i in range(1, prefix + 1)]
    return curves.rigidity_certify(family.rigidity_certificate, prefix, items)


def surface_Z() -> VarietyPresentation:
    """``Z: y^2 - x^3 - x - z = 0`` in coordinates ``(x, y, z)``."""
    x, y, z = (SparsePolynomial.variable(j, 3) for j in range(3))
    return VarietyPresentation.from_polys([y * y - x ** 3 - x - z], 3,
                                          certificate="trusted-metadata")


def fibre_ideal(i: int) -> IdealPresentation:
    x, y, z = (SparsePolynomial.variable(j, 3) for j in range(3))
    return IdealPresentation([y * y - x ** 3 - x - z, z - i], 3)


# vanishing on the fibres ---------------------------------------------------------

def fibre_zero_set(g: SparsePolynomial) -> set:
    """``{i : g vanishes on E_i}`` for nonzero ``g`` in ``Q[x, y] = Q[Z]``.

    Writing ``w = y^2 - x^3 - x`` and ``g = g0(x, w) + y g1(x, w)``, ``g``
    vanishes on the fibre ``w = i`` iff ``w - i`` divides every coefficient
    of ``g0`` and ``g1`` as polynomials in ``w``.
    """
    coeffs: dict = {}
    for (a, b), c in g.terms.items():
        q, eps = divmod(b, 2)
        # (w + x^3 + x)^q
        for j in range(q + 1):
            cj = math.comb(q, j)
            for l in range(q - j + 1):
                kk = q - j - l
                coef = c * cj * math.comb(q - j, l)
                slot = coeffs.setdefault((a + 3 * kk + l, eps), {})
                slot[j] = slot.get(j, 0) + coef
    common = None
    for slot in coeffs.values():
        deg = max((e for e, v in slot.items() if v), default=-1)
        if deg < 0:
            continue
        dense = tuple(Fraction(slot.get(e, 0)) for e in range(deg + 1))
        common = dense if common is None else up.gcd_(common, dense)
        if len(common) <= 1:
            return set()
    if common is None:
        raise UnionError("zero polynomial vanishes everywhere")
    return {int(r) for r in up.rational_roots(common) if r.denominator == 1 and r >= 1}


# the union structure ------------------------------------------------------------

Knows = Callable[[int], bool]


class UnionStructure:
    """``A_X``: the union of the components indexed by ``X``.

    Truth of a sentence is computed against a ``knows`` callback that reports
    membership of component indices.  In Turing mode it is the oracle's
    logged query; in enumeration mode it is membership in the part of ``X``
    enumerated so far.  Every sentence's truth is monotone in that
    knowledge, which is what lets the enumeration mode work without negative
    information.
    """

    def __init__(self, family: ComponentFamily, index_set: OracleSet, mode: str = "subspace"):
        if mode not in MODES:
            raise UnionError(f"unknown union mode {mode!r}")
        if mode == "subspace" and family.kind != "elliptic":
            raise UnionError("subspace mode uses the elliptic surface only")
        self.family = family
        self.index_set = index_set
        self.mode = mode
        self._ideal = None

    # knowledge -------------------------------------------------------------

    def turing_knows(self) -> Knows:
        memo = {}

        def knows(i):
            if i < 1:
                return False
            if self.family.kind == "appendix" and i > APPENDIX_LIMIT:
                return False
            if i not in memo:
                memo[i] = self.index_set.query(i)
            return memo[i]
        return knows

    @property
    def infinite(self) -> bool:
        return self.index_set.is_infinite

    @property
    def cardinality(self):
        return self.index_set.cardinality

    # constants -------------------------------------------------------------

    def point_data(self, pid: int):
        """Intrinsic data of a point id, ignoring whether ``i`` is in ``X``."""
        a, k = cantor_unpair(pid)
        i = a + 1
        if self.family.kind == "appendix" and i > APPENDIX_LIMIT:
            return i, None
        c = self.family.point(i, k)
        if c is None:
            return i, None
        if self.mode == "subspace":
            return i, (c[0], c[1], Fraction(i))
        return i, TaggedPoint(i, c)

    def point_of(self, pid: int, knows: Knows):
        if not knows(cantor_unpair(pid)[0] + 1):
            return None
        return self.point_data(pid)[1]

    def open_excluded(self, oid: int, knows: Knows):
        """Excluded point ids of an open (``()`` for the empty open), ``None`` if invalid."""
        if oid == 0:
            return ()
        out = []
        for pid in bits(oid - 1):
            if self.point_of(pid, knows) is None:
                return None
            out.append(pid)
        return frozenset(out)

    def section_of(self, fid: int, knows: Knows):
        """Decode a function id.

        Subspace mode: a polynomial of ``Q[x, y] = Q[Z]``.  Disjoint mode:
        ``(c, {i: local polynomial})`` with the exceptions on included
        components; ``None`` when the id is not a valid section.
        """
        if self.mode == "subspace":
            return poly_from_id(fid)
        seq = bitgap_decode(fid)
        if not seq:
            return Fraction(0), {}
        c = field_enumerate(seq[0] + 1)
        rest = seq[1:]
        if len(rest) % 2:
            return None
        exc, comp = {}, 0
        for gap, pid in zip(rest[::2], rest[1::2]):
            comp += gap + 1
            if self.family.kind == "appendix" and comp > APPENDIX_LIMIT:
                return None
            p = poly_from_id(pid)
            if not self._local_nf(comp, p - c):
                return None
            if not knows(comp):
                return None
            exc[comp] = p
        return c, exc

    def _local_nf(self, i, p):
        eq = self.family.equation(i)
        return normal_form(p, [eq])

    # truth -------------------------------------------------------------------

    def in_ideal_of_Y(self, g: SparsePolynomial, knows: Knows) -> bool:
        """``g`` vanishes on ``Y`` (subspace mode)."""
        if not g:
            return True
        if self.infinite:
            return False
        c = self.cardinality
        S = fibre_zero_set(g)
        if len(S) < c:
            return False
        return sum(1 for i in sorted(S) if knows(i)) == c

    def sections_agree(self, a, b, knows: Knows) -> bool:
        """Equality of two decoded sections on every included component."""
        if self.mode == "subspace":
            return self.in_ideal_of_Y(a - b, knows)
        (ca, ea), (cb, eb) = a, b
        comps = set(ea) | set(eb)
        for i in comps:
            d = ea.get(i, ca) - eb.get(i, cb)
            if not isinstance(d, SparsePolynomial):
                d = SparsePolynomial.constant(d, 2)
            if self._local_nf(i, d):
                return False
        if self.infinite or len(comps) < self.cardinality:
            return ca == cb
        return True

    def _combine(self, a, b, op):
        if self.mode == "subspace":
            return a + b if op == "ADD" else a * b
        (ca, ea), (cb, eb) = a, b
        out = {}
        for i in set(ea) | set(eb):
            pa = ea.get(i, SparsePolynomial.constant(ca, 2))
            pb = eb.get(i, SparsePolynomial.constant(cb, 2))
            out[i] = pa + pb if op == "ADD" else pa * pb
        return (ca + cb if op == "ADD" else ca * cb), out

    def truth(self, s: LRSentence, knows: Knows) -> bool:
        sh, args = s.shape, s.args
        if sh == "PT":
            pid, oid = args
            if self.point_of(pid, knows) is None or oid == 0:
                return False
            exc = self.open_excluded(oid, knows)
            return exc is not None and pid not in exc
        if sh == "SEC":
            fid, oid = args
            exc = self.open_excluded(oid, knows)
            if exc is None:
                return False
            if oid == 0:
                return fid == 0
            return self.section_of(fid, knows) is not None
        if sh in ("ADD", "MUL"):
            oid, fa, fb, fc = args
            exc = self.open_excluded(oid, knows)
            if exc is None:
                return False
            if oid == 0:
                return fa == fb == fc == 0
            secs = [self.section_of(f, knows) for f in (fa, fb, fc)]
            if any(x is None for x in secs):
                return False
            return self.sections_agree(self._combine(secs[0], secs[1], sh), secs[2], knows)
        # RES U V a b: V ⊆ U and a|V = b
        ou, ov, fa, fb = args
        eu, ev = self.open_excluded(ou, knows), self.open_excluded(ov, knows)
        if eu is None or ev is None:
            return False
        if ov == 0:
            return fb == 0 and (ou != 0 or fa == 0) and (ou == 0 or self.section_of(fa, knows) is not None)
        if ou == 0 or not eu <= ev:
            return False
        sa, sb = self.section_of(fa, knows), self.section_of(fb, knows)
        if sa is None or sb is None:
            return False
        return self.sections_agree(sa, sb, knows)

    # ideals -------------------------------------------------------------------

    def ideal_of_Y(self) -> IdealPresentation:
        """``I(Y)`` inside ``Q[x, y, z]`` (it contains ``I(Z)``).

        For an infinite index set this is ``I(Z)`` itself: no nonzero
        function of ``Z`` vanishes on infinitely many fibres.
        """
        if self.mode != "subspace":
            raise UnionError("I(Y) is only defined for subspace unions")
        if self._ideal is None:
            Zi = surface_Z().ideal
            if self.infinite:
                self._ideal = Zi
            else:
                z = SparsePolynomial.variable(2, 3)
                prod = SparsePolynomial.constant(1, 3)
                for i in self.index_set.enumerate_members():
                    prod = prod * (z - i)
                self._ideal = Zi.with_generators([prod])
        return self._ideal

    def included(self, probe_components) -> list:
        knows = self.turing_knows()
        return [i for i in probe_components if knows(i)]


def build_AX(family: ComponentFamily, oracle: OracleSet, mode: str = "subspace") -> UnionStructure:
    return UnionStructure(family, oracle, mode)


def enumerate_points(structure: UnionStructure, budget: int) -> Iterator:
    """Dovetail the components: point ids ``0..budget-1`` that lie in ``Y``."""
    knows = structure.turing_knows()
    for pid in range(budget):
        p = structure.point_of(pid, knows)
        if p is not None:
            yield pid, p


# weak opens, sections, morphisms ------------------------------------------------

@dataclass(frozen=True)
class ComponentOpen:
    """A disjoint-union open: drop whole components, remove finitely many points.

    ``kept`` (when given) lists the only components that survive, which
    violates cofinality as soon as an included component outside it is probed.
    """
    removed: frozenset = frozenset()
    excluded: frozenset = frozenset()
    kept: frozenset | None = None


def weak_open_check(u, structure: UnionStructure, probe_components) -> Report:
    rep = Report()
    for i in structure.included(probe_components):
        rep.checks += 1
        if isinstance(u, CofiniteOpen):
            if u.empty:
                rep.fail(f"empty open misses component {i}", i)
        elif isinstance(u, ZariskiOpen):
            if structure.mode != "subspace":
                raise UnionError("Zariski descriptors need the ambient surface")
            Zi = fibre_ideal(i)
            if all(ideal_member(g, Zi) for g in u.complement.generators):
                rep.fail(f"open misses component {i}", i)
        elif isinstance(u, ComponentOpen):
            if i in u.removed:
                rep.fail(f"open drops component {i}", i)
            elif u.kept is not None and i not in u.kept:
                rep.fail(f"open is not cofinal: component {i} dropped", i)
        else:
            raise UnionError(f"unsupported open descriptor {u!r}")
    return rep


def union_section_member(f, u, structure: UnionStructure, probe_components=None) -> bool:
    """Is the class of ``f`` a section of ``Y`` over ``u``?

    Subspace mode: ``f`` is a rational function on ``Z`` and ``u`` a Zariski
    or cofinite open of ``Z``; the class is a section when ``f`` is regular
    at every point of ``u`` on each included component.  Disjoint mode:
    ``f = (c, {i: RationalFunction on V_i})`` and ``u`` a
    :class:`ComponentOpen`.
    """
    if probe_components is None:
        if structure.infinite:
            probe_components = range(1, 9)
        else:
            probe_components = sorted(structure.index_set.members)
    comps = structure.included(probe_components)
    if structure.mode == "subspace":
        if isinstance(u, CofiniteOpen):
            J = point_ideal(u.excluded, 3) if u.excluded else IdealPresentation.unit(3)
        else:
            J = u.complement
        return all(regular_on(f, J, fibre_ideal(i)) for i in comps)
    c, local = f
    for i in comps:
        if i not in local or (isinstance(u, ComponentOpen) and i in u.removed):
            continue
        pts = [p for p in getattr(u, "excluded", ()) if isinstance(p, TaggedPoint) and p.component == i]
        J = point_ideal([p.coords for p in pts], 2) if pts else IdealPresentation.unit(2)
        if not regular_on(local[i], J):
            return False
    return True


def union_morphism_check(src: UnionStructure, dst: UnionStructure, point_map,
                         probes) -> Report:
    """Componentwise routing, continuity and composition on probes.

    ``point_map`` sends intrinsic points of ``src`` to intrinsic points of
    ``dst``.  ``probes`` is a list of ``src`` points, or a dict with keys
    ``points`` and optionally ``sections`` (pairs ``(dst_section, expected
    src_section)`` checked with ``pullback``) and ``pullback``.
    """
    if not isinstance(probes, dict):
        probes = {"points": probes}
    rep = Report()
    routes, images = {}, {}
    for p in probes["points"]:
        i = src.family.chi(p)
        q = point_map(p)
        try:
            j = dst.family.chi(q)
        except UnionError as exc:
            rep.fail(f"image of {p} is not a point of the target: {exc}", p)
            continue
        rep.checks += 1
        if i in routes and routes[i] != j:
            rep.fail(f"component {i} is split between targets {routes[i]} and {j}", (i, routes[i], j))
        routes.setdefault(i, j)
        images.setdefault(i, set()).add(q)
    counts = {}
    for p in probes["points"]:
        counts[src.family.chi(p)] = counts.get(src.family.chi(p), 0) + 1
    for i, imgs in images.items():
        rep.checks += 1
        if counts[i] > 1 and len(imgs) == 1:
            rep.fail(f"component {i} collapses to a point; preimages of cofinite opens drop it", i)
    pull = probes.get("pullback")
    for g, expected in probes.get("sections", ()):
        rep.checks += 1
        if pull is None or not src.sections_agree(pull(g), expected, src.turing_knows()):
            rep.fail("pullback of a section disagrees", g)
    return rep


# decoding renamed copies ----------------------------------------------------------

def decide_pair(copy, i: int, j: int, family: ComponentFamily | None = None,
                max_steps: int | None = None) -> int:
    """Which of ``V_i``, ``V_j`` lies in the copy.

    Walks the copy's labels in order and returns the first of ``i``, ``j``
    that a point is classified into.  Runs forever (or until ``max_steps``)
    when neither component is present.
    """
    family = family or copy.family
    label = 0
    while max_steps is None or label < max_steps:
        p = copy.point(label)
        label += 1
        if p is None:
            continue
        k = family.chi(p)
        if k in (i, j):
            return k
    raise DivergenceGuard(f"neither component {i} nor {j} seen in {max_steps} labels")


def enumerate_components(copy, max_labels: int | None = None,
                         family: ComponentFamily | None = None) -> Iterator[int]:
    """Component indices of the copy's points, each emitted once."""
    family = family or copy.family
    seen = set()
    label = 0
    while max_labels is None or label < max_labels:
        p = copy.point(label)
        label += 1
        if p is None:
            continue
        k = family.chi(p)
        if k not in seen:
            seen.add(k)
            yield k


def label_budget(max_index: int, block: int) -> int:
    """Labels that certainly cover the first point of each component ``<= max_index``."""
    return cantor_pair(max_index - 1, 0) + 1 + block


# the ringed subspace as a sheaf -----------------------------------------------------

def union_sheaf(structure: UnionStructure) -> SheafPresentation:
    """Sections of ``Y`` over Zariski opens of ``Z``, compared modulo ``I(Y)``."""
    Z = surface_Z()
    IY = structure.ideal_of_Y()
    top = TopologyPresentation.zariski(Z)

    def member(u, f):
        return regular_on(f, u.complement, IY)

    def equal(f, g):
        return ideal_member(f.numerator * g.denominator - g.numerator * f.denominator, IY)

    s = SheafPresentation(top, member, name="union-subspace", equal=equal)
    return s


def components_ideal(structure: UnionStructure, comps) -> IdealPresentation:
    acc = IdealPresentation.unit(3)
    for i in comps:
        acc = ideal_intersect(acc, fibre_ideal(i))
    return acc
