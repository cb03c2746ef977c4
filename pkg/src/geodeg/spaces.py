"""Countable topological spaces and sheaves of rings given by finite data.

Opens are descriptors: a finite excluded set (cofinite), a complement ideal
(Zariski), or a literal point set (explicit-finite).  A sheaf is a membership
rule ``(open, section) -> bool`` over one ambient fraction field, with
restrictions acting by inclusion unless a presentation says otherwise.  All
axiom checks run on supplied probes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .exactalg.groebner import IdealPresentation, ideal_intersect, radical_member
from .exactalg.poly import SparsePolynomial
from .geometry import (PointOnVariety, RationalFunction, VarietyPresentation,
                       denominator_ideal, variety_points_enumerate)


class SpacesError(ValueError):
    pass


class IncompatibleOpenError(SpacesError, TypeError):
    pass


class CoverError(SpacesError):
    """The proposed cover does not cover the open set."""


class DiscontinuityError(SpacesError):
    pass


def _pt(p):
    return p.coordinates if isinstance(p, PointOnVariety) else tuple(p)


# open descriptors -------------------------------------------------------------

@dataclass(frozen=True)
class CofiniteOpen:
    excluded: frozenset = frozenset()
    empty: bool = False

    @staticmethod
    def of(*points):
        return CofiniteOpen(frozenset(_pt(p) for p in points))


@dataclass(frozen=True, eq=False)
class ZariskiOpen:
    """``V minus V(complement)``."""
    complement: IdealPresentation

    @staticmethod
    def of(polys, nvars):
        return ZariskiOpen(IdealPresentation(polys, nvars))


@dataclass(frozen=True)
class FiniteOpen:
    points: frozenset


def point_ideal(points, nvars, order="grevlex") -> IdealPresentation:
    """Ideal of a finite point set (intersection of maximal ideals)."""
    acc = IdealPresentation.unit(nvars, order)
    for p in points:
        gens = [SparsePolynomial.variable(i, nvars, order) - c for i, c in enumerate(_pt(p))]
        acc = ideal_intersect(acc, IdealPresentation(gens, nvars, order))
    return acc


class TopologyPresentation:
    """A topology on the points of a presented variety or a finite set."""

    KINDS = ("cofinite", "zariski", "explicit-finite")

    def __init__(self, kind: str, variety: VarietyPresentation | None = None,
                 points=None, opens=None):
        if kind not in self.KINDS:
            raise SpacesError(f"unknown topology kind {kind!r}")
        self.kind = kind
        self.variety = variety
        self.points = None if points is None else frozenset(_pt(p) for p in points)
        self.literal_opens = None if opens is None else [frozenset(map(_pt, o)) for o in opens]
        if kind == "explicit-finite" and self.points is None:
            raise SpacesError("explicit-finite topology needs its point set")

    @classmethod
    def zariski(cls, variety):
        return cls("zariski", variety)

    @classmethod
    def cofinite(cls, variety):
        return cls("cofinite", variety)

    @classmethod
    def finite(cls, points, opens):
        return cls("explicit-finite", None, points, opens)

    # carrier ----------------------------------------------------------------

    def enumerate_points(self, budget: int = 200) -> list:
        if self.kind == "explicit-finite":
            return sorted(self.points, key=repr)
        return [p.coordinates for p in variety_points_enumerate(self.variety, budget)]

    # descriptors ------------------------------------------------------------

    def whole(self):
        if self.kind == "cofinite":
            return CofiniteOpen()
        if self.kind == "zariski":
            return ZariskiOpen(IdealPresentation.unit(self.variety.ambient_dimension,
                                                      self.variety.ideal.order))
        return FiniteOpen(self.points)

    def empty(self):
        if self.kind == "cofinite":
            return CofiniteOpen(frozenset(), True)
        if self.kind == "zariski":
            return ZariskiOpen(IdealPresentation.zero(self.variety.ambient_dimension,
                                                      self.variety.ideal.order))
        return FiniteOpen(frozenset())

    def _expect(self, *opens):
        want = {"cofinite": CofiniteOpen, "zariski": ZariskiOpen,
                "explicit-finite": FiniteOpen}[self.kind]
        for o in opens:
            if not isinstance(o, want):
                raise IncompatibleOpenError(f"{type(o).__name__} is not a {self.kind} open")

    def is_open(self, o) -> bool:
        self._expect(o)
        if self.kind == "explicit-finite" and self.literal_opens is not None:
            return o.points in self.literal_opens or not o.points or o.points == self.points
        return True

    def is_empty(self, o) -> bool:
        self._expect(o)
        if self.kind == "cofinite":
            return o.empty
        if self.kind == "zariski":
            I = self.variety.ideal
            return all(radical_member(g.with_order(I.order), I) for g in o.complement.generators)
        return not o.points

    def intersect(self, a, b):
        self._expect(a, b)
        if self.kind == "cofinite":
            if a.empty or b.empty:
                return self.empty()
            return CofiniteOpen(a.excluded | b.excluded)
        if self.kind == "zariski":
            ga, gb = a.complement.generators, b.complement.generators
            n, order = a.complement.nvars, a.complement.order
            return ZariskiOpen(IdealPresentation([x * y for x in ga for y in gb], n, order))
        return FiniteOpen(a.points & b.points)

    def union(self, a, b):
        self._expect(a, b)
        if self.kind == "cofinite":
            if a.empty:
                return b
            if b.empty:
                return a
            return CofiniteOpen(a.excluded & b.excluded)
        if self.kind == "zariski":
            return ZariskiOpen(a.complement + b.complement)
        return FiniteOpen(a.points | b.points)

    def member(self, p, o) -> bool:
        self._expect(o)
        p = _pt(p)
        if self.kind == "cofinite":
            return not o.empty and p not in o.excluded
        if self.kind == "zariski":
            return any(g.evaluate(p) != 0 for g in o.complement.generators)
        return p in o.points

    def subset(self, a, b) -> bool:
        """``a ⊆ b``."""
        self._expect(a, b)
        if self.is_empty(a):
            return True
        if self.kind == "cofinite":
            return not b.empty and b.excluded <= a.excluded
        if self.kind == "zariski":
            J = self.variety.ideal.with_generators(b.complement.generators)
            return all(radical_member(g.with_order(J.order), J) for g in a.complement.generators)
        return a.points <= b.points

    def same(self, a, b) -> bool:
        return self.subset(a, b) and self.subset(b, a)

    def covers(self, cover, u) -> bool:
        acc = self.empty()
        for v in cover:
            if not self.subset(v, u):
                return False
            acc = self.union(acc, v)
        return self.subset(u, acc)

    def complement_ideal(self, o) -> IdealPresentation:
        """An ideal whose zero set in ``V`` is the complement of ``o``."""
        self._expect(o)
        if self.kind == "zariski":
            return o.complement
        if self.kind == "cofinite":
            n = self.variety.ambient_dimension
            if o.empty:
                return IdealPresentation.zero(n, self.variety.ideal.order)
            return point_ideal(o.excluded, n, self.variety.ideal.order)
        raise SpacesError("finite topologies have no complement ideal")


def open_ops(t: TopologyPresentation, a, b, op: str):
    """Descriptor algebra: ``intersect``, ``union`` or ``member`` (``a`` a point)."""
    if op == "intersect":
        return t.intersect(a, b)
    if op == "union":
        return t.union(a, b)
    if op == "member":
        return t.member(a, b)
    raise SpacesError(f"unknown open operation {op!r}")


# regularity --------------------------------------------------------------------

def regular_on(f: RationalFunction, complement: IdealPresentation,
               closed: IdealPresentation | None = None) -> bool:
    """Is ``f`` regular at every point of ``V(closed) minus V(complement)``?"""
    D = denominator_ideal(f)
    if closed is not None:
        D = D.with_generators([g.with_order(D.order) for g in closed.generators])
    return all(radical_member(g.with_order(D.order), D) for g in complement.generators)


def is_zero_function(f: RationalFunction) -> bool:
    return not f.variety.ideal.reduce(f.numerator)


def same_function(f: RationalFunction, g: RationalFunction) -> bool:
    return f.same_class(g)


def stalk_member(f: RationalFunction, p) -> bool:
    """``f`` is regular at ``p``: some generator of the denominator ideal survives at ``p``."""
    p = _pt(p)
    if not f.variety.contains(p):
        raise SpacesError("point is not on the function's variety")
    D = denominator_ideal(f)
    return any(g.evaluate(p) != 0 for g in D.generators)


# sheaves ---------------------------------------------------------------------

Membership = Callable[[object, RationalFunction], bool]


def _inclusion(u, v, f):
    return f


class SheafPresentation:
    """Section rings as membership rules inside one fraction field."""

    def __init__(self, topology: TopologyPresentation, member: Membership,
                 restriction: str | Callable = "inclusion", name: str = "",
                 equal: Callable | None = None):
        self.topology = topology
        self._member = member
        self.equal = equal or same_function
        self.restriction_rule = restriction if isinstance(restriction, str) else "custom"
        self._restrict = _inclusion if restriction == "inclusion" else restriction
        self.name = name

    def is_zero(self, f) -> bool:
        zero = RationalFunction.polynomial(f.numerator.scale(0), f.variety)
        return self.equal(f, zero)

    def contains(self, u, f: RationalFunction) -> bool:
        if self.topology.is_empty(u):
            return self.is_zero(f)
        return self._member(u, f)

    def restrict(self, u, v, f):
        return self._restrict(u, v, f)

    def __repr__(self):
        return f"SheafPresentation({self.name or self.topology.kind})"


def zariski_sheaf(variety: VarietyPresentation) -> SheafPresentation:
    """Regular functions: ``F(U)`` is the set of ``f`` regular at every point of ``U``."""
    top = TopologyPresentation.zariski(variety)
    return SheafPresentation(top, lambda u, f: regular_on(f, u.complement), name="zariski")


def cofinite_sheaf(variety: VarietyPresentation) -> SheafPresentation:
    """The same functions on the weaker cofinite topology.

    ``F(Z minus S)`` holds the functions regular away from the finite set ``S``.
    """
    top = TopologyPresentation.cofinite(variety)

    def member(u, f):
        return regular_on(f, top.complement_ideal(u))

    return SheafPresentation(top, member, name="cofinite")


def sheaf_restrict(s: SheafPresentation, excluded=(), closed: IdealPresentation | None = None,
                   certificate: str = "trusted-metadata") -> SheafPresentation:
    """Restriction to ``Y = V(closed) minus excluded``.

    ``F(U ∩ Y)`` is the union of ``F(U')`` over opens ``U'`` containing
    ``U ∩ Y``, which is the set of functions regular at every point of
    ``U ∩ Y``.  Opens of the restriction keep the ambient descriptors.
    """
    if certificate not in ("trusted-metadata", "single-linear-fiber"):
        raise SpacesError("restriction needs an irreducibility certificate")
    excluded = frozenset(_pt(p) for p in excluded)
    top = s.topology
    if not excluded and closed is None:
        return s
    prev = getattr(s, "_restriction", None)
    if prev is not None:
        p_exc, p_closed = prev
        excluded = excluded | p_exc
        if p_closed is not None:
            closed = p_closed if closed is None else p_closed.with_generators(closed.generators)
    n = top.variety.ambient_dimension
    order = top.variety.ideal.order
    S = point_ideal(excluded, n, order) if excluded else None

    def member(u, f):
        J = top.complement_ideal(u)
        if S is not None:
            J = IdealPresentation([a * b for a in J.generators for b in S.generators], n, order)
        return regular_on(f, J, closed)

    out = SheafPresentation(top, member, s._restrict if s.restriction_rule == "custom" else "inclusion",
                            name=f"{s.name}|Y", equal=s.equal)
    out._restriction = (excluded, closed)
    return out


@dataclass
class PointMap:
    """A map of presented spaces with a descriptor-level preimage.

    ``preimage`` returns ``None`` when the preimage of an open is not open.
    ``pullback(f)`` is the section map (composition with the point map).
    """
    forward: Callable
    preimage: Callable
    pullback: Callable | None = None


def sheaf_direct_image(s: SheafPresentation, phi: PointMap, target: TopologyPresentation,
                       probe_opens=()) -> SheafPresentation:
    """``(phi_* F)(V) = F(phi^{-1}(V))``."""
    for v in probe_opens:
        if phi.preimage(v) is None:
            raise DiscontinuityError(f"preimage of {v} is not open")

    def member(v, f):
        w = phi.preimage(v)
        if w is None:
            raise DiscontinuityError(f"preimage of {v} is not open")
        return s.contains(w, f)

    out = SheafPresentation(target, member, name=f"direct image of {s.name}")
    out.contains = lambda v, f: member(v, f)  # empty targets pull back to empty sources
    return out


# checks ------------------------------------------------------------------------

@dataclass
class Report:
    passed: bool = True
    failures: list = field(default_factory=list)
    witness: object = None
    checks: int = 0

    def fail(self, message, witness=None):
        self.passed = False
        self.failures.append(message)
        if self.witness is None:
            self.witness = witness

    def __bool__(self):
        return self.passed

    def __str__(self):
        if self.passed:
            return f"PASS ({self.checks} checks)"
        return "FAIL: " + "; ".join(self.failures)


def sheaf_axioms_check(s: SheafPresentation, u, cover, probes) -> Report:
    """Presheaf conditions, identity and gluing on a finite cover of ``u``.

    ``probes`` are sections on ``u`` (expanded to their restrictions) or
    families with one section per cover member.
    """
    t = s.topology
    cover = list(cover)
    if not t.covers(cover, u):
        raise CoverError("cover does not cover the open set")
    rep = Report()
    empty = t.empty()
    families = []
    for pr in probes:
        if isinstance(pr, RationalFunction):
            if s.contains(u, pr):
                families.append([s.restrict(u, v, pr) for v in cover])
                # presheaf: restriction lands in the smaller ring and composes
                rep.checks += 1
                if s.restrict(u, u, pr) is not pr and not s.equal(s.restrict(u, u, pr), pr):
                    rep.fail("restriction to the same open is not the identity", pr)
                for v in cover:
                    rv = s.restrict(u, v, pr)
                    rep.checks += 1
                    if not s.contains(v, rv):
                        rep.fail("restriction leaves the section ring", (v, pr))
                    for w in cover:
                        vw = t.intersect(v, w)
                        a = s.restrict(v, vw, rv)
                        b = s.restrict(u, vw, pr)
                        rep.checks += 1
                        if not s.equal(a, b):
                            rep.fail("restrictions do not compose", (v, w, pr))
                rep.checks += 1
                if s.contains(empty, pr) and not s.is_zero(pr):
                    rep.fail("F(empty) contains a nonzero section", pr)
            else:
                families.append(None)
        else:
            families.append(list(pr))
    for fam in families:
        if fam is None:
            continue
        if len(fam) != len(cover):
            raise SpacesError("a probe family needs one section per cover member")
        # compatibility on overlaps
        compatible = all(
            s.equal(s.restrict(cover[i], t.intersect(cover[i], cover[j]), fam[i]),
                          s.restrict(cover[j], t.intersect(cover[i], cover[j]), fam[j]))
            for i in range(len(cover)) for j in range(i + 1, len(cover)))
        rep.checks += 1
        if not compatible:
            continue
        # identity: all restrictions zero forces zero
        if all(s.is_zero(x) for x in fam):
            continue
        glued = fam[0]
        rep.checks += 1
        if not s.contains(u, glued):
            rep.fail("compatible family has no glued section", glued)
            continue
        for v, x in zip(cover, fam):
            rep.checks += 1
            if not s.equal(s.restrict(u, v, glued), x):
                rep.fail("glued section does not restrict to the family", (v, x))
    return rep


def zclass_check(s: SheafPresentation, sample_opens, probes) -> Report:
    """Sections are functions defined on their opens, restrictions are
    inclusions, and ``⋂ F(U_i) = F(⋃ U_i)`` on the sample."""
    t = s.topology
    rep = Report()
    if s.restriction_rule != "inclusion":
        rep.fail("restriction maps are not inclusions", s.restriction_rule)
    opens = list(sample_opens)
    union = t.empty()
    for o in opens:
        union = t.union(union, o)
    for f in probes:
        if not isinstance(f, RationalFunction):
            rep.fail("section is not an element of the function field", f)
            continue
        ins = [s.contains(o, f) for o in opens]
        for o, inside in zip(opens, ins):
            rep.checks += 1
            if inside and t.kind != "explicit-finite":
                J = t.complement_ideal(o)
                if not regular_on(f, J):
                    rep.fail("section is not defined on its open", (o, f))
        rep.checks += 1
        if all(ins) != s.contains(union, f):
            rep.fail("intersection of sections differs from sections of the union", f)
        if rep.passed and s.restriction_rule == "inclusion":
            for o in opens:
                for o2 in opens:
                    if t.subset(o2, o) and s.contains(o, f):
                        rep.checks += 1
                        if not s.contains(o2, f):
                            rep.fail("larger open has a section missing on a smaller one", (o, o2, f))
    return rep


def lr_morphism_check(src: SheafPresentation, dst: SheafPresentation, point_map: PointMap,
                      probes) -> bool:
    """Continuity, ring-morphism and restriction-square conditions on probes.

    ``probes`` is a dict with keys ``points`` (source points), ``opens``
    (target opens) and ``sections`` (target sections).
    """
    points = [_pt(p) for p in probes.get("points", [])]
    opens = list(probes.get("opens", []))
    sections = list(probes.get("sections", []))
    pull = point_map.pullback
    for v in opens:
        w = point_map.preimage(v)
        if w is None:
            return False
        for p in points:
            if src.topology.member(p, w) != dst.topology.member(point_map.forward(p), v):
                return False
    if pull is None:
        return True
    for v in opens:
        w = point_map.preimage(v)
        inside = [f for f in sections if dst.contains(v, f)]
        for f in inside:
            g = pull(f)
            if not src.contains(w, g):
                return False
            for v2 in opens:
                if dst.topology.subset(v2, v):
                    w2 = point_map.preimage(v2)
                    if not src.equal(src.restrict(w, w2, g), pull(dst.restrict(v, v2, f))):
                        return False
        for f in inside:
            for h in inside:
                s_ = _add(f, h)
                m_ = _mul(f, h)
                if not src.equal(pull(s_), _add(pull(f), pull(h))):
                    return False
                if not src.equal(pull(m_), _mul(pull(f), pull(h))):
                    return False
    return True


def _add(f: RationalFunction, g: RationalFunction) -> RationalFunction:
    return RationalFunction(f.numerator * g.denominator + g.numerator * f.denominator,
                            f.denominator * g.denominator, f.variety)


def _mul(f: RationalFunction, g: RationalFunction) -> RationalFunction:
    return RationalFunction(f.numerator * g.numerator, f.denominator * g.denominator, f.variety)


add_functions = _add
mul_functions = _mul


# L_R sentences -------------------------------------------------------------------

SHAPES = {"PT": 2, "SEC": 2, "ADD": 4, "MUL": 4, "RES": 4}


@dataclass(frozen=True)
class LRSentence:
    """``PT p IN U``, ``SEC f IN U``, ``ADD U a b c``, ``MUL U a b c``, ``RES U V a b``."""
    shape: str
    args: tuple

    def __post_init__(self):
        if self.shape not in SHAPES:
            raise SpacesError(f"unknown sentence shape {self.shape!r}")
        if len(self.args) != SHAPES[self.shape]:
            raise SpacesError(f"{self.shape} takes {SHAPES[self.shape]} arguments")
        if any(not isinstance(a, int) or a < 0 for a in self.args):
            raise SpacesError("constants are natural-number ids")

    def __str__(self):
        if self.shape in ("PT", "SEC"):
            return f"{self.shape} {self.args[0]} IN {self.args[1]}"
        return " ".join([self.shape] + [str(a) for a in self.args])

    @property
    def size(self) -> int:
        """Length of the sentence's decimal encoding."""
        return len(str(self))


class SentenceSyntaxError(SpacesError):
    pass


def parse_sentence(line: str) -> LRSentence:
    parts = line.split()
    if not parts:
        raise SentenceSyntaxError("empty sentence")
    head = parts[0]
    try:
        if head in ("PT", "SEC"):
            if len(parts) != 4 or parts[2] != "IN":
                raise SentenceSyntaxError(f"malformed {head} sentence: {line!r}")
            return LRSentence(head, (int(parts[1]), int(parts[3])))
        if head in ("ADD", "MUL", "RES"):
            if len(parts) != 5:
                raise SentenceSyntaxError(f"malformed {head} sentence: {line!r}")
            return LRSentence(head, tuple(int(x) for x in parts[1:]))
    except ValueError as exc:
        if isinstance(exc, SpacesError):
            raise
        raise SentenceSyntaxError(f"non-numeric id in {line!r}") from exc
    raise SentenceSyntaxError(f"unknown sentence {head!r}")
