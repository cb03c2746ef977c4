"""Sparse multivariate polynomials with exact coefficients.

Terms live in a dict mapping exponent tuples to nonzero coefficients.  A
coefficient is a :class:`~fractions.Fraction` when rational and an
:class:`~geodeg.exactalg.field.AlgebraicNumber` otherwise, so two equal
polynomials always have equal term dicts.

Supported orders: ``"lex"``, ``"grevlex"`` and ``"elim<k>"`` (block order in
which any monomial touching the last ``k`` variables beats every monomial that
does not; ties inside each block are broken by grevlex).
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

from .field import (AlgebraicNumber, ExtensionDescriptor, IncompatibleFieldError,
                    format_element, format_rational)

ORDERS = ("lex", "grevlex")


def _grevlex(e):
    return (sum(e), tuple(-x for x in reversed(e)))


@lru_cache(maxsize=None)
def order_key(order: str):
    """Sort key for exponent tuples; a larger key means a larger monomial."""
    if order == "lex":
        return lambda e: e
    if order == "grevlex":
        return _grevlex
    m = re.fullmatch(r"elim(\d+)", order)
    if m:
        k = int(m.group(1))
        return lambda e: (_grevlex(e[len(e) - k:]), _grevlex(e[:len(e) - k]))
    raise ValueError(f"unknown monomial order {order!r}")


def _norm_coef(c):
    if isinstance(c, AlgebraicNumber):
        return Fraction(c.coords[0]) if c.is_rational() else c
    return Fraction(c)


def _coef_field(c):
    return c.field if isinstance(c, AlgebraicNumber) else None


def _merge_fields(a, b):
    if a is None:
        return b
    if b is None or a == b:
        return a
    raise IncompatibleFieldError("polynomials over different extension fields")


def monomial_divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_quotient(a, b):
    return tuple(x - y for x, y in zip(a, b))


def monomial_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


class SparsePolynomial:
    """An element of ``k[x1..xn]`` with a fixed monomial order tag."""

    __slots__ = ("nvars", "terms", "order", "field", "_lead", "_hash")

    def __init__(self, nvars: int, terms=None, order: str = "grevlex",
                 field: ExtensionDescriptor | None = None):
        order_key(order)  # validate
        clean = {}
        fld = field
        for exp, c in (terms or {}).items():
            exp = tuple(int(x) for x in exp)
            if len(exp) != nvars or any(x < 0 for x in exp):
                raise ValueError(f"bad exponent vector {exp} for {nvars} variables")
            c = _norm_coef(c)
            if c == 0:
                continue
            fld = _merge_fields(fld, _coef_field(c))
            clean[exp] = clean.get(exp, 0) + c
            if clean[exp] == 0:
                del clean[exp]
        self._set(nvars, clean, order, fld)

    def _set(self, nvars, terms, order, field):
        self.nvars = nvars
        self.terms = terms
        self.order = order
        self.field = field
        self._lead = None
        self._hash = None

    @classmethod
    def _raw(cls, nvars, terms, order, field):
        """Trusted constructor: ``terms`` already normalized, no zeros."""
        obj = cls.__new__(cls)
        obj._set(nvars, terms, order, field)
        return obj

    # construction helpers ---------------------------------------------------

    @classmethod
    def zero(cls, nvars, order="grevlex", field=None):
        return cls._raw(nvars, {}, order, field)

    @classmethod
    def constant(cls, c, nvars, order="grevlex", field=None):
        return cls(nvars, {(0,) * nvars: c}, order, field)

    @classmethod
    def variable(cls, i, nvars, order="grevlex", field=None):
        """The variable ``x_{i+1}`` (``i`` is zero-based)."""
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): Fraction(1)}, order, field)

    def _like(self, terms):
        return SparsePolynomial._raw(self.nvars, terms, self.order, self.field)

    def _check(self, other):
        if other.nvars != self.nvars:
            raise ValueError("polynomials in different numbers of variables")
        return _merge_fields(self.field, other.field)

    def _coerce(self, other):
        if isinstance(other, SparsePolynomial):
            return other
        if isinstance(other, (int, Fraction, AlgebraicNumber)):
            return SparsePolynomial.constant(other, self.nvars, self.order, self.field)
        return NotImplemented

    # queries ----------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or list(self.terms) == [(0,) * self.nvars]

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, j: int) -> int:
        if not self.terms:
            return -1
        return max(e[j] for e in self.terms)

    def variables(self) -> set[int]:
        return {i for e in self.terms for i, x in enumerate(e) if x}

    def sorted_terms(self, order: str | None = None):
        key = order_key(order or self.order)
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        if self._lead is None:
            key = order_key(self.order)
            e = max(self.terms, key=key)
            self._lead = (e, self.terms[e])
        return self._lead

    def leading_monomial(self):
        return self.leading_term()[0]

    def leading_coefficient(self):
        return self.leading_term()[1]

    # arithmetic -------------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        fld = self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = _norm_coef(v + c)
                if v == 0:
                    del out[e]
                else:
                    out[e] = v
        return SparsePolynomial._raw(self.nvars, out, self.order, fld)

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c, mono=None):
        """``c * x^mono * self``."""
        c = _norm_coef(c)
        if c == 0:
            return self._like({})
        fld = _merge_fields(self.field, _coef_field(c))
        if mono is None:
            terms = {e: _norm_coef(v * c) for e, v in self.terms.items()}
        else:
            terms = {monomial_mul(e, mono): _norm_coef(v * c) for e, v in self.terms.items()}
        return SparsePolynomial._raw(self.nvars, terms, self.order, fld)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, AlgebraicNumber)):
            return self.scale(other)
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        fld = self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = monomial_mul(e1, e2)
                out[e] = out.get(e, 0) + c1 * c2
        out = {e: _norm_coef(c) for e, c in out.items() if c != 0}
        return SparsePolynomial._raw(self.nvars, out, self.order, fld)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = SparsePolynomial.constant(1, self.nvars, self.order, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, SparsePolynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction, AlgebraicNumber)):
            return self.terms == self._coerce(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def monic(self):
        if not self.terms:
            return self
        lc = self.leading_coefficient()
        if lc == 1:
            return self
        return self.scale(1 / lc if isinstance(lc, AlgebraicNumber) else Fraction(1) / lc)

    # conversions ------------------------------------------------------------

    def with_order(self, order: str):
        if order == self.order:
            return self
        order_key(order)
        return SparsePolynomial._raw(self.nvars, self.terms, order, self.field)

    def with_field(self, field):
        return SparsePolynomial._raw(self.nvars, self.terms, self.order,
                                     _merge_fields(self.field, field))

    def extend(self, extra: int, order: str | None = None):
        """Embed into a ring with ``extra`` new variables appended."""
        pad = (0,) * extra
        return SparsePolynomial._raw(self.nvars + extra,
                                     {e + pad: c for e, c in self.terms.items()},
                                     order or self.order, self.field)

    def drop_last(self, count: int, order: str | None = None):
        """Project away trailing variables that do not occur."""
        n = self.nvars - count
        terms = {}
        for e, c in self.terms.items():
            if any(e[n:]):
                raise ValueError("polynomial involves a dropped variable")
            terms[e[:n]] = c
        return SparsePolynomial._raw(n, terms, order or self.order, self.field)

    def evaluate(self, point):
        """Value at a point given as a sequence of field elements."""
        if len(point) != self.nvars:
            raise ValueError("point has the wrong dimension")
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * x ** k
            total = total + v
        return _norm_coef(total)

    def substitute(self, j: int, value):
        """Replace ``x_{j+1}`` by a constant, keeping the variable count."""
        out = {}
        for e, c in self.terms.items():
            k = e[j]
            v = c * value ** k if k else c
            e2 = e[:j] + (0,) + e[j + 1:]
            out[e2] = out.get(e2, 0) + v
        return SparsePolynomial(self.nvars, out, self.order, self.field)

    def coefficients_in(self, j: int) -> dict:
        """Group by the monomial in the other variables.

        Returns a dict mapping the exponent tuple with position ``j`` zeroed
        to the dense univariate coefficient tuple in ``x_{j+1}``.
        """
        groups: dict = {}
        for e, c in self.terms.items():
            rest = e[:j] + (0,) + e[j + 1:]
            groups.setdefault(rest, {})[e[j]] = c
        out = {}
        for rest, d in groups.items():
            top = max(d)
            out[rest] = tuple(d.get(i, Fraction(0)) for i in range(top + 1))
        return out

    @classmethod
    def from_univariate(cls, coeffs, j: int, nvars: int, order="grevlex", field=None):
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * nvars
            e[j] = i
            terms[tuple(e)] = c
        return cls(nvars, terms, order, field)

    def to_univariate(self, j: int = 0):
        """Dense coefficients in ``x_{j+1}``, if no other variable occurs."""
        if self.variables() - {j}:
            raise ValueError("polynomial is not univariate in the requested variable")
        if not self.terms:
            return ()
        top = self.degree_in(j)
        dense = [Fraction(0)] * (top + 1)
        for e, c in self.terms.items():
            dense[e[j]] = c
        return tuple(dense)

    def derivative(self, j: int):
        out = {}
        for e, c in self.terms.items():
            if e[j]:
                e2 = e[:j] + (e[j] - 1,) + e[j + 1:]
                out[e2] = _norm_coef(c * e[j])
        return self._like(out)

    # text -------------------------------------------------------------------

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"SparsePolynomial({format_polynomial(self)!r}, nvars={self.nvars})"


def _format_monomial(e) -> str:
    parts = []
    for i, k in enumerate(e):
        if k == 1:
            parts.append(f"x{i + 1}")
        elif k > 1:
            parts.append(f"x{i + 1}^{k}")
    return "*".join(parts)


def format_polynomial(p: SparsePolynomial) -> str:
    """Canonical text: terms in descending order, coefficients as ``p/q``."""
    if not p.terms:
        return "0"
    out = ""
    for idx, (e, c) in enumerate(p.sorted_terms()):
        mono = _format_monomial(e)
        if isinstance(c, AlgebraicNumber):
            body = f"({format_element(c)})"
            body = f"{body}*{mono}" if mono else body
            out += body if idx == 0 else f" + {body}"
            continue
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = format_rational(a)
        elif a == 1:
            body = mono
        else:
            body = f"{format_rational(a)}*{mono}"
        if idx == 0:
            out = ("-" if neg else "") + body
        else:
            out += (" - " if neg else " + ") + body
    return out


# parsing --------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|x(\d+)|(t)|(\^)|([-+*/()]))")


class PolynomialSyntaxError(ValueError):
    pass


class _Parser:
    """Recursive descent over ``+ - * / ^ ( )``; division only by integers."""

    def __init__(self, text, nvars, order, field):
        self.tokens = self._lex(text)
        self.pos = 0
        self.order = order
        self.field = field
        maxvar = max((int(v) for kind, v in self.tokens if kind == "var"), default=0)
        if nvars is None:
            nvars = max(maxvar, 1)
        if maxvar > nvars:
            raise PolynomialSyntaxError(f"variable x{maxvar} exceeds {nvars} variables")
        self.nvars = nvars

    @staticmethod
    def _lex(text):
        tokens, pos = [], 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise PolynomialSyntaxError(f"unexpected input at {text[pos:]!r}")
            num, var, t, caret, op = m.groups()
            if num is not None:
                tokens.append(("num", num))
            elif var is not None:
                if int(var) < 1:
                    raise PolynomialSyntaxError("variables are numbered from x1")
                tokens.append(("var", var))
            elif t is not None:
                tokens.append(("t", t))
            elif caret is not None:
                tokens.append(("op", "^"))
            else:
                tokens.append(("op", op))
            pos = m.end()
        return tokens

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise PolynomialSyntaxError(f"expected {value!r}, found {tok[1]!r}")
        self.pos += 1
        return tok

    def const(self, c):
        return SparsePolynomial.constant(c, self.nvars, self.order, self.field)

    def parse(self):
        if not self.tokens:
            raise PolynomialSyntaxError("empty polynomial")
        p = self.expr()
        if self.pos != len(self.tokens):
            raise PolynomialSyntaxError(f"trailing input {self.peek()[1]!r}")
        return p

    def expr(self):
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        elif self.peek() == ("op", "+"):
            self.take()
        p = self.term().scale(sign)
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.power()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            if op == "*":
                p = p * self.power()
            else:
                q = self.power()
                if not q.is_constant() or q.is_zero():
                    raise PolynomialSyntaxError("division only by nonzero constants")
                c = q.constant_term()
                p = p.scale(1 / c if isinstance(c, AlgebraicNumber) else Fraction(1) / c)
        return p

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise PolynomialSyntaxError("exponent must be a natural number")
            base = base ** int(val)
        return base

    def atom(self):
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return self.const(Fraction(int(val)))
        if kind == "var":
            self.take()
            return SparsePolynomial.variable(int(val) - 1, self.nvars, self.order, self.field)
        if kind == "t":
            self.take()
            if self.field is None:
                raise PolynomialSyntaxError("'t' used without an extension header")
            return self.const(self.field.generator)
        if (kind, val) == ("op", "("):
            self.take()
            p = self.expr()
            self.take(")")
            return p
        if (kind, val) == ("op", "-"):
            self.take()
            return -self.power()
        raise PolynomialSyntaxError(f"unexpected token {val!r}")


def parse_polynomial(text: str, nvars: int | None = None, order: str = "grevlex",
                     field: ExtensionDescriptor | None = None) -> SparsePolynomial:
    """Parse polynomial text; accepts canonical output and general expressions."""
    return _Parser(text, nvars, order, field).parse()


def parse_univariate_t(text: str):
    """Parse a polynomial in ``t`` over Q into dense coefficients."""
    p = parse_polynomial(text.replace("t", "x1"), nvars=1, order="lex")
    return p.to_univariate(0)


def format_univariate_t(coeffs) -> str:
    p = SparsePolynomial.from_univariate(coeffs, 0, 1, order="lex")
    return format_polynomial(p).replace("x1", "t")
