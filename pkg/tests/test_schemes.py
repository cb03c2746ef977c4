import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from geodeg.exactalg.field import field_enumerate, field_index
from geodeg.exactalg.poly import parse_polynomial
from geodeg.harness.oracle import OracleSet
from geodeg.schemes import (DerivedOracle, FunctionField, LocalizedRingDescriptor, P_member,
                            R_member, SchemeCopy, SchemeError, build_ZX_scheme,
                            canonical_field, element_divisible, encoding_prime,
                            integral_member, localization_representation, minpoly_in_K,
                            norm_K, norm_divisible, odd_even_join, order_at_linear_prime,
                            probe_element, scheme_decide_pair, scheme_roundtrip,
                            spec_points, valuation_scheme_member)
from tests.oracles.norms import certified_divisibility_suite, probe_elements, resultant_norm


def P(t, n=2):
    return parse_polynomial(t, n)


def _desc(*sets):
    return LocalizedRingDescriptor(len(sets), [OracleSet.finite(s) for s in sets])


def test_P_member_queries_linear_factors():
    zero_one = {field_index(Fraction(0)), field_index(Fraction(1))}
    d = _desc(zero_one, set())
    assert not P_member(P("x1*(x2 + 3)"), d)
    assert P_member(P("(x1 - 2)*(x2 + 3)"), d)
    assert P_member(P("x1^2 + 1"), d)
    with pytest.raises(SchemeError):
        P_member(P("0"), d)
    assert d.oracles[0].query_count >= 1


def test_R_member_is_representation_free():
    zero = {field_index(Fraction(0))}
    d = _desc(zero, set())
    assert R_member((P("x1"), P("x1*(x2 - 5)")), d)
    assert not R_member((P("1"), P("x1")), d)
    assert R_member(P("x1^3"), d)
    with pytest.raises(SchemeError):
        R_member((P("1"), P("0")), d)


def test_spec_points_prefix():
    s = spec_points(_desc({field_index(Fraction(0)), field_index(Fraction(1))}))
    got = list(s.primes(10))
    assert got[0] == ("zero",)
    assert set(got[1:]) == {("lin", 1, Fraction(0)), ("lin", 1, Fraction(1))}
    assert list(spec_points(_desc(set())).primes(10)) == [("zero",)]


def test_spec_points_agree_with_probes():
    rng = random.Random(3)
    X = OracleSet.finite({1, 4, 9})
    s = build_ZX_scheme(X, "linear")
    for _ in range(200):
        j, m = 1, rng.randint(1, 40)
        a = field_enumerate(m)
        inv = (P("1"), P("x1") - a)
        assert s.contains(("lin", j, a)) == (not s.member(inv))


def test_integer_scheme_encoding():
    X = OracleSet.finite({1, 2})
    s = build_ZX_scheme(X)
    assert s.contains(("int", 5)) and s.contains(("int", 11))  # p3, p5
    assert s.contains(("int", 3)) and s.contains(("int", 7))   # even-indexed
    assert not s.contains(("int", 2)) and not s.contains(("int", 17))  # p7 encodes 3
    assert valuation_scheme_member(Fraction(7, 2), s)
    assert not valuation_scheme_member(Fraction(1, 15), s)
    assert valuation_scheme_member(Fraction(1, 5), s, excluded={("int", 5)})
    assert encoding_prime(2) == ("int", 11)


@settings(max_examples=30, deadline=None)
@given(st.sets(st.integers(1, 40), max_size=12), st.integers(0, 1000))
def test_scheme_roundtrip(X, seed):
    for flavor in ("integer", "linear"):
        audit = scheme_roundtrip(OracleSet.finite(X), seed, 40, flavor)
        assert audit.exact


def test_scheme_decide_pair():
    s = build_ZX_scheme(OracleSet.finite({3}))
    copy = SchemeCopy(s, 4)
    assert scheme_decide_pair(copy, 3, 5) == 3
    assert scheme_decide_pair(copy, 6, 3) == 3
    with pytest.raises(SchemeError):
        scheme_decide_pair(copy, 4, 5)


def test_copy_lists_same_primes():
    s = build_ZX_scheme(OracleSet.finite({2, 3}))
    copy = SchemeCopy(s, 8)
    assert sorted(map(str, copy.primes(30))) == sorted(map(str, s.primes(30)))


def test_odd_even_join():
    j = odd_even_join(OracleSet.finite({2}))
    assert [m for m in range(1, 9) if j.query(m)] == [2, 4, 5, 6, 8]
    assert isinstance(j, DerivedOracle)


# function fields ------------------------------------------------------------------

@pytest.fixture(scope="module")
def K():
    return canonical_field()


def A(K):
    x1, x2 = K.xs
    return x1 ** 2 + x1 * x2 + x2 ** 2


def _expr(K, coeffs):
    return [sympy.expand(K.base.to_sympy(c)) for c in coeffs]


def test_minpoly_examples(K):
    x1, _ = K.xs
    assert _expr(K, minpoly_in_K(K.generator)) == [1, 0, 0, sympy.expand(-A(K))]
    assert _expr(K, minpoly_in_K(K.from_expr((x1 - 1) * K.z))) == \
        [1, 0, 0, sympy.expand(-(x1 - 1) ** 3 * A(K))]
    assert _expr(K, minpoly_in_K(K.from_expr(x1 + 2))) == [1, -x1 - 2]


def test_norm_examples(K):
    assert sympy.expand(K.base.to_sympy(norm_K(K.generator)) - A(K)) == 0
    assert K.base.to_sympy(norm_K(K.from_expr(5))) == 125
    z3 = K.generator ** 3
    assert sympy.expand(K.base.to_sympy(norm_K(z3)) - A(K) ** 3) == 0


def test_norm_matches_resultant(K):
    for y in probe_elements(K, 25, seed=1):
        assert sympy.cancel(K.base.to_sympy(norm_K(y)) - resultant_norm(K, y)) == 0


def test_norm_multiplicative(K):
    ps = probe_elements(K, 20, seed=2)
    for a, b in zip(ps[::2], ps[1::2]):
        lhs = K.base.to_sympy(norm_K(a * b))
        rhs = K.base.to_sympy(norm_K(a)) * K.base.to_sympy(norm_K(b))
        assert sympy.cancel(lhs - rhs) == 0


def test_minpoly_degree_divides_m(K):
    for y in probe_elements(K, 15, seed=5):
        assert K.m % (len(minpoly_in_K(y)) - 1) == 0


def test_integrality_examples(K):
    x1, _ = K.xs
    assert integral_member(K.generator)
    assert not integral_member(K.from_expr(K.z / x1))
    assert integral_member(K.from_expr((x1 - 1) * K.z))
    assert element_divisible(K.from_expr((x1 - 1) * K.z), 1, 1)
    assert integral_member(K.from_expr(K.z / x1), ("local", 1, 1))


def test_order_examples(K):
    x1, _ = K.xs
    assert order_at_linear_prime(K.from_expr((x1 - 1) * K.z), 1, 1) == 1
    assert order_at_linear_prime(K.generator, 1, 1) == 0
    T = FunctionField("z - 1", 2, check=False)
    assert order_at_linear_prime(T.from_expr((T.xs[0] - 1) ** 2), 1, 1) == 2
    with pytest.raises(SchemeError):
        order_at_linear_prime(K.from_expr(0), 1, 1)


def test_norm_criterion(K):
    for y, j, a in certified_divisibility_suite(K):
        assert element_divisible(y, j, a) == norm_divisible(y, j, a), (str(y), a)


def test_localization_law(K):
    x1, x2 = K.xs
    for expr in (K.z / (x1 - 3), (K.z ** 2 + x2) / (x1 * x2 + 7), x2 * K.z / (x1 + 1) ** 2):
        y = K.from_expr(expr)
        y1, y2 = localization_representation(y, 1, 1)
        assert integral_member(y1) and integral_member(y2)
        assert order_at_linear_prime(y2, 1, 1) == 0
        assert (y1 - y * y2).is_zero()


def test_function_field_needs_certificate():
    with pytest.raises(SchemeError):
        FunctionField("z**2 - x1*x2", 2)
    with pytest.raises(SchemeError):
        FunctionField("z**3 - x1**2", 1)
