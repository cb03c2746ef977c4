"""The ten acceptance criteria, each printing one PASS/FAIL line."""

import random
import time
from fractions import Fraction
from math import gcd

import pytest
import sympy

from geodeg import curves
from geodeg.exactalg.field import field_enumerate
from geodeg.exactalg.groebner import IdealPresentation, ideal_member
from geodeg.exactalg.poly import SparsePolynomial, parse_polynomial
from geodeg.geometry import (NowhereDefinedError, VarietyPresentation, fn_defined_on_open,
                             fn_is_constant, fn_vanishes_on_closed, parse_rational_function,
                             variety_points_enumerate)
from geodeg.harness.copies import CopyPresentation
from geodeg.harness.diagram import DiagramServer, enumerate_diagram, query_bound
from geodeg.harness.oracle import OracleSet
from geodeg.harness.roundtrip import roundtrip
from geodeg.schemes import (build_ZX_scheme, canonical_field, element_divisible,
                            integral_member, minpoly_in_K, norm_K, norm_divisible,
                            order_at_linear_prime, scheme_roundtrip)
from geodeg.spaces import sheaf_axioms_check
from geodeg.unions import (ComponentFamily, build_AX, decide_pair, label_budget,
                           sentence_from_index, sentence_index)
from tests.golden_cases import CASES, expected_path, run_case
from tests.oracles import sheaf_probes
from tests.oracles.corpus import membership_cases
from tests.oracles.curves_brute import first_appendix_values, j_brute, superelliptic_genus_rh
from tests.oracles.decision_corpus import CASES as DECISION_CASES, VARIETIES
from tests.oracles.macaulay import macaulay_member
from tests.oracles.norms import certified_divisibility_suite, probe_elements, resultant_norm
from tests.oracles.pointwise import constant_pointwise, defined_pointwise, vanishes_pointwise
from tests.oracles.sentences import random_sentences


@pytest.fixture
def verdict(capsys):
    """Run a criterion body, time it, print the verdict line, then assert."""
    def run(number, title, limit, body):
        t0 = time.perf_counter()
        problems = []
        try:
            problems = list(body() or [])
        except Exception as exc:  # reported as a failure line, then re-raised below
            problems = [f"{type(exc).__name__}: {exc}"]
        took = time.perf_counter() - t0
        if limit is not None and took >= limit:
            problems.append(f"took {took:.1f}s, limit {limit}s")
        status = "FAIL" if problems else "PASS"
        with capsys.disabled():
            print(f"\n{status} criterion {number}: {title} ({took:.1f}s)"
                  + "".join(f"\n    {p}" for p in problems[:5]))
        assert not problems, problems
    return run


def test_criterion_01_ideal_membership(verdict):
    def body():
        bad = []
        for k, (gens, f, n) in enumerate(membership_cases(2024, 200)):
            got = ideal_member(f, IdealPresentation(gens, n))
            want = macaulay_member(f.terms, [g.terms for g in gens], n, 6) or \
                macaulay_member(f.terms, [g.terms for g in gens], n, 12)
            if got != want:
                bad.append(f"case {k}: groebner {got}, macaulay {want}")
        return bad
    verdict(1, "ideal membership agrees with the Macaulay oracle on 200 cases", 60, body)


def test_criterion_02_decision_procedures(verdict):
    def body():
        bad = []
        varieties, points = {}, {}
        for name, gens in VARIETIES.items():
            v = VarietyPresentation.from_polys([parse_polynomial(g, 2) for g in gens], 2)
            varieties[name] = v
            points[name] = [p.coordinates for p in variety_points_enumerate(v, 500)]
        for k, (vname, text, comp, closed) in enumerate(DECISION_CASES):
            v, pts = varieties[vname], points[vname]
            f = parse_rational_function(text, v)
            cgens = [parse_polynomial(g, 2) for g in comp]
            wgens = [parse_polynomial(g, 2) for g in closed]
            num, den = f.numerator, f.denominator
            got = fn_defined_on_open(f, IdealPresentation(cgens, 2))
            if got != defined_pointwise(num, den, cgens, pts):
                bad.append(f"case {k} defined: {got}")
            try:
                got = fn_vanishes_on_closed(f, IdealPresentation(wgens, 2))
            except NowhereDefinedError:
                got = "nowhere-defined"
            if got != vanishes_pointwise(num, den, wgens, pts):
                bad.append(f"case {k} vanishes: {got}")
            res = fn_is_constant(f, 500)
            want = constant_pointwise(num, den, pts)
            if (res.kind, res.value if res.kind == "constant" else None) != want:
                bad.append(f"case {k} constant: {res}")
        if len(DECISION_CASES) != 50:
            bad.append(f"corpus has {len(DECISION_CASES)} cases")
        if ("parabola", "1 / x2", ["x1"], ["x1 - 1"]) not in DECISION_CASES:
            bad.append("the 1/y regression case is missing")
        return bad
    verdict(2, "decision procedures agree with pointwise evaluation on 50 cases", 30, body)


def test_criterion_03_sheaf_suite(verdict):
    def body():
        bad = []
        for name, suite in (("zariski", sheaf_probes.zariski_suite),
                            ("cofinite", sheaf_probes.cofinite_suite),
                            ("union", sheaf_probes.union_suite)):
            rep = sheaf_axioms_check(*suite())
            if not rep:
                bad.append(f"{name}: {rep}")
        for build in sheaf_probes.BROKEN:
            rep = sheaf_axioms_check(*build())
            if rep or rep.witness is None:
                bad.append(f"{build.__name__} was not caught with a witness")
        return bad
    verdict(3, "sheaf axioms hold on three sheaves and fail on three corruptions", 10, body)


def test_criterion_04_curve_certificates(verdict):
    def body():
        bad = []
        fam = curves.elliptic_family_gen(50)
        js = [c.j_invariant for c in fam]
        if len(set(js)) != 50:
            bad.append("repeated j-invariant in the first 50")
        for c in fam:
            if c.j_invariant != curves.j_at_unit_A(c.B) or c.A != 1:
                bad.append(f"j formula fails at B={c.B}")
            if c.j_invariant != j_brute(c.A, c.B):
                bad.append(f"j differs from the reference at B={c.B}")
        gs = [curves.superelliptic_genus(d) for d in range(3, 100, 2)]
        if any(b <= a for a, b in zip(gs, gs[1:])):
            bad.append("genus is not strictly increasing")
        if gs[:3] != [1, 2, 3]:
            bad.append(f"first genera {gs[:3]}")
        if gs != [superelliptic_genus_rh(d) for d in range(3, 100, 2)]:
            bad.append("genus differs from the Riemann-Hurwitz count")
        return bad
    verdict(4, "distinct j-invariants, j formula at A=1, genus ladder", 5, body)


def test_criterion_05_appendix_family(verdict):
    def body():
        bad = []
        st = curves.appendix_A_sequence(4, prime_count=6)
        if len(st.prime_list) < 6:
            bad.append("fewer than 6 primes")
        rep = curves.appendix_conditions(st)
        if not rep:
            bad.extend(rep.failures)
        if st.A_sequence[0] != 13 or st.targets[0] != 5:
            bad.append(f"A_1 = {st.A_sequence[0]} for p_1 = {st.targets[0]}")
        if st.A_sequence[:2] != first_appendix_values(2):
            bad.append("prefix differs from the brute-force walk")
        for k, v in enumerate(st.values, 1):
            if gcd(v, 6) != 1:
                bad.append(f"4A^3+27 not prime to 6 at k={k}")
            q = st.targets[k - 1]
            if curves.padic_order(v, q) < 1:
                bad.append(f"ord_{q} of 4A_{k}^3+27 is zero")
            for u in st.values[:k - 1]:
                for p in sympy.factorint(u, limit=10 ** 4):
                    if p < 10 ** 4 and sympy.isprime(p) and curves.padic_order(v, p) != 0:
                        bad.append(f"ord_{p} nonzero on the bad set at k={k}")
        if not curves.reduction_disjointness(st):
            bad.append("witness primes are not pairwise distinct")
        return bad
    verdict(5, "appendix family: conditions, A_1 = 13, distinct witnesses", 60, body)


def test_criterion_06_union_roundtrip(verdict):
    def body():
        bad = []
        rng = random.Random(6)
        for k in range(100):
            X = OracleSet.finite(rng.sample(range(1, 65), rng.randint(0, 12)))
            seed = rng.randrange(10 ** 6)
            for family, mode in (("elliptic", "subspace"), ("super", "disjoint")):
                audit = roundtrip(X, family, mode, seed, 64)
                if not audit.exact:
                    bad.append(f"{mode} X={sorted(X.members)} seed={seed}: {audit.recovered}")
        for k in range(100):
            i, j = rng.sample(range(1, 65), 2)
            X = OracleSet.finite({i} | set(rng.sample(range(1, 65), 4)) - {j})
            mode = "subspace" if k % 2 else "disjoint"
            fam = ComponentFamily("elliptic" if mode == "subspace" else "super")
            copy = CopyPresentation(build_AX(fam, X, mode), rng.randrange(10 ** 6))
            got = decide_pair(copy, i, j, max_steps=label_budget(max(i, j), copy.block))
            if got != i:
                bad.append(f"decide_pair({i}, {j}) returned {got}")
        return bad
    verdict(6, "union round trips in both modes and decide_pair", 120, body)


def test_criterion_07_scheme_roundtrip(verdict):
    def body():
        bad = []
        rng = random.Random(7)
        for _ in range(100):
            X = OracleSet.finite(rng.sample(range(1, 65), rng.randint(0, 12)))
            audit = scheme_roundtrip(X, rng.randrange(10 ** 6), 64)
            if not audit.exact:
                bad.append(f"X={sorted(X.members)}: {audit.recovered}")
        X = OracleSet.finite(rng.sample(range(1, 40), 10))
        s = build_ZX_scheme(X, "linear")
        one = SparsePolynomial.constant(1, 2)
        for _ in range(200):
            j, a = rng.randint(1, 2), field_enumerate(rng.randint(1, 80))
            inv = (one, SparsePolynomial.variable(j - 1, 2) - a)
            if s.contains(("lin", j, a)) == s.member(inv):
                bad.append(f"prime (x{j} - {a}) disagrees with its probe")
        return bad
    verdict(7, "integer scheme round trips and linear-prime probes", 60, body)


def test_criterion_08_function_field(verdict):
    def body():
        bad = []
        K = canonical_field()
        x1, x2 = K.xs
        A = sympy.expand(x1 ** 2 + x1 * x2 + x2 ** 2)
        ex = lambda cs: [sympy.expand(K.base.to_sympy(c)) for c in cs]
        if ex(minpoly_in_K(K.generator)) != [1, 0, 0, -A]:
            bad.append("minpoly of z")
        if ex(minpoly_in_K(K.from_expr((x1 - 1) * K.z))) != [1, 0, 0, sympy.expand(-(x1 - 1) ** 3 * A)]:
            bad.append("minpoly of (x1-1)z")
        if sympy.expand(K.base.to_sympy(norm_K(K.generator)) - A) != 0:
            bad.append("N(z)")
        if K.base.to_sympy(norm_K(K.from_expr(5))) != 125:
            bad.append("N(5)")
        if not integral_member(K.generator) or integral_member(K.from_expr(K.z / x1)):
            bad.append("integrality of z and z/x1")
        y = K.from_expr((x1 - 1) * K.z)
        if not integral_member(y) or not element_divisible(y, 1, 1):
            bad.append("(x1-1)z integral and divisible")
        if order_at_linear_prime(y, 1, 1) != 1 or order_at_linear_prime(K.generator, 1, 1) != 0:
            bad.append("orders")
        ps = probe_elements(K, 200, seed=8)
        norms = [K.base.to_sympy(norm_K(p)) for p in ps]
        for k, p in enumerate(ps[:10]):
            if sympy.cancel(norms[k] - resultant_norm(K, p)) != 0:
                bad.append(f"norm of probe {k} differs from the resultant")
        for k in range(0, 200, 2):
            prod = K.base.to_sympy(norm_K(ps[k] * ps[k + 1]))
            if sympy.cancel(prod - norms[k] * norms[k + 1]) != 0:
                bad.append(f"norm not multiplicative on pair {k // 2}")
        for y, j, a in certified_divisibility_suite(K):
            if element_divisible(y, j, a) != norm_divisible(y, j, a):
                bad.append(f"norm criterion fails for {y} at x{j} - {a}")
        return bad
    verdict(8, "function-field examples, norm multiplicativity, norm criterion", 60, body)


def test_criterion_09_reduction_audits(verdict):
    def body():
        bad = []
        A = build_AX(ComponentFamily("elliptic"), OracleSet.finite({1, 2, 4, 7}))
        server = DiagramServer(A)
        sents = random_sentences(9, 10 ** 4)
        for s in sents:
            server.serve(s)
        over = [(str(s), q) for s, q in server.spent if q > query_bound(s.size)]
        if over:
            bad.append(f"{len(over)} sentences over the bound, e.g. {over[0]}")
        for X, family, mode in ((OracleSet.finite({1, 3}), "elliptic", "subspace"),
                                (OracleSet.finite({2, 3}), "super", "disjoint")):
            T = build_AX(ComponentFamily(family), X.fresh(), mode)
            knows = T.turing_knows()
            truth = {n for n in range(2000) if T.truth(sentence_from_index(n), knows)}
            E = build_AX(ComponentFamily(family), X.restricted(), mode)
            got = [sentence_index(s) for _, s in enumerate_diagram(E, 2000)]
            if E.index_set.negative_queries or E.index_set.query_count:
                bad.append("enumeration mode queried the oracle")
            if set(got) != truth or len(got) != len(set(got)):
                bad.append(f"enumeration emitted {len(got)} sentences, Turing mode {len(truth)}")
        return bad
    verdict(9, "query bound over 10^4 sentences; no negative queries when enumerating", 60, body)


def test_criterion_10_determinism(verdict):
    def body():
        bad = []
        first = [run_case(argv, stdin) for _, argv, stdin in CASES]
        second = [run_case(argv, stdin) for _, argv, stdin in CASES]
        for (name, _, _), a, b in zip(CASES, first, second):
            if a != b:
                bad.append(f"{name}: two runs differ")
            with open(expected_path(name), encoding="utf-8") as fh:
                if fh.read() != a:
                    bad.append(f"{name}: differs from the golden output")
        covered = {argv[0] for _, argv, _ in CASES}
        for sub in ("ideal-member", "fn-defined", "fn-constant", "sheaf-check", "family",
                    "encode", "decode", "roundtrip", "scheme"):
            if sub not in covered:
                bad.append(f"subcommand {sub} has no golden case")
        return bad
    verdict(10, "two CLI runs over the golden corpus are byte-identical", None, body)
