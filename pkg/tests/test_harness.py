from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from geodeg.exactalg.groebner import IdealPresentation
from geodeg.exactalg.poly import parse_polynomial
from geodeg.harness import io
from geodeg.harness.copies import CopyPresentation
from geodeg.harness.diagram import DiagramServer, enumerate_diagram, query_bound
from geodeg.harness.oracle import (OracleError, OracleModeError, OracleSet, format_oracle,
                                   parse_oracle)
from geodeg.spaces import parse_sentence
from geodeg.unions import (ComponentFamily, TaggedPoint, build_AX, enumerate_points,
                           sentence_from_index, sentence_index)
from tests.oracles.sentences import random_sentences


def test_oracle_log():
    o = OracleSet.finite({2, 3})
    assert o.query(2) and not o.query(5)
    assert o.query_count == 2 and o.negative_queries == 1
    assert o.prefix(4) == {2, 3} and o.query_count == 2
    r = o.restricted()
    with pytest.raises(OracleModeError):
        r.query(1)
    assert list(r.enumerate_members()) == [2, 3]
    assert r.query_count == 0
    with pytest.raises(OracleError):
        OracleSet.finite({0})
    with pytest.raises(OracleError):
        OracleSet.from_rule("primes")


def test_infinite_enumeration_increases():
    it = OracleSet.cofinite({2, 3}).enumerate_members()
    assert [next(it) for _ in range(4)] == [1, 4, 5, 6]
    it = OracleSet.from_rule("squares").enumerate_members()
    assert [next(it) for _ in range(3)] == [1, 4, 9]


@pytest.mark.parametrize("o", [OracleSet.finite({1, 5, 9}), OracleSet.finite(()),
                               OracleSet.cofinite({4}), OracleSet.from_rule("evens")],
                         ids=repr)
def test_oracle_file_roundtrip(o):
    back = parse_oracle(format_oracle(o))
    assert back.prefix(30) == o.prefix(30) and back.is_infinite == o.is_infinite


def test_oracle_file_errors():
    for bad in ["", "finite\nx", "infinite\nrule nope", "maybe\n1"]:
        with pytest.raises(OracleError):
            parse_oracle(bad)


def test_query_bound_on_random_sentences():
    A = build_AX(ComponentFamily("elliptic"), OracleSet.finite({1, 2, 3, 5}))
    server = DiagramServer(A)
    for s in random_sentences(4, 500):
        server.serve(s)
    assert server.within_bound()
    assert all(q <= query_bound(s.size) for s, q in server.spent)


def test_server_accepts_text():
    A = build_AX(ComponentFamily("elliptic"), OracleSet.finite({1}))
    got = DiagramServer(A).serve("PT 0 IN 1")
    assert got.truth and got.queries == 1


@pytest.mark.parametrize("mode,family", [("subspace", "elliptic"), ("disjoint", "super")])
def test_enumeration_matches_turing_on_finite_sets(mode, family):
    X = OracleSet.finite({1, 3})
    A = build_AX(ComponentFamily(family), X, mode)
    knows = A.turing_knows()
    turing = {n for n in range(1500) if A.truth(sentence_from_index(n), knows)}
    B = build_AX(ComponentFamily(family), X.restricted(), mode)
    emitted = [s for _, s in enumerate_diagram(B, 1500)]
    got = {sentence_index(s) for s in emitted}
    assert len(emitted) == len(got)
    assert got == turing
    assert B.index_set.query_count == 0


def test_enumeration_is_sound_on_infinite_sets():
    X = OracleSet.from_rule("odds")
    A = build_AX(ComponentFamily("elliptic"), X)
    knows = A.turing_knows()
    B = build_AX(ComponentFamily("elliptic"), X.restricted())
    for stage, s in enumerate_diagram(B, 800, max_stages=6):
        assert stage <= 6
        assert A.truth(s, knows)
    assert B.index_set.negative_queries == 0


def test_points_roundtrip_through_text():
    A = build_AX(ComponentFamily("elliptic"), OracleSet.finite({2}))
    D = build_AX(ComponentFamily("super"), OracleSet.finite({1}), "disjoint")
    pts = [p for _, p in enumerate_points(A, 40)] + [p for _, p in enumerate_points(D, 20)]
    assert any(not isinstance(c, Fraction) for p in pts[:10] for c in p)
    for p in pts:
        assert io.parse_point(io.format_point(p)) == p


def test_copy_dump_roundtrip():
    A = build_AX(ComponentFamily("elliptic"), OracleSet.finite({1, 2}))
    copy = CopyPresentation(A, 3)
    pts = [(lbl, copy.point(lbl)) for lbl in range(40) if copy.point(lbl) is not None]
    sents = [parse_sentence("PT 0 IN 1")]
    text = io.format_copy_dump(3, "subspace", "elliptic", pts, sents)
    d = io.parse_copy_dump(text + "SENTENCES 1\nQUERIES 4\n")
    assert d["seed"] == 3 and d["points"] == pts and d["sentences"] == sents
    with pytest.raises(io.FormatError):
        io.parse_copy_dump("MODE subspace\n")


def test_ideal_file_roundtrip():
    I = IdealPresentation([parse_polynomial("x1^2 - x2", 2), parse_polynomial("x1*x2 - 1", 2)], 2)
    back = io.parse_ideal_file(io.format_ideal_file(I))
    assert back.nvars == 2 and list(back.generators) == list(I.generators)
    v = io.parse_variety_file("vars 2\nx2 - x1^2\ncertificate trusted-metadata\n")
    assert v.ambient_dimension == 2
