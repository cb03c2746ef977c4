"""Command-line entry point: ``geodeg <subcommand> ...``.

Exit status is 0 on success, 1 when a predicate subcommand answers no, and
2 on any error (bad input, unknown subcommand).
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import curves
from .exactalg.groebner import ideal_member, radical_member
from .exactalg.poly import parse_polynomial
from .geometry import fn_defined_on_open, fn_is_constant, parse_rational_function
from .harness import io
from .harness.copies import CopyPresentation
from .harness.oracle import parse_oracle
from .harness.roundtrip import BLOCK, RefusalError, certify, roundtrip
from .spaces import (CofiniteOpen, ZariskiOpen, cofinite_sheaf, sheaf_axioms_check,
                     zariski_sheaf)
from .unions import (ComponentFamily, build_AX, enumerate_components, label_budget,
                     sentence_from_index)


class CliError(Exception):
    pass


def _read(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from exc


def _fmt_set(xs):
    return "{" + ",".join(str(x) for x in sorted(xs)) + "}"


# subcommands ------------------------------------------------------------------

def cmd_ideal_member(a):
    ideal = io.parse_ideal_file(_read(a.ideal))
    f = io.parse_poly_file(_read(a.poly), ideal.nvars)
    yes = radical_member(f, ideal) if a.radical else ideal_member(f, ideal)
    print("MEMBER" if yes else "NOT-MEMBER")
    return 0 if yes else 1


def _parse_open_line(line, variety):
    head, _, rest = line.partition(" ")
    n = variety.ambient_dimension
    if head == "ZAR":
        gens = [parse_polynomial(g.strip(), n) for g in rest.split(",") if g.strip()]
        return ZariskiOpen.of(gens, n)
    if head == "COF":
        pts = []
        for chunk in rest.split("|"):
            if chunk.strip():
                pts.append(tuple(Fraction(c) for c in chunk.split()))
        return CofiniteOpen(frozenset(pts))
    raise CliError(f"open lines start with ZAR or COF: {line!r}")


def cmd_fn_defined(a):
    v = io.parse_variety_file(_read(a.variety))
    f = parse_rational_function(next(io._content_lines(_read(a.function))), v)
    comp = io.parse_ideal_file(_read(a.complement))
    yes = fn_defined_on_open(f, comp, mode=a.mode)
    print("DEFINED" if yes else "NOT-DEFINED")
    return 0 if yes else 1


def cmd_fn_constant(a):
    v = io.parse_variety_file(_read(a.variety))
    f = parse_rational_function(next(io._content_lines(_read(a.function))), v)
    res = fn_is_constant(f, a.budget)
    print(str(res))
    return 0 if res.kind == "constant" else 1


def cmd_sheaf_check(a):
    v = io.parse_variety_file(_read(a.variety))
    s = zariski_sheaf(v) if a.topology == "zariski" else cofinite_sheaf(v)
    opens = [_parse_open_line(ln, v) for ln in io._content_lines(_read(a.opens))]
    if not opens:
        raise CliError("opens file is empty")
    u, cover = opens[0], opens[1:]
    probes = [parse_rational_function(ln, v) for ln in io._content_lines(_read(a.probes))]
    rep = sheaf_axioms_check(s, u, cover, probes)
    print("PASS" if rep else "FAIL")
    print(f"CHECKS {rep.checks}")
    for msg in rep.failures:
        print(f"FAILURE {msg}")
    return 0 if rep else 1


def cmd_family(a):
    if a.family_cmd == "gen-elliptic":
        sys.stdout.write(curves.format_family("elliptic", curves.elliptic_family_gen(a.count)))
    elif a.family_cmd == "gen-super":
        sys.stdout.write(curves.format_family("super", curves.superelliptic_family_gen(a.count)))
    else:
        state = curves.appendix_A_sequence(a.count, prime_count=a.primes)
        text = curves.format_family("appendix", state)
        sys.stdout.write(text)
        print("PRIMES " + " ".join(map(str, state.prime_list)))
        print("A " + " ".join(map(str, state.A_sequence)))
    return 0


def cmd_encode(a):
    X = parse_oracle(_read(a.oracle))
    fam = ComponentFamily(a.family)
    certify(fam, min(a.bound, 8) if fam.kind == "appendix" else a.bound)
    st = build_AX(fam, X, a.mode)
    copy = CopyPresentation(st, a.seed, BLOCK)
    pts = []
    for label in range(label_budget(a.bound, BLOCK)):
        p = copy.point(label)
        if p is not None:
            pts.append((label, p))
    sents = []
    for n in range(a.sentences):
        s = sentence_from_index(n)
        if copy.truth(s):
            sents.append(s)
    sys.stdout.write(io.format_copy_dump(a.seed, a.mode, a.family, pts, sents))
    print(f"SENTENCES {len(sents)}")
    print(f"QUERIES {copy.queries}")
    return 0


class _DumpCopy:
    def __init__(self, family, points):
        self.family = family
        self._pts = dict(points)

    def point(self, label):
        return self._pts.get(label)


def cmd_decode(a):
    dump = io.parse_copy_dump(_read(a.dump))
    fam = ComponentFamily(dump["family"] or "elliptic")
    labels = [lbl for lbl, _ in dump["points"]]
    copy = _DumpCopy(fam, dump["points"])
    got = enumerate_components(copy, (max(labels) + 1) if labels else 0)
    print("RECOVERED " + _fmt_set(i for i in got if i <= a.bound))
    print("QUERIES 0")
    return 0


def cmd_roundtrip(a):
    X = parse_oracle(_read(a.oracle))
    audit = roundtrip(X, a.family, a.mode, a.seed, a.bound)
    for line in audit.lines():
        print(line)
    return 0 if audit.exact else 1


def cmd_scheme(a):
    from . import schemes
    if a.scheme_cmd == "build":
        X = parse_oracle(_read(a.oracle))
        spec = schemes.build_ZX_scheme(X, a.flavor)
        sys.stdout.write(schemes.format_scheme_dump(spec, a.count, a.oracle))
        print(f"QUERIES {X.query_count}")
        return 0
    text = _read(a.dump)
    flavor, ref = "integer", None
    for line in io._content_lines(text):
        if line.startswith("FLAVOR "):
            flavor = line.split()[1]
        elif line.startswith("ORACLE "):
            ref = line.split(None, 1)[1]
    if ref is None:
        raise CliError("scheme dump has no ORACLE reference")
    if not os.path.isabs(ref) and a.dump != "-":
        beside = os.path.join(os.path.dirname(a.dump), ref)
        if os.path.exists(beside) or not os.path.exists(ref):
            ref = beside
    X = parse_oracle(_read(ref))
    spec = schemes.build_ZX_scheme(X, flavor)
    asks = [a.ask] if a.ask else [ln[4:] for ln in io._content_lines(sys.stdin.read())
                                  if ln.startswith("ASK ")]
    answers = []
    for e in asks:
        answers.append(spec.member(_parse_scheme_element(e.strip(), flavor)))
        print("YES" if answers[-1] else "NO")
    print(f"QUERIES {X.query_count}")
    if a.ask:
        return 0 if answers[0] else 1
    return 0


def _parse_scheme_element(text, flavor):
    if flavor == "integer":
        try:
            return Fraction(text)
        except ValueError as exc:
            raise CliError(f"not a rational number: {text!r}") from exc
    num, _, den = text.partition(" / ")
    n = parse_polynomial(num, 2)
    d = parse_polynomial(den, 2) if den else parse_polynomial("1", 2)
    return (n, d)


# parser ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="geodeg", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)

    q = sub.add_parser("ideal-member", help="decide f in I (or f in rad I)")
    q.add_argument("--ideal", required=True)
    q.add_argument("--poly", required=True)
    q.add_argument("--radical", action="store_true")
    q.set_defaults(run=cmd_ideal_member)

    q = sub.add_parser("fn-defined", help="is f defined on V minus V(J)?")
    q.add_argument("--variety", required=True)
    q.add_argument("--function", required=True)
    q.add_argument("--complement", required=True)
    q.add_argument("--mode", choices=["denominator", "regular"], default="denominator")
    q.set_defaults(run=cmd_fn_defined)

    q = sub.add_parser("fn-constant", help="is f constant on V?")
    q.add_argument("--variety", required=True)
    q.add_argument("--function", required=True)
    q.add_argument("--budget", type=int, default=200)
    q.set_defaults(run=cmd_fn_constant)

    q = sub.add_parser("sheaf-check", help="sheaf axioms on a finite cover")
    q.add_argument("--variety", required=True)
    q.add_argument("--topology", choices=["zariski", "cofinite"], default="zariski")
    q.add_argument("--opens", required=True, help="first line the open, then the cover")
    q.add_argument("--probes", required=True)
    q.set_defaults(run=cmd_sheaf_check)

    q = sub.add_parser("family", help="generate a curve family")
    fs = q.add_subparsers(dest="family_cmd", required=True)
    for name in ("gen-elliptic", "gen-super", "gen-appendix"):
        g = fs.add_parser(name)
        g.add_argument("--count", type=int, required=True)
        if name == "gen-appendix":
            g.add_argument("--primes", type=int, default=None)
    q.set_defaults(run=cmd_family)

    def union_args(q):
        q.add_argument("--oracle", required=True)
        q.add_argument("--family", choices=["elliptic", "super", "appendix"], default="elliptic")
        q.add_argument("--seed", type=int, default=0)
        q.add_argument("--bound", type=int, default=64)

    q = sub.add_parser("encode", help="dump a renamed copy of A_X")
    union_args(q)
    q.add_argument("--mode", choices=["subspace", "disjoint"], default="subspace")
    q.add_argument("--sentences", type=int, default=0, help="diagram indices to serve")
    q.set_defaults(run=cmd_encode)

    q = sub.add_parser("decode", help="recover X from a copy dump")
    q.add_argument("--dump", required=True)
    q.add_argument("--bound", type=int, default=64)
    q.set_defaults(run=cmd_decode)

    q = sub.add_parser("roundtrip", help="encode, rename, decode")
    union_args(q)
    q.add_argument("--mode", choices=["subspace", "disjoint", "scheme"], default="subspace")
    q.set_defaults(run=cmd_roundtrip)

    q = sub.add_parser("scheme", help="valuation and linear-prime schemes")
    ss = q.add_subparsers(dest="scheme_cmd", required=True)
    b = ss.add_parser("build")
    b.add_argument("--oracle", required=True)
    b.add_argument("--flavor", choices=["integer", "linear"], default="integer")
    b.add_argument("--count", type=int, default=20)
    pr = ss.add_parser("probe")
    pr.add_argument("--dump", required=True)
    pr.add_argument("--ask", default=None, help="one element; otherwise ASK lines on stdin")
    q.set_defaults(run=cmd_scheme)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    try:
        return args.run(args)
    except RefusalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (CliError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
