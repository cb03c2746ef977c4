"""The golden CLI corpus: one entry per invocation, run from the repository root."""

import io
import os
import sys
from contextlib import redirect_stderr, redirect_stdout

from geodeg.cli import main

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
G = "tests/golden/"
EXPECTED = os.path.join(ROOT, "tests", "golden", "expected")

CASES = [
    ("member", ["ideal-member", "--ideal", G + "ideal.txt", "--poly", G + "member.txt"], None),
    ("nonmember", ["ideal-member", "--ideal", G + "ideal.txt", "--poly", G + "nonmember.txt"], None),
    ("radical", ["ideal-member", "--radical", "--ideal", G + "ideal.txt", "--poly",
                 G + "member.txt"], None),
    ("defined-inv-y", ["fn-defined", "--variety", G + "parabola.txt", "--function",
                       G + "inv_y.txt", "--complement", G + "complement_x.txt"], None),
    ("defined-regular", ["fn-defined", "--variety", G + "parabola.txt", "--function",
                         G + "y_over_x2.txt", "--complement", G + "complement_x.txt",
                         "--mode", "regular"], None),
    ("constant", ["fn-constant", "--variety", G + "parabola.txt", "--function",
                  G + "y_over_x2.txt"], None),
    ("nonconstant", ["fn-constant", "--variety", G + "parabola.txt", "--function",
                     G + "fn_x.txt", "--budget", "80"], None),
    ("sheaf-zariski", ["sheaf-check", "--variety", G + "parabola.txt", "--opens",
                       G + "opens.txt", "--probes", G + "probes.txt"], None),
    ("sheaf-cofinite", ["sheaf-check", "--variety", G + "parabola.txt", "--topology",
                        "cofinite", "--opens", G + "opens_cof.txt", "--probes",
                        G + "probes_cof.txt"], None),
    ("gen-elliptic", ["family", "gen-elliptic", "--count", "5"], None),
    ("gen-super", ["family", "gen-super", "--count", "4"], None),
    ("gen-appendix", ["family", "gen-appendix", "--count", "3", "--primes", "6"], None),
    ("encode-subspace", ["encode", "--oracle", G + "x257.txt", "--seed", "1", "--bound", "8",
                         "--sentences", "60"], None),
    ("encode-appendix", ["encode", "--oracle", G + "x13.txt", "--family", "appendix",
                         "--mode", "disjoint", "--bound", "4"], None),
    ("decode", ["decode", "--dump", G + "copy_x13.txt", "--bound", "4"], None),
    ("roundtrip-subspace", ["roundtrip", "--oracle", G + "x257.txt", "--seed", "3",
                            "--bound", "10"], None),
    ("roundtrip-disjoint", ["roundtrip", "--oracle", G + "evens.txt", "--family", "super",
                            "--mode", "disjoint", "--bound", "10"], None),
    ("roundtrip-scheme", ["roundtrip", "--oracle", G + "cof1.txt", "--mode", "scheme",
                          "--bound", "12"], None),
    ("roundtrip-empty", ["roundtrip", "--oracle", G + "empty.txt", "--bound", "6"], None),
    ("scheme-build", ["scheme", "build", "--oracle", G + "x13.txt", "--count", "8"], None),
    ("scheme-build-linear", ["scheme", "build", "--oracle", G + "x13.txt", "--flavor",
                             "linear", "--count", "8"], None),
    ("scheme-probe", ["scheme", "probe", "--dump", G + "scheme_x13.txt"], "asks_int.txt"),
    ("scheme-probe-linear", ["scheme", "probe", "--dump", G + "scheme_lin_x13.txt"],
     "asks_lin.txt"),
    ("scheme-ask", ["scheme", "probe", "--dump", G + "scheme_x13.txt", "--ask", "1/11"], None),
    ("bad-subcommand", ["frobnicate"], None),
    ("missing-file", ["ideal-member", "--ideal", G + "nope.txt", "--poly", G + "member.txt"],
     None),
]


def run_case(argv, stdin_name=None) -> str:
    """Run one invocation in-process; returns stdout, stderr and the exit status."""
    old_cwd, old_stdin = os.getcwd(), sys.stdin
    out, err = io.StringIO(), io.StringIO()
    try:
        os.chdir(ROOT)
        if stdin_name:
            sys.stdin = open(os.path.join(ROOT, "tests", "golden", stdin_name), encoding="utf-8")
        with redirect_stdout(out), redirect_stderr(err):
            code = main(argv)
    finally:
        if stdin_name:
            sys.stdin.close()
        sys.stdin = old_stdin
        os.chdir(old_cwd)
    return out.getvalue() + "".join(f"STDERR {ln}\n" for ln in err.getvalue().splitlines()) \
        + f"EXIT {code}\n"


def expected_path(name):
    return os.path.join(EXPECTED, name + ".out")
