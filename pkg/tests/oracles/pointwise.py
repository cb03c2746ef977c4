"""Pointwise verdicts on enumerated rational points.

These only evaluate polynomials at points; no ideal arithmetic.
"""


def _zero_set(polys, p):
    return all(g.evaluate(p) == 0 for g in polys)


def defined_pointwise(num, den, complement, points):
    """The stored denominator is nonzero at every point of ``U``."""
    return all(den.evaluate(p) != 0 for p in points if not _zero_set(complement, p))


def vanishes_pointwise(num, den, closed, points):
    on_w = [p for p in points if _zero_set(closed, p)]
    live = [p for p in on_w if den.evaluate(p) != 0]
    if on_w and not live:
        return "nowhere-defined"
    return all(num.evaluate(p) == 0 for p in live)


def constant_pointwise(num, den, points):
    vals = {num.evaluate(p) / den.evaluate(p) for p in points if den.evaluate(p) != 0}
    if len(vals) == 1:
        return ("constant", vals.pop())
    return ("nonconstant", None) if vals else ("inconclusive", None)
