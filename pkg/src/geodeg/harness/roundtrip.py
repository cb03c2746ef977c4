"""Encode a set into a structure, rename it, decode it back."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..unions import (ComponentFamily, build_AX, enumerate_components, label_budget,
                      rigidity_certify)
from .copies import CopyPresentation
from .oracle import OracleSet

BLOCK = 16


class RefusalError(RuntimeError):
    """The family has no rigidity certificate, so decoding would be unsound."""


@dataclass
class Audit:
    mode: str
    recovered: list
    encode_queries: int
    decode_queries: int
    expected: list | None = None
    details: dict = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return self.expected is None or self.recovered == self.expected

    def lines(self) -> list:
        return [f"QUERIES {self.encode_queries + self.decode_queries}",
                f"ENCODE-QUERIES {self.encode_queries}",
                f"DECODE-QUERIES {self.decode_queries}",
                "RECOVERED {" + ",".join(map(str, self.recovered)) + "}"]


def certify(family: ComponentFamily, prefix: int):
    rep = rigidity_certify(family, prefix)
    if not rep:
        raise RefusalError(f"no rigidity certificate for {family.kind}: {rep.failures}")
    return rep


def roundtrip(X: OracleSet, family: str | ComponentFamily, mode: str = "subspace",
              seed: int = 0, bound: int = 64) -> Audit:
    """Recover ``X ∩ [1, bound]`` from a renamed copy.

    ``mode`` is ``subspace`` or ``disjoint`` for unions, or ``scheme`` for
    the valuation scheme (``family`` is then ignored).
    """
    if mode == "scheme":
        from ..schemes import scheme_roundtrip
        return scheme_roundtrip(X, seed=seed, bound=bound)
    fam = family if isinstance(family, ComponentFamily) else ComponentFamily(family)
    if fam.kind == "appendix":
        from ..unions import APPENDIX_LIMIT
        bound = min(bound, APPENDIX_LIMIT)
    certify(fam, bound)
    A = build_AX(fam, X.fresh(), mode)
    copy = CopyPresentation(A, seed, BLOCK)
    got = sorted(i for i in enumerate_components(copy, label_budget(bound, BLOCK)) if i <= bound)
    expected = sorted(X.prefix(bound))
    return Audit(mode, got, copy.queries, 0, expected)
