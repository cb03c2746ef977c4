"""Renamed copies of union structures."""

from __future__ import annotations

import random

from ..spaces import LRSentence
from ..unions import UnionStructure, bits


class CopyPresentation:
    """``B``: the structure with point labels permuted blockwise by a seed.

    Label ``L`` names point id ``sigma(L)``, where ``sigma`` shuffles each
    block ``[bB, (b+1)B)`` independently.  Points keep their intrinsic
    coordinates, which is all the decoders look at.  The copy consults its
    own fresh oracle, so its queries are not charged to a decoder.
    """

    def __init__(self, structure: UnionStructure, seed: int, block: int = 16):
        self.structure = structure
        self.seed = seed
        self.block = block
        self.family = structure.family
        self.oracle = structure.index_set.fresh()
        self._src = UnionStructure(structure.family, self.oracle, structure.mode)
        self._knows = self._src.turing_knows()
        self._perms = {}

    def _perm(self, b):
        if b not in self._perms:
            p = list(range(self.block))
            random.Random(f"{self.seed}:{b}").shuffle(p)
            inv = [0] * self.block
            for i, v in enumerate(p):
                inv[v] = i
            self._perms[b] = (p, inv)
        return self._perms[b]

    def to_pid(self, label: int) -> int:
        b, r = divmod(label, self.block)
        return b * self.block + self._perm(b)[0][r]

    def to_label(self, pid: int) -> int:
        b, r = divmod(pid, self.block)
        return b * self.block + self._perm(b)[1][r]

    def point(self, label: int):
        return self._src.point_of(self.to_pid(label), self._knows)

    def _open(self, oid, forward):
        if oid == 0:
            return 0
        f = self.to_pid if forward else self.to_label
        return 1 + sum(1 << f(b) for b in bits(oid - 1))

    def translate(self, s: LRSentence, to_original: bool = True) -> LRSentence:
        f = self.to_pid if to_original else self.to_label
        a = s.args
        if s.shape == "PT":
            return LRSentence("PT", (f(a[0]), self._open(a[1], to_original)))
        if s.shape == "SEC":
            return LRSentence("SEC", (a[0], self._open(a[1], to_original)))
        if s.shape == "RES":
            return LRSentence("RES", (self._open(a[0], to_original), self._open(a[1], to_original),
                                      a[2], a[3]))
        return LRSentence(s.shape, (self._open(a[0], to_original),) + a[1:])

    def truth(self, s: LRSentence) -> bool:
        return self._src.truth(self.translate(s), self._knows)

    @property
    def queries(self) -> int:
        return self.oracle.query_count
