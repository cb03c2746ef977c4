"""Serving the atomic diagram of a union structure.

Turing mode answers any sentence with logged oracle queries.  Enumeration
mode never asks the oracle; it reads an enumeration of the index set and
emits sentences as soon as the part seen so far makes them true.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..spaces import LRSentence, parse_sentence
from ..unions import UnionStructure, sentence_from_index


def query_bound(size: int) -> int:
    """Oracle queries allowed for one sentence of ``size`` characters.

    An open id of ``s`` digits has fewer than ``3.33 s + 1`` set bits, each
    costing at most one query, and a function of ``s`` digits vanishes on at
    most ``sqrt(7 s)`` fibres.  ``50 s + 2`` covers every shape.
    """
    return 50 * size + 2


@dataclass
class Served:
    truth: bool
    queries: int


@dataclass
class DiagramServer:
    structure: UnionStructure
    spent: list = field(default_factory=list)

    def serve(self, sentence) -> Served:
        if isinstance(sentence, str):
            sentence = parse_sentence(sentence)
        oracle = self.structure.index_set
        before = oracle.query_count
        truth = self.structure.truth(sentence, self.structure.turing_knows())
        q = oracle.query_count - before
        self.spent.append((sentence, q))
        return Served(truth, q)

    def within_bound(self) -> bool:
        return all(q <= query_bound(s.size) for s, q in self.spent)


def diagram_serve(server: DiagramServer, sentence) -> Served:
    return server.serve(sentence)


def enumerate_diagram(structure: UnionStructure, max_index: int, members=None,
                      max_stages: int | None = None):
    """True sentences of index below ``max_index``, read off an enumeration of ``X``.

    ``members`` is any iterable enumerating the index set; by default the
    oracle's own enumeration (restricted, so a membership query would raise).
    Yields ``(stage, sentence)``; ``stage`` counts members consumed when the
    sentence was emitted.  ``max_stages`` stops after that many members,
    which is how an infinite enumeration is cut short.
    """
    if members is None:
        members = structure.index_set.restricted().enumerate_members()
    known: set = set()
    waiting: dict = {}
    emitted: set = set()

    def attempt(n):
        asked = []

        def knows(i):
            ok = i in known
            if not ok:
                asked.append(i)
            return ok
        s = sentence_from_index(n)
        if structure.truth(s, knows):
            emitted.add(n)
            return s
        for i in set(asked):
            waiting.setdefault(i, []).append(n)
        return None

    stage = 0
    for n in range(max_index):
        s = attempt(n)
        if s is not None:
            yield stage, s
    for m in members:
        if max_stages is not None and stage >= max_stages:
            return
        stage += 1
        if m in known:
            continue
        known.add(m)
        retry = sorted(set(waiting.pop(m, ())) - emitted)
        for n in retry:
            if n in emitted:
                continue
            s = attempt(n)
            if s is not None:
                yield stage, s
