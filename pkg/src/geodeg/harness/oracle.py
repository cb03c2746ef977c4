"""Sets of naturals behind the encodings, queried through a logged interface."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

RULES: dict[str, Callable[[int], bool]] = {
    "all": lambda n: n >= 1,
    "evens": lambda n: n >= 1 and n % 2 == 0,
    "odds": lambda n: n >= 1 and n % 2 == 1,
    "squares": lambda n: n >= 1 and int(n ** 0.5 + 0.5) ** 2 == n,
}


class OracleError(ValueError):
    pass


class OracleModeError(OracleError):
    """A membership query was issued by a run restricted to enumerations."""


@dataclass(frozen=True)
class LogEntry:
    kind: str  # "query" or "enum"
    n: int
    answer: bool


class OracleSet:
    """A subset of the positive integers.

    ``backing`` is ``"finite"`` (explicit members), ``"cofinite"`` (explicit
    complement) or ``"rule"`` (a named deterministic predicate).  Every
    membership query and every enumerated element is appended to ``log``.
    """

    def __init__(self, backing: str, members=(), rule: str | None = None,
                 enumeration_only: bool = False):
        if backing not in ("finite", "cofinite", "rule"):
            raise OracleError(f"unknown oracle backing {backing!r}")
        members = [int(m) for m in members]
        if any(int(m) < 1 for m in members):
            raise OracleError("oracle sets live in the positive integers")
        self.backing = backing
        self.members = frozenset(int(m) for m in members)
        self.rule = rule
        if backing == "rule":
            if rule not in RULES:
                raise OracleError(f"unknown rule {rule!r}")
            self._pred = RULES[rule]
        elif backing == "finite":
            self._pred = self.members.__contains__
        else:
            comp = self.members
            self._pred = lambda n: n >= 1 and n not in comp
        self.enumeration_only = enumeration_only
        self.log: list[LogEntry] = []

    @classmethod
    def finite(cls, members):
        return cls("finite", members)

    @classmethod
    def cofinite(cls, complement):
        return cls("cofinite", complement)

    @classmethod
    def from_rule(cls, name):
        return cls("rule", rule=name)

    @property
    def is_infinite(self) -> bool:
        return self.backing != "finite"

    @property
    def cardinality(self) -> int | None:
        return len(self.members) if self.backing == "finite" else None

    def query(self, n: int) -> bool:
        if self.enumeration_only:
            raise OracleModeError("membership queries are disabled for this run")
        ans = bool(self._pred(n))
        self.log.append(LogEntry("query", n, ans))
        return ans

    __call__ = query

    def enumerate_members(self) -> Iterator[int]:
        """Members in increasing order; finite sets stop, others run forever."""
        if self.backing == "finite":
            for n in sorted(self.members):
                self.log.append(LogEntry("enum", n, True))
                yield n
            return
        n = 0
        while True:
            n += 1
            if self._pred(n):
                self.log.append(LogEntry("enum", n, True))
                yield n

    def restricted(self) -> "OracleSet":
        """A fresh copy that only supports enumeration."""
        return OracleSet(self.backing, self.members, self.rule, enumeration_only=True)

    def fresh(self) -> "OracleSet":
        return OracleSet(self.backing, self.members, self.rule, self.enumeration_only)

    @property
    def query_count(self) -> int:
        return sum(1 for e in self.log if e.kind == "query")

    @property
    def negative_queries(self) -> int:
        return sum(1 for e in self.log if e.kind == "query" and not e.answer)

    def prefix(self, bound: int) -> set:
        """Members up to ``bound`` computed without touching the log."""
        return {n for n in range(1, bound + 1) if self._pred(n)}

    def __repr__(self):
        if self.backing == "rule":
            return f"OracleSet(rule={self.rule})"
        return f"OracleSet({self.backing}, {sorted(self.members)})"


def oracle_query(o: OracleSet, n: int) -> bool:
    return o.query(n)


def format_oracle(o: OracleSet) -> str:
    if o.backing == "finite":
        return "finite\n" + "".join(f"{m}\n" for m in sorted(o.members))
    if o.backing == "cofinite":
        return "infinite\n" + "".join(f"complement {m}\n" for m in sorted(o.members))
    return f"infinite\nrule {o.rule}\n"


def parse_oracle(text: str) -> OracleSet:
    """``finite`` or ``infinite`` header, then members one per line.

    Infinite sets are written as ``complement <n>`` lines (cofinite) or a
    single ``rule <name>`` line.
    """
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or lines[0] not in ("finite", "infinite"):
        raise OracleError("oracle file must start with 'finite' or 'infinite'")
    body = lines[1:]
    try:
        if lines[0] == "finite":
            return OracleSet.finite(int(x) for x in body)
        if len(body) == 1 and body[0].startswith("rule "):
            return OracleSet.from_rule(body[0].split(None, 1)[1].strip())
        comp = []
        for ln in body:
            tag, _, val = ln.partition(" ")
            if tag != "complement":
                raise OracleError(f"unexpected line in infinite oracle: {ln!r}")
            comp.append(int(val))
        return OracleSet.cofinite(comp)
    except ValueError as exc:
        if isinstance(exc, OracleError):
            raise
        raise OracleError(f"bad oracle file: {exc}") from exc
