"""Teachers answering membership and equivalence queries about a hidden stream.

Exact equivalence relies on the fact that the difference of two streams
generated by automata (or recurrences) of sizes ``a`` and ``b`` satisfies a
linear recurrence of order at most ``a + b``; if its first ``a + b`` values
vanish it is the zero stream.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, fields

from .automata import WSA, wsa_outputs, wsa_stream
from .exactmath import QQ
from .flowgraph import CSFG, csfg_outputs, csfg_stream
from .streams import (
    PrefixTooShort,
    RationalStreamSpec,
    RecurrenceSpec,
    rational_expand,
    recurrence_expand,
)

log = logging.getLogger(__name__)

EXACT = "exact"
BOUNDED = "bounded"


class IndexBeyondPrefix(IndexError):
    pass


@dataclass
class QueryStats:
    membership_queries: int = 0
    max_index: int = -1
    equivalence_queries: int = 0
    closedness_checks: int = 0
    solver_calls: int = 0
    field_ops: int = 0

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def hypothesis_size(hyp) -> int:
    if isinstance(hyp, WSA):
        return hyp.n_states
    return len(hyp.registers)


def hypothesis_stream(hyp, count: int) -> list:
    if isinstance(hyp, WSA):
        return wsa_stream(hyp, count)
    return csfg_stream(hyp, count)


def hypothesis_outputs(hyp):
    return wsa_outputs(hyp) if isinstance(hyp, WSA) else csfg_outputs(hyp)


class Teacher:
    """Base teacher; subclasses supply ``_expand(count)`` and ``order_bound``.

    ``membership`` and ``equivalence`` update ``stats``.  The prefix cache
    is shared between both query kinds, but only membership queries count
    towards ``membership_queries``.
    """

    field = QQ

    def __init__(self):
        self.stats = QueryStats()
        self._asked: set[int] = set()
        self._prefix: list = []

    def _expand(self, count: int) -> list:
        raise NotImplementedError

    def order_bound(self) -> int | None:
        raise NotImplementedError

    def prefix(self, count: int) -> list:
        if count > len(self._prefix):
            self._prefix = self._expand(max(count, 2 * len(self._prefix)))
        return self._prefix[:count]

    def membership(self, n: int):
        if n < 0:
            raise IndexError(f"negative stream index {n}")
        value = self.prefix(n + 1)[n]
        if n not in self._asked:
            self._asked.add(n)
            self.stats.membership_queries += 1
            self.stats.max_index = max(self.stats.max_index, n)
        return value

    def equivalence(self, hypothesis, mode: str = EXACT, bound: int = 64) -> bool:
        """Yes/no verdict on ``hypothesis``.

        In exact mode the comparison length is ``hypothesis size + order
        bound``, which decides equality.  Bounded mode compares ``bound``
        positions and is only a semi-decision.
        """
        self.stats.equivalence_queries += 1
        if mode == EXACT:
            N = self.order_bound()
            if N is None:
                raise ValueError("exact equivalence needs an order bound on the hidden stream")
            length = hypothesis_size(hypothesis) + N
        elif mode == BOUNDED:
            if bound < 1:
                raise ValueError("bounded equivalence needs K >= 1")
            length = bound
        else:
            raise ValueError(f"unknown equivalence mode {mode!r}")
        ours = self.prefix(length)
        # lazily generated, so a wrong hypothesis is only run to its first
        # mismatch
        theirs = hypothesis_outputs(hypothesis)
        for k, (a, b) in enumerate(zip(ours, theirs)):
            if a != b:
                log.debug("equivalence: first mismatch at index %d (%s vs %s)", k, a, b)
                return False
        return True


class RationalFunctionTeacher(Teacher):
    def __init__(self, spec: RationalStreamSpec):
        super().__init__()
        self.spec = spec
        self.field = spec.field

    def _expand(self, count):
        return rational_expand(self.spec, count)

    def order_bound(self):
        # p/q satisfies q's recurrence from index deg p + 1 on
        return max(self.spec.q.degree, self.spec.p.degree + 1, 0)


class RecurrenceTeacher(Teacher):
    def __init__(self, spec: RecurrenceSpec):
        super().__init__()
        self.spec = spec
        self.field = spec.field

    def _expand(self, count):
        return recurrence_expand(self.spec, count)

    def order_bound(self):
        return self.spec.order


class WSATeacher(Teacher):
    def __init__(self, wsa: WSA):
        super().__init__()
        self.wsa = wsa
        self.field = wsa.field

    def _expand(self, count):
        return wsa_stream(self.wsa, count)

    def order_bound(self):
        return self.wsa.n_states


class CSFGTeacher(Teacher):
    def __init__(self, graph: CSFG):
        super().__init__()
        self.graph = graph
        self.field = graph.field

    def _expand(self, count):
        return csfg_stream(self.graph, count)

    def order_bound(self):
        return len(self.graph.registers)


class PrefixTeacher(Teacher):
    """A finite list of observed values, optionally with a declared order bound."""

    def __init__(self, values, order_bound: int | None = None, field=QQ):
        super().__init__()
        self.values = [field(x) for x in values]
        self.declared = order_bound
        self.field = field

    def _expand(self, count):
        return list(self.values)

    def prefix(self, count):
        if count > len(self.values):
            raise PrefixTooShort(f"need {count} values, only {len(self.values)} recorded")
        return self.values[:count]

    def membership(self, n):
        if n >= len(self.values):
            raise IndexBeyondPrefix(f"index {n} beyond the {len(self.values)} recorded values")
        return super().membership(n)

    def order_bound(self):
        return self.declared
