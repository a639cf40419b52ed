"""The learning loop: close the table, build a hypothesis, ask the teacher,
grow the table on rejection."""

from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass, field

from .automata import WSA, wsa_from_table, wsa_stream
from .flowgraph import CSFG, SingularSystem, csfg_from_table, csfg_stream
from .obstable import DOUBLING, LINEAR, ObservationTable
from .oracle import BOUNDED, EXACT, QueryStats, Teacher

log = logging.getLogger(__name__)


class SizeCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class LearnerConfig:
    growth: str = LINEAR
    equivalence: str = EXACT
    bound: int = 64  # positions compared in bounded mode
    max_size: int = 4096

    def __post_init__(self):
        if self.growth not in (LINEAR, DOUBLING):
            raise ValueError(f"unknown growth strategy {self.growth!r}")
        if self.equivalence not in (EXACT, BOUNDED):
            raise ValueError(f"unknown equivalence mode {self.equivalence!r}")
        if self.bound < 1 or self.max_size < 1:
            raise ValueError("bound and max_size must be positive")


@dataclass
class Iteration:
    size: int
    closed: bool
    cs: tuple | None = None
    verdict: bool | None = None  # None when no equivalence query was made
    singular: bool = False


@dataclass
class LearnResult:
    wsa: WSA
    csfg: CSFG
    order: int
    stats: QueryStats
    trace: list[Iteration] = field(default_factory=list)
    registers: tuple = ()


def learn(teacher: Teacher, config: LearnerConfig = LearnerConfig()) -> LearnResult:
    if config.equivalence == EXACT and teacher.order_bound() is None:
        raise ValueError("exact equivalence needs a teacher with a known order bound")
    stats = teacher.stats
    fld = teacher.field
    table = ObservationTable(teacher.membership, fld)
    trace: list[Iteration] = []

    def grow():
        table.expand(config.growth)
        if table.size > config.max_size:
            raise SizeCapExceeded(f"table size {table.size} exceeds the cap of {config.max_size}")

    while True:
        while True:
            stats.closedness_checks += 1
            stats.solver_calls += 1
            cs = table.coefficient_function(stats)
            if cs is not None:
                break
            trace.append(Iteration(table.size, False))
            log.debug("size %d not closed", table.size)
            grow()

        i = table.size
        sigma = table.first_column()
        step = Iteration(i, True, cs)
        trace.append(step)
        try:
            stats.solver_calls += 1
            graph = csfg_from_table(i, sigma, cs, fld, stats)
        except SingularSystem:
            # a degenerate hypothesis is as good as a rejected one
            step.singular = True
            log.debug("size %d: register system has no solution", i)
            grow()
            continue

        step.verdict = teacher.equivalence(graph, config.equivalence, config.bound)
        log.debug("size %d closed, cs=%s, verdict=%s", i, cs, step.verdict)
        if step.verdict:
            # the automaton comes for free from the same table
            wsa = wsa_from_table(i, sigma, cs, fld)
            _check_agreement(wsa, graph, i)
            return LearnResult(wsa, graph, i, stats, trace, graph.initial_state)
        grow()


def _check_agreement(wsa, graph, i):
    n = 2 * i + 8
    if wsa_stream(wsa, n) != csfg_stream(graph, n):
        raise AssertionError("automaton and flow graph hypotheses disagree")


CSV_FIELDS = ["row", "size", "closed", "verdict", "singular"]


def learn_trace_csv(result: LearnResult) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS + list(result.stats.as_dict()))
    blanks = [""] * len(result.stats.as_dict())
    for k, it in enumerate(result.trace):
        verdict = "" if it.verdict is None else ("yes" if it.verdict else "no")
        w.writerow([k, it.size, int(it.closed), verdict, int(it.singular)] + blanks)
    w.writerow(["summary", result.order, "", "", ""] + list(result.stats.as_dict().values()))
    return buf.getvalue()
