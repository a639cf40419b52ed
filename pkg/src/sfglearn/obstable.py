"""Observation table with S = E = {0, ..., i-1}.

Because ``row(v)(e)`` only depends on ``v + e`` the table is stored as a
cache of stream values keyed by index; every distinct index is requested
from the membership callback at most once.
"""

from __future__ import annotations

from itertools import chain
from typing import Callable

from .exactmath import QQ, Matrix, solve_linear

LINEAR = "linear"
DOUBLING = "doubling"


class OracleUnavailable(RuntimeError):
    pass


class ObservationTable:
    def __init__(self, membership: Callable[[int], object], field=QQ, size: int = 1):
        if size < 1:
            raise ValueError("table size must be at least 1")
        self.membership = membership
        self.field = field
        self.size = size
        self.cache: dict[int, object] = {}
        self.query_log: set[int] = set()

    def value(self, index: int):
        if index not in self.cache:
            try:
                answer = self.membership(index)
            except Exception as exc:
                raise OracleUnavailable(f"membership query {index} failed: {exc}") from exc
            self.cache[index] = self.field(answer)
            self.query_log.add(index)
        return self.cache[index]

    def row(self, v: int, e: int):
        if not (0 <= v < self.size and 0 <= e < self.size):
            raise IndexError(f"cell ({v}, {e}) outside a table of size {self.size}")
        return self.value(v + e)

    def srow(self, e: int):
        if not 0 <= e < self.size:
            raise IndexError(f"column {e} outside a table of size {self.size}")
        return self.value(self.size + e)

    def rows(self) -> Matrix:
        i = self.size
        values = [self.value(k) for k in range(2 * i - 1)]
        return Matrix(i, i, tuple(chain.from_iterable(values[v:v + i] for v in range(i))), self.field)

    def last_row(self) -> list:
        return [self.srow(e) for e in range(self.size)]

    def fill(self):
        for k in range(2 * self.size):
            self.value(k)

    def coefficient_function(self, ops=None) -> tuple | None:
        """Coefficients expressing srow in terms of the rows, or ``None`` if
        the table is not closed."""
        # a Hankel block is symmetric, so solving against it directly is
        # the same as solving against its transpose
        return solve_linear(self.rows(), self.last_row(), ops)

    def expand(self, strategy: str = LINEAR) -> ObservationTable:
        if strategy == LINEAR:
            self.size += 1
        elif strategy == DOUBLING:
            self.size *= 2
        else:
            raise ValueError(f"unknown growth strategy {strategy!r}")
        return self

    def first_column(self) -> list:
        return [self.row(v, 0) for v in range(self.size)]

    def render(self) -> str:
        fmt = self.field.format
        lines = []
        cells = [[fmt(self.row(v, e)) for e in range(self.size)] for v in range(self.size)]
        cells.append([fmt(x) for x in self.last_row()])
        width = max(len(c) for r in cells for c in r)
        lines.append("      " + " ".join(f"{e:>{width}}" for e in range(self.size)))
        for v, r in enumerate(cells):
            label = "srow" if v == self.size else f"{v:>4}"
            lines.append(f"{label:>4}  " + " ".join(f"{c:>{width}}" for c in r))
        return "\n".join(lines)
