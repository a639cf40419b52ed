"""Weighted stream automata (weighted automata over a one-letter alphabet)."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import islice

from .exactmath import QQ, DimensionMismatch, linear_outputs


@dataclass(frozen=True)
class WSA:
    """``output[s]`` is the final weight of state ``s`` and ``trans[s][t]`` the
    weight of the transition ``s -> t``.  The represented stream is the one
    of state ``start``."""

    output: tuple
    trans: tuple  # tuple of row tuples
    start: int = 0
    field: object = QQ

    def __init__(self, output, trans, start=0, field=QQ):
        output = tuple(field(x) for x in output)
        trans = tuple(tuple(field(x) for x in row) for row in trans)
        n = len(output)
        if len(trans) != n or any(len(row) != n for row in trans):
            raise DimensionMismatch(f"transition matrix must be {n}x{n}")
        if n == 0 or not 0 <= start < n:
            raise ValueError(f"start state {start} out of range for {n} states")
        object.__setattr__(self, "output", output)
        object.__setattr__(self, "trans", trans)
        object.__setattr__(self, "start", start)
        object.__setattr__(self, "field", field)

    @property
    def n_states(self) -> int:
        return len(self.output)


def wsa_from_table(i: int, sigma_prefix, cs, field=QQ) -> WSA:
    """The chain automaton 0 -> 1 -> ... -> i-1 with feedback ``cs`` out of
    the last state."""
    if i < 1 or len(sigma_prefix) != i or len(cs) != i:
        raise DimensionMismatch(f"need i >= 1 and {i} stream values and coefficients")
    zero, one = field.zero(), field.one()
    trans = [[zero] * i for _ in range(i)]
    for s in range(i - 1):
        trans[s][s + 1] = one
    for s in range(i):
        trans[i - 1][s] = field(cs[s])
    return WSA(sigma_prefix, trans, 0, field)


def wsa_stream(wsa: WSA, count: int) -> list:
    """``s_j = e_start . T^j . output``: the state row vector is pushed
    through the transitions once per step."""
    return list(islice(wsa_outputs(wsa), count))


def wsa_outputs(wsa: WSA):
    n = wsa.n_states
    # column t of the transition matrix, as a sparse row over source states
    step = [{s: wsa.trans[s][t] for s in range(n) if wsa.trans[s][t] != 0} for t in range(n)]
    out = {s: o for s, o in enumerate(wsa.output) if o != 0}
    field = wsa.field
    start = [field.one() if s == wsa.start else field.zero() for s in range(n)]
    return linear_outputs(step, start, field, out)


def wsa_stream_bruteforce(wsa: WSA, count: int) -> list:
    """Sum of the weights of all paths of each length; exponential, for tests."""
    field = wsa.field
    totals = [field.zero() for _ in range(count)]
    n = wsa.n_states

    def walk(state, length, cost):
        totals[length] = totals[length] + cost * wsa.output[state]
        if length + 1 == count:
            return
        for nxt in range(n):
            walk(nxt, length + 1, cost * wsa.trans[state][nxt])

    if count:
        walk(wsa.start, 0, field.one())
    return totals
