"""Closed signal flow graphs: adders, copiers, multipliers and registers
wired into a graph with a single output and no inputs.

Semantics are synchronous.  On every tick each register emits its stored
value, values flow through the register-free part of the graph (which must
be acyclic), the value reaching the output vertex is the tick's output, and
each register then latches the value arriving on its incoming edge.
"""

from __future__ import annotations

import heapq
import operator
from dataclasses import dataclass
from functools import cached_property, lru_cache, partial, reduce
from itertools import islice
from typing import NamedTuple

from .automata import WSA
from .exactmath import QQ, DimensionMismatch, Matrix, linear_outputs, observation_matrix, solve_linear

ADDER = "adder"
COPIER = "copier"
MULTIPLIER = "multiplier"
REGISTER = "register"
OUTPUT = "output"
KINDS = (ADDER, COPIER, MULTIPLIER, REGISTER, OUTPUT)

# cached analyses that depend on the wiring only, not on labels
_STRUCTURE = ("preds", "succs", "evaluation_order", "registers", "schedule")


class InvalidGraph(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class SingularSystem(ArithmeticError):
    pass


class Vertex(NamedTuple):
    id: str
    kind: str
    value: object = None  # multiplier label or register initial value


@dataclass(frozen=True)
class Violation:
    vertex: str | None
    rule: str
    detail: str = ""

    def __str__(self):
        where = f"{self.vertex}: " if self.vertex is not None else ""
        return f"{where}{self.rule}" + (f" ({self.detail})" if self.detail else "")


@dataclass(frozen=True)
class CSFG:
    vertices: tuple
    edges: tuple
    field: object = QQ

    def __init__(self, vertices, edges, field=QQ):
        vs = []
        for v in vertices:
            value = None if v.value is None else field(v.value)
            if value is not v.value or type(v.id) is not str:
                v = Vertex(str(v.id), v.kind, value)
            vs.append(v)
        object.__setattr__(self, "vertices", tuple(vs))
        object.__setattr__(self, "edges", tuple((str(a), str(b)) for a, b in edges))
        object.__setattr__(self, "field", field)

    @cached_property
    def by_id(self) -> dict:
        return {v.id: v for v in self.vertices}

    @cached_property
    def preds(self) -> dict:
        out = {v.id: [] for v in self.vertices}
        for a, b in self.edges:
            out.setdefault(b, []).append(a)
        return out

    @cached_property
    def succs(self) -> dict:
        out = {v.id: [] for v in self.vertices}
        for a, b in self.edges:
            out.setdefault(a, []).append(b)
        return out

    @cached_property
    def registers(self) -> tuple:
        return tuple(v.id for v in self.vertices if v.kind == REGISTER)

    @property
    def initial_state(self) -> tuple:
        return tuple(v.value for v in self.vertices if v.kind == REGISTER)

    def census(self) -> dict:
        counts = {k: 0 for k in KINDS}
        for v in self.vertices:
            counts[v.kind] = counts.get(v.kind, 0) + 1
        return counts

    def with_registers(self, values) -> CSFG:
        values = [None if x is None else self.field(x) for x in values]
        if len(values) != len(self.registers):
            raise DimensionMismatch(f"{len(values)} values for {len(self.registers)} registers")
        it = iter(values)
        vs = [Vertex(v.id, v.kind, next(it)) if v.kind == REGISTER else v for v in self.vertices]
        keep = _STRUCTURE + ("linear_forms",)
        if all(x is not None for x in values):
            keep += ("problems",)
        return self._derive(vs, keep)

    def _derive(self, vertices, keep) -> CSFG:
        # same wiring, new already-coerced labels; ``keep`` lists the cached
        # analyses that stay valid
        g = object.__new__(CSFG)
        object.__setattr__(g, "vertices", tuple(vertices))
        object.__setattr__(g, "edges", self.edges)
        object.__setattr__(g, "field", self.field)
        for key in keep:
            if key in self.__dict__:
                g.__dict__[key] = self.__dict__[key]
        return g

    @cached_property
    def problems(self) -> tuple:
        return tuple(validate(self))

    @cached_property
    def evaluation_order(self) -> list[str]:
        """Topological order of the graph with register inputs cut; ties
        broken by vertex id."""
        indeg = {v.id: 0 for v in self.vertices}
        for a, b in self.edges:
            if self.by_id[b].kind != REGISTER:
                indeg[b] += 1
        ready = [vid for vid, d in indeg.items() if d == 0]
        heapq.heapify(ready)
        order = []
        while ready:
            vid = heapq.heappop(ready)
            order.append(vid)
            for b in self.succs[vid]:
                if self.by_id[b].kind == REGISTER:
                    continue
                indeg[b] -= 1
                if indeg[b] == 0:
                    heapq.heappush(ready, b)
        if len(order) != len(self.vertices):
            raise InvalidGraph([Violation(None, "registerless cycle")])
        return order

    @cached_property
    def schedule(self) -> list[tuple]:
        """``(id, kind, predecessors, slot)`` in evaluation order.  The slot of
        a register is its index in ``registers``, that of any other vertex
        its position in ``vertices``."""
        regs = {rid: k for k, rid in enumerate(self.registers)}
        pos = {v.id: k for k, v in enumerate(self.vertices)}
        out = []
        for vid in self.evaluation_order:
            kind = self.by_id[vid].kind
            slot = regs[vid] if kind == REGISTER else pos[vid]
            out.append((vid, kind, tuple(self.preds[vid]), slot))
        return out

    @cached_property
    def linear_forms(self) -> tuple[dict, list[dict]]:
        return _compile(self)


def validate(g: CSFG) -> list[Violation]:
    """All rule violations of ``g``; an empty list means the graph is valid."""
    problems = []
    ids = [v.id for v in g.vertices]
    if len(set(ids)) != len(ids):
        dupes = sorted({i for i in ids if ids.count(i) > 1})
        problems += [Violation(d, "duplicate id") for d in dupes]
    known = set(ids)
    for a, b in g.edges:
        for end in (a, b):
            if end not in known:
                problems.append(Violation(end, "unknown vertex", f"edge {a}->{b}"))
    if problems:
        return problems

    n_out = 0
    for v in g.vertices:
        fan_in, fan_out = len(g.preds[v.id]), len(g.succs[v.id])
        if v.kind == ADDER:
            if fan_in < 2:
                problems.append(Violation(v.id, "adder fan-in", f"in-degree {fan_in}, need >= 2"))
            if fan_out != 1:
                problems.append(Violation(v.id, "adder fan-out", f"out-degree {fan_out}, need 1"))
        elif v.kind == COPIER:
            if fan_in != 1:
                problems.append(Violation(v.id, "copier fan-in", f"in-degree {fan_in}, need 1"))
            if fan_out < 2:
                problems.append(Violation(v.id, "copier fan-out", f"out-degree {fan_out}, need >= 2"))
        elif v.kind in (MULTIPLIER, REGISTER):
            if fan_in != 1 or fan_out != 1:
                problems.append(Violation(v.id, f"{v.kind} degree", f"in {fan_in}, out {fan_out}, need 1 and 1"))
            if v.value is None:
                problems.append(Violation(v.id, f"{v.kind} label", "missing value"))
        elif v.kind == OUTPUT:
            n_out += 1
            if fan_in != 1 or fan_out != 0:
                problems.append(Violation(v.id, "output degree", f"in {fan_in}, out {fan_out}, need 1 and 0"))
        else:
            problems.append(Violation(v.id, "unknown kind", repr(v.kind)))
    if n_out != 1:
        problems.append(Violation(None, "output count", f"{n_out} output vertices, need exactly 1"))
    if not g.registers:
        problems.append(Violation(None, "no register"))

    # every cycle must pass through a register: drop registers, check acyclic
    residual = {v.id for v in g.vertices if v.kind != REGISTER}
    indeg = {vid: 0 for vid in residual}
    for a, b in g.edges:
        if a in residual and b in residual:
            indeg[b] += 1
    stack = [vid for vid, d in indeg.items() if d == 0]
    seen = 0
    while stack:
        vid = stack.pop()
        seen += 1
        for b in g.succs[vid]:
            if b in residual:
                indeg[b] -= 1
                if indeg[b] == 0:
                    stack.append(b)
    if seen != len(residual):
        stuck = sorted(vid for vid, d in indeg.items() if d > 0)
        problems.append(Violation(stuck[0], "registerless cycle", "through " + ", ".join(stuck)))
    return problems


def _propagate(g: CSFG, state, total, scale):
    values = {}
    output = None
    vertices = g.vertices
    for vid, kind, preds, slot in g.schedule:
        if kind == REGISTER:
            values[vid] = state[slot]
        elif kind == MULTIPLIER:
            values[vid] = scale(vertices[slot].value, values[preds[0]])
        elif kind == ADDER:
            values[vid] = total([values[p] for p in preds])
        else:
            values[vid] = values[preds[0]]
            if kind == OUTPUT:
                output = values[vid]
    nxt = [values[g.preds[rid][0]] for rid in g.registers]
    return output, nxt


def csfg_tick(g: CSFG, state) -> tuple:
    """One synchronous step: returns ``(output, next_state)``."""
    if g.problems:
        raise InvalidGraph(g.problems)
    if len(state) != len(g.registers):
        raise DimensionMismatch(f"{len(state)} values for {len(g.registers)} registers")
    return _propagate(g, [g.field(x) for x in state], partial(reduce, operator.add), operator.mul)


def csfg_stream(g: CSFG, count: int, state=None) -> list:
    """Outputs of ``count`` ticks from the stored (or given) register values.

    Runs on the compiled linear form of the graph, which agrees with
    repeated ``csfg_tick`` by linearity of every generator.
    """
    return list(islice(csfg_outputs(g, state), count))


def csfg_outputs(g: CSFG, state=None):
    """Lazy, endless version of ``csfg_stream``."""
    if g.problems:
        raise InvalidGraph(g.problems)
    out_form, step = compiled(g)
    state = g.initial_state if state is None else state
    if len(state) != len(step):
        raise DimensionMismatch(f"{len(state)} values for {len(step)} registers")
    return linear_outputs(step, state, g.field, out_form)


def compiled(g: CSFG) -> tuple[dict, list[dict]]:
    """Symbolic pass over the graph: the output and every register input as a
    sparse linear form ``{register index: coefficient}`` in the current
    register values.  Cached on the graph."""
    return g.linear_forms


def _compile(g: CSFG) -> tuple[dict, list[dict]]:
    field = g.field

    def total(forms):
        out = dict(forms[0])
        for form in forms[1:]:
            for k, c in form.items():
                v = out.get(k)
                v = c if v is None else v + c
                if v == 0:
                    out.pop(k, None)
                else:
                    out[k] = v
        return out

    def scale(c, a):
        if c == 0:
            return {}
        return {k: c * v for k, v in a.items()}

    units = [{k: field.one()} for k in range(len(g.registers))]
    return _propagate(g, units, total, scale)


def _table_graph(i: int, sigma_prefix, cs, registers, field) -> CSFG:
    """The hypothesis graph for a closed table of size ``i``; labels must
    already be field elements."""
    tpl = _table_wiring(i, field)
    labels = iter([*registers, *sigma_prefix, *cs])
    vs = [v if v.value is None else Vertex(v.id, v.kind, next(labels)) for v in tpl.vertices]
    return tpl._derive(vs, _STRUCTURE + ("problems",))


@lru_cache(maxsize=512)
def _table_wiring(i: int, field) -> CSFG:
    """The wiring shared by every table graph of size ``i``, labelled with
    ones and with its structural analyses precomputed.

    ``n_j`` feeds the adder in front of ``r_j``, which is ``a_{j-1}``; for
    ``i == 1`` there is no ``a_final`` and ``m_0`` drives the output.
    """
    one = field.one()
    V = []
    E = []
    for j in range(i):
        V.append(Vertex(f"r{j}", REGISTER, one))
    for j in range(i):
        V.append(Vertex(f"q{j}", COPIER))
    for j in range(i - 1):
        V.append(Vertex(f"a{j}", ADDER))
    if i > 1:
        V.append(Vertex("a_final", ADDER))
    for j in range(i):
        V.append(Vertex(f"m{j}", MULTIPLIER, one))
    for j in range(i):
        V.append(Vertex(f"n{j}", MULTIPLIER, one))
    V.append(Vertex("o", OUTPUT))

    sink = "a_final" if i > 1 else "o"
    for j in range(i):
        E += [(f"r{j}", f"q{j}"), (f"q{j}", f"m{j}"), (f"m{j}", sink)]
    for j in range(i - 1):
        E += [(f"q{j}", f"a{j}"), (f"a{j}", f"r{j + 1}")]
    last = f"q{i - 1}"
    E += [(last, "n0"), ("n0", "r0")]
    for j in range(1, i):
        E += [(last, f"n{j}"), (f"n{j}", f"a{j - 1}")]
    if i > 1:
        E.append(("a_final", "o"))
    g = CSFG(V, E, field)
    for key in _STRUCTURE + ("problems",):
        getattr(g, key)  # warm the caches
    return g


def _check_table_args(i, sigma_prefix, cs):
    if i < 1 or len(sigma_prefix) != i or len(cs) != i:
        raise DimensionMismatch(f"need i >= 1 and {i} stream values and coefficients")


def linear_map(g: CSFG) -> tuple[list, list]:
    """The graph as a dense linear system ``(out, step)``: a tick outputs
    ``out . state`` and moves to ``step @ state``."""
    zero = g.field.zero()
    k = len(g.registers)
    out_form, rows = compiled(g)
    out = [out_form.get(j, zero) for j in range(k)]
    step = [[row.get(j, zero) for j in range(k)] for row in rows]
    return out, step


def register_system(i: int, sigma_prefix, cs, field=QQ) -> Matrix:
    """Row ``t`` holds the output at tick ``t`` as a linear form in the
    unknown initial register values, i.e. ``out . step^t``."""
    _check_table_args(i, sigma_prefix, cs)
    g = _table_graph(i, [field(x) for x in sigma_prefix], [field(x) for x in cs], [field.zero()] * i, field)
    return _register_matrix(g, i)


def _register_matrix(g: CSFG, ticks: int) -> Matrix:
    form, step = compiled(g)
    return observation_matrix(form, step, ticks, g.field)


def _solve_registers(g: CSFG, sigma_prefix, ops=None) -> tuple:
    i = len(sigma_prefix)
    sol = solve_linear(_register_matrix(g, i), list(sigma_prefix), ops)
    if sol is None:
        raise SingularSystem(f"no register initialisation reproduces the first {i} values")
    return sol


def solve_initial_registers(i: int, sigma_prefix, cs, field=QQ, ops=None) -> tuple:
    """Initial register values making the table graph emit ``sigma_prefix``.

    Raises SingularSystem when no choice of register values works.
    """
    _check_table_args(i, sigma_prefix, cs)
    sigma_prefix = [field(x) for x in sigma_prefix]
    g = _table_graph(i, sigma_prefix, [field(x) for x in cs], [field.zero()] * i, field)
    return _solve_registers(g, sigma_prefix, ops)


def csfg_from_table(i: int, sigma_prefix, cs, field=QQ, ops=None) -> CSFG:
    _check_table_args(i, sigma_prefix, cs)
    sigma_prefix = [field(x) for x in sigma_prefix]
    cs = [field(x) for x in cs]
    g = _table_graph(i, sigma_prefix, cs, [field.zero()] * i, field)
    registers = _solve_registers(g, sigma_prefix, ops)
    return g.with_registers(registers)


# ---------------------------------------------------------------------------
# DOT export

_SHAPES = {
    REGISTER: "box",
    ADDER: "circle",
    COPIER: "point",
    MULTIPLIER: "triangle",
    OUTPUT: "doublecircle",
}


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(model, name: str = "G") -> str:
    if isinstance(model, WSA):
        return _wsa_dot(model, name)
    return _csfg_dot(model, name)


def _csfg_dot(g: CSFG, name: str) -> str:
    fmt = g.field.format
    lines = [f"digraph {_quote(name)} {{", "  rankdir=LR;"]
    for v in g.vertices:
        if v.kind == REGISTER:
            label = f"x_{fmt(v.value)}" if v.value is not None else "x"
        elif v.kind == MULTIPLIER:
            label = fmt(v.value) if v.value is not None else "?"
        elif v.kind == ADDER:
            label = "+"
        elif v.kind == COPIER:
            label = "c"
        else:
            label = "out"
        shape = _SHAPES.get(v.kind, "ellipse")
        attrs = f"label={_quote(label)}, xlabel={_quote(v.id)}, shape={shape}"
        if v.kind == COPIER:
            attrs += ", width=0.1"
        lines.append(f"  {_quote(v.id)} [{attrs}];")
    for a, b in g.edges:
        lines.append(f"  {_quote(a)} -> {_quote(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _wsa_dot(wsa: WSA, name: str) -> str:
    fmt = wsa.field.format
    lines = [f"digraph {_quote(name)} {{", "  rankdir=LR;"]
    lines.append('  "__start" [shape=point, style=invis];')
    for s in range(wsa.n_states):
        lines.append(f'  "q{s}" [label="{s}", shape=circle];')
        lines.append(f'  "out{s}" [shape=point, style=invis];')
    lines.append(f'  "__start" -> "q{wsa.start}";')
    for s in range(wsa.n_states):
        lines.append(f'  "q{s}" -> "out{s}" [label={_quote(fmt(wsa.output[s]))}, color="black:invis:black"];')
    for s, row in enumerate(wsa.trans):
        for t, w in enumerate(row):
            if w != 0:
                lines.append(f'  "q{s}" -> "q{t}" [label={_quote(fmt(w))}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
