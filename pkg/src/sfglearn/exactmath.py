"""Exact field arithmetic and Gaussian elimination.

Two fields are provided: the rationals ``QQ`` (elements are ``gmpy2.mpq``)
and prime fields ``GF(p)`` for odd primes ``p`` (elements are
``flint.nmod``).  Elements of both support the ordinary Python operators,
so the algorithms below are written once against "anything with + - * /
and == 0".

Linear solvers return a tuple of coefficients, or ``None`` when the system
is inconsistent (the table is not closed).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import chain, islice
from typing import Iterable, Sequence

import flint
import gmpy2
from gmpy2 import mpq

_MPQ = type(mpq())


class DivisionByZero(ZeroDivisionError):
    pass


class DimensionMismatch(ValueError):
    pass


# ---------------------------------------------------------------------------
# fields


class RationalField:
    """The field of rational numbers."""

    kind = "rational"

    def __call__(self, x) -> mpq:
        if type(x) is _MPQ:
            return x
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, flint.nmod):
            raise TypeError("cannot coerce a modular residue to a rational")
        if isinstance(x, Fraction):
            return mpq(x.numerator, x.denominator)
        return mpq(x)

    def zero(self) -> mpq:
        return mpq(0)

    def one(self) -> mpq:
        return mpq(1)

    def parse(self, text: str) -> mpq:
        text = text.strip()
        try:
            num, _, den = text.partition("/")
            value = mpq(int(num), int(den)) if den else mpq(int(num))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad rational literal {text!r}") from exc
        return value

    def format(self, x) -> str:
        x = self(x)
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"

    def header(self) -> dict:
        return {"kind": "rational"}

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class PrimeField:
    """Integers modulo an odd prime ``p``."""

    kind = "mod"

    def __init__(self, p: int):
        p = int(p)
        if p < 3 or not gmpy2.is_prime(p):
            raise ValueError(f"modulus must be an odd prime, got {p}")
        if p >= 2**63:
            raise ValueError("modulus must fit in a machine word")
        self.p = p

    def __call__(self, x) -> flint.nmod:
        if isinstance(x, flint.nmod):
            if x.modulus() != self.p:
                raise ValueError(f"residue mod {x.modulus()} used in GF({self.p})")
            return x
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, (Fraction, _MPQ)):
            den = flint.nmod(int(x.denominator), self.p)
            if den == 0:
                raise DivisionByZero(f"denominator {x.denominator} vanishes mod {self.p}")
            return flint.nmod(int(x.numerator), self.p) / den
        return flint.nmod(int(x), self.p)

    def zero(self) -> flint.nmod:
        return flint.nmod(0, self.p)

    def one(self) -> flint.nmod:
        return flint.nmod(1, self.p)

    def parse(self, text: str) -> flint.nmod:
        return self(QQ.parse(text))

    def format(self, x) -> str:
        return str(int(self(x)))

    def header(self) -> dict:
        return {"kind": "mod", "p": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


GF = PrimeField


def field_of(x) -> RationalField | PrimeField:
    if isinstance(x, flint.nmod):
        return PrimeField(x.modulus())
    return QQ


def inv(a):
    """Multiplicative inverse; raises DivisionByZero for 0."""
    if a == 0:
        raise DivisionByZero("0 has no inverse")
    return 1 / a


def field_from_header(header: dict | None) -> RationalField | PrimeField:
    if header is None:
        return QQ
    kind = header.get("kind")
    if kind == "rational":
        return QQ
    if kind == "mod":
        return PrimeField(header["p"])
    raise ValueError(f"unknown field kind {kind!r}")


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple  # row-major
    field: RationalField | PrimeField = dc_field(default=QQ, compare=False)

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field=QQ, cols: int | None = None) -> Matrix:
        rows = [[field(x) for x in r] for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r), field)

    @classmethod
    def identity(cls, n: int, field=QQ) -> Matrix:
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], field)

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r * self.cols + c]

    def row(self, r: int) -> tuple:
        return self.entries[r * self.cols:(r + 1) * self.cols]

    def to_rows(self) -> list[list]:
        return [list(self.row(r)) for r in range(self.rows)]

    def transpose(self) -> Matrix:
        by_rows = [self.row(r) for r in range(self.rows)]
        return Matrix(self.cols, self.rows, tuple(x for col in zip(*by_rows) for x in col), self.field)

    def apply(self, vec: Sequence) -> list:
        """Return ``A @ vec``."""
        if len(vec) != self.cols:
            raise DimensionMismatch(f"vector of length {len(vec)} for {self.cols} columns")
        zero = self.field.zero()
        out = []
        for r in range(self.rows):
            acc = zero
            for a, x in zip(self.row(r), vec):
                acc = acc + a * x
            out.append(acc)
        return out


def _gauss_jordan_ops(pivots, n_rows: int, width: int) -> int:
    # multiplications of dense Gauss-Jordan: scale the pivot row, then clear
    # the pivot column in every other row
    return sum(n_rows * (width - c) for c in pivots)


def _row_reduce(rows: list[list], n_cols: int, ops=None) -> list[int]:
    """Reduce ``rows`` in place to reduced row echelon form over the first
    ``n_cols`` columns.  Returns the pivot column of each pivot row."""
    pivots = []
    r = 0
    n_rows = len(rows)
    for c in range(n_cols):
        if r == n_rows:
            break
        p = next((k for k in range(r, n_rows) if rows[k][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pivot_row = rows[r]
        piv_inv = inv(pivot_row[c])
        width = len(pivot_row)
        for j in range(c, width):
            pivot_row[j] = pivot_row[j] * piv_inv
        for k in range(n_rows):
            if k == r:
                continue
            row_k = rows[k]
            f = row_k[c]
            if f == 0:
                continue
            for j in range(c, width):
                if pivot_row[j] != 0:
                    row_k[j] = row_k[j] - f * pivot_row[j]
        pivots.append(c)
        r += 1
    if ops is not None and rows:
        ops.field_ops += _gauss_jordan_ops(pivots, n_rows, len(rows[0]))
    return pivots


def _to_flint(rows: list[list], field):
    n_rows, width = len(rows), len(rows[0])
    if isinstance(field, PrimeField):
        # nmod entries go in as they are; converting to int first costs more
        return flint.nmod_mat(n_rows, width, list(chain.from_iterable(rows)), field.p)
    flat = [flint.fmpq(int(x.numerator), int(x.denominator)) for r in rows for x in r]
    return flint.fmpq_mat(n_rows, width, flat)


def _from_flint(x, field):
    if isinstance(field, PrimeField):
        return flint.nmod(int(x), field.p)
    return mpq(int(x.p), int(x.q))


def solve_linear(A: Matrix, b: Sequence, ops=None) -> tuple | None:
    """Solve ``A c = b`` exactly.

    Free variables are set to zero.  Returns ``None`` if the system is
    inconsistent.  ``ops``, when given, is any object with an integer
    ``field_ops`` attribute; it is incremented by the multiplication count
    of Gauss-Jordan elimination on the augmented matrix.

    The reduced row echelon form is unique, so reading the solution off
    FLINT's RREF gives exactly what ``solve_linear_gauss`` computes.
    """
    if len(b) != A.rows:
        raise DimensionMismatch(f"A has {A.rows} rows but b has length {len(b)}")
    field = A.field
    n = A.cols
    if A.rows == 0 or n == 0:
        return solve_linear_gauss(A, b, ops)
    es = A.entries
    aug = [[*es[r * n:(r + 1) * n], field(b[r])] for r in range(A.rows)]
    return _solve_rref(_to_flint(aug, field), n, field, ops)


def _solve_rref(aug, n: int, field, ops) -> tuple | None:
    # ``aug`` is a FLINT matrix [A | b] with ``n`` unknowns
    R, rk = aug.rref()
    pivots = []
    c = 0
    consistent = True
    for r in range(rk):
        while R[r, c] == 0:
            c += 1
        if c == n:
            consistent = False
            break
        pivots.append(c)
        c += 1
    if ops is not None:
        ops.field_ops += _gauss_jordan_ops(pivots, aug.nrows(), n + 1)
    if not consistent:
        return None
    coeffs = [field.zero()] * n
    for r, c in enumerate(pivots):
        coeffs[c] = _from_flint(R[r, n], field)
    return tuple(coeffs)


def observation_matrix(out: dict, step: Sequence[dict], count: int, field=QQ) -> Matrix:
    """Rows ``out . step^t`` for ``t < count``, with ``out`` and ``step``
    sparse as in ``iterate_linear``."""
    n = len(step)
    transposed = [{} for _ in range(n)]
    for m, row in enumerate(step):
        for j, w in row.items():
            transposed[j][m] = w
    zero = field.zero()
    rows = iterate_linear(transposed, [out.get(j, zero) for j in range(n)], count, field)
    return Matrix(count, n, tuple(chain.from_iterable(rows)), field)


def solve_linear_gauss(A: Matrix, b: Sequence, ops=None) -> tuple | None:
    """Pure-Python Gauss-Jordan with leftmost non-zero pivots; same contract
    as ``solve_linear``."""
    if len(b) != A.rows:
        raise DimensionMismatch(f"A has {A.rows} rows but b has length {len(b)}")
    field = A.field
    aug = [list(A.row(r)) + [field(b[r])] for r in range(A.rows)]
    pivots = _row_reduce(aug, A.cols, ops)
    for row in aug[len(pivots):]:
        if row[-1] != 0:
            return None
    coeffs = [field.zero()] * A.cols
    for r, c in enumerate(pivots):
        coeffs[c] = aug[r][-1]
    return tuple(coeffs)


def in_row_span(rows: Matrix, target: Sequence, ops=None) -> tuple | None:
    """Find ``c`` with ``sum(c[s] * rows[s]) == target``, or ``None``."""
    if len(target) != rows.cols:
        raise DimensionMismatch(f"target of length {len(target)} for {rows.cols} columns")
    return solve_linear(rows.transpose(), target, ops)


def rank(A: Matrix) -> int:
    if A.rows == 0 or A.cols == 0:
        return 0
    return _to_flint([A.row(r) for r in range(A.rows)], A.field).rank()


def rank_gauss(A: Matrix) -> int:
    """Rank by hand-written elimination, independent of FLINT."""
    work = [list(A.row(r)) for r in range(A.rows)]
    return len(_row_reduce(work, A.cols))


def iterate_linear(step: Sequence[dict], state: Sequence, count: int, field, out=None) -> list:
    """Run ``x <- step @ x`` for ``count`` ticks from ``state``.

    ``step`` holds one sparse row ``{column: coefficient}`` per coordinate.
    Returns the output ``out . x`` of every tick when ``out`` (a sparse row)
    is given, otherwise the state vector of every tick.
    """
    if out is not None:
        return list(islice(linear_outputs(step, state, field, out), count))
    rows = [list(row.items()) for row in step]
    x = [field(v) for v in state]
    zero = field.zero()
    result = []
    for _ in range(count):
        result.append(x)
        nxt = []
        for row in rows:
            acc = zero
            for k, c in row:
                acc = acc + c * x[k]
            nxt.append(acc)
        x = nxt
    return result


def linear_outputs(step: Sequence[dict], state: Sequence, field, out: dict):
    """Endless generator of the outputs ``out . step^t . state``."""
    if isinstance(field, PrimeField) and step:
        # dense FLINT products beat the sparse Python loop once states
        # number more than a handful
        n, p = len(step), field.p
        M = flint.nmod_mat(n, n, p)
        for r, row in enumerate(step):
            for k, c in row.items():
                M[r, k] = c
        o = flint.nmod_mat(1, n, p)
        for k, c in out.items():
            o[0, k] = c
        x = flint.nmod_mat(n, 1, [field(v) for v in state], p)
        while True:
            yield (o * x)[0, 0]
            x = M * x
    rows = [list(row.items()) for row in step]
    out_row = list(out.items())
    x = [field(v) for v in state]
    zero = field.zero()
    while True:
        acc = zero
        for k, c in out_row:
            acc = acc + c * x[k]
        yield acc
        nxt = []
        for row in rows:
            acc = zero
            for k, c in row:
                acc = acc + c * x[k]
            nxt.append(acc)
        x = nxt
