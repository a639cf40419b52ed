"""Finite descriptions of rational streams and their prefix expansions.

Streams are handled as finite prefixes (lists of field elements) throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactmath import QQ, Matrix, field_of, inv, rank


class NonInvertibleDenominator(ValueError):
    pass


class PrefixTooShort(ValueError):
    pass


@dataclass(frozen=True)
class Polynomial:
    """Polynomial stream ``(c0, c1, ..., ck, 0, 0, ...)``.

    Trailing zeros are stripped, so the zero polynomial has ``coeffs == ()``.
    """

    coeffs: tuple
    field: object = QQ

    def __init__(self, coeffs=(), field=QQ):
        cs = [field(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "field", field)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.field.zero()

    def __mul__(self, other: Polynomial) -> Polynomial:
        return poly_convolve(self, other)


def poly_convolve(p: Polynomial, q: Polynomial) -> Polynomial:
    if not p.coeffs or not q.coeffs:
        return Polynomial((), p.field)
    out = [p.field.zero()] * (len(p.coeffs) + len(q.coeffs) - 1)
    for i, a in enumerate(p.coeffs):
        for j, b in enumerate(q.coeffs):
            out[i + j] = out[i + j] + a * b
    return Polynomial(out, p.field)


@dataclass(frozen=True)
class RationalStreamSpec:
    """The stream ``p / q``; ``q[0]`` must be non-zero."""

    p: Polynomial
    q: Polynomial

    def __post_init__(self):
        if self.q[0] == 0:
            raise NonInvertibleDenominator("q[0] must be non-zero")

    @property
    def field(self):
        return self.q.field


@dataclass(frozen=True)
class RecurrenceSpec:
    """``s[t+n] = sum(coeffs[i] * s[t+i])`` seeded with ``initial``."""

    initial: tuple
    coeffs: tuple
    field: object = QQ

    def __init__(self, initial, coeffs, field=QQ):
        initial = tuple(field(x) for x in initial)
        coeffs = tuple(field(x) for x in coeffs)
        if len(initial) != len(coeffs) or not coeffs:
            raise ValueError("need matching, non-empty initial values and coefficients")
        object.__setattr__(self, "initial", initial)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "field", field)

    @property
    def order(self) -> int:
        return len(self.coeffs)


def rational_expand(spec: RationalStreamSpec, count: int) -> list:
    p, q = spec.p, spec.q
    if q[0] == 0:
        raise NonInvertibleDenominator("q[0] must be non-zero")
    q0_inv = inv(q[0])
    out = []
    for n in range(count):
        acc = p[n]
        for k in range(1, min(n, q.degree) + 1):
            acc = acc - q.coeffs[k] * out[n - k]
        out.append(acc * q0_inv)
    return out


def recurrence_expand(spec: RecurrenceSpec, count: int) -> list:
    n = spec.order
    out = list(spec.initial[:count])
    zero = spec.field.zero()
    for t in range(n, count):
        acc = zero
        for i, c in enumerate(spec.coeffs):
            acc = acc + c * out[t - n + i]
        out.append(acc)
    return out


def stream_derivative(prefix, j: int) -> list:
    if not 0 <= j < len(prefix):
        raise IndexError(f"derivative of order {j} needs more than {len(prefix)} values")
    return list(prefix[j:])


def hankel_matrix(prefix, n: int, field=None) -> Matrix:
    if len(prefix) < 2 * n - 1:
        raise PrefixTooShort(f"{n}x{n} Hankel matrix needs {2 * n - 1} values, got {len(prefix)}")
    if field is None:
        field = field_of(prefix[0]) if len(prefix) else QQ
    return Matrix.from_rows([[prefix[v + e] for e in range(n)] for v in range(n)], field, cols=n)


def hankel_rank(prefix, n: int, field=None) -> int:
    """Exact rank of the n x n matrix ``H[v][e] = prefix[v + e]``."""
    return rank(hankel_matrix(prefix, n, field))

