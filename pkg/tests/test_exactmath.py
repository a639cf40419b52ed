from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sfglearn.exactmath import (
    GF,
    QQ,
    DimensionMismatch,
    DivisionByZero,
    Matrix,
    field_from_header,
    in_row_span,
    inv,
    observation_matrix,
    rank,
    rank_gauss,
    solve_linear,
    solve_linear_gauss,
)


def test_rational_addition():
    assert QQ("1/2") + QQ("1/3") == QQ("5/6")


def test_rational_inverse():
    a = QQ("-7/3")
    assert a * inv(a) == 1


def test_mod5_product():
    F = GF(5)
    assert F(3) * F(2) == F(1)


def test_inverse_of_zero():
    with pytest.raises(DivisionByZero):
        inv(QQ(0))
    with pytest.raises(DivisionByZero):
        inv(GF(7)(0))


def test_rationals_stay_reduced():
    x = QQ("6/-4")
    assert (x.numerator, x.denominator) == (-3, 2)
    assert QQ.format(x) == "-3/2"
    assert QQ.format(QQ(5)) == "5"


def test_fraction_coercion():
    assert QQ(Fraction(2, 4)) == QQ("1/2")
    assert GF(7)(Fraction(1, 2)) * 2 == 1


def test_prime_field_rejects_composites():
    for bad in (2, 9, 1):
        with pytest.raises(ValueError):
            GF(bad)


def test_field_header_roundtrip():
    assert field_from_header({"kind": "rational"}) is QQ or field_from_header({"kind": "rational"}).kind == "rational"
    F = field_from_header({"kind": "mod", "p": 97})
    assert F.p == 97
    assert field_from_header(F.header()).p == 97


@pytest.mark.parametrize(
    "rows, b, expected",
    [
        ([[1, 0], [0, 1]], [2, 3], (2, 3)),
        ([[1, 1], [1, 2]], [2, 3], (1, 1)),
        ([[0], [0]], [1, 0], None),
    ],
)
def test_solve_linear_examples(rows, b, expected):
    A = Matrix.from_rows(rows)
    got = solve_linear(A, b)
    assert got == (None if expected is None else tuple(QQ(x) for x in expected))


def test_solve_linear_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        solve_linear(Matrix.from_rows([[1, 2]]), [1, 2])


def test_free_variables_are_zero():
    A = Matrix.from_rows([[1, 1], [2, 2]])
    assert solve_linear(A, [3, 6]) == (QQ(3), QQ(0))


@pytest.mark.parametrize(
    "rows, target, expected",
    [
        ([[0, 1], [1, 0]], [0, 0], (0, 0)),
        ([[1, 1], [1, 2]], [2, 3], (1, 1)),
        ([[0, 1], [1, 0]], [1, 1], (1, 1)),
    ],
)
def test_in_row_span_examples(rows, target, expected):
    assert in_row_span(Matrix.from_rows(rows), target) == tuple(QQ(x) for x in expected)


@pytest.mark.parametrize(
    "rows, r",
    [([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 3), ([[1, 1], [2, 2]], 1), ([[1, 1], [1, 2]], 2)],
)
def test_rank_examples(rows, r):
    A = Matrix.from_rows(rows)
    assert rank(A) == r == rank_gauss(A)


small = st.integers(-4, 4)


@st.composite
def systems(draw, field=QQ):
    m = draw(st.integers(1, 5))
    n = draw(st.integers(1, 5))
    rows = draw(st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m))
    b = draw(st.lists(small, min_size=m, max_size=m))
    return Matrix.from_rows(rows, field), [field(x) for x in b]


@given(systems())
def test_solution_satisfies_system(sys_):
    A, b = sys_
    c = solve_linear(A, b)
    if c is not None:
        assert A.apply(c) == b


@given(systems())
def test_flint_solver_matches_reference(sys_):
    A, b = sys_
    assert solve_linear(A, b) == solve_linear_gauss(A, b)


@given(systems(GF(97)))
def test_flint_solver_matches_reference_mod_p(sys_):
    A, b = sys_
    assert solve_linear(A, b) == solve_linear_gauss(A, b)


@given(systems())
def test_field_op_counts_agree(sys_):
    class Ops:
        field_ops = 0

    a, g = Ops(), Ops()
    solve_linear(*sys_, a)
    solve_linear_gauss(*sys_, g)
    assert a.field_ops == g.field_ops


@given(systems())
def test_rank_transpose_invariant(sys_):
    A, _ = sys_
    assert rank(A) == rank(A.transpose()) == rank_gauss(A)


@given(systems())
def test_solve_is_deterministic(sys_):
    assert solve_linear(*sys_) == solve_linear(*sys_)


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3), st.lists(small, min_size=3, max_size=3))
def test_observation_matrix_rows(step_rows, out_row):
    step = [{j: QQ(x) for j, x in enumerate(r) if x} for r in step_rows]
    out = {j: QQ(x) for j, x in enumerate(out_row) if x}
    M = observation_matrix(out, step, 4)
    # row t is out . step^t, so applying it to a state equals the t-th output
    start = state = [QQ(1), QQ(-2), QQ(3)]
    for t in range(4):
        expect = sum((out.get(j, 0) * state[j] for j in range(3)), QQ(0))
        assert sum((a * b for a, b in zip(M.row(t), start)), QQ(0)) == expect
        state = [sum((c * state[j] for j, c in row.items()), QQ(0)) for row in step]
