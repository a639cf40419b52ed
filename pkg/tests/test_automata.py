import pytest
from hypothesis import given, strategies as st

from sfglearn.automata import WSA, wsa_from_table, wsa_stream, wsa_stream_bruteforce
from sfglearn.exactmath import GF, QQ, DimensionMismatch
from sfglearn.streams import hankel_rank

A0 = WSA([1, 2], [[0, 1], [-1, 2]])


def ints(xs):
    return [int(x) for x in xs]


def test_geometric_chain():
    w = wsa_from_table(1, [1], [2])
    assert w.output == (1,) and w.trans == ((2,),)
    assert ints(wsa_stream(w, 5)) == [1, 2, 4, 8, 16]


def test_fibonacci_hypothesis():
    w = wsa_from_table(2, [1, 1], [1, 1])
    assert w.output == (1, 1)
    assert w.trans == ((0, 1), (1, 1))
    assert ints(wsa_stream(w, 6)) == [1, 1, 2, 3, 5, 8]


def test_zero_automaton():
    w = wsa_from_table(1, [0], [0])
    assert ints(wsa_stream(w, 4)) == [0] * 4 == ints(wsa_stream_bruteforce(w, 4))


def test_table_arguments_checked():
    with pytest.raises(DimensionMismatch):
        wsa_from_table(2, [1], [1, 1])


def test_linear_stream_example():
    assert ints(wsa_stream(A0, 5)) == [1, 2, 3, 4, 5]
    assert ints(wsa_stream_bruteforce(A0, 4)) == [1, 2, 3, 4]


def test_constant_stream():
    assert ints(wsa_stream(WSA([7], [[1]]), 4)) == [7] * 4


def test_bruteforce_fibonacci():
    assert ints(wsa_stream_bruteforce(wsa_from_table(2, [1, 1], [1, 1]), 4)) == [1, 1, 2, 3]


def test_start_state():
    w = WSA([1, 2], [[0, 1], [-1, 2]], start=1)
    assert ints(wsa_stream(w, 3)) == [2, 3, 4]
    with pytest.raises(ValueError):
        WSA([1], [[1]], start=1)


def test_modular_stream():
    F = GF(5)
    w = wsa_from_table(1, [1], [2], F)
    assert ints(wsa_stream(w, 5)) == [1, 2, 4, 3, 1]


weights = st.integers(-2, 2)


@st.composite
def small_wsas(draw):
    n = draw(st.integers(1, 4))
    out = draw(st.lists(weights, min_size=n, max_size=n))
    trans = draw(st.lists(st.lists(weights, min_size=n, max_size=n), min_size=n, max_size=n))
    return WSA(out, trans, draw(st.integers(0, n - 1)))


@given(small_wsas())
def test_matrix_semantics_match_paths(w):
    assert wsa_stream(w, 6) == wsa_stream_bruteforce(w, 6)


@given(st.integers(1, 5).flatmap(lambda i: st.tuples(st.lists(weights, min_size=i, max_size=i), st.lists(weights, min_size=i, max_size=i))))
def test_chain_reproduces_prefix(data):
    sigma, cs = data
    w = wsa_from_table(len(sigma), sigma, cs)
    assert ints(wsa_stream(w, len(sigma))) == sigma


@given(small_wsas())
def test_hankel_rank_bounded_by_states(w):
    prefix = wsa_stream(w, 2 * w.n_states + 5)
    assert hankel_rank(prefix, w.n_states + 2) <= w.n_states
