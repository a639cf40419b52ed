import json

import pytest
from hypothesis import given, strategies as st

from sfglearn.automata import WSA
from sfglearn.exactmath import GF, QQ
from sfglearn.flowgraph import csfg_from_table
from sfglearn.formats import FormatError, dump_model, load_model, load_teacher, model_from_dict, model_to_dict, teacher_from_dict
from sfglearn.oracle import PrefixTeacher, RationalFunctionTeacher, RecurrenceTeacher
from sfglearn.streams import NonInvertibleDenominator


def ints(xs):
    return [int(x) for x in xs]


def test_teacher_document():
    doc = {"field": {"kind": "rational"}, "kind": "rational_function", "p": ["1"], "q": ["1", "-1", "-1"]}
    t = teacher_from_dict(doc)
    assert isinstance(t, RationalFunctionTeacher)
    assert ints(t.prefix(5)) == [1, 1, 2, 3, 5]


def test_shipped_teachers(data_dir):
    assert ints(load_teacher(data_dir / "alternating.json").prefix(6)) == [1, 0, 1, 0, 1, 0]
    assert isinstance(load_teacher(data_dir / "delta2.json"), RecurrenceTeacher)
    assert isinstance(load_teacher(data_dir / "observed.json"), PrefixTeacher)
    assert load_teacher(data_dir / "fib_mod97.json").field.p == 97
    assert load_teacher(data_dir / "halves.json").prefix(3)[1] == QQ("1/2")


def test_bad_denominator(data_dir):
    with pytest.raises(NonInvertibleDenominator):
        load_teacher(data_dir / "bad_denominator.json")


@pytest.mark.parametrize(
    "doc",
    [
        {"kind": "rational_function", "p": ["1"]},
        {"kind": "mystery"},
        {"kind": "recurrence", "initial": ["x"], "coeffs": ["1"]},
        {"field": {"kind": "mod", "p": 4}, "kind": "prefix", "values": ["1"]},
        [1, 2],
    ],
)
def test_malformed_teachers(doc):
    with pytest.raises(FormatError):
        teacher_from_dict(doc)


def test_invalid_json(tmp_path):
    p = tmp_path / "t.json"
    p.write_text("{not json")
    with pytest.raises(FormatError):
        load_teacher(p)


def test_rationals_are_strings():
    doc = model_to_dict(WSA(["1/2", 3], [["-2/3", 0], [1, 1]]))
    assert doc["output"] == ["1/2", "3"]
    assert doc["trans"][0] == ["-2/3", "0"]


def test_file_roundtrip(tmp_path):
    g = csfg_from_table(3, [1, 2, 3], [1, -3, 3], GF(97))
    dump_model(g, tmp_path / "g.json")
    back = load_model(tmp_path / "g.json")
    assert back == g and back.field.p == 97
    assert json.loads((tmp_path / "g.json").read_text())["kind"] == "csfg"


weights = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@st.composite
def wsas(draw):
    n = draw(st.integers(1, 4))
    return WSA(draw(st.lists(weights, min_size=n, max_size=n)),
               draw(st.lists(st.lists(weights, min_size=n, max_size=n), min_size=n, max_size=n)),
               draw(st.integers(0, n - 1)))


@given(wsas())
def test_wsa_roundtrip(w):
    doc = model_to_dict(w)
    assert model_from_dict(json.loads(json.dumps(doc))) == w
    assert model_to_dict(model_from_dict(doc)) == doc


@given(st.integers(1, 4).flatmap(lambda i: st.tuples(st.lists(weights, min_size=i, max_size=i).filter(any), st.lists(weights, min_size=i, max_size=i))))
def test_csfg_roundtrip(data):
    sigma, cs = data
    g = csfg_from_table(len(sigma), sigma, cs)
    doc = model_to_dict(g)
    assert model_from_dict(json.loads(json.dumps(doc))) == g
