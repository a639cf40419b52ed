import csv
import io
import random

import pytest

from sfglearn.bench import CSV_HEADER, parse_orders, random_recurrence, rows_to_csv, run_bench
from sfglearn.exactmath import QQ
from sfglearn.obstable import LINEAR
from sfglearn.streams import hankel_rank, recurrence_expand


def test_small_sweep():
    rows = run_bench(range(1, 5), trials=1, seed=7, workers=1)
    assert len(rows) == 8
    for r in rows:
        # doubling may overshoot to the next power of two, so its table
        # covers 2 * learned_order indices
        size = r.order if r.strategy == LINEAR else r.learned_order
        assert r.membership_queries <= 2 * size
        assert r.learned_order < 2 * r.order
    assert all(r.equivalence_queries == 1 for r in rows if r.order == 1)


def test_deterministic():
    strip = lambda rows: [(r.order, r.strategy, r.membership_queries, r.field_ops) for r in rows]
    assert strip(run_bench([3, 5], 2, 1, workers=1)) == strip(run_bench([3, 5], 2, 1, workers=1))


def test_pool_matches_inline():
    strip = lambda rows: [(r.order, r.trial, r.strategy, r.closedness_checks, r.field_ops) for r in rows]
    assert strip(run_bench([2, 6], 2, 4, workers=2)) == strip(run_bench([2, 6], 2, 4, workers=1))


def test_random_recurrence_has_exact_order():
    rng = random.Random(11)
    for n in range(1, 8):
        spec = random_recurrence(n, rng, QQ)
        assert hankel_rank(recurrence_expand(spec, 4 * n + 4), n + 2) == n


def test_csv_header_and_parse():
    rows = run_bench([1, 2], workers=1)
    parsed = list(csv.DictReader(io.StringIO(rows_to_csv(rows))))
    assert list(parsed[0]) == CSV_HEADER
    assert [int(p["order"]) for p in parsed] == [1, 1, 2, 2]
    assert {p["strategy"] for p in parsed} == {"linear", "doubling"}


@pytest.mark.parametrize("text, orders", [("1..4", [1, 2, 3, 4]), ("3", [3]), ("1,2,8", [1, 2, 8])])
def test_parse_orders(text, orders):
    assert parse_orders(text) == orders


@pytest.mark.parametrize("text", ["5..2", "0..3", "", "a..b"])
def test_parse_orders_rejects(text):
    with pytest.raises(ValueError):
        parse_orders(text)


def test_empty_run_rejected():
    with pytest.raises(ValueError):
        run_bench([])
