"""Query-complexity benchmark over random recurrences of verified order."""

from __future__ import annotations

import csv
import io
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

from .exactmath import QQ, PrimeField
from .learner import LearnerConfig, learn
from .obstable import DOUBLING, LINEAR
from .oracle import RecurrenceTeacher
from .streams import RecurrenceSpec, hankel_rank, recurrence_expand

CSV_HEADER = [
    "order",
    "strategy",
    "membership_queries",
    "max_index",
    "equivalence_queries",
    "closedness_checks",
    "wall_time_ms",
    "field_ops",
]

# Unit-cost arithmetic: over QQ the Hankel entries of a random recurrence
# grow exponentially and wall time stops tracking operation counts.
BENCH_FIELD = PrimeField(2**31 - 1)


@dataclass
class BenchRow:
    order: int
    strategy: str
    membership_queries: int
    max_index: int
    equivalence_queries: int
    closedness_checks: int
    wall_time_ms: float
    field_ops: int
    trial: int = 0
    learned_order: int = 0


def random_recurrence(order: int, rng: random.Random, field=QQ, low: int = -3, high: int = 3) -> RecurrenceSpec:
    """Random recurrence whose stream has Hankel rank exactly ``order``."""
    while True:
        spec = RecurrenceSpec(
            [rng.randint(low, high) for _ in range(order)],
            [rng.randint(low, high) for _ in range(order)],
            field,
        )
        prefix = recurrence_expand(spec, 2 * order)
        if hankel_rank(prefix, order, field) == order:
            return spec


def trial_rng(seed: int, order: int, trial: int) -> random.Random:
    return random.Random(f"{seed}/{order}/{trial}")


def run_one(spec: RecurrenceSpec, strategy: str, trial: int = 0) -> BenchRow:
    teacher = RecurrenceTeacher(spec)
    t0 = time.perf_counter()
    result = learn(teacher, LearnerConfig(growth=strategy))
    elapsed = (time.perf_counter() - t0) * 1000.0
    s = result.stats
    return BenchRow(
        spec.order, strategy, s.membership_queries, s.max_index, s.equivalence_queries,
        s.closedness_checks, elapsed, s.field_ops, trial, result.order,
    )


def _job(args) -> BenchRow:
    n, trial, seed, strategy, field = args
    return run_one(random_recurrence(n, trial_rng(seed, n, trial), field), strategy, trial)


def run_bench(orders, trials: int = 1, seed: int = 0, strategies=(LINEAR, DOUBLING), field=BENCH_FIELD, workers: int | None = None) -> list[BenchRow]:
    """One row per (order, trial, strategy).  Runs are independent, so with
    ``workers > 1`` they are spread over processes; each worker rebuilds its
    teacher from the seed, and rows are sorted, so output does not depend
    on scheduling (``wall_time_ms`` aside)."""
    orders = list(orders)
    if not orders or trials < 1:
        raise ValueError("need a non-empty order range and at least one trial")
    if workers is None:
        workers = os.cpu_count() or 1
    jobs = [(n, t, seed, s, field) for n in orders for t in range(trials) for s in strategies]
    if workers > 1 and len(jobs) > 1:
        # largest orders first so the pool does not finish on one long run
        jobs.sort(key=lambda j: -j[0])
        with ProcessPoolExecutor(workers) as pool:
            rows = list(pool.map(_job, jobs, chunksize=1))
    else:
        rows = []
        for n in orders:
            for t in range(trials):
                spec = random_recurrence(n, trial_rng(seed, n, t), field)
                rows += [run_one(spec, s, t) for s in strategies]
    rows.sort(key=lambda r: (r.order, r.trial, r.strategy))
    return rows


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, CSV_HEADER, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for r in rows:
        d = asdict(r)
        d["wall_time_ms"] = f"{r.wall_time_ms:.3f}"
        w.writerow(d)
    return buf.getvalue()


def parse_orders(text: str) -> list[int]:
    """``"1..64"``, ``"3"`` or ``"1,2,8"``."""
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = (int(x) for x in text.split(".."))
            orders = list(range(lo, hi + 1))
        else:
            orders = [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise ValueError(f"bad order range {text!r}") from exc
    if not orders or min(orders) < 1:
        raise ValueError(f"order range {text!r} is empty or contains orders below 1")
    return orders
