"""Command-line interface.

Exit codes: 0 success, 1 input error (bad arguments or files), 2 domain
error (the input is well formed but the mathematics refuses it).
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .automata import wsa_stream
from .bench import parse_orders, rows_to_csv, run_bench
from .flowgraph import CSFG, InvalidGraph, csfg_stream, export_dot
from .formats import FormatError, dump_model, load_model, load_teacher
from .learner import LearnerConfig, SizeCapExceeded, learn, learn_trace_csv
from .obstable import DOUBLING, LINEAR, OracleUnavailable
from .oracle import BOUNDED, EXACT
from .streams import NonInvertibleDenominator, PrefixTooShort

OK, INPUT_ERROR, DOMAIN_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse would exit with 2, which is reserved for domain errors here
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _count(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("count must be non-negative")
    return n


def parse_eq(text: str) -> tuple[str, int]:
    """``exact`` or ``bounded:K``."""
    if text == EXACT:
        return EXACT, 64
    kind, _, k = text.partition(":")
    if kind == BOUNDED and k.isdigit() and int(k) >= 1:
        return BOUNDED, int(k)
    raise argparse.ArgumentTypeError(f"expected 'exact' or 'bounded:K' with K >= 1, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sfglearn", description="Learn closed signal flow graphs from queries.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("expand", help="print the first values of a teacher's stream")
    e.add_argument("teacher")
    e.add_argument("--count", type=_count, default=10)

    lr = sub.add_parser("learn", help="learn a model from a teacher file")
    lr.add_argument("teacher")
    lr.add_argument("--strategy", choices=[LINEAR, DOUBLING], default=LINEAR)
    lr.add_argument("--eq", type=parse_eq, default=(EXACT, 64), metavar="exact|bounded:K")
    lr.add_argument("--out", default=None, help="directory for wsa.json, csfg.json, csfg.dot, stats.csv")

    s = sub.add_parser("simulate", help="print the output stream of a model file")
    s.add_argument("model")
    s.add_argument("--count", type=_count, default=10)

    d = sub.add_parser("dot", help="render a model file as Graphviz DOT")
    d.add_argument("model")
    d.add_argument("--out", default=None)

    b = sub.add_parser("bench", help="query-complexity benchmark over random recurrences")
    b.add_argument("--orders", default="1..64")
    b.add_argument("--trials", type=int, default=3)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--out", default=None, help="CSV path (stdout if omitted)")
    return p


def _print_values(values, field):
    sys.stdout.write("".join(field.format(v) + "\n" for v in values))


def cmd_expand(args) -> int:
    teacher = load_teacher(args.teacher)
    _print_values(teacher.prefix(args.count), teacher.field)
    return OK


def cmd_learn(args) -> int:
    teacher = load_teacher(args.teacher)
    mode, bound = args.eq
    if mode == EXACT and teacher.order_bound() is None:
        raise UsageError("exact equivalence needs a teacher with an order bound; use --eq bounded:K")
    result = learn(teacher, LearnerConfig(growth=args.strategy, equivalence=mode, bound=bound))
    if args.out is not None:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        dump_model(result.wsa, out / "wsa.json")
        dump_model(result.csfg, out / "csfg.json")
        (out / "csfg.dot").write_text(export_dot(result.csfg, "csfg"))
        (out / "stats.csv").write_text(learn_trace_csv(result))
    s = result.stats
    print(
        f"order={result.order} membership_queries={s.membership_queries} max_index={s.max_index} "
        f"equivalence_queries={s.equivalence_queries} closedness_checks={s.closedness_checks} "
        f"field_ops={s.field_ops}"
    )
    return OK


def cmd_simulate(args) -> int:
    model = load_model(args.model)
    if isinstance(model, CSFG):
        values = csfg_stream(model, args.count)
    else:
        values = wsa_stream(model, args.count)
    _print_values(values, model.field)
    return OK


def cmd_dot(args) -> int:
    model = load_model(args.model)
    text = export_dot(model, Path(args.model).stem)
    if args.out is None:
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text)
    return OK


def cmd_bench(args) -> int:
    try:
        orders = parse_orders(args.orders)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    t0 = time.perf_counter()
    rows = run_bench(orders, args.trials, args.seed)
    text = rows_to_csv(rows)
    if args.out is None:
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text)
    print(f"{len(rows)} rows in {time.perf_counter() - t0:.2f} s", file=sys.stderr)
    return OK


COMMANDS = {
    "expand": cmd_expand,
    "learn": cmd_learn,
    "simulate": cmd_simulate,
    "dot": cmd_dot,
    "bench": cmd_bench,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except (UsageError, FormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except InvalidGraph as exc:
        print("error: invalid graph", file=sys.stderr)
        for v in exc.violations:
            print(f"  {v}", file=sys.stderr)
        return DOMAIN_ERROR
    except (NonInvertibleDenominator, SizeCapExceeded, OracleUnavailable, PrefixTooShort, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DOMAIN_ERROR


if __name__ == "__main__":
    sys.exit(main())
