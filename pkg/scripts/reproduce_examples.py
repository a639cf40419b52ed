"""Print the worked examples: the Fibonacci learning trace, the small
hand-checkable streams and the learned Fibonacci flow graph."""

from pathlib import Path

from sfglearn import (
    Polynomial,
    RationalFunctionTeacher,
    RationalStreamSpec,
    csfg_stream,
    export_dot,
    learn,
    rational_expand,
    wsa_stream,
)
from sfglearn.formats import load_model
from sfglearn.learner import learn_trace_csv

DATA = Path(__file__).resolve().parent.parent / "data"


def show(label, values):
    print(f"{label:<28} " + " ".join(str(v) for v in values))


def main():
    teacher = RationalFunctionTeacher(RationalStreamSpec(Polynomial([1]), Polynomial([1, -1, -1])))
    result = learn(teacher)
    print("Fibonacci 1/(1 - x - x^2), linear growth, exact equivalence")
    for it in result.trace:
        cs = "not closed" if not it.closed else f"cs={[str(c) for c in it.cs]}"
        verdict = "" if it.verdict is None else f" EQ={'yes' if it.verdict else 'no'}"
        print(f"  i={it.size}: {cs}{verdict}")
    print(learn_trace_csv(result))
    show("learned automaton", wsa_stream(result.wsa, 10))
    show("learned flow graph", csfg_stream(result.csfg, 10))
    show("initial registers", result.registers)

    print()
    show("1/(1 - x^2)", rational_expand(RationalStreamSpec(Polynomial([1]), Polynomial([1, 0, -1])), 10))
    show("two-state automaton", wsa_stream(load_model(DATA / "wsa_a0.json"), 10))
    show("two-register flow graph", csfg_stream(load_model(DATA / "csfg_a0.json"), 10))
    show("one-shot flow graph", csfg_stream(load_model(DATA / "one_shot.json"), 10))

    print()
    print(export_dot(result.csfg, "fibonacci"))


if __name__ == "__main__":
    main()
