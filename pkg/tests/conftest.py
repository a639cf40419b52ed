from pathlib import Path

import pytest
from hypothesis import settings

from sfglearn import QQ, RationalFunctionTeacher, RationalStreamSpec, Polynomial

DATA = Path(__file__).resolve().parent.parent / "data"

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def data_dir():
    return DATA


def fib_teacher(field=QQ):
    return RationalFunctionTeacher(RationalStreamSpec(Polynomial([1], field), Polynomial([1, -1, -1], field)))


@pytest.fixture
def fib():
    return fib_teacher()
