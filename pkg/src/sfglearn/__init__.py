"""Active learning of closed signal flow graphs and weighted stream automata
from membership and equivalence queries, in exact arithmetic."""

from .automata import WSA, wsa_from_table, wsa_stream, wsa_stream_bruteforce
from .exactmath import GF, QQ, Matrix, PrimeField, RationalField, rank, solve_linear
from .flowgraph import CSFG, Vertex, csfg_from_table, csfg_stream, csfg_tick, export_dot, validate
from .learner import LearnerConfig, LearnResult, learn
from .obstable import DOUBLING, LINEAR, ObservationTable
from .oracle import (
    BOUNDED,
    EXACT,
    CSFGTeacher,
    PrefixTeacher,
    QueryStats,
    RationalFunctionTeacher,
    RecurrenceTeacher,
    WSATeacher,
)
from .streams import Polynomial, RationalStreamSpec, RecurrenceSpec, hankel_rank, rational_expand, recurrence_expand

__version__ = "0.1.0"
