"""Finite-valued Łukasiewicz Ł-clausal forms: generation, exact MaxSAT, reductions, SMT-LIB."""
from .core import (
    Assignment,
    Connective,
    EvaluationError,
    FiniteDomain,
    LClausalForm,
    LClause,
    Literal,
    LogicError,
    NegatedSum,
    PlainLiteral,
    TruthValue,
    clause,
    cost_of,
    eval_clause,
    eval_connective,
    eval_formula,
    eval_term,
    make_assignment,
    truth,
)
from .formats import BooleanCnf, FormatError, LcfDocument, parse_dimacs, parse_lcf, serialize_dimacs, serialize_lcf
from .generator import GeneratorParams, SplitMix64, generate, generate_templates3
from .reduction import ReductionOutput, decide_at_least_k, reduce_max2sat
from .solver import (
    BlockingForm,
    SolveResult,
    blocking_transform,
    branch_and_bound,
    brute_force,
    is_satisfiable,
    local_search,
    min_blocking_sum,
)

__version__ = "0.1.0"
