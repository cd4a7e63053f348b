"""Exact Łukasiewicz semantics over rational truth values.

Truth values are :class:`fractions.Fraction` instances constrained to
``[0, 1]``. A formula is a weak conjunction (min) of clauses; each clause is
a strong disjunction (clamped sum) of terms; a term is either a literal or a
negated strong sum of literals.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

TruthValue = Fraction
Assignment = Mapping[int, TruthValue]

ZERO = Fraction(0)
ONE = Fraction(1)


class LogicError(ValueError):
    """Structurally invalid formula or value."""


class EvaluationError(LogicError):
    """Raised when an assignment does not cover a variable being evaluated."""

    def __init__(self, var: int):
        super().__init__(f"variable x{var} is unassigned")
        self.var = var


def truth(value) -> TruthValue:
    """Coerce ``value`` (int, str like ``"1/2"``, Fraction) to a checked truth value."""
    if isinstance(value, float):
        raise LogicError("floats are not accepted as truth values; use a Fraction or 'a/b' string")
    v = Fraction(value)
    if v < 0 or v > 1:
        raise LogicError(f"truth value {v} outside [0, 1]")
    return v


@dataclass(frozen=True)
class FiniteDomain:
    """The ``d``-valued domain ``{0, 1/(d-1), ..., 1}``."""

    d: int

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 2:
            raise LogicError(f"domain size must be an integer >= 2, got {self.d!r}")

    @property
    def scale(self) -> int:
        return self.d - 1

    @property
    def values(self) -> tuple[TruthValue, ...]:
        return tuple(Fraction(i, self.d - 1) for i in range(self.d))

    def __contains__(self, v) -> bool:
        v = Fraction(v)
        return 0 <= v <= 1 and (v * (self.d - 1)).denominator == 1


class Connective(enum.Enum):
    NEG = "neg"
    SDISJ = "sdisj"
    SCONJ = "sconj"
    WDISJ = "wdisj"
    WCONJ = "wconj"
    IMPL = "impl"


def eval_connective(kind: Connective, a: TruthValue, b: TruthValue | None = None) -> TruthValue:
    if kind is Connective.NEG:
        if b is not None:
            raise LogicError("negation takes a single operand")
        return ONE - a
    if b is None:
        raise LogicError(f"{kind.name} takes two operands")
    if kind is Connective.SDISJ:
        return min(ONE, a + b)
    if kind is Connective.SCONJ:
        return max(a + b - 1, ZERO)
    if kind is Connective.WDISJ:
        return max(a, b)
    if kind is Connective.WCONJ:
        return min(a, b)
    if kind is Connective.IMPL:
        return min(ONE, 1 - a + b)
    raise LogicError(f"unknown connective {kind!r}")


@dataclass(frozen=True)
class Literal:
    var: int
    negated: bool = False

    def __post_init__(self):
        if not isinstance(self.var, int) or self.var < 1:
            raise LogicError(f"variable index must be a positive integer, got {self.var!r}")

    @classmethod
    def from_int(cls, i: int) -> "Literal":
        """DIMACS-style signed integer to literal (``-3`` is ``¬x3``)."""
        if i == 0:
            raise LogicError("literal 0 is not a variable")
        return cls(abs(i), i < 0)

    def to_int(self) -> int:
        return -self.var if self.negated else self.var

    def __str__(self):
        return f"¬x{self.var}" if self.negated else f"x{self.var}"


@dataclass(frozen=True)
class PlainLiteral:
    lit: Literal

    @property
    def literals(self) -> tuple[Literal, ...]:
        return (self.lit,)

    def __str__(self):
        return str(self.lit)


@dataclass(frozen=True)
class NegatedSum:
    """The term ``¬(l1 ⊕ ... ⊕ lt)``."""

    lits: tuple[Literal, ...]

    def __post_init__(self):
        object.__setattr__(self, "lits", tuple(self.lits))
        if not self.lits:
            raise LogicError("a negated sum needs at least one literal")

    @property
    def literals(self) -> tuple[Literal, ...]:
        return self.lits

    def __str__(self):
        return "¬(" + " ⊕ ".join(map(str, self.lits)) + ")"


Term = Union[PlainLiteral, NegatedSum]


@dataclass(frozen=True)
class LClause:
    terms: tuple[Term, ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if not self.terms:
            raise LogicError("an Ł-clause needs at least one term")
        for t in self.terms:
            if not isinstance(t, (PlainLiteral, NegatedSum)):
                raise LogicError(f"not a term: {t!r}")

    @property
    def literals(self) -> tuple[Literal, ...]:
        return tuple(l for t in self.terms for l in t.literals)

    @property
    def width(self) -> int:
        return sum(len(t.literals) for t in self.terms)

    @property
    def variables(self) -> tuple[int, ...]:
        """Distinct variables in first-occurrence order."""
        return tuple(dict.fromkeys(l.var for l in self.literals))

    def __str__(self):
        return "(" + " ⊕ ".join(map(str, self.terms)) + ")"


@dataclass(frozen=True)
class LClausalForm:
    n: int
    clauses: tuple[LClause, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(self.clauses))
        if not isinstance(self.n, int) or self.n < 0:
            raise LogicError(f"variable count must be a non-negative integer, got {self.n!r}")
        for idx, c in enumerate(self.clauses):
            for l in c.literals:
                if l.var > self.n:
                    raise LogicError(f"clause {idx + 1}: variable {l.var} exceeds n={self.n}")

    @property
    def m(self) -> int:
        return len(self.clauses)

    def __str__(self):
        return " ∧ ".join(map(str, self.clauses)) if self.clauses else "⊤"


def clause(*items) -> LClause:
    """Build a clause from signed ints (plain literals) and lists (negated sums).

    ``clause([1, 2], 3)`` is ``¬(x1 ⊕ x2) ⊕ x3``.
    """
    terms: list[Term] = []
    for it in items:
        if isinstance(it, (PlainLiteral, NegatedSum)):
            terms.append(it)
        elif isinstance(it, int):
            terms.append(PlainLiteral(Literal.from_int(it)))
        else:
            terms.append(NegatedSum(tuple(Literal.from_int(i) for i in it)))
    return LClause(tuple(terms))


def _lookup(a: Assignment, var: int) -> TruthValue:
    try:
        return a[var]
    except KeyError:
        raise EvaluationError(var) from None


def eval_literal(lit: Literal, a: Assignment) -> TruthValue:
    v = _lookup(a, lit.var)
    return ONE - v if lit.negated else v


def eval_term(t: Term, a: Assignment) -> TruthValue:
    if isinstance(t, PlainLiteral):
        return eval_literal(t.lit, a)
    return max(ZERO, ONE - sum((eval_literal(l, a) for l in t.lits), ZERO))


def eval_clause(c: LClause, a: Assignment) -> TruthValue:
    return min(ONE, sum((eval_term(t, a) for t in c.terms), ZERO))


def eval_formula(f: LClausalForm, a: Assignment) -> TruthValue:
    return min((eval_clause(c, a) for c in f.clauses), default=ONE)


def is_satisfied(c: LClause, a: Assignment) -> bool:
    return eval_clause(c, a) == ONE


def cost_of(f: LClausalForm, a: Assignment) -> int:
    """Number of clauses of ``f`` falsified (value < 1) under ``a``."""
    return sum(1 for c in f.clauses if eval_clause(c, a) < ONE)


def make_assignment(values: Sequence | Mapping, *, start: int = 1) -> dict[int, TruthValue]:
    """Build a checked assignment from a sequence (indexed from ``start``) or a mapping."""
    items: Iterable = values.items() if isinstance(values, Mapping) else enumerate(values, start)
    return {int(k): truth(v) for k, v in items}
