"""Seeded random Ł-clausal forms.

Both models draw from :class:`SplitMix64`, with the consumption order fixed so
that a ``(params, seed)`` pair names the same instance on every platform.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import FiniteDomain, LClausalForm, LClause, Literal, NegatedSum, PlainLiteral

MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 generator; ``uniform(b)`` is ``next() mod b``."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def uniform(self, bound: int) -> int:
        if bound < 1:
            raise ValueError("uniform() bound must be >= 1")
        return self.next() % bound


@dataclass(frozen=True)
class GeneratorParams:
    n: int
    m: int
    k: int
    p: int
    d: int = 3
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"need at least one variable, got n={self.n}")
        if self.m < 0:
            raise ValueError(f"clause count must be >= 0, got m={self.m}")
        if not 1 <= self.k <= self.n:
            raise ValueError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")
        if self.p < 1:
            raise ValueError(f"p must be >= 1, got p={self.p}")
        if self.d < 2:
            raise ValueError(f"d must be >= 2, got d={self.d}")

    @property
    def domain(self) -> FiniteDomain:
        return FiniteDomain(self.d)


def _distinct_vars(rng: SplitMix64, n: int, k: int, pool: list[int]) -> list[int]:
    # partial Fisher-Yates over a fresh 1..n pool
    pool[:] = range(1, n + 1)
    for j in range(k):
        r = j + rng.uniform(n - j)
        pool[j], pool[r] = pool[r], pool[j]
    return pool[:k]


def generate(params: GeneratorParams) -> LClausalForm:
    """Draw ``m`` clauses of width ``k`` under the ``(m, n, k, p)`` model.

    Each clause takes ``k`` distinct variables, each followed by a polarity
    bit, then splits that literal list left to right: a draw
    ``r = uniform(p)`` equal to ``p // 2`` opens a negated sum whose length is
    uniform on ``1..remaining``; any other draw emits a single plain literal.
    """
    n, k, p = params.n, params.k, params.p
    rng = SplitMix64(params.seed)
    pool: list[int] = []
    clauses = []
    for _ in range(params.m):
        lits = []
        pool[:] = range(1, n + 1)
        for j in range(k):
            r = j + rng.uniform(n - j)
            pool[j], pool[r] = pool[r], pool[j]
            lits.append(Literal(pool[j], rng.uniform(2) == 1))
        terms = []
        used = 0
        while used < k:
            if rng.uniform(p) == p // 2:
                t = 1 + rng.uniform(k - used)
                terms.append(NegatedSum(tuple(lits[used:used + t])))
                used += t
            else:
                terms.append(PlainLiteral(lits[used]))
                used += 1
        clauses.append(LClause(tuple(terms)))
    return LClausalForm(n, tuple(clauses))


# (negated flags for x_i1, x_i2, x_i3) in the published template order
_SIGN_TEMPLATES = (
    (False, False, False),
    (True, False, False),
    (False, True, False),
    (False, False, True),
    (True, True, False),
    (True, False, True),
    (False, True, True),
    (True, True, True),
)
N_TEMPLATES = 11


def template_clause(index: int, a: int, b: int, c: int) -> LClause:
    """Clause ``index`` (0..10) of the eleven 3-valued templates over vars ``a, b, c``."""
    if 0 <= index < 8:
        sa, sb, sc = _SIGN_TEMPLATES[index]
        return LClause((PlainLiteral(Literal(a, sa)), PlainLiteral(Literal(b, sb)), PlainLiteral(Literal(c, sc))))
    if index == 8:
        return LClause((NegatedSum((Literal(a), Literal(b))), PlainLiteral(Literal(c))))
    if index == 9:
        return LClause((NegatedSum((Literal(a), Literal(c))), PlainLiteral(Literal(b))))
    if index == 10:
        return LClause((PlainLiteral(Literal(a)), NegatedSum((Literal(b), Literal(c)))))
    raise ValueError(f"template index must be in 0..10, got {index}")


def generate_templates3(n: int, m: int, seed: int) -> LClausalForm:
    """Draw ``m`` clauses, each one of the eleven templates over three distinct variables."""
    if n < 3:
        raise ValueError(f"the template model needs n >= 3, got n={n}")
    if m < 0:
        raise ValueError(f"clause count must be >= 0, got m={m}")
    rng = SplitMix64(seed)
    pool: list[int] = []
    clauses = []
    for _ in range(m):
        a, b, c = _distinct_vars(rng, n, 3, pool)
        clauses.append(template_clause(rng.uniform(N_TEMPLATES), a, b, c))
    return LClausalForm(n, tuple(clauses))
