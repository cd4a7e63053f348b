"""Boolean Max-2-SAT to Ł-clausal MaxSAT.

Every variable gets ``m + 1`` copies of the gadget ``¬(x ⊕ x) ⊕ x``, which is
satisfied exactly at ``x ∈ {0, 1}``; every Boolean clause ``(a ∨ b)`` becomes
``(a ⊕ b)``. The gadget copies outweigh all soft clauses together, so any
optimum is Boolean and satisfies ``sol(φ) + n(m+1)`` clauses.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import FiniteDomain, LClausalForm, LClause, Literal, NegatedSum, PlainLiteral
from .formats import BooleanCnf


@dataclass(frozen=True)
class ReductionOutput:
    phi_prime: LClausalForm
    gadget_count: int
    soft_count: int

    @property
    def offset(self) -> int:
        return self.gadget_count

    @property
    def gadgets(self) -> tuple[LClause, ...]:
        return self.phi_prime.clauses[: self.gadget_count]

    @property
    def softs(self) -> tuple[LClause, ...]:
        return self.phi_prime.clauses[self.gadget_count:]


def gadget(var: int) -> LClause:
    x = Literal(var)
    return LClause((NegatedSum((x, x)), PlainLiteral(x)))


def reduce_max2sat(phi: BooleanCnf) -> ReductionOutput:
    m = phi.m
    softs = []
    for idx, c in enumerate(phi.clauses):
        if not 1 <= len(c) <= 2:
            raise ValueError(f"clause {idx + 1} has {len(c)} literals; Max-2-SAT allows 1 or 2")
        if len(c) == 1:
            c = (c[0], c[0])
        softs.append(LClause(tuple(PlainLiteral(Literal.from_int(i)) for i in c)))
    gadgets = [gadget(v) for v in range(1, phi.n + 1) for _ in range(m + 1)]
    form = LClausalForm(phi.n, tuple(gadgets + softs))
    return ReductionOutput(form, len(gadgets), m)


def decide_at_least_k(f: LClausalForm, k: int, domain: FiniteDomain):
    """Is there a ``domain``-valued assignment satisfying at least ``k`` clauses?

    Returns ``(answer, witness)``; ``witness`` is ``None`` when the answer is no.
    """
    from .solver import find_within_cost

    if not 0 <= k <= f.m:
        raise ValueError(f"k={k} outside 0..{f.m}")
    witness = find_within_cost(f, domain, f.m - k)
    return witness is not None, witness
