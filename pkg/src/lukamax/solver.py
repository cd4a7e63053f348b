"""MaxSAT over finite-valued domains.

All search code works on integers scaled by ``d - 1``: a truth value ``i/(d-1)``
is the integer ``i`` and a clause is satisfied when its scaled value reaches
``d - 1``. Witnesses are converted back to exact fractions.
"""
from __future__ import annotations

import itertools
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .core import (
    ONE,
    Assignment,
    FiniteDomain,
    LClausalForm,
    LClause,
    NegatedSum,
    eval_clause,
    eval_connective,
    Connective,
)
from .generator import SplitMix64

DEFAULT_BRUTE_BUDGET = 1 << 24
DEFAULT_MAX_FLIPS = 1000


class BudgetExceeded(RuntimeError):
    def __init__(self, required: int, budget: int):
        super().__init__(f"enumeration needs {required} assignments, budget is {budget}")
        self.required = required
        self.budget = budget


class SolveTimeout(RuntimeError):
    pass


@dataclass
class SolveResult:
    cost: int
    witness: dict[int, Fraction]
    nodes_expanded: int = 0
    time_ms: float = 0.0
    method: str = ""
    exact: bool = True


class _Compiled:
    """Scaled-integer view of a formula with per-variable occurrence lists."""

    def __init__(self, f: LClausalForm, scale: int):
        self.n = f.n
        self.m = f.m
        self.scale = scale
        self.plain: list[list[tuple[int, bool]]] = []
        self.groups: list[list[list[tuple[int, bool]]]] = []
        # occ[v] = [(clause, group or -1, negated), ...]
        self.occ: list[list[tuple[int, int, bool]]] = [[] for _ in range(f.n + 1)]
        self.clause_vars: list[list[int]] = []
        for ci, c in enumerate(f.clauses):
            plain, groups = [], []
            for t in c.terms:
                if isinstance(t, NegatedSum):
                    gi = len(groups)
                    groups.append([(l.var, l.negated) for l in t.lits])
                    for l in t.lits:
                        self.occ[l.var].append((ci, gi, l.negated))
                else:
                    plain.append((t.lit.var, t.lit.negated))
                    self.occ[t.lit.var].append((ci, -1, t.lit.negated))
            self.plain.append(plain)
            self.groups.append(groups)
            self.clause_vars.append(list(dict.fromkeys(v for v, _ in plain + [x for g in groups for x in g])))
        self.var_clauses = [sorted({c for c, _, _ in occ}) for occ in self.occ]

    def clause_value(self, ci: int, x: list[int]) -> int:
        """Exact scaled value of clause ``ci`` under full scaled assignment ``x`` (1-based)."""
        D = self.scale
        s = 0
        for v, neg in self.plain[ci]:
            s += D - x[v] if neg else x[v]
        for g in self.groups[ci]:
            inner = 0
            for v, neg in g:
                inner += D - x[v] if neg else x[v]
            if inner < D:
                s += D - inner
        return s if s < D else D

    def falsified(self, ci: int, x: list[int]) -> bool:
        return self.clause_value(ci, x) < self.scale


def _witness(x: list[int], scale: int, n: int) -> dict[int, Fraction]:
    return {v: Fraction(x[v], scale) for v in range(1, n + 1)}


def value_order(domain: FiniteDomain) -> list[int]:
    """Branching order for scaled values: 0, top, then interior ascending."""
    D = domain.scale
    return [0, D] + list(range(1, D))


def variable_order(f: LClausalForm) -> list[int]:
    """Occurring variables by descending occurrence count, ties to lower index."""
    counts = [0] * (f.n + 1)
    for c in f.clauses:
        for l in c.literals:
            counts[l.var] += 1
    return sorted((v for v in range(1, f.n + 1) if counts[v]), key=lambda v: (-counts[v], v))


class _Search:
    """Depth-first branch and bound with per-clause optimistic completion.

    A clause is counted as definitely falsified once its best completion is
    below 1: unassigned plain literals may still reach 1, unassigned literals
    inside a negated sum are taken as 0.
    """

    def __init__(self, f: LClausalForm, domain: FiniteDomain, deadline: float | None = None):
        self.cf = _Compiled(f, domain.scale)
        self.f = f
        self.D = domain.scale
        self.values = value_order(domain)
        self.order = variable_order(f)
        m = f.m
        self.free_plain = [len(p) for p in self.cf.plain]
        self.psum = [0] * m
        self.gsum = [[0] * len(g) for g in self.cf.groups]
        self.gopt = [self.D * len(g) for g in self.cf.groups]
        self.fals = [False] * m
        self.nfals = 0
        self.x = [0] * (f.n + 1)
        self.nodes = 0
        self.deadline = deadline
        # clauses with no plain literals and no groups cannot exist; clauses that
        # are falsified before any assignment (only possible with D == 0) do not arise
        self.best = m + 1
        self.best_x: list[int] | None = None
        self.stop_at = -1

    def _assign(self, v: int, val: int) -> list[int]:
        D = self.D
        free_plain, psum, gsum, gopt, fals = self.free_plain, self.psum, self.gsum, self.gopt, self.fals
        changed = []
        for c, g, neg in self.cf.occ[v]:
            lv = D - val if neg else val
            if g < 0:
                free_plain[c] -= 1
                psum[c] += lv
            elif lv:
                row = gsum[c]
                old = row[g]
                new = old + lv
                row[g] = new
                if old < D:
                    gopt[c] -= (D - old) - (D - new if new < D else 0)
            if not fals[c] and free_plain[c] == 0 and psum[c] + gopt[c] < D:
                fals[c] = True
                changed.append(c)
        self.nfals += len(changed)
        return changed

    def _unassign(self, v: int, val: int, changed: list[int]) -> None:
        D = self.D
        free_plain, psum, gsum, gopt = self.free_plain, self.psum, self.gsum, self.gopt
        for c, g, neg in self.cf.occ[v]:
            lv = D - val if neg else val
            if g < 0:
                free_plain[c] += 1
                psum[c] -= lv
            elif lv:
                row = gsum[c]
                new = row[g]
                old = new - lv
                row[g] = old
                if old < D:
                    gopt[c] += (D - old) - (D - new if new < D else 0)
        for c in changed:
            self.fals[c] = False
        self.nfals -= len(changed)

    def run(self, depth: int = 0) -> bool:
        """Returns True when the search should stop (target reached)."""
        self.nodes += 1
        if self.deadline is not None and (self.nodes & 1023) == 0 and time.perf_counter() > self.deadline:
            raise SolveTimeout(f"search exceeded its time limit after {self.nodes} nodes")
        if depth == len(self.order):
            self.best = self.nfals
            self.best_x = list(self.x)
            return self.best <= self.stop_at
        v = self.order[depth]
        for val in self.values:
            changed = self._assign(v, val)
            if self.nfals < self.best:
                self.x[v] = val
                done = self.run(depth + 1)
                self.x[v] = 0
                if done:
                    self._unassign(v, val, changed)
                    return True
            self._unassign(v, val, changed)
        return False


def _ensure_recursion(n: int) -> None:
    need = n + 200
    if sys.getrecursionlimit() < need:
        sys.setrecursionlimit(need)


def branch_and_bound(
    f: LClausalForm,
    domain: FiniteDomain,
    *,
    seed: int = 0,
    max_flips: int = DEFAULT_MAX_FLIPS,
    time_limit: float | None = None,
) -> SolveResult:
    """Exact minimum number of falsified clauses over ``domain``-valued assignments.

    The incumbent starts from :func:`local_search`; ``time_limit`` (seconds)
    raises :class:`SolveTimeout` instead of returning an inexact answer.
    """
    t0 = time.perf_counter()
    inc = local_search(f, domain, seed=seed, max_flips=max_flips)
    deadline = None if time_limit is None else t0 + time_limit
    s = _Search(f, domain, deadline)
    D = domain.scale
    s.best = inc.cost
    s.stop_at = 0
    if inc.cost > 0:
        _ensure_recursion(f.n)
        s.run()
    nodes = s.nodes
    if s.best_x is None:
        witness = inc.witness
    else:
        witness = _witness(s.best_x, D, f.n)
    return SolveResult(s.best, witness, nodes, (time.perf_counter() - t0) * 1000, "bb")


def find_within_cost(
    f: LClausalForm, domain: FiniteDomain, max_cost: int, *, time_limit: float | None = None
) -> dict[int, Fraction] | None:
    """A witness falsifying at most ``max_cost`` clauses, or ``None`` if none exists."""
    if max_cost >= f.m:
        return {v: Fraction(0) for v in range(1, f.n + 1)}
    if max_cost < 0:
        return None
    deadline = None if time_limit is None else time.perf_counter() + time_limit
    s = _Search(f, domain, deadline)
    s.best = max_cost + 1
    s.stop_at = max_cost
    _ensure_recursion(f.n)
    s.run()
    if s.best_x is None:
        return None
    return _witness(s.best_x, domain.scale, f.n)


def is_satisfiable(f: LClausalForm, domain: FiniteDomain, *, time_limit: float | None = None):
    w = find_within_cost(f, domain, 0, time_limit=time_limit)
    return w is not None, w


def brute_force(f: LClausalForm, domain: FiniteDomain, *, budget: int = DEFAULT_BRUTE_BUDGET) -> SolveResult:
    """Full enumeration in lexicographic order (x1 slowest, values ascending).

    Clause values come from the exact evaluator, memoised per clause on the
    values of that clause's own variables.
    """
    required = domain.d ** f.n
    if required > budget:
        raise BudgetExceeded(required, budget)
    t0 = time.perf_counter()
    values = domain.values
    clause_vars = [c.variables for c in f.clauses]
    caches: list[dict] = [{} for _ in f.clauses]

    def falsified(ci: int, c: LClause, a: tuple) -> bool:
        key = tuple(a[v - 1] for v in clause_vars[ci])
        hit = caches[ci].get(key)
        if hit is None:
            hit = eval_clause(c, dict(zip(clause_vars[ci], key))) < ONE
            caches[ci][key] = hit
        return hit

    best, best_a, count = f.m + 1, None, 0
    for a in itertools.product(values, repeat=f.n):
        count += 1
        cost = 0
        for ci, c in enumerate(f.clauses):
            if falsified(ci, c, a):
                cost += 1
                if cost >= best:
                    break
        if cost < best:
            best, best_a = cost, a
            if best == 0:
                break
    witness = {v: best_a[v - 1] for v in range(1, f.n + 1)}
    return SolveResult(best, witness, count, (time.perf_counter() - t0) * 1000, "brute")


def local_search(
    f: LClausalForm, domain: FiniteDomain, *, seed: int = 0, max_flips: int = DEFAULT_MAX_FLIPS
) -> SolveResult:
    """Greedy random walk giving an upper bound on the cost.

    Starts from a uniform random assignment; each flip picks a random
    falsified clause (by rank in clause order), a random variable of it, and
    moves that variable to the value falsifying the fewest clauses overall.
    """
    if max_flips < 0:
        raise ValueError("max_flips must be >= 0")
    t0 = time.perf_counter()
    D = domain.scale
    cf = _Compiled(f, D)
    rng = SplitMix64(seed)
    x = [0] * (f.n + 1)
    for v in range(1, f.n + 1):
        x[v] = rng.uniform(domain.d)
    fals = [cf.falsified(c, x) for c in range(f.m)]
    cost = sum(fals)
    best, best_x = cost, list(x)
    flips = 0
    while flips < max_flips and cost > 0:
        flips += 1
        r = rng.uniform(cost)
        ci = next(c for c in range(f.m) if fals[c] and (r := r - 1) < 0)
        cvars = cf.clause_vars[ci]
        v = cvars[rng.uniform(len(cvars))]
        touched = cf.var_clauses[v]
        base = cost - sum(fals[c] for c in touched)
        old = x[v]
        choice, choice_cost, choice_fals = old, None, None
        for val in range(D + 1):
            x[v] = val
            fl = [cf.falsified(c, x) for c in touched]
            total = base + sum(fl)
            if choice_cost is None or total < choice_cost:
                choice, choice_cost, choice_fals = val, total, fl
        x[v] = choice
        for c, fl in zip(touched, choice_fals):
            fals[c] = fl
        cost = choice_cost
        if cost < best:
            best, best_x = cost, list(x)
    return SolveResult(best, _witness(best_x, D, f.n), flips, (time.perf_counter() - t0) * 1000, "ls", exact=False)


@dataclass(frozen=True)
class BlockedClause:
    """``clause ∨ b`` with ``∨`` the weak disjunction (max)."""

    clause: LClause
    blocker: int

    def value(self, a: Assignment) -> Fraction:
        return eval_connective(Connective.WDISJ, eval_clause(self.clause, a), a[self.blocker])


@dataclass(frozen=True)
class BlockingForm:
    """A formula whose clause ``i`` is relaxed by the fresh variable ``n + i``."""

    n: int
    original: LClausalForm
    clauses: tuple[BlockedClause, ...] = field(default=())

    @property
    def blocking_vars(self) -> tuple[int, ...]:
        return tuple(bc.blocker for bc in self.clauses)

    def satisfied(self, a: Assignment) -> bool:
        return all(bc.value(a) == ONE for bc in self.clauses)

    def blocking_sum(self, a: Assignment) -> Fraction:
        return sum((a[b] for b in self.blocking_vars), Fraction(0))


def blocking_transform(f: LClausalForm) -> BlockingForm:
    blocked = tuple(BlockedClause(c, f.n + i) for i, c in enumerate(f.clauses, 1))
    return BlockingForm(f.n + f.m, f, blocked)


def min_blocking_sum(bf: BlockingForm, domain: FiniteDomain) -> SolveResult:
    """Minimise the sum of blocking variables with every relaxed clause satisfied.

    Blocking variables range over {0, 1}. Tries bounds ``B = 0, 1, ...`` in
    turn; for each, a depth-first pass over the original variables (index
    order) checks every relaxed clause as soon as its last variable is set,
    raising its blocker only when the clause would otherwise fail.
    """
    t0 = time.perf_counter()
    f = bf.original
    n, values = f.n, domain.values
    closes: list[list[BlockedClause]] = [[] for _ in range(n + 1)]
    for bc in bf.clauses:
        closes[max(bc.clause.variables)].append(bc)
    a: dict[int, Fraction] = {b: Fraction(0) for b in bf.blocking_vars}
    nodes = 0

    def dfs(v: int, budget: int) -> bool:
        nodes_inc()
        if v > n:
            return True
        for val in values:
            a[v] = val
            raised = []
            for bc in closes[v]:
                if bc.value(a) < ONE:
                    a[bc.blocker] = ONE
                    raised.append(bc.blocker)
            if len(raised) <= budget and dfs(v + 1, budget - len(raised)):
                return True
            for b in raised:
                a[b] = Fraction(0)
        del a[v]
        return False

    def nodes_inc():
        nonlocal nodes
        nodes += 1

    _ensure_recursion(n)
    for bound in range(f.m + 1):
        if dfs(1, bound):
            assert bf.satisfied(a)
            witness = {v: a[v] for v in range(1, bf.n + 1)}
            return SolveResult(bound, witness, nodes, (time.perf_counter() - t0) * 1000, "blocking")
    raise AssertionError("setting every blocker to 1 always satisfies the relaxed form")
