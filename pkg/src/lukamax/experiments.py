"""Parameter sweeps over generated instances, written as CSV.

Instance ``j`` of sweep point ``i`` uses seed ``base_seed + i*10007 + j``,
so a config always reproduces the same instances.
"""
from __future__ import annotations

import csv
import io
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from .core import FiniteDomain
from .generator import GeneratorParams, generate, generate_templates3
from .solver import SolveTimeout, branch_and_bound, is_satisfiable
from .smtlib import SmtError, check_decision, external_cost, solver_command

KINDS = ("phase", "cost_vs_p", "cost_vs_ratio", "cost_vs_k")
METHODS = ("bb", "smt")
SEED_STRIDE = 10007
CSV_HEADER = ("swept", "mean_cost", "sat_fraction", "instances", "mean_solve_ms")


@dataclass(frozen=True)
class SweepConfig:
    kind: str
    swept: tuple
    n: int = 15
    m: int = 45
    k: int = 4
    p: int = 1
    d: int = 3
    instances: int = 30
    base_seed: int = 0
    method: str = "bb"
    max_flips: int = 1000
    time_limit: float | None = None
    record_timing: bool = True
    phase_cost: bool = False
    smt_cmd: str | None = None
    jobs: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown experiment {self.kind!r}; choose from {KINDS}")
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}; choose from {METHODS}")
        if self.instances < 1:
            raise ValueError("instances per point must be >= 1")
        object.__setattr__(self, "swept", tuple(self.swept))

    def seed(self, point: int, instance: int) -> int:
        return self.base_seed + point * SEED_STRIDE + instance


@dataclass(frozen=True)
class SweepRow:
    swept: object
    mean_cost: Fraction | None
    sat_fraction: Fraction | None
    instances: int
    mean_solve_ms: float

    @property
    def complete(self) -> bool:
        return self.mean_cost is not None or self.sat_fraction is not None


def _instance(cfg: SweepConfig, value, seed: int):
    if cfg.kind == "phase":
        m = round(Fraction(value) * cfg.n)
        return generate_templates3(cfg.n, m, seed)
    fields = {"cost_vs_p": "p", "cost_vs_ratio": "m", "cost_vs_k": "k"}
    params = dict(n=cfg.n, m=cfg.m, k=cfg.k, p=cfg.p, d=cfg.d, seed=seed)
    params[fields[cfg.kind]] = int(value)
    return generate(GeneratorParams(**params))


def _solve_one(args):
    """(cost or None, satisfiable, ms) for one instance; ``None`` result on timeout."""
    cfg, value, seed = args
    f = _instance(cfg, value, seed)
    dom = FiniteDomain(cfg.d)
    t0 = time.perf_counter()
    want_cost = cfg.kind != "phase" or cfg.phase_cost
    try:
        if cfg.method == "smt":
            cmd = cfg.smt_cmd or solver_command()
            if want_cost:
                cost = external_cost(f, dom, cmd, cfg.time_limit)
                sat = cost == 0
            else:
                cost, sat = None, check_decision(f, dom, 0, cmd, cfg.time_limit)
        elif want_cost:
            cost = branch_and_bound(f, dom, seed=seed, max_flips=cfg.max_flips, time_limit=cfg.time_limit).cost
            sat = cost == 0
        else:
            cost, (sat, _) = None, is_satisfiable(f, dom, time_limit=cfg.time_limit)
    except (SolveTimeout, SmtError) as e:
        if isinstance(e, SmtError) and "timed out" not in str(e):
            raise
        return None
    return cost, sat, (time.perf_counter() - t0) * 1000


def run_sweep(cfg: SweepConfig) -> list[SweepRow]:
    tasks = [(cfg, v, cfg.seed(i, j)) for i, v in enumerate(cfg.swept) for j in range(cfg.instances)]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            results = list(pool.map(_solve_one, tasks))
    else:
        results = [_solve_one(t) for t in tasks]
    rows = []
    for i, v in enumerate(cfg.swept):
        chunk = [r for r in results[i * cfg.instances:(i + 1) * cfg.instances] if r is not None]
        done = len(chunk)
        if not done:
            rows.append(SweepRow(v, None, None, 0, 0.0))
            continue
        costs = [c for c, _, _ in chunk]
        mean_cost = None if costs[0] is None else Fraction(sum(costs), done)
        sat_fraction = Fraction(sum(1 for _, s, _ in chunk if s), done)
        ms = sum(t for _, _, t in chunk) / done if cfg.record_timing else 0.0
        rows.append(SweepRow(v, mean_cost, sat_fraction, done, ms))
    return rows


def run_phase(cfg: SweepConfig) -> list[SweepRow]:
    return run_sweep(replace(cfg, kind="phase"))


def run_cost_vs_p(cfg: SweepConfig) -> list[SweepRow]:
    return run_sweep(replace(cfg, kind="cost_vs_p"))


def run_cost_vs_ratio(cfg: SweepConfig) -> list[SweepRow]:
    return run_sweep(replace(cfg, kind="cost_vs_ratio"))


def run_cost_vs_k(cfg: SweepConfig) -> list[SweepRow]:
    return run_sweep(replace(cfg, kind="cost_vs_k"))


def decimal6(x) -> str:
    """Exact fixed-point rendering with 6 digits (round half to even)."""
    q = round(Fraction(x) * 10**6)
    sign = "-" if q < 0 else ""
    q = abs(q)
    return f"{sign}{q // 10**6}.{q % 10**6:06d}"


def _swept_text(v) -> str:
    if isinstance(v, int):
        return str(v)
    return decimal6(Fraction(v))


def rows_to_csv(rows: Sequence[SweepRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow([
            _swept_text(r.swept),
            "" if r.mean_cost is None else decimal6(r.mean_cost),
            "" if r.sat_fraction is None else decimal6(r.sat_fraction),
            r.instances,
            f"{r.mean_solve_ms:.6f}",
        ])
    return buf.getvalue()
