"""SMT-LIB2 (QF_LIA) encodings of the blocking-variable formulation.

Truth values are scaled to integers ``0..d-1``. Each clause ``i`` gets a 0/1
blocker ``bi``; each negated sum ``j`` in it a defined integer ``ti_j``.
"""
from __future__ import annotations

import os
import shlex
import subprocess
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction

from .core import FiniteDomain, LClausalForm, NegatedSum

SMT_CMD_ENV = "LUKAMAX_SMT_CMD"


class SmtError(RuntimeError):
    pass


@dataclass(frozen=True)
class SmtEncoding:
    text: str
    var_map: dict[int, str]
    scale: int
    blockers: tuple[str, ...] = field(default=())


def _sum(items: list[str]) -> str:
    if not items:
        return "0"
    if len(items) == 1:
        return items[0]
    return "(+ " + " ".join(items) + ")"


def _lit(var: int, negated: bool, D: int) -> str:
    return f"(- {D} x{var})" if negated else f"x{var}"


def _constraints(f: LClausalForm, domain: FiniteDomain) -> tuple[list[str], dict[int, str], tuple[str, ...]]:
    D = domain.scale
    out = ["(set-logic QF_LIA)"]
    var_map = {v: f"x{v}" for v in range(1, f.n + 1)}
    for v, name in var_map.items():
        out.append(f"(declare-const {name} Int)")
        out.append(f"(assert (and (<= 0 {name}) (<= {name} {D})))")
    blockers = []
    for i, c in enumerate(f.clauses, 1):
        b = f"b{i}"
        blockers.append(b)
        out.append(f"(declare-const {b} Int)")
        out.append(f"(assert (and (<= 0 {b}) (<= {b} 1)))")
        parts = []
        j = 0
        for t in c.terms:
            if isinstance(t, NegatedSum):
                j += 1
                name = f"t{i}_{j}"
                s = _sum([_lit(l.var, l.negated, D) for l in t.lits])
                out.append(f"(declare-const {name} Int)")
                out.append(f"(assert (= {name} (ite (>= {s} {D}) 0 (- {D} {s}))))")
                parts.append(name)
            else:
                parts.append(_lit(t.lit.var, t.lit.negated, D))
        out.append(f"(assert (or (>= {_sum(parts)} {D}) (= {b} 1)))")
    return out, var_map, tuple(blockers)


def emit_decision(f: LClausalForm, domain: FiniteDomain, bound: int) -> SmtEncoding:
    """Script that is satisfiable iff some assignment falsifies at most ``bound`` clauses."""
    if not 0 <= bound <= f.m:
        raise ValueError(f"bound {bound} outside 0..{f.m}")
    lines, var_map, blockers = _constraints(f, domain)
    lines.append(f"(assert (<= {_sum(list(blockers))} {bound}))")
    lines.append("(check-sat)")
    return SmtEncoding("\n".join(lines) + "\n", var_map, domain.scale, blockers)


def emit_optimization(f: LClausalForm, domain: FiniteDomain) -> SmtEncoding:
    """Script minimising the blocker sum (OMT ``minimize`` extension).

    The optimum is reported by ``(get-value (cost))``.
    """
    lines, var_map, blockers = _constraints(f, domain)
    lines.append("(declare-const cost Int)")
    lines.append(f"(assert (= cost {_sum(list(blockers))}))")
    lines.append("(minimize cost)")
    lines.append("(check-sat)")
    lines.append("(get-value (cost))")
    return SmtEncoding("\n".join(lines) + "\n", var_map, domain.scale, blockers)


def solver_command() -> str | None:
    return os.environ.get(SMT_CMD_ENV) or None


def _argv(template: str, path: str) -> list[str]:
    argv = shlex.split(template)
    if any("{file}" in a for a in argv):
        return [a.replace("{file}", path) for a in argv]
    return argv + [path]


def run_script(text: str, solver_cmd: str, timeout: float | None = None) -> list[str]:
    """Run ``solver_cmd`` on ``text``; return stripped non-empty output lines.

    ``solver_cmd`` is a command line; ``{file}`` marks where the script path
    goes, otherwise the path is appended.
    """
    fd, path = tempfile.mkstemp(suffix=".smt2")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        try:
            proc = subprocess.run(_argv(solver_cmd, path), capture_output=True, text=True, timeout=timeout)
        except subprocess.TimeoutExpired:
            raise SmtError(f"solver timed out after {timeout}s: {solver_cmd}") from None
        except OSError as e:
            raise SmtError(f"cannot run solver {solver_cmd!r}: {e}") from None
    finally:
        os.unlink(path)
    lines = [l.strip() for l in proc.stdout.splitlines() if l.strip()]
    if not lines or lines[0] not in ("sat", "unsat"):
        first = lines[0] if lines else "<no output>"
        raise SmtError(
            f"solver gave {first!r} (exit {proc.returncode}); stderr: {proc.stderr.strip()[:200]}"
        )
    return lines


def check_decision(f: LClausalForm, domain: FiniteDomain, bound: int, solver_cmd: str, timeout=None) -> bool:
    return run_script(emit_decision(f, domain, bound).text, solver_cmd, timeout)[0] == "sat"


def external_cost(f: LClausalForm, domain: FiniteDomain, solver_cmd: str | None = None, timeout=None) -> int:
    """Least bound the external solver reports sat, by binary search over ``0..m``."""
    solver_cmd = solver_cmd or solver_command()
    if not solver_cmd:
        raise SmtError(f"no solver command given and {SMT_CMD_ENV} is unset")
    lo, hi = 0, f.m  # bound m is always sat
    while lo < hi:
        mid = (lo + hi) // 2
        if check_decision(f, domain, mid, solver_cmd, timeout):
            hi = mid
        else:
            lo = mid + 1
    return lo


def external_solve(f: LClausalForm, domain: FiniteDomain, solver_cmd: str | None = None, timeout=None):
    """``(cost, witness)``: :func:`external_cost`, then one more call asking for the model."""
    solver_cmd = solver_cmd or solver_command()
    cost = external_cost(f, domain, solver_cmd, timeout)
    if f.n == 0:
        return cost, {}
    enc = emit_decision(f, domain, cost)
    names = " ".join(enc.var_map.values())
    lines = run_script(enc.text + f"(get-value ({names}))\n", solver_cmd, timeout)
    if lines[0] != "sat":
        raise SmtError(f"solver reported unsat at its own optimum {cost}")
    toks = " ".join(lines[1:]).replace("(", " ").replace(")", " ").split()
    values = dict(zip(toks[::2], toks[1::2]))
    try:
        witness = {v: Fraction(int(values[name]), domain.scale) for v, name in enc.var_map.items()}
    except (KeyError, ValueError):
        raise SmtError(f"cannot read model from {' '.join(lines[1:])!r}") from None
    return cost, witness


def external_optimum(f: LClausalForm, domain: FiniteDomain, solver_cmd: str | None = None, timeout=None) -> int:
    """Optimum of :func:`emit_optimization` from an OMT-capable solver."""
    solver_cmd = solver_cmd or solver_command()
    if not solver_cmd:
        raise SmtError(f"no solver command given and {SMT_CMD_ENV} is unset")
    lines = run_script(emit_optimization(f, domain).text, solver_cmd, timeout)
    if lines[0] != "sat":
        raise SmtError("optimisation script reported unsat")
    text = " ".join(lines[1:]).replace("(", " ").replace(")", " ").split()
    try:
        return int(text[text.index("cost") + 1])
    except (ValueError, IndexError):
        raise SmtError(f"cannot read objective from {' '.join(lines[1:])!r}") from None
