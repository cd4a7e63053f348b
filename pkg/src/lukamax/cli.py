"""Command-line front end: ``lukamax <command> ...``."""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import experiments
from .core import FiniteDomain, LogicError, cost_of, eval_formula, make_assignment
from .formats import FormatError, parse_dimacs, parse_lcf, serialize_lcf
from .generator import GeneratorParams, generate, generate_templates3
from .reduction import reduce_max2sat
from .smtlib import SmtError, emit_decision, emit_optimization, external_solve
from .solver import BudgetExceeded, SolveResult, branch_and_bound, brute_force, local_search


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8", newline="\n")


def _frac(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}"


def witness_lines(w: dict, per_line: int = 10) -> list[str]:
    items = [f"{v}={_frac(w[v])}" for v in sorted(w)]
    return ["v " + " ".join(items[i:i + per_line]) for i in range(0, len(items), per_line)]


def _parse_assignment(tokens) -> dict:
    values = {}
    for tok in tokens:
        var, _, val = tok.partition("=")
        if not val:
            raise LogicError(f"expected var=value, got {tok!r}")
        values[int(var)] = val
    return make_assignment(values)


def cmd_generate(a) -> int:
    if a.templates3:
        f = generate_templates3(a.vars, a.clauses, a.seed)
        dom = FiniteDomain(3)
    else:
        params = GeneratorParams(n=a.vars, m=a.clauses, k=a.k, p=a.p, d=a.domain, seed=a.seed)
        f, dom = generate(params), params.domain
    _write(a.out, serialize_lcf(f, dom))
    return 0


def cmd_solve(a) -> int:
    doc = parse_lcf(_read(a.input))
    dom = FiniteDomain(a.domain) if a.domain else doc.domain
    if a.method == "bb":
        r = branch_and_bound(doc.form, dom, seed=a.seed, max_flips=a.max_flips)
    elif a.method == "brute":
        r = brute_force(doc.form, dom)
    elif a.method == "ls":
        r = local_search(doc.form, dom, seed=a.seed, max_flips=a.max_flips)
    else:
        cost, witness = external_solve(doc.form, dom)
        r = SolveResult(cost, witness, method="smt")
    print(f"cost {r.cost}")
    for line in witness_lines(r.witness):
        print(line)
    return 0


def cmd_eval(a) -> int:
    doc = parse_lcf(_read(a.input))
    tokens = list(a.values)
    if a.witness:
        for line in Path(a.witness).read_text().splitlines():
            if line.startswith("v "):
                tokens += line.split()[1:]
    assignment = _parse_assignment(tokens)
    print(f"value {_frac(eval_formula(doc.form, assignment))}")
    print(f"cost {cost_of(doc.form, assignment)}")
    return 0


def cmd_reduce(a) -> int:
    red = reduce_max2sat(parse_dimacs(_read(a.input)))
    _write(a.output, serialize_lcf(red.phi_prime, FiniteDomain(3), [f"reduction offset {red.offset}"]))
    return 0


def cmd_encode(a) -> int:
    doc = parse_lcf(_read(a.input))
    dom = FiniteDomain(a.domain) if a.domain else doc.domain
    enc = emit_optimization(doc.form, dom) if a.opt else emit_decision(doc.form, dom, a.bound)
    _write(a.output, enc.text)
    return 0


_EXPERIMENTS = {
    "phase": "phase",
    "cost-vs-p": "cost_vs_p",
    "cost-vs-ratio": "cost_vs_ratio",
    "cost-vs-k": "cost_vs_k",
}
_DEFAULT_SWEEPS = {
    "phase": "1.0,1.25,1.5,1.75,2.0,2.25,2.5,2.75,3.0",
    "cost_vs_p": "1,2,5,10,20",
    "cost_vs_ratio": "15,30,45,60",
    "cost_vs_k": "3,4,5,6,7,8",
}


def cmd_experiment(a) -> int:
    kind = _EXPERIMENTS[a.kind]
    raw = (a.sweep or _DEFAULT_SWEEPS[kind]).split(",")
    swept = tuple(Fraction(s.strip()) if kind == "phase" else int(s) for s in raw)
    cfg = experiments.SweepConfig(
        kind=kind,
        swept=swept,
        n=a.vars if a.vars is not None else (30 if kind == "phase" else 15),
        m=a.clauses,
        k=a.k,
        p=a.p,
        d=a.domain,
        instances=a.instances,
        base_seed=a.seed,
        method=a.method,
        max_flips=a.max_flips,
        time_limit=a.time_limit,
        record_timing=not a.no_timing,
        phase_cost=a.phase_cost,
        jobs=a.jobs,
    )
    _write(a.out, experiments.rows_to_csv(experiments.run_sweep(cfg)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lukamax", description="Łukasiewicz Ł-clausal MaxSAT tools")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="generate a random instance (LCF)")
    g.add_argument("--vars", type=int, required=True)
    g.add_argument("--clauses", type=int, required=True)
    g.add_argument("--k", type=int, default=3)
    g.add_argument("--p", type=int, default=1)
    g.add_argument("--domain", type=int, default=3)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--templates3", action="store_true", help="use the eleven 3-valued templates")
    g.add_argument("--out")
    g.set_defaults(func=cmd_generate)

    s = sub.add_parser("solve", help="compute the MaxSAT cost")
    s.add_argument("input")
    s.add_argument("--method", choices=("bb", "brute", "ls", "smt"), default="bb")
    s.add_argument("--domain", type=int, help="override the file's domain size")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-flips", type=int, default=1000)
    s.set_defaults(func=cmd_solve)

    e = sub.add_parser("eval", help="evaluate an assignment (var=num/den ...)")
    e.add_argument("input")
    e.add_argument("values", nargs="*")
    e.add_argument("--witness", help="file with 'v var=value ...' lines")
    e.set_defaults(func=cmd_eval)

    r = sub.add_parser("reduce", help="Max-2-SAT DIMACS to LCF")
    r.add_argument("input")
    r.add_argument("output")
    r.set_defaults(func=cmd_reduce)

    c = sub.add_parser("encode", help="emit an SMT-LIB2 script")
    grp = c.add_mutually_exclusive_group(required=True)
    grp.add_argument("--bound", type=int)
    grp.add_argument("--opt", action="store_true")
    c.add_argument("--domain", type=int)
    c.add_argument("input")
    c.add_argument("output")
    c.set_defaults(func=cmd_encode)

    x = sub.add_parser("experiment", help="run a sweep and write CSV")
    x.add_argument("kind", choices=sorted(_EXPERIMENTS))
    x.add_argument("--vars", type=int)
    x.add_argument("--clauses", type=int, default=45)
    x.add_argument("--k", type=int, default=4)
    x.add_argument("--p", type=int, default=1)
    x.add_argument("--domain", type=int, default=3)
    x.add_argument("--seed", type=int, default=0)
    x.add_argument("--instances", type=int, default=30)
    x.add_argument("--sweep", help="comma-separated swept values")
    x.add_argument("--method", choices=experiments.METHODS, default="bb")
    x.add_argument("--max-flips", type=int, default=1000)
    x.add_argument("--time-limit", type=float, help="seconds per instance; timed-out instances are dropped from the row")
    x.add_argument("--no-timing", action="store_true", help="write 0 for mean_solve_ms (byte-reproducible CSV)")
    x.add_argument("--phase-cost", action="store_true", help="phase: compute exact costs, not just satisfiability")
    x.add_argument("--jobs", type=int, default=1)
    x.add_argument("--out")
    x.set_defaults(func=cmd_experiment)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, LogicError, SmtError, BudgetExceeded, ValueError, OSError) as e:
        print(f"lukamax: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
