import itertools
import re
import random
import shutil

import pytest

from lukamax import FiniteDomain, GeneratorParams, LClausalForm, branch_and_bound, brute_force, clause, generate
from lukamax.core import eval_clause
from lukamax.smtlib import (
    SmtError,
    emit_decision,
    emit_optimization,
    external_cost,
    external_optimum,
    external_solve,
    run_script,
    solver_command,
)
from smtinterp import Script, parse

SOLVER = solver_command() or (shutil.which("z3") and "z3")
gated = pytest.mark.skipif(not SOLVER, reason="no SMT-LIB solver configured (LUKAMAX_SMT_CMD or z3 on PATH)")


def small(seed, n_max=3, m_max=5):
    rnd = random.Random(seed)
    n = rnd.randint(1, n_max)
    return generate(GeneratorParams(n=n, m=rnd.randint(0, m_max), k=rnd.randint(1, n), p=rnd.choice((1, 2, 5)), seed=seed))


def test_script_shape(x_and_not_x, d3):
    text = emit_decision(x_and_not_x, d3, 1).text
    assert text.startswith("(set-logic QF_LIA)\n") and text.endswith("(check-sat)\n")
    assert "(assert (<= (+ b1 b2) 1))" in text
    enc = emit_decision(LClausalForm(2, (clause([1, -2], 2),)), d3, 0)
    assert "(declare-const t1_1 Int)" in enc.text
    assert "(assert (= t1_1 (ite (>= (+ x1 (- 2 x2)) 2) 0 (- 2 (+ x1 (- 2 x2))))))" in enc.text
    assert enc.var_map == {1: "x1", 2: "x2"} and enc.scale == 2 and enc.blockers == ("b1",)
    with pytest.raises(ValueError):
        emit_decision(x_and_not_x, d3, 3)


def _identifiers(e):
    if isinstance(e, list):
        return [x for sub in e for x in _identifiers(sub)]
    if isinstance(e, str) and re.fullmatch(r"x\d+|b\d+|t\d+_\d+|cost", e):
        return [e]
    return []


@pytest.mark.parametrize("seed", range(20))
def test_well_formed_and_declared_before_use(seed, d3):
    f = small(seed, n_max=6, m_max=10)
    for emit in (lambda: emit_decision(f, d3, f.m // 2), lambda: emit_optimization(f, d3)):
        text = emit().text
        assert text == emit().text
        assert text.count("(") == text.count(")")
        declared = set()
        for cmd in parse(text):
            if cmd[0] == "declare-const":
                assert cmd[1] not in declared
                declared.add(cmd[1])
            else:
                assert set(_identifiers(cmd[1:])) <= declared


@pytest.mark.parametrize("d", [2, 3, 4])
@pytest.mark.parametrize("seed", range(8))
def test_clause_constraints_mirror_semantics(seed, d):
    dom = FiniteDomain(d)
    f = small(seed)
    script = Script(emit_decision(f, dom, f.m).text)
    clause_asserts = [a for a in script.asserts if a[0] == "or"]
    assert len(clause_asserts) == f.m
    for xs in itertools.product(range(d), repeat=f.n):
        env = {f"x{v}": x for v, x in enumerate(xs, 1)} | {f"b{i}": 0 for i in range(1, f.m + 1)}
        env = script.complete(env)
        a = {v: dom.values[x] for v, x in enumerate(xs, 1)}
        from smtinterp import ev
        for c, asrt in zip(f.clauses, clause_asserts):
            assert ev(asrt, env) == (eval_clause(c, a) == 1)


@pytest.mark.parametrize("seed", range(25))
def test_decision_sat_iff_bound_covers_cost(seed, d3):
    f = small(seed)
    cost = brute_force(f, d3).cost
    for bound in range(f.m + 1):
        assert Script(emit_decision(f, d3, bound).text).satisfiable(2) == (bound >= cost)


def test_decision_examples(x_and_not_x, d3):
    assert not Script(emit_decision(x_and_not_x, d3, 0).text).satisfiable(2)
    assert Script(emit_decision(x_and_not_x, d3, 1).text).satisfiable(2)


def test_empty_form_optimisation(d3):
    text = emit_optimization(LClausalForm(2), d3).text
    assert "(assert (= cost 0))" in text and "(minimize cost)" in text


def test_external_cost_needs_a_command(x_and_not_x, d3, monkeypatch):
    monkeypatch.delenv("LUKAMAX_SMT_CMD", raising=False)
    with pytest.raises(SmtError, match="LUKAMAX_SMT_CMD"):
        external_cost(x_and_not_x, d3)


def test_bad_solver_output_is_an_error(x_and_not_x, d3):
    with pytest.raises(SmtError, match="hello"):
        external_cost(x_and_not_x, d3, "echo hello")
    with pytest.raises(SmtError):
        external_cost(x_and_not_x, d3, "/nonexistent/solver")
    with pytest.raises(SmtError, match="no output"):
        external_cost(x_and_not_x, d3, "true")


def test_binary_search_with_fake_solver(tmp_path, d3):
    # the fake solver answers sat iff the bound in the script is >= 3
    fake = tmp_path / "fake.py"
    fake.write_text(
        "import re, sys\n"
        "text = open(sys.argv[1]).read()\n"
        "bound = int(re.findall(r'\\) (\\d+)\\)\\)\\n\\(check-sat', text)[0])\n"
        "print('sat' if bound >= 3 else 'unsat')\n"
        "open(sys.argv[2], 'a').write('x')\n"
    )
    calls = tmp_path / "calls"
    f = generate(GeneratorParams(n=4, m=10, k=2, p=2, seed=1))
    import sys
    assert external_cost(f, d3, f"{sys.executable} {fake} {{file}} {calls}") == 3
    assert len(calls.read_text()) <= 4  # ceil(log2(11))


@gated
def test_external_examples(x_and_not_x, d3):
    assert run_script(emit_decision(x_and_not_x, d3, 0).text, SOLVER)[0] == "unsat"
    assert external_cost(x_and_not_x, d3, SOLVER) == 1
    assert external_cost(LClausalForm(2, (clause(1, 2),)), d3, SOLVER) == 0
    assert external_optimum(x_and_not_x, d3, SOLVER) == 1


@gated
@pytest.mark.parametrize("seed", range(10))
def test_external_optimum_matches_branch_and_bound(seed, d3):
    f = small(seed, n_max=8, m_max=20)
    assert external_optimum(f, d3, SOLVER) == branch_and_bound(f, d3).cost


@gated
@pytest.mark.parametrize("seed", range(10))
def test_external_witness(seed, d3):
    from lukamax.core import cost_of
    f = small(seed, n_max=8, m_max=20)
    cost, witness = external_solve(f, d3, SOLVER)
    assert cost == branch_and_bound(f, d3).cost == cost_of(f, witness)
