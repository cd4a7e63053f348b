"""Tiny interpreter for the QF_LIA subset the emitter produces (test oracle)."""
import itertools
import re

_TOK = re.compile(r"\(|\)|[^\s()]+")


def parse(text):
    text = "\n".join(l.split(";", 1)[0] for l in text.splitlines())
    stack = [[]]
    for tok in _TOK.findall(text):
        if tok == "(":
            stack.append([])
        elif tok == ")":
            done = stack.pop()
            stack[-1].append(done)
        else:
            stack[-1].append(int(tok) if re.fullmatch(r"\d+", tok) else tok)
    assert len(stack) == 1, "unbalanced parentheses"
    return stack[0]


def ev(e, env):
    if isinstance(e, int):
        return e
    if isinstance(e, str):
        return env[e]
    op, *args = e
    if op == "ite":
        return ev(args[1], env) if ev(args[0], env) else ev(args[2], env)
    if op == "and":
        return all(ev(a, env) for a in args)
    if op == "or":
        return any(ev(a, env) for a in args)
    vals = [ev(a, env) for a in args]
    if op == "+":
        return sum(vals)
    if op == "-":
        return -vals[0] if len(vals) == 1 else vals[0] - sum(vals[1:])
    if op == "=":
        return all(v == vals[0] for v in vals)
    a, b = vals
    return {"<=": a <= b, ">=": a >= b, "<": a < b, ">": a > b}[op]


class Script:
    def __init__(self, text):
        self.cmds = parse(text)
        self.declared = []
        self.asserts = []
        for c in self.cmds:
            if c[0] == "declare-const":
                assert c[2] == "Int"
                self.declared.append(c[1])
            elif c[0] == "assert":
                self.asserts.append(c[1])
        self.defs = {}
        for a in self.asserts:
            if a[0] == "=" and isinstance(a[1], str) and a[1] not in self.defs and a[1].startswith(("t", "cost")):
                self.defs[a[1]] = a[2]

    def symbols(self, e):
        if isinstance(e, str):
            return {e} if not e.startswith(("set-", "check")) and e in self.declared else set()
        if isinstance(e, list):
            return set().union(*(self.symbols(x) for x in e)) if e else set()
        return set()

    def complete(self, env):
        env = dict(env)
        for name, expr in self.defs.items():
            env[name] = ev(expr, env)
        return env

    def holds(self, env):
        env = self.complete(env)
        return all(ev(a, env) for a in self.asserts)

    def satisfiable(self, scale):
        xs = sorted((s for s in self.declared if re.fullmatch(r"x\d+", s)), key=lambda s: int(s[1:]))
        bs = sorted((s for s in self.declared if re.fullmatch(r"b\d+", s)), key=lambda s: int(s[1:]))
        for xv in itertools.product(range(scale + 1), repeat=len(xs)):
            for bv in itertools.product((0, 1), repeat=len(bs)):
                if self.holds(dict(zip(xs, xv)) | dict(zip(bs, bv))):
                    return True
        return False
