"""LCF text format for Ł-clausal forms, and DIMACS CNF for Boolean input.

LCF example::

    c a comment
    p lcf 3 1 3
    -( 1 2 ) 3 0

A clause line is a sequence of terms joined by strong disjunction: a signed
integer is a literal, ``-( ... )`` a negated strong sum. Lines end in ``0``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .core import (
    FiniteDomain,
    LClausalForm,
    LClause,
    Literal,
    LogicError,
    NegatedSum,
    PlainLiteral,
)

_TOKEN = re.compile(r"\S+")
_INT = re.compile(r"[+-]?\d+\Z")


class FormatError(ValueError):
    def __init__(self, msg: str, line: int | None = None, col: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {col}" if col is not None else "") + ": "
        super().__init__(where + msg)
        self.line = line
        self.col = col


@dataclass(frozen=True)
class LcfDocument:
    form: LClausalForm
    domain: FiniteDomain
    comments: tuple[str, ...] = ()

    @property
    def n(self) -> int:
        return self.form.n

    @property
    def m(self) -> int:
        return self.form.m


@dataclass(frozen=True)
class BooleanCnf:
    n: int
    clauses: tuple[tuple[int, ...], ...] = field(default=())

    @property
    def m(self) -> int:
        return len(self.clauses)


def _text(data) -> str:
    if isinstance(data, (bytes, bytearray)):
        return bytes(data).decode("utf-8")
    return data


def _lines(text: str):
    for lineno, raw in enumerate(text.split("\n"), 1):
        line = raw.rstrip("\r")
        if line.strip():
            yield lineno, line


def _is_comment(line: str) -> bool:
    return line == "c" or line.startswith("c ") or line.startswith("c\t")


def _header(line: str, lineno: int, kind: str) -> list[int]:
    fields = line.split()
    want = 5 if kind == "lcf" else 4
    if len(fields) != want or fields[0] != "p" or fields[1] != kind:
        raise FormatError(f"bad header {line!r}, expected 'p {kind} ...'", lineno, 1)
    try:
        nums = [int(x) for x in fields[2:]]
    except ValueError:
        raise FormatError(f"non-integer field in header {line!r}", lineno, 1) from None
    if any(x < 0 for x in nums):
        raise FormatError("header counts must be non-negative", lineno, 1)
    return nums


def _signed(tok: str, lineno: int, col: int, n: int) -> int:
    if not _INT.match(tok):
        raise FormatError(f"unexpected token {tok!r}", lineno, col)
    i = int(tok)
    if i == 0:
        raise FormatError("0 inside a negated group", lineno, col)
    if abs(i) > n:
        raise FormatError(f"variable {abs(i)} exceeds n={n}", lineno, col)
    return i


def _parse_clause(line: str, lineno: int, n: int) -> LClause:
    toks = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(line)]
    terms = []
    i = 0
    closed = False
    while i < len(toks):
        tok, col = toks[i]
        if closed:
            raise FormatError(f"token {tok!r} after terminating 0", lineno, col)
        if tok == "0":
            closed = True
            i += 1
        elif tok == "-(":
            lits = []
            i += 1
            while i < len(toks) and toks[i][0] != ")":
                lits.append(Literal.from_int(_signed(toks[i][0], lineno, toks[i][1], n)))
                i += 1
            if i == len(toks):
                raise FormatError("unterminated '-(' group", lineno, col)
            if not lits:
                raise FormatError("empty '-(' group", lineno, col)
            terms.append(NegatedSum(tuple(lits)))
            i += 1
        else:
            terms.append(PlainLiteral(Literal.from_int(_signed(tok, lineno, col, n))))
            i += 1
    if not closed:
        raise FormatError("clause not terminated by 0", lineno, len(line) + 1)
    if not terms:
        raise FormatError("empty clause", lineno, 1)
    return LClause(tuple(terms))


def parse_lcf(data) -> LcfDocument:
    text = _text(data)
    header = None
    comments: list[str] = []
    clauses: list[LClause] = []
    last_line = 0
    for lineno, line in _lines(text):
        last_line = lineno
        if _is_comment(line):
            comments.append(line[2:] if len(line) > 1 else "")
            continue
        if line.startswith("p"):
            if header is not None:
                raise FormatError("duplicate header", lineno, 1)
            header = _header(line, lineno, "lcf")
            if header[2] < 2:
                raise FormatError(f"domain size d={header[2]} must be >= 2", lineno, 1)
            continue
        if header is None:
            raise FormatError("clause before 'p lcf' header", lineno, 1)
        clauses.append(_parse_clause(line, lineno, header[0]))
    if header is None:
        raise FormatError("missing 'p lcf' header")
    n, m, d = header
    if len(clauses) != m:
        raise FormatError(f"header declares {m} clauses, found {len(clauses)}", last_line)
    try:
        form = LClausalForm(n, tuple(clauses))
    except LogicError as e:  # pragma: no cover - bounds are checked per token
        raise FormatError(str(e)) from None
    return LcfDocument(form, FiniteDomain(d), tuple(comments))


def _term_text(t) -> str:
    if isinstance(t, PlainLiteral):
        return str(t.lit.to_int())
    return "-( " + " ".join(str(l.to_int()) for l in t.lits) + " )"


def serialize_lcf(form: LClausalForm, domain: FiniteDomain, comments=()) -> str:
    out = [f"c {c}" if c else "c" for c in comments]
    out.append(f"p lcf {form.n} {form.m} {domain.d}")
    for c in form.clauses:
        out.append(" ".join(_term_text(t) for t in c.terms) + " 0")
    return "\n".join(out) + "\n"


def parse_dimacs(data) -> BooleanCnf:
    """Read DIMACS CNF. Clauses may span lines; a ``%`` line ends the body."""
    text = _text(data)
    header = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    last_line = 0
    for lineno, line in _lines(text):
        last_line = lineno
        if line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            if header is not None:
                raise FormatError("duplicate header", lineno, 1)
            header = _header(line, lineno, "cnf")
            continue
        if header is None:
            raise FormatError("clause before 'p cnf' header", lineno, 1)
        for m in _TOKEN.finditer(line):
            tok, col = m.group(), m.start() + 1
            if not _INT.match(tok):
                raise FormatError(f"unexpected token {tok!r}", lineno, col)
            i = int(tok)
            if i == 0:
                if not current:
                    raise FormatError("zero-length clause", lineno, col)
                clauses.append(tuple(current))
                current = []
            elif abs(i) > header[0]:
                raise FormatError(f"variable {abs(i)} exceeds n={header[0]}", lineno, col)
            else:
                current.append(i)
    if header is None:
        raise FormatError("missing 'p cnf' header")
    if current:
        raise FormatError("last clause not terminated by 0", last_line)
    n, m = header
    if len(clauses) != m:
        raise FormatError(f"header declares {m} clauses, found {len(clauses)}", last_line)
    return BooleanCnf(n, tuple(clauses))


def serialize_dimacs(cnf: BooleanCnf) -> str:
    lines = [f"p cnf {cnf.n} {cnf.m}"]
    lines += [" ".join(map(str, c)) + " 0" for c in cnf.clauses]
    return "\n".join(lines) + "\n"
