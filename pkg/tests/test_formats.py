import pytest

from lukamax import (
    BooleanCnf,
    FiniteDomain,
    FormatError,
    GeneratorParams,
    LClausalForm,
    clause,
    generate,
    parse_dimacs,
    parse_lcf,
    serialize_dimacs,
    serialize_lcf,
)
from lukamax.core import Literal, NegatedSum, PlainLiteral


def test_parse_gadget():
    doc = parse_lcf(b"p lcf 1 1 3\n-( 1 1 ) 1 0\n")
    assert doc.n == 1 and doc.domain == FiniteDomain(3)
    assert doc.form.clauses == (clause([1, 1], 1),)


def test_parse_empty_form():
    doc = parse_lcf("p lcf 2 0 3\n")
    assert doc.form == LClausalForm(2) and doc.m == 0


def test_comments_and_blank_lines():
    doc = parse_lcf("c hello\n\np lcf 3 2 5\nc mid\n1 -2 0\n-( 3 ) 0\n")
    assert doc.comments == ("hello", "mid")
    assert doc.form.clauses[1].terms == (NegatedSum((Literal(3),)),)


@pytest.mark.parametrize(
    "text,msg",
    [
        ("p lcf 1 1 3\n2 0\n", "variable 2 exceeds n=1"),
        ("p lcf 1 2 3\n1 0\n", "declares 2 clauses, found 1"),
        ("p lcf 1 1 1\n1 0\n", "d=1"),
        ("p lcf 1 1 3\n1\n", "not terminated"),
        ("p lcf 1 1 3\n-( 1 0\n", "0 inside"),
        ("p lcf 2 1 3\n-( 1 2 0\n", "0 inside"),
        ("p lcf 2 1 3\n1 -( 1 2\n", "unterminated"),
        ("p lcf 1 1 3\n-( ) 0\n", "empty"),
        ("p lcf 1 1 3\n0\n", "empty clause"),
        ("p lcf 1 1 3\n1 x 0\n", "unexpected token 'x'"),
        ("p lcf 1 1 3\n1 0 1\n", "after terminating"),
        ("1 0\n", "before 'p lcf'"),
        ("p cnf 1 1\n", "bad header"),
        ("", "missing"),
    ],
)
def test_parse_errors(text, msg):
    with pytest.raises(FormatError, match=msg):
        parse_lcf(text)


def test_error_reports_line_and_column():
    with pytest.raises(FormatError) as ei:
        parse_lcf("p lcf 2 1 3\n1 -( 2 7 ) 0\n")
    assert ei.value.line == 2 and ei.value.col == 8


def test_serialize():
    assert serialize_lcf(LClausalForm(2), FiniteDomain(3)) == "p lcf 2 0 3\n"
    f = LClausalForm(3, (clause([1, 2], 3),))
    assert serialize_lcf(f, FiniteDomain(3)).splitlines()[1] == "-( 1 2 ) 3 0"


def test_negated_singleton_survives_round_trip():
    f = LClausalForm(2, (clause([-1], 2), clause(-1, 2)))
    back = parse_lcf(serialize_lcf(f, FiniteDomain(3))).form
    assert back == f
    assert isinstance(back.clauses[0].terms[0], NegatedSum)
    assert isinstance(back.clauses[1].terms[0], PlainLiteral)


@pytest.mark.parametrize("seed", range(25))
def test_generator_round_trip(seed):
    params = GeneratorParams(n=9, m=12, k=1 + seed % 9, p=1 + seed % 4, d=2 + seed % 4, seed=seed)
    f = generate(params)
    text = serialize_lcf(f, params.domain, ["seeded"])
    doc = parse_lcf(text)
    assert doc.form == f and doc.domain == params.domain
    assert serialize_lcf(doc.form, doc.domain, doc.comments) == text


def test_dimacs():
    assert parse_dimacs(b"p cnf 2 1\n1 2 0\n") == BooleanCnf(2, ((1, 2),))
    assert parse_dimacs("p cnf 1 2\n1 0\n-1 0\n").clauses == ((1,), (-1,))
    assert parse_dimacs("c x\np cnf 3 2\n1 -2\n 3 0 2 0\n%\n0\n").clauses == ((1, -2, 3), (2,))
    cnf = BooleanCnf(3, ((1, -3), (2,)))
    assert parse_dimacs(serialize_dimacs(cnf)) == cnf


@pytest.mark.parametrize(
    "text,msg",
    [
        ("p cnf 1 1\n1 -2 0\n", "variable 2 exceeds n=1"),
        ("p cnf 1 2\n1 0\n", "declares 2"),
        ("p cnf 1 1\n0\n", "zero-length"),
        ("p cnf 1 1\n1\n", "not terminated"),
        ("p cnf 1 1\n1 a 0\n", "unexpected token"),
    ],
)
def test_dimacs_errors(text, msg):
    with pytest.raises(FormatError, match=msg):
        parse_dimacs(text)
