"""Surface syntax parsing and formatting."""

import pytest

from mpltl import ParseError, format_formula, parse_formula, parse_problem
from mpltl import formula as F


def test_parse_simple_operators():
    f = parse_formula("(until p (and q (not r)))")
    assert f is F.until(F.atom("p"),
                        F.and_(F.atom("q"), F.not_(F.atom("r"))))


def test_parse_metric_operators():
    assert parse_formula("(ev= p 4)") is F.ev_eq(F.atom("p"), 4)
    assert parse_formula("(palw<= p 2)") is F.palw_le(F.atom("p"), 2)
    assert parse_formula("(wpev<= p 3)") is F.wpev_le(F.atom("p"), 3)


def test_format_round_trip():
    texts = [
        "(release p (or q (yesterday r)))",
        "(alw (implies p (ev= q 5)))",
        "(since (pev<= a 2) (wpalw<= b 1))",
    ]
    for text in texts:
        f = parse_formula(text)
        assert parse_formula(format_formula(f)) is f


def test_exists_macro_expands_to_disjunction():
    f = parse_formula("(exists x (1 2 3) (ev= p x))")
    assert f is F.or_(F.ev_eq(F.atom("p"), 1), F.ev_eq(F.atom("p"), 2),
                      F.ev_eq(F.atom("p"), 3))


def test_forall_macro_expands_to_conjunction():
    f = parse_formula("(forall x (1 2) (pev<= p x))")
    assert f is F.and_(F.pev_le(F.atom("p"), 1), F.pev_le(F.atom("p"), 2))


def test_parse_problem_sections():
    p = parse_problem("""
        (bound 12)
        (time bi)
        (encoder nonmetric)
        (spec (alw (implies a b)))
        (property (ev b))
    """)
    assert p.bound == 12
    assert p.time_model == "bi"
    assert p.encoder == "nonmetric"
    assert len(p.spec) == 1
    assert p.prop is F.ev(F.atom("b"))


def test_checked_formula_negates_the_property():
    p = parse_problem("(bound 3) (time mono) (spec p) (property q)")
    assert p.checked_formula() is F.and_(F.atom("p"),
                                         F.not_(F.atom("q")))


def test_problem_requires_a_bound():
    with pytest.raises(ParseError):
        parse_problem("(spec p)")


def test_parse_errors():
    for text in ("(and p", "(frobnicate p)", "(ev= p -1)", ""):
        with pytest.raises(ParseError):
            parse_formula(text)
