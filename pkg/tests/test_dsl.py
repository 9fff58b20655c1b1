from fractions import Fraction

import pytest
from hypothesis import given

from ggptheta.dsl import format_rep, parse_rep
from ggptheta.errors import DSLSyntaxError, UsageError
from ggptheta.wdalg import WDRep, character, rep
from strategies import reps


def test_examples():
    assert parse_rep("t(1/2)+t(-1/2)", 5) == rep(5, character(5, 1, Fraction(1, 2)), character(5, 1, Fraction(-1, 2)))
    assert parse_rep("chi(2)*sp(2)", 5) == rep(5, character(5, 2, n=2))
    a = parse_rep("2*chi(5)+1", 5)
    assert a.multiplicity(character(5, 5)) == 2 and a.multiplicity(character(5)) == 1
    assert parse_rep("0", 3) == WDRep.zero(3)


def test_square_class_reduction_of_arguments():
    assert parse_rep("chi(20)", 5) == parse_rep("chi(5)", 5)
    assert parse_rep("chi(4)", 5) == parse_rep("1", 5)
    assert parse_rep("chi(3)", 2) == parse_rep("chi(-5)", 2)


def test_whitespace_and_order_are_irrelevant():
    assert parse_rep(" sp(2) * chi(2) + 1 ", 5) == parse_rep("1+chi(2)*sp(2)", 5)
    assert parse_rep("1*t(1/2)", 5) == parse_rep("t(1/2)", 5)


def test_opaque_atoms():
    a = parse_rep("op(P)+op(~P)", 7)
    assert a.dual() == a
    assert parse_rep("op(P)*op(~P)", 7) == parse_rep("1", 7)
    assert format_rep(parse_rep("op(P)*op(Q)*sp(2)", 7)) == "op(P)*op(Q)*sp(2)"


@pytest.mark.parametrize("text,offset", [
    ("chi(2)*chi(5)", 7),
    ("sp(0)", 3),
    ("chi(0)", 4),
    ("0*chi(2)", 0),
    ("3", 0),
    ("chi(2)+", 7),
    ("chi(2) sp(2)", 7),
    ("t(1/0)", 2),
    ("t(x)", 2),
    ("foo(1)", 0),
    ("t(1)*t(2)", 5),
    ("sp(2", 4),
    ("", 0),
])
def test_syntax_errors_carry_byte_offsets(text, offset):
    with pytest.raises(DSLSyntaxError) as info:
        parse_rep(text, 5)
    assert info.value.offset == offset


def test_offsets_count_bytes_not_characters():
    with pytest.raises(DSLSyntaxError) as info:
        parse_rep("op(é)", 5)
    assert info.value.offset == 3
    with pytest.raises(DSLSyntaxError) as info:
        parse_rep("chi(2)+é", 5)
    assert info.value.offset == 7


def test_bad_prime():
    with pytest.raises(UsageError):
        parse_rep("1", 6)


@given(reps())
def test_round_trip(a):
    text = format_rep(a)
    assert parse_rep(text, a.p) == a
    assert format_rep(parse_rep(text, a.p)) == text
