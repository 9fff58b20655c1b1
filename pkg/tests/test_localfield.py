import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ggptheta.errors import FieldMismatchError, UsageError
from ggptheta.localfield import (
    OrthSpaceLabel,
    PAdicField,
    QuadChar,
    all_classes,
    disc_direct_sum,
    hilbert_symbol,
    norm_group_contains,
    quad_char_eval,
    smallest_nonresidue,
    square_class,
)
from oracles import conic_hilbert, legendre_brute

PRIMES = (2, 3, 5, 7, 11, 13)


def test_field_rejects_non_primes_and_large_primes():
    for bad in (0, 1, 4, 9, 65536):
        with pytest.raises(UsageError):
            PAdicField(bad)
    with pytest.raises(UsageError):
        PAdicField(65537)
    assert PAdicField(65521).q == 65521


def test_canonical_labels():
    assert [c.label for c in all_classes(5)] == [1, 2, 5, 10]
    assert [c.label for c in all_classes(7)] == [1, 3, 7, 21]
    assert [c.label for c in all_classes(2)] == [1, -1, 2, -2, 5, -5, 10, -10]
    assert square_class(5, 20).label == 5
    assert square_class(5, 4).label == 1
    assert square_class(5, 3).label == 2
    assert square_class(3, 18).label == 2
    assert square_class(2, 7).label == -1
    assert square_class(2, 3).label == -5
    assert square_class(2, 12).label == -5
    assert square_class(2, 24).label == -10
    assert square_class(5, Fraction(1, 5)).label == 5


def test_zero_has_no_class():
    with pytest.raises(UsageError):
        square_class(5, 0)


def test_nonresidue_is_smallest():
    for p in (3, 5, 7, 11, 13, 17, 23, 41):
        u = smallest_nonresidue(p)
        assert legendre_brute(u, p) == -1
        assert all(legendre_brute(k, p) == 1 for k in range(1, u))


def test_unramified_class():
    assert PAdicField(5).unramified_class().label == 2
    assert PAdicField(2).unramified_class().label == 5
    for p in PRIMES:
        u = PAdicField(p).unramified_class()
        assert u.conductor_exponent == 0 and not u.is_trivial


def test_conductor_exponents():
    assert {c.label: c.conductor_exponent for c in all_classes(2)} == {
        1: 0, 5: 0, -1: 2, -5: 2, 2: 3, -2: 3, 10: 3, -10: 3}
    assert {c.label: c.conductor_exponent for c in all_classes(3)} == {1: 0, 2: 0, 3: 1, 6: 1}


@pytest.mark.parametrize("p", (2, 3, 5, 7, 13))
def test_hilbert_matches_conic_oracle(p):
    for a, b in itertools.product(all_classes(p), repeat=2):
        assert hilbert_symbol(a, b) == conic_hilbert(a.label, b.label, p), (p, a, b)


def test_hilbert_known_values():
    h = lambda p, a, b: hilbert_symbol(square_class(p, a), square_class(p, b))
    assert h(5, 5, 5) == 1
    assert h(3, 3, 3) == -1
    assert h(3, -1, -1) == 1
    assert h(2, -1, -1) == -1
    assert h(5, 2, 5) == -1
    assert h(7, -1, 7) == -1


@given(st.sampled_from(PRIMES), st.data())
def test_hilbert_is_symmetric_bilinear(p, data):
    classes = all_classes(p)
    a, b, c = (data.draw(st.sampled_from(classes)) for _ in range(3))
    assert hilbert_symbol(a, b) == hilbert_symbol(b, a)
    assert hilbert_symbol(a * b, c) == hilbert_symbol(a, c) * hilbert_symbol(b, c)
    assert hilbert_symbol(a, -a) == 1


@pytest.mark.parametrize("p", PRIMES)
def test_hilbert_nondegenerate(p):
    for a in all_classes(p):
        if not a.is_trivial:
            assert any(hilbert_symbol(a, b) == -1 for b in all_classes(p))


def test_quad_char_and_norms():
    d = square_class(5, 5)
    chi = QuadChar(d)
    assert chi(-1) == 1
    assert chi(2) == -1
    assert quad_char_eval(chi, 5) == 1
    assert norm_group_contains(square_class(5, 1), square_class(5, 2))
    assert not norm_group_contains(d, square_class(5, 2))


def test_field_mismatch():
    with pytest.raises(FieldMismatchError):
        square_class(3, 2) * square_class(5, 2)
    with pytest.raises(FieldMismatchError):
        hilbert_symbol(square_class(3, 2), square_class(5, 2))


def test_disc_direct_sum():
    one, five = square_class(5, 1), square_class(5, 5)
    assert disc_direct_sum(1, one, 1, five).label == square_class(5, -5).label
    assert disc_direct_sum(2, five, 1, five).label == 1
    d = square_class(3, 3)
    assert disc_direct_sum(3, d, 1, square_class(3, -1)) == -(d * square_class(3, -1))


def test_orth_space_label():
    v = OrthSpaceLabel(4, square_class(5, 5))
    assert v.character.d.label == 5
    with pytest.raises(UsageError):
        OrthSpaceLabel(0, square_class(5, 1))
    with pytest.raises(UsageError):
        OrthSpaceLabel(2, square_class(5, 5), (square_class(5, 2), square_class(5, 1)))
