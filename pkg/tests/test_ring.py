import numpy as np
import pytest
from hypothesis import given, strategies as st

from mf_errors import NonPrimeCharacteristic, ReduciblePolynomial, NotInvertible, ElementOutOfRing, RingMismatch
from mf_ring import (RingSpec, ring_make, field, prime_field, integers_mod, arith, inverse, enumerate_ring, is_prime,
                     prime_power)


def test_prime_helpers():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert prime_power(8) == (2, 3)
    assert prime_power(12) is None


def test_field_orders():
    assert field(2).order == 2
    assert field(4).order == 4
    assert field(4).characteristic == 2
    assert field(9).is_field


def test_not_a_prime_power():
    with pytest.raises(NonPrimeCharacteristic):
        field(6)
    with pytest.raises(NonPrimeCharacteristic):
        prime_field(4)


def test_reducible_polynomial():
    # x^2 + 1 = (x + 1)^2 over F_2
    with pytest.raises(ReduciblePolynomial):
        ring_make(RingSpec.extension_field(2, 2, (1, 0)))


def test_every_nonzero_element_is_a_unit():
    r = field(8)
    for a in range(1, r.order):
        assert r.mul(a, r.inv(a)) == 1
    assert r.units() == list(range(1, 8))


def test_integers_mod_six():
    r = integers_mod(6)
    assert not r.is_field
    assert r.units() == [1, 5]
    with pytest.raises(NotInvertible):
        r.inv(2)
    assert integers_mod(7).is_field


def test_elements_and_arith():
    r = field(5)
    assert r(2) * r(3) == 1
    assert arith(r, 'sub', 1, 3) == r(3)
    assert inverse(r, 2) == r(3)
    assert (r(4) + 1) == 0


def test_enumerate_ring():
    assert [str(e) for e in enumerate_ring(field(3))] == ['0', '1', '2']
    assert [str(e) for e in enumerate_ring(field(4))] == ['0', '1', 'x', 'x+1']
    assert enumerate_ring(integers_mod(2)) == [0, 1]


def test_out_of_ring():
    with pytest.raises(ElementOutOfRing):
        field(5).check(7)


def test_mixed_rings():
    with pytest.raises(RingMismatch):
        field(5)(1) + field(3)(1)


def test_extension_format():
    r = field(4)
    assert r.format(0) == '0'
    assert r.format(2) == 'x'
    assert r.format(3) == 'x+1'


def test_batched_arithmetic_matches_scalar():
    r = field(9)
    a = np.arange(9)[:, None]
    b = np.arange(9)[None, :]
    table = r.mul(a, b)
    assert all(table[i, j] == r.mul(i, j) for i in range(9) for j in range(9))


@given(st.integers(0, 8), st.integers(0, 8), st.integers(0, 8))
def test_field_of_nine_is_distributive(a, b, c):
    r = field(9)
    assert r.mul(a, r.add(b, c)) == r.add(r.mul(a, b), r.mul(a, c))
    assert r.mul(a, r.mul(b, c)) == r.mul(r.mul(a, b), c)


@given(st.integers(1, 10), st.integers(0, 10))
def test_power(a, e):
    r = field(11)
    expected = 1
    for _ in range(e):
        expected = r.mul(expected, a)
    assert r.power(a, e) == expected
    assert r.mul(r.power(a, -e), expected) == 1
