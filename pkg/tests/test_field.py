from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from monores.errors import DivisionByZero, ReducibleModulus
from monores.field import GF, is_irreducible, lucas_binomial

FIELDS = [GF(2, 1), GF(2, 2), GF(2, 3), GF(3, 1), GF(3, 2), GF(5, 1), GF(7, 2)]


def elems(F):
    return st.integers(0, F.order - 1)


@pytest.mark.parametrize("F", FIELDS, ids=repr)
def test_multiplicative_group_is_complete(F):
    # every nonzero element has an inverse and the group order kills it
    for a in range(1, F.order):
        assert F.mul(a, F.inv(a)) == 1
        assert F.pow(a, F.order - 1) == 1


@pytest.mark.parametrize("F", FIELDS, ids=repr)
def test_root_inverts_frobenius(F):
    for k in range(1, 4):
        for a in F.elements():
            assert F.root(F.frob(a, k), k) == a
            assert F.frob(a, k) == F.pow(a, F.p ** k)


@pytest.mark.parametrize("F", FIELDS, ids=repr)
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_ring_axioms(F, data):
    a, b, c = (data.draw(elems(F)) for _ in range(3))
    add, mul = F.add, F.mul
    assert add(a, b) == add(b, a)
    assert mul(a, b) == mul(b, a)
    assert add(add(a, b), c) == add(a, add(b, c))
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
    assert add(a, F.neg(a)) == 0
    assert F.sub(add(a, b), b) == a


def test_frobenius_is_additive():
    F = GF(3, 2)
    for a in F.elements():
        for b in F.elements():
            assert F.frob(F.add(a, b)) == F.add(F.frob(a), F.frob(b))


def test_elem_wrapper():
    F = GF(2, 2)
    g = F.elem((0, 1))
    assert g * g == g + 1  # x^2 = x + 1 under the default modulus
    assert (g ** 3) == 1
    assert g / g == 1
    assert g.root().frobenius() == g


def test_inverse_of_zero():
    with pytest.raises(DivisionByZero):
        GF(3).inv(0)


def test_bad_modulus_and_prime():
    with pytest.raises(ReducibleModulus):
        GF(2, 2, (1, 0, 1))  # x^2 + 1 = (x + 1)^2
    with pytest.raises(ValueError):
        GF(4, 1)


def test_irreducibility_small():
    assert is_irreducible((1, 1, 1), 2)
    assert not is_irreducible((0, 1, 1), 2)
    assert is_irreducible((1, 0, 1), 3)


def test_lucas_examples():
    assert lucas_binomial(4, 2, 2) == 0
    assert lucas_binomial(5, 1, 2) == 1
    assert lucas_binomial(10, 3, 3) == comb(10, 3) % 3
    assert lucas_binomial(3, 5, 2) == 0


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 400), st.integers(0, 400), st.sampled_from([2, 3, 5, 7]))
def test_lucas_matches_factorial(n, k, p):
    assert lucas_binomial(n, k, p) == (comb(n, k) % p if k <= n else 0)
