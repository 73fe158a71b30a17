from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from swl.arith import (CharExponent, PlaceStructure, frobenius_orbit, frobenius_twist, pack_exponents,
                       rebase)


def test_pack_examples():
    assert pack_exponents(PlaceStructure.single(5, 2), 0, (1, 1)).exponent == 6
    assert pack_exponents(PlaceStructure.single(5, 1), 0, (3,)).exponent == 3
    e = pack_exponents(PlaceStructure.single(7, 2), 0, (0, 7))
    assert (e.exponent, e.modulus) == (1, 48)


def test_pack_wrong_length():
    with pytest.raises(ValueError):
        pack_exponents(PlaceStructure.single(5, 2), 0, (1,))


def test_frobenius_twist_examples():
    assert frobenius_twist(CharExponent(5, 0, 2, 1)).exponent == 5
    assert frobenius_twist(CharExponent(5, 0, 2, 6)).exponent == 6
    e = CharExponent(5, 0, 4, 1)
    assert frobenius_twist(e).exponent == 5
    assert frobenius_twist(e, 4) == e


def test_structure_validation():
    for p in (2, 4, 9, 1):
        with pytest.raises(ValueError):
            PlaceStructure(p, (1,))
    with pytest.raises(ValueError):
        PlaceStructure(5, ())
    with pytest.raises(ValueError):
        PlaceStructure(5, (0,))


def test_embeddings_place_major():
    s = PlaceStructure(5, (2, 1, 3))
    assert s.d == 6 and s.offsets == (0, 2, 3)
    assert [s.frob(t) for t in range(6)] == [1, 0, 2, 4, 5, 3]
    assert all(s.frob_inv(s.frob(t)) == t for t in range(6))
    assert s.locate(4) == (2, 1)
    assert s.split_vector([1, 2, 3, 4, 5, 6]) == ((1, 2), (3,), (4, 5, 6))
    with pytest.raises(ValueError):
        s.locate(6)


def test_frob_order_is_residue_degree():
    s = PlaceStructure(7, (3, 2))
    for t in range(s.d):
        v, _ = s.locate(t)
        x = t
        for _ in range(s.degrees[v]):
            x = s.frob(x)
        assert x == t


def test_rebase_and_orbit():
    e = CharExponent(5, 0, 2, 1)
    # eps_tau0 = eps_tau1^p for niveau 2
    assert rebase(e, 1, 2) == 5
    assert frobenius_orbit(CharExponent(5, 0, 2, 1), 1) == (1, 5)
    assert frobenius_orbit(CharExponent(5, 0, 2, 5), 1) == (1, 5)


vec2 = st.lists(st.integers(-200, 200), min_size=2, max_size=2)


@given(vec2, vec2, st.sampled_from([3, 5, 7, 11]))
def test_pack_additive(a, b, p):
    s = PlaceStructure.single(p, 2)
    lhs = pack_exponents(s, 0, a) + pack_exponents(s, 0, b)
    assert lhs == pack_exponents(s, 0, [x + y for x, y in zip(a, b)])


@given(st.integers(0, 10 ** 6), st.sampled_from([3, 5, 7]), st.integers(1, 4))
def test_frobenius_twist_bijective_with_order_niveau(x, p, n):
    e = CharExponent(p, 0, n, x)
    assert frobenius_twist(e, n) == e
    seen = {frobenius_twist(CharExponent(p, 0, n, y)).exponent for y in range(min(p ** n - 1, 300))}
    assert len(seen) == min(p ** n - 1, 300)


@given(st.integers(0, 10 ** 6), st.sampled_from([3, 5, 7]), st.integers(1, 2))
def test_niveau_2f_orbit_stable(x, p, f):
    e = CharExponent(p, 0, 2 * f, x)
    assert frobenius_orbit(frobenius_twist(e, f), f) == frobenius_orbit(e, f)


def test_big_exponents_exact():
    e = CharExponent(101, 0, 20, -1)
    assert e.exponent == 101 ** 20 - 2
