import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cartier.errors import EvenCharacteristic, FieldTooLarge, NonPrime
from cartier.gf_tower import (
    build_field,
    enumerate_elements,
    frobenius_p,
    is_irreducible,
    matrix_rank,
    pth_root,
)

from _oracles import count_irreducible, ff_pow, has_root, rank_mod_p


def test_order_of_f81():
    assert build_field(3, 4).order == 81


def test_f9_modulus_is_x2_plus_1():
    # irreducible monic quadratics are exactly the rootless ones; scan in
    # the same order (constant term least significant)
    first = next(
        (c0, c1, 1) for c1, c0 in product(range(3), repeat=2)
        if c0 and not has_root((c0, c1, 1), 3)
    )
    assert first == (1, 0, 1)
    assert build_field(3, 2).modulus == first


@pytest.mark.parametrize("p, exc", [(2, EvenCharacteristic), (9, NonPrime), (1, NonPrime)])
def test_bad_characteristic(p, exc):
    with pytest.raises(exc):
        build_field(p, 1)


@pytest.mark.parametrize("p, n", [(3, 2), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2)])
def test_rabin_test_counts_irreducibles(p, n):
    found = 0
    for low in product(range(p), repeat=n):
        if is_irreducible(tuple(low) + (1,), p):
            found += 1
    assert found == count_irreducible(p, n)


def test_frobenius_on_f9_generator():
    F = build_field(3, 2)
    u = F.gen
    expected = F.from_coeffs(ff_pow((0, 1), 3, F.modulus, 3))
    assert expected == F.from_coeffs([0, 2])
    assert F.frobenius_p(u) == expected
    assert F.pth_root(F.from_coeffs([0, 2])) == u


def test_frobenius_fixes_prime_field():
    F = build_field(5, 3)
    assert all(F.frobenius_p(c) == c for c in range(5))
    assert F.pth_root(1) == 1


@pytest.mark.parametrize("p, e", [(3, 1), (3, 2), (3, 3), (3, 4), (5, 2), (5, 4), (7, 3)])
def test_pth_root_inverts_frobenius_exhaustively(p, e):
    F = build_field(p, e)
    for a in F.elements():
        b = F.frobenius_p(a)
        assert F.pth_root(b) == a
        assert F.frobenius_p(F.pth_root(a)) == a
        x = a
        for _ in range(e):
            x = F.frobenius_p(x)
        assert x == a


@pytest.mark.parametrize("p, e", [(3, 8), (5, 5), (7, 4), (11, 3), (97, 2)])
def test_unit_group_order(p, e):
    # table-free exponentiation so the log tables are not checked against themselves
    F = build_field(p, e)
    n = F.order - 1
    for a in range(1, F.order):
        assert ff_pow(F.coeffs(a), n, F.modulus, p) == F.coeffs(1)


_F81 = build_field(3, 4)
_F625 = build_field(5, 4)


@settings(max_examples=1000, deadline=None)
@given(st.integers(0, 80), st.integers(0, 80))
def test_frobenius_is_a_ring_homomorphism(a, b):
    F = _F81
    assert F.frobenius_p(F.add(a, b)) == F.add(F.frobenius_p(a), F.frobenius_p(b))
    assert F.frobenius_p(F.mul(a, b)) == F.mul(F.frobenius_p(a), F.frobenius_p(b))


def test_table_multiplication_matches_schoolbook():
    F = _F625
    rng = random.Random(7)
    for _ in range(500):
        a, b = rng.randrange(F.order), rng.randrange(F.order)
        assert F.mul(a, b) == F._mul_raw(a, b)
        if a:
            assert F.mul(a, F.inv(a)) == 1


def test_vectorised_ops_match_scalar():
    F = _F81
    els = F.element_array()
    rev = els[::-1]
    assert F.add_arr(els, rev).tolist() == [F.add(a, b) for a, b in zip(els.tolist(), rev.tolist())]
    assert F.mul_arr(els, rev).tolist() == [F.mul(a, b) for a, b in zip(els.tolist(), rev.tolist())]
    assert F.pow_arr(els, 7).tolist() == [F.pow(a, 7) for a in els.tolist()]
    assert F.neg_arr(els).tolist() == [F.neg(a) for a in els.tolist()]


def test_enumeration():
    assert len(enumerate_elements(build_field(3, 2))) == 9
    elems = list(build_field(3, 4).elements())
    assert len(elems) == 81 and len(set(elems)) == 81
    with pytest.raises(FieldTooLarge):
        build_field(3, 13).elements()


def test_field_element_wrapper():
    F = build_field(3, 2)
    u = F([0, 1])
    assert u * u == F(-1)
    assert frobenius_p(F, u) == 2 * u
    assert pth_root(F, 2 * u) == u
    assert (u + 1) ** 8 == 1
    assert u.coeffs == (0, 1)


@pytest.mark.parametrize("p, e", [(3, 1), (5, 2)])
def test_matrix_rank_against_reference(p, e):
    F = build_field(p, e)
    rng = random.Random(p * 100 + e)
    for _ in range(30):
        rows = [[rng.randrange(p) for _ in range(6)] for _ in range(5)]
        rows.append([(a + 2 * b) % p for a, b in zip(rows[0], rows[1])])
        assert matrix_rank(F, rows) == rank_mod_p(rows, p)


def test_matrix_rank_extension_entries():
    F = build_field(3, 2)
    u = F.gen
    # second row is u times the first
    rows = [[1, u, 2], [u, F.mul(u, u), F.mul(2, u)]]
    assert matrix_rank(F, rows) == 1
