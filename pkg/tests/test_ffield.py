import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chevpres.ffield import (FFElement, FiniteField, build_coefficient_tables, express_in_basis,
                             ff_add, ff_inv, ff_mul, ff_neg, field_from_json, is_irreducible,
                             least_irreducible, make_field, prime_power)

FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3), (7, 2)]


# -- independent oracles -----------------------------------------------------------

def poly_mul(x, y, p):
    out = [0] * (len(x) + len(y) - 1)
    for i, a in enumerate(x):
        for j, b in enumerate(y):
            out[i + j] = (out[i + j] + a * b) % p
    return out


def poly_reduce(x, mod, p):
    x = list(x)
    n = len(mod) - 1
    for top in range(len(x) - 1, n - 1, -1):
        c = x[top]
        if c:
            for i in range(n + 1):
                x[top - n + i] = (x[top - n + i] - c * mod[i]) % p
    return (x + [0] * n)[:n]


def has_root_free_factorization_oracle(poly, p):
    """Irreducible iff it is not a product of two monic polynomials of
    positive degree (brute force over all such products)."""
    deg = len(poly) - 1
    for d in range(1, deg):
        for lo in itertools.product(range(p), repeat=d):
            for hi in itertools.product(range(p), repeat=deg - d):
                if poly_mul(list(lo) + [1], list(hi) + [1], p) == list(poly):
                    return False
    return True


# -- tests ---------------------------------------------------------------------------

@pytest.mark.parametrize("p,a", [(2, 2), (2, 3), (3, 2), (5, 2), (2, 4)])
def test_irreducibility_matches_brute_force(p, a):
    for low in itertools.product(range(p), repeat=a):
        poly = tuple(low) + (1,)
        assert is_irreducible(poly, p) == has_root_free_factorization_oracle(poly, p)


def test_least_irreducible_examples():
    assert least_irreducible(2, 2) == (1, 1, 1)        # x^2 + x + 1
    assert least_irreducible(5, 2) == (2, 0, 1)        # x^2 + 2
    assert make_field(3, 1).modulus == (0, 1)
    assert make_field(3, 1).basis == (make_field(3, 1).one,)


@pytest.mark.parametrize("p,a", FIELDS)
def test_multiplication_against_polynomial_oracle(p, a):
    F = make_field(p, a)
    for x, y in itertools.product(F.elements(), repeat=2):
        want = poly_reduce(poly_mul(list(x.coeffs), list(y.coeffs), p), F.modulus, p)
        assert list((x * y).coeffs) == want


def test_f4_examples():
    F = make_field(2, 2)
    x = F.basis[1]
    assert (x * x).coeffs == (1, 1)
    assert express_in_basis(x) == (0, 1)
    assert express_in_basis(x * x) == (1, 1)
    assert express_in_basis(F.zero) == (0, 0)


@pytest.mark.parametrize("p,a", FIELDS)
def test_field_is_a_field(p, a):
    F = make_field(p, a)
    nonzero = [x for x in F.elements() if x]
    assert len(nonzero) == F.q - 1
    for x in nonzero:
        assert x * ff_inv(x) == F.one
        assert x ** (F.q - 1) == F.one
    for x in F.elements():
        assert x + ff_neg(x) == F.zero


def field_and_triples():
    return st.sampled_from(FIELDS).flatmap(
        lambda pa: st.tuples(st.just(pa), *[st.integers(0, pa[0] ** pa[1] - 1)] * 3))


@settings(max_examples=300, deadline=None)
@given(field_and_triples())
def test_ring_laws(data):
    (p, a), i, j, k = data
    F = make_field(p, a)
    x, y, z = (FFElement(F, c) for c in (i, j, k))
    assert ff_add(x, y) == ff_add(y, x)
    assert ff_mul(x, y) == ff_mul(y, x)
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - y == x + (-y)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(FIELDS).flatmap(lambda pa: st.tuples(st.just(pa), st.integers(0, pa[0] ** pa[1] - 1))))
def test_frobenius_is_additive(data):
    (p, a), i = data
    F = make_field(p, a)
    x, y = FFElement(F, i), F.basis[-1]
    assert (x + y) ** p == x ** p + y ** p


@pytest.mark.parametrize("p,a", FIELDS)
def test_regular_matrix_represents_multiplication(p, a):
    F = make_field(p, a)
    for u in F.elements():
        M = F.regular_matrix(u.code)
        for w in F.elements():
            assert list(M @ np.array(w.coeffs) % p) == list((u * w).coeffs)


def test_prime_power():
    assert prime_power(16) == (2, 4)
    assert prime_power(27) == (3, 3)
    assert prime_power(17) == (17, 1)
    for bad in (1, 6, 12, 100):
        with pytest.raises(ValueError):
            prime_power(bad)


def test_bad_fields_rejected():
    with pytest.raises(ValueError):
        make_field(4, 1)
    with pytest.raises(ValueError):
        FiniteField(2, 2, (1, 0, 1))  # (x+1)^2


def test_field_json_roundtrip():
    F = make_field(3, 2)
    assert F.describe() == {"p": 3, "a": 2, "modulus": list(F.modulus)}
    assert field_from_json(F.describe()) == F


@pytest.mark.parametrize("p,a", FIELDS)
def test_coefficient_tables_satisfy_definitions(p, a):
    F = make_field(p, a)
    t = build_coefficient_tables(F)
    v = F.basis
    comb = lambda coeffs: sum((F.element(int(c)) * v[r] for r, c in enumerate(coeffs)), F.zero)
    for i, j in itertools.product(range(a), repeat=2):
        assert comb(t.c[i, j]) == v[i] * v[j]
        assert comb(t.d[i, j]) == v[i] * v[j]
        assert comb(t.f[i, j]) == v[i] * v[j] * v[j]
    for i in range(a):
        assert comb(t.r_neg[:, i]) == -(v[i] * v[i])
        if p != 2:
            assert comb(t.m[:, i]) * F.element(2) == v[i]
    assert t.c_sign == 1


def test_coefficient_table_examples():
    t = build_coefficient_tables(make_field(5, 1))
    assert t.c[0, 0, 0] == 1
    t4 = build_coefficient_tables(make_field(2, 2))
    assert list(t4.d[1, 1]) == [1, 1]
    assert t4.m is None
    with pytest.raises(ValueError):
        build_coefficient_tables(make_field(2, 2), with_half=True)
    assert set(build_coefficient_tables(make_field(3, 2)).to_json()) >= {"c", "m", "r_neg", "d", "f"}
