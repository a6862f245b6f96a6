import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohodev.fields import (ResidueSymbol, det, field_create, field_of_order, mat_inv, mat_mul, identity,
                            prime_power, residue_symbol)


def test_prime_field_generator():
    F = field_create(5, 1)
    assert F.generator == 2
    assert F.order(2) == 4


def test_f9_tables():
    F = field_create(3, 2)
    assert F.q == 9
    assert len(F.exp) == 8 and len(set(F.exp)) == 8
    # brute force order of the generator
    x, k = F.generator, 1
    while x != 1:
        x, k = F.mul(x, F.generator), k + 1
    assert k == 8
    assert all(F.dlog[F.exp[k]] == k for k in range(8))


def test_f2_is_trivial():
    F = field_create(2, 1)
    assert F.exp == (1,) and F.dlog[1] == 0


def test_bad_inputs():
    with pytest.raises(ValueError):
        field_create(6, 1)
    with pytest.raises(ValueError):
        field_create(2, 21, cap=1000)
    with pytest.raises(ValueError):
        prime_power(12)


@pytest.mark.parametrize("q", [4, 8, 9, 16, 25, 27, 49])
def test_field_axioms_exhaustive(q):
    F = field_of_order(q)
    els = list(F.elements())
    for a in els:
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
    for a, b in itertools.product(els, repeat=2):
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
    # distributivity on a sample grid
    for a, b, c in itertools.product(els[:6], repeat=3):
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


def test_residue_examples():
    F = field_create(5, 1)
    sym = ResidueSymbol(F, 2)
    assert residue_symbol(sym, 4) == 0
    assert residue_symbol(sym, 2) == 1
    for q in (7, 9, 13):
        G = field_of_order(q)
        assert ResidueSymbol(G, 2)(1) == 0
    with pytest.raises(ValueError):
        sym(0)
    with pytest.raises(ValueError):
        ResidueSymbol(F, 3)


@pytest.mark.parametrize("q", [q for q in range(3, 50) if len(set(__import__("sympy").factorint(q))) == 1])
def test_residue_symbol_homomorphism(q):
    F = field_of_order(q)
    for n in [d for d in range(2, q) if (q - 1) % d == 0]:
        sym = ResidueSymbol(F, n)
        units = range(1, q)
        for a in units:
            for b in units:
                assert sym(F.mul(a, b)) == (sym(a) + sym(b)) % n


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 4, 5, 7]), st.data())
def test_matrix_inverse(q, data):
    F = field_of_order(q)
    d = 3
    rows = data.draw(st.lists(st.lists(st.integers(0, q - 1), min_size=d, max_size=d), min_size=d, max_size=d))
    A = tuple(tuple(r) for r in rows)
    if det(F, A) == 0:
        return
    assert mat_mul(F, A, mat_inv(F, A)) == identity(d)
