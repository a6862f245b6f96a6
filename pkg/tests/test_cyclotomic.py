import cmath

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohodev.cyclotomic import (CycMatrix, CyclotomicInt, RootExponent, cyc_add, cyc_conj, cyc_mul, cyc_reduce,
                                cyclotomic_polynomial, euler_phi, reduction_matrix)


def test_small_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)


@pytest.mark.parametrize("n", range(1, 25))
def test_degree_is_phi_and_root_vanishes(n):
    phi = cyclotomic_polynomial(n)
    assert len(phi) - 1 == euler_phi(n)
    z = cmath.exp(2j * cmath.pi / n)
    assert abs(sum(c * z**k for k, c in enumerate(phi))) < 1e-9
    # Φ_n(ζ) and ζ^n - 1 reduce to zero exactly
    assert CyclotomicInt.from_coeffs(n, list(phi)).is_zero()
    assert CyclotomicInt.from_coeffs(n, [-1] + [0] * (n - 1) + [1]).is_zero()


def test_reduce_examples():
    assert CyclotomicInt.from_coeffs(3, [1, 1, 1]).is_zero()
    assert CyclotomicInt.from_coeffs(4, [0, 0, 1, 0]) == CyclotomicInt.integer(4, -1)
    assert CyclotomicInt.from_coeffs(2, [3, 1]).as_int() == 2
    v = CyclotomicInt.from_coeffs(5, [2, 0, 3, 1, 1])
    assert cyc_reduce(v) == v


def test_ring_examples():
    m = CyclotomicInt.root(2, 1)
    assert cyc_mul(m, m) == CyclotomicInt.integer(2, 1)
    assert cyc_conj(CyclotomicInt.root(4, 1)) == CyclotomicInt.root(4, 3)
    assert cyc_add(CyclotomicInt.root(4, 0), CyclotomicInt.root(4, 2)).is_zero()
    with pytest.raises(ValueError):
        cyc_add(CyclotomicInt.root(4, 0), CyclotomicInt.root(3, 0))


def test_reduction_matrix_rows_are_powers():
    R = reduction_matrix(6)
    assert R.shape == (6, 2)
    assert tuple(R[3]) == (-1, 0)


def test_root_exponent_wraps():
    a = RootExponent(5, 4)
    assert a.value == 1
    assert (a + RootExponent(3, 4)).value == 0
    assert (-a).value == 3


orders = st.integers(min_value=1, max_value=24)


@st.composite
def cyc_pairs(draw):
    n = draw(orders)
    c = st.lists(st.integers(-5, 5), min_size=n, max_size=n)
    return CyclotomicInt.from_coeffs(n, draw(c)), CyclotomicInt.from_coeffs(n, draw(c))


@settings(max_examples=150, deadline=None)
@given(cyc_pairs())
def test_ring_laws_match_complex_evaluation(pair):
    a, b = pair
    for exact, approx in ((a + b, a.to_complex() + b.to_complex()),
                          (a * b, a.to_complex() * b.to_complex()),
                          (a.conj(), a.to_complex().conjugate())):
        assert abs(exact.to_complex() - approx) < 1e-9
    assert a * b == b * a
    assert a.conj().conj() == a


@settings(max_examples=150, deadline=None)
@given(orders, st.integers(0, 100), st.integers(0, 100))
def test_unit_products(n, j, k):
    zj, zk = CyclotomicInt.root(n, j), CyclotomicInt.root(n, k)
    assert zj * zk == CyclotomicInt.root(n, j + k)
    assert zj * zj.conj() == CyclotomicInt.integer(n, 1)
    assert abs(RootExponent(j, n).to_complex() - zj.to_complex()) < 1e-9


def test_cyc_matrix_product_matches_numpy():
    rng = np.random.default_rng(0)
    n = 5
    A = rng.integers(-2, 3, size=(3, 4, n))
    B = rng.integers(-2, 3, size=(4, 2, n))
    P = CycMatrix(n, A) @ CycMatrix(n, B)
    z = np.exp(2j * np.pi / n) ** np.arange(n)
    num = (A @ z)[:, :] @ (B @ z)
    got = P.reduced() @ (z[: reduction_matrix(n).shape[1]])
    assert np.allclose(got, num)
