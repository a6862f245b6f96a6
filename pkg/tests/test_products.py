from functools import lru_cache

import numpy as np
import pytest

from cohodev.characters import FormulaCharacter
from cohodev.develop import MonomialCoverSpec
from cohodev.families import _generic_orbit, a6_spec, paley_conference, sign_on
from cohodev.groups import GSet, PermGroup
from cohodev.matrix import ZERO, GenMatrix, d_equivalent, is_gw
from cohodev.products import (AxiomError, QuasiSetup, ZDeveloped, decompose, gram_value_set, kronecker,
                              kronecker_support, lifted_orbital_basis, lifted_value_formula, quasi_weighing_iff,
                              quasiproduct, quasiprojective_setup, quasiprojective_support, sum_mul,
                              verify_splitting, weaving)


@lru_cache(maxsize=None)
def qp5():
    return quasiprojective_setup(5, 1, 2)


def trivial_setup(spec):
    ident = lambda p: p  # noqa: E731
    return QuasiSetup(spec, spec.G.identity, spec.X, spec.Y, spec.x0, spec.y0, ident, ident)


def test_zdeveloped_matrix():
    T = ZDeveloped.from_signs([-1, 1, 1, 1])
    S = T.matrix().to_signs()
    assert S[0].tolist() == [-1, 1, 1, 1] and S[1].tolist() == [1, -1, 1, 1]
    assert T.is_weighing()
    assert not ZDeveloped.from_signs([1, 1, 0, 0]).is_weighing()
    assert ZDeveloped.indicator(4, 2).matrix() == GenMatrix.identity(4, 2)


def test_lifted_orbits_above_generic_orbit():
    S = qp5()
    i = _generic_orbit(S.base)
    above = {S.lifted.orbit_of(*np.argwhere(lifted_orbital_basis(S)[(i, k)].support())[0]).index
             for k in range(4)}
    assert len(S.Z) == 4 and len(above) == 4


def test_splitting_axioms():
    assert verify_splitting(qp5())


def test_lifted_formula_matches_development():
    S = qp5()
    base = S.base_basis()
    for (i, k), B in lifted_orbital_basis(S).items():
        for x, y in np.argwhere(B.support()):
            assert B.exps[x, y] == lifted_value_formula(S, i, k, (int(x), int(y)), base)


def test_lifted_supports_partition_preimage():
    S = qp5()
    basis = lifted_orbital_basis(S)
    i = _generic_orbit(S.base)
    total = sum(basis[(i, k)].support().astype(int) for k in range(4))
    assert total.max() == 1
    base_sup = S.base_basis()[i].support()
    px = [S.fibre_index("X", a)[0] for a in range(len(S.Xp))]
    py = [S.fibre_index("Y", b)[0] for b in range(len(S.Yp))]
    assert np.array_equal(total.astype(bool), base_sup[np.ix_(px, py)])


def test_lifted_support_is_a_level_set():
    """B_{i,k} is carried by {x·y = α^{-k}} (the scalar ζ^k moves y to α^{-k} y in the dual action)."""
    S = qp5()
    F = S.base.G.field
    i = _generic_orbit(S.base)
    for k in range(4):
        sup = lifted_orbital_basis(S)[(i, k)].support()
        vals = {sum_mul(F, S.Xp.points[a], S.Yp.points[b]) for a, b in zip(*np.nonzero(sup))}
        assert vals == {F.inv(F.power(F.generator, k))}


def test_zero_and_degenerate_products():
    S = qp5()
    W = S.base_basis()[_generic_orbit(S.base)]
    assert not quasiproduct(W, ZDeveloped((ZERO,) * 4, 2), S).support().any()
    with pytest.raises(ValueError):
        quasiproduct(W, ZDeveloped.indicator(3, 2), S)
    spec = a6_spec()
    T1 = trivial_setup(spec)
    A = spec.orbital_basis()[1]
    assert quasiproduct(A, ZDeveloped.indicator(1, 2), T1) == A
    assert quasiproduct(A, ZDeveloped((1,), 2), T1) == A.scaled(1)
    base = T1.base_basis()
    for (i, k), B in lifted_orbital_basis(T1).items():
        assert B == base[i]


def test_split_extension_gives_kronecker_blocks():
    """G = A_6 x Z/2 acting on X x Z: each lifted basis matrix is B_i ⊗ P_k up to diagonal scaling."""
    A6 = a6_spec()
    gens = [tuple(s.payload) + (6, 7) for s in A6.G.generators] + [tuple(range(6)) + (7, 6)]
    G = PermGroup(8, gens, name="A6xZ2")
    pts = A6.X.points
    X = GSet(G, pts, lambda p, s: frozenset(p[i] for i in s))
    psi = FormulaCharacter(sign_on([2, 3, 4, 5]), 2, "sign on {3,4,5,6}")
    base = MonomialCoverSpec(G, X, X, A6.x0, A6.x0, psi, psi, 2)
    Xp = GSet(G, [(s, c) for s in pts for c in (6, 7)], lambda p, v: (frozenset(p[i] for i in v[0]), p[v[1]]))
    xp0 = Xp.index[(pts[A6.x0], 6)]
    setup = QuasiSetup(base, G.generators[-1], Xp, Xp, xp0, xp0, lambda v: v[0], lambda v: v[0])
    Bs = setup.base_basis()
    P = [GenMatrix.identity(2, 2), GenMatrix.from_signs([[0, 1], [1, 0]])]
    for (i, k), B in lifted_orbital_basis(setup).items():
        assert d_equivalent(B, kronecker(Bs[i], P[k])) is not None


def test_axiom_violations_are_reported():
    spec = a6_spec()
    g = spec.G.generators[0]
    ident = lambda p: p  # noqa: E731
    with pytest.raises(AxiomError):
        QuasiSetup(spec, g, spec.X, spec.Y, spec.x0, spec.y0, ident, ident)


def test_decompose_round_trip():
    S = qp5()
    B = S.base_basis()
    i = _generic_orbit(S.base)
    assert decompose(B[i].scaled(1), S) == {i: 1}
    bad = B[i].exps.copy()
    x, y = np.argwhere(bad != ZERO)[-1]
    bad[x, y] = ZERO
    with pytest.raises(ValueError):
        decompose(GenMatrix(bad, 2), S)


def test_iff_non_weighing_side():
    S = qp5()
    W = S.base_basis()[_generic_orbit(S.base)]
    assert quasi_weighing_iff(W, ZDeveloped.from_signs([1, 1, 0, 0]), S) == (False, False)


def test_kronecker_identity():
    assert kronecker(GenMatrix.identity(2, 2), GenMatrix.identity(3, 2)) == GenMatrix.identity(6, 2)


def test_weaving_matches_kronecker_and_is_weighing():
    W = paley_conference(11, 2).matrix
    T = paley_conference(9, 2).matrix
    U = weaving([W] * 10, [T] * 12)
    K = kronecker(W, T)
    perm = [a * 10 + b for b in range(10) for a in range(12)]
    assert K.permuted(perm, range(120)) == U
    assert is_gw(U, 99)


def test_gram_value_sets():
    assert gram_value_set(np.eye(3, dtype=np.int64)) == {0, 1}
    assert gram_value_set(kronecker_support(11)) == {80, 88, 90, 99}
    assert 81 in gram_value_set(quasiprojective_support(11))
