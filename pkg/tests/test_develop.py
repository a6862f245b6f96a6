import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import CORPUS, a6_worked_transversal, corpus_spec, pp_spec, translation_paley_spec
from cohodev.characters import FormulaCharacter
from cohodev.develop import (MonomialCoverSpec, NonOrientableError, SignedPair, brute_force_orientable,
                             invariance_check, moncov, sign_at)
from cohodev.families import CUBE_DISPLAY, a6_spec, cube_spec, paley_spec, projective_gw
from cohodev.fields import ResidueSymbol
from cohodev.groups import GSet, PermGroup
from cohodev.matrix import GenMatrix, d_equivalent, gram, gram_coeffs, hadamard_product


def a6_orbit(spec, size):
    """O_2 meets in one point, O_3 is disjoint."""
    X = spec.X.points
    return next(o for o in spec.orbits() if len(X[o.head[0]] & X[o.head[1]]) == size)


def test_moncov_identity():
    spec = a6_spec()
    assert moncov(spec.G.identity, spec).is_identity()


def test_moncov_a6_worked_example():
    base = a6_spec()
    spec = a6_spec(TX=a6_worked_transversal(base))
    g = spec.G.element(PermGroup.from_cycles(6, [(2, 3, 6)], 1))
    P = moncov(g, spec)
    x = spec.X.index[frozenset({0, 2})]  # {1,3}
    y = spec.X.index[frozenset({2, 5})]  # {3,6}
    assert sign_at(x, (P.perm_x, P.exps_x)) == 1
    assert sign_at(y, (P.perm_y, P.exps_y)) == 0


def test_moncov_affine_is_residue_of_multiplier():
    spec = translation_paley_spec(7, 3)
    sym = ResidueSymbol(spec.G.field, 3)
    for a in range(1, 7):
        for b in range(7):
            P = moncov(spec.G.element((a, b)), spec)
            assert set(P.exps_x.tolist()) == {sym(a)}
            assert not P.exps_y.any()


def test_sign_at_examples():
    ident = (np.arange(4), np.zeros(4, dtype=np.int64))
    assert sign_at(2, ident) == 0
    scalar = (np.arange(4), np.ones(4, dtype=np.int64))
    assert all(sign_at(s, scalar) == 1 for s in range(4))


def test_orientability_examples():
    spec = a6_spec()
    assert spec.is_orientable(a6_orbit(spec, 1))
    assert not spec.is_orientable(a6_orbit(spec, 0))
    P = paley_spec(5, 2)
    assert not P.is_orientable(P.orbit_of(0, 0))
    assert P.is_orientable(P.orbit_of(0, 1))
    proj = projective_gw(3, 2, 2).spec
    for o in proj.orbits():
        (x,), (y,) = proj.X.points[o.head[0]], proj.Y.points[o.head[1]]
        occurring = sum(a * b for a, b in zip(x, y)) % 3 == 0
        assert proj.is_orientable(o) == (not occurring)


@pytest.mark.parametrize("name", CORPUS)
def test_schreier_orientability_matches_brute_force(name):
    spec = corpus_spec(name)
    for o in spec.orbits():
        assert spec.is_orientable(o) == brute_force_orientable(o, spec)


def test_develop_cube_matches_display():
    spec = cube_spec()
    o = next(o for o in spec.orbits() if spec.is_orientable(o))
    A = spec.develop({o.index: 0})
    assert d_equivalent(A, GenMatrix.from_signs(CUBE_DISPLAY)) is not None


def test_develop_paley_f5_circulant():
    expected = GenMatrix.from_signs([[(0, 1, -1, -1, 1)[(t - s) % 5] for t in range(5)] for s in range(5)])
    spec = translation_paley_spec(5, 2)
    assert spec.develop({spec.orbit_of(0, 1).index: 0}) == expected
    bfs = paley_spec(5, 2)
    assert d_equivalent(bfs.develop({bfs.orbit_of(0, 1).index: 0}), expected) is not None


@pytest.mark.parametrize("name", CORPUS)
def test_zero_heads_give_zero(name):
    spec = corpus_spec(name)
    assert not spec.develop({}).support().any()
    assert not spec.develop({o.index: None for o in spec.orbits()}).support().any()


def test_nonorientable_head_rejected():
    spec = a6_spec()
    with pytest.raises(NonOrientableError):
        spec.develop({a6_orbit(spec, 0).index: 0})


def test_orbital_basis_examples():
    spec = a6_spec()
    basis = spec.orbital_basis()
    assert len(basis) == 2
    assert basis[0] == GenMatrix.identity(15, 2)
    assert set(basis[1].support().sum(axis=1)) == {8}
    z6 = corpus_spec("z6")
    perms = [B.to_signs() for B in z6.orbital_basis()]
    assert len(perms) == 6
    shift = np.roll(np.eye(6, dtype=np.int64), 1, axis=1)
    assert {tuple(P.ravel()) for P in perms} == {tuple(np.linalg.matrix_power(shift, k).ravel()) for k in range(6)}
    assert len(paley_spec(7, 2).orbital_basis()) == 1


@pytest.mark.parametrize("name", CORPUS)
def test_basis_dimension_and_partition(name):
    spec = corpus_spec(name)
    basis = spec.orbital_basis()
    assert len(basis) == len(spec.orientable_orbits())
    cover = np.zeros((len(spec.X), len(spec.Y)), dtype=np.int64)
    for B in basis:
        cover += B.support()
    region = np.zeros_like(cover)
    for o in spec.orientable_orbits():
        for c in o.members:
            region[c] = 1
    assert np.array_equal(cover, region)
    # linear independence of disjoint nonzero supports
    assert all(B.support().any() for B in basis)


@pytest.mark.parametrize("name", CORPUS)
def test_invariance(name):
    spec = corpus_spec(name)
    assert invariance_check(GenMatrix.zeros(len(spec.X), len(spec.Y), spec.n), spec)
    for B in spec.orbital_basis():
        assert invariance_check(B, spec)
    big = [o for o in spec.orientable_orbits() if len(o) > 1]
    if big:
        B = spec.develop({big[0].index: 0})
        e = B.exps.copy()
        x, y = big[0].members[-1]
        e[x, y] = (e[x, y] + 1) % spec.n
        assert not invariance_check(GenMatrix(e, spec.n), spec)


@pytest.mark.parametrize("name", CORPUS)
def test_moncov_homomorphism_mod_triv(name):
    spec = corpus_spec(name)
    rng = random.Random(7)
    for _ in range(200):
        g, h = spec.G.random_element(rng), spec.G.random_element(rng)
        assert moncov(g * h, spec).equal_mod_triv(moncov(g, spec) * moncov(h, spec))


def test_signed_pair_action_composes():
    spec = a6_spec()
    rng = random.Random(3)
    B = spec.orbital_basis()[1]
    for _ in range(20):
        g, h = spec.G.random_element(rng), spec.G.random_element(rng)
        lhs = (moncov(g, spec) * moncov(h, spec)).act(B)
        assert lhs == moncov(g, spec).act(moncov(h, spec).act(B))


def single_orbit_specs():
    out = [pp_spec(corpus_spec(name)) for name in CORPUS]
    out += [projective_gw(3, 2, 2).spec, projective_gw(5, 1, 4).spec, projective_gw(4, 2, 3).spec]
    return out


def test_single_orientable_orbit_forces_scalar_gram():
    applicable = 0
    for pp in single_orbit_specs():
        if len(pp_spec(pp).orientable_orbits()) != 1:
            continue
        applicable += 1
        rng = random.Random(1)
        heads = {o.index: rng.randrange(pp.n) for o in pp.orientable_orbits()}
        for hv in (heads, {k: 0 for k in heads}):
            A = pp.develop(hv)
            g = gram_coeffs(A)
            off = g.copy()
            off[np.arange(A.rows), np.arange(A.rows)] = 0
            assert not off.any()
            assert len({tuple(g[i, i]) for i in range(A.rows)}) == 1
    assert applicable >= 3


def test_gram_is_hermitian():
    for name in ("a6", "paley-7-3", "cube"):
        spec = corpus_spec(name)
        for B in spec.orbital_basis():
            G = gram(B)
            for i in range(len(G)):
                for j in range(len(G)):
                    assert G[i][j] == G[j][i].conj()


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([(5, 4), (7, 6), (13, 4), (13, 6)]), st.data())
def test_hadamard_product_closure(qn, data):
    """Develop with two residue multiples; their product is invariant for the summed characters."""
    q, n = qn
    base = paley_spec(q, n)
    sym = ResidueSymbol(base.G.field, n)

    def cover(c1, c2):
        px = FormulaCharacter(lambda g, c=c1: c * sym(g[0]), n, f"{c1} res")
        py = FormulaCharacter(lambda g, c=c2: c * sym(g[0]), n, f"{c2} res")
        return MonomialCoverSpec(base.G, base.X, base.Y, 0, 0, px, py, n, TX=base.TX, TY=base.TY)

    a1, a2, b1, b2 = (data.draw(st.integers(0, n - 1)) for _ in range(4))
    S1, S2, S3 = cover(a1, a2), cover(b1, b2), cover(a1 + b1, a2 + b2)
    off = S1.orbit_of(0, 1)
    if not (S1.is_orientable(off) and S2.is_orientable(S2.orbit_of(0, 1))):
        return
    A = S1.develop({off.index: data.draw(st.integers(0, n - 1))})
    B = S2.develop({S2.orbit_of(0, 1).index: data.draw(st.integers(0, n - 1))})
    assert invariance_check(hadamard_product(A, B), S3)


def test_nontransitive_gset_rejected():
    G = PermGroup(4, [(1, 0, 2, 3)])
    S = GSet(G, range(4), lambda p, x: p[x])
    from cohodev.characters import trivial_character
    with pytest.raises(ValueError, match="transitive"):
        MonomialCoverSpec(G, S, S, 0, 0, trivial_character(2), trivial_character(2), 2)
