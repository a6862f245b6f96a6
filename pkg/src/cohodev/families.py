"""Named weighing-matrix families built on the development engine."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .characters import FormulaCharacter, trivial_character
from .develop import MonomialCoverSpec
from .fields import FiniteField, ResidueSymbol, field_of_order, prime_power
from .geometry import (block_det_character, flag_gsets, gaussian_binomial, gaussian_multinomial,
                       general_linear_group, subspace_gsets)
from .groups import AffineGroup, GSet, PermGroup
from .matrix import ZERO, GenMatrix, d_equivalent, exact_rank, gram_equals, is_gw


@dataclass
class FamilyResult:
    name: str
    matrix: GenMatrix
    spec: MonomialCoverSpec | None
    claimed: tuple[int, int, int] | None
    verified: bool
    note: str = ""

    def summary(self) -> str:
        verdict = "VERIFIED" if self.verified else "FAILED"
        if self.claimed is None:
            return f"{self.name} {verdict}"
        N, w, n = self.claimed
        return f"GW({N},{w};{n}) {verdict}"


def _gw_result(name: str, A: GenMatrix, spec: MonomialCoverSpec | None, N: int, w: int, n: int,
               note: str = "") -> FamilyResult:
    ok = A.shape == (N, N) and A.n == n and is_gw(A, w)
    return FamilyResult(name, A, spec, (N, w, n), ok, note)


def _check_divisor(q: int, n: int) -> FiniteField:
    F = field_of_order(q)
    if n < 2 or (q - 1) % n:
        raise ValueError(f"n={n} must satisfy 1 < n | q-1 = {q - 1}")
    return F


# ---------------------------------------------------------------- Paley

def paley_spec(q: int, n: int) -> MonomialCoverSpec:
    """Affine group of F_q on X = Y = F_q, residue character on X, trivial on Y."""
    F = _check_divisor(q, n)
    G = AffineGroup(F, [(F.generator, 0), (1, 1)], name=f"AGL_1(F_{q})")
    act = lambda g, x: F.add(F.mul(g[0], x), g[1])  # noqa: E731
    X = GSet(G, range(q), act, name="F")
    Y = GSet(G, range(q), act, name="F")
    sym = ResidueSymbol(F, n)
    psi_X = FormulaCharacter(lambda g: sym(g[0]), n, "residue of the multiplier")
    return MonomialCoverSpec(G, X, Y, 0, 0, psi_X, trivial_character(n), n, label=f"paley({q},{n})")


def paley_kernel_closed(q: int, n: int) -> GenMatrix:
    F = _check_divisor(q, n)
    sym = ResidueSymbol(F, n)
    e = np.full((q, q), ZERO, dtype=np.int64)
    for s in range(q):
        for t in range(q):
            if s != t:
                e[s, t] = sym(F.sub(t, s))
    return GenMatrix(e, n)


def paley_kernel(q: int, n: int, method: str = "closed") -> FamilyResult:
    """q x q kernel A_{s,t} = ((t - s)/F)_n with Gram qI - J.

    ``method="develop"`` runs the generic engine on the affine group; its
    output depends on the transversal, so it is checked for D-equivalence
    with the closed form rather than for the exact Gram matrix.
    """
    closed = paley_kernel_closed(q, n)
    J = np.ones((q, q), dtype=np.int64)
    if method == "closed":
        ok = gram_equals(closed, q * np.eye(q, dtype=np.int64) - J)
        return FamilyResult("paley-kernel", closed, None, None, ok, "Gram = qI - J" if ok else "Gram differs from qI - J")
    if method == "develop":
        spec = paley_spec(q, n)
        A = spec.develop({spec.orbit_of(0, 1).index: 0})
        ok = d_equivalent(A, closed) is not None
        return FamilyResult("paley-kernel", A, spec, None, ok, "D-equivalent to the closed form")
    raise ValueError(f"unknown method {method!r}")


def _border(A: GenMatrix, corner: int | None, row_sign: int, col_sign: int = 0) -> GenMatrix:
    """[[A, ζ^{col_sign} j^T], [ζ^{row_sign} j, corner]]."""
    N = A.rows
    e = np.full((N + 1, N + 1), ZERO, dtype=np.int64)
    e[:N, :N] = A.exps
    e[:N, N] = col_sign % A.n
    e[N, :N] = row_sign % A.n
    e[N, N] = ZERO if corner is None else corner % A.n
    return GenMatrix(e, A.n)


def paley_conference(q: int, n: int) -> FamilyResult:
    A = paley_kernel_closed(q, n)
    return _gw_result("paley-conference", _border(A, None, 0), None, q + 1, q, n)


def paley_hadamard_I(q: int) -> FamilyResult:
    """[[I + A, j^T], [-j, 1]] for q ≡ 3 mod 4."""
    if q % 4 != 3:
        raise ValueError("type I needs q ≡ 3 mod 4")
    A = paley_kernel_closed(q, 2)
    e = A.exps.copy()
    np.fill_diagonal(e, 0)
    H = _border(GenMatrix(e, 2), 0, 1)
    return _gw_result("paley-hadamard1", H, None, q + 1, q + 1, 2)


def _blocks(rows: Sequence[Sequence[GenMatrix]]) -> GenMatrix:
    return GenMatrix(np.block([[b.exps for b in r] for r in rows]), rows[0][0].n)


def paley_hadamard_II(q: int, border: str = "symmetric") -> FamilyResult:
    """[[H, H'], [-H', H]] of order 2q + 2 for q ≡ 1 mod 4.

    With ``border="symmetric"`` the blocks are C + I and C - I for the
    symmetric conference matrix C = [[A, j^T], [j, 0]].  ``border="display"``
    reuses the type I border [[·, j^T], [-j, 1]] for both blocks; that
    variant is kept for comparison and does not give a Hadamard matrix.
    """
    if q % 4 != 1:
        raise ValueError("type II needs q ≡ 1 mod 4")
    A = paley_kernel_closed(q, 2)
    plus, minus = A.exps.copy(), A.exps.copy()
    np.fill_diagonal(plus, 0)
    np.fill_diagonal(minus, 1)
    if border == "symmetric":
        H = _border(GenMatrix(plus, 2), 0, 0)
        Hp = _border(GenMatrix(minus, 2), 1, 0)
    elif border == "display":
        H = _border(GenMatrix(plus, 2), 0, 1)
        Hp = _border(GenMatrix(minus, 2), 0, 1)
    else:
        raise ValueError(f"unknown border {border!r}")
    M = _blocks([[H, Hp], [Hp.negated(), H]])
    return _gw_result("paley-hadamard2", M, None, 2 * q + 2, 2 * q + 2, 2, f"border={border}")


# ---------------------------------------------------------------- projective, Grassmannian, flags

def _subspace_spec(q: int, d: int, parts: Sequence[int], weights: Sequence[int], n: int,
                   label: str) -> MonomialCoverSpec:
    F = _check_divisor(q, n)
    G = general_linear_group(F, d)
    if len(parts) == 2:
        X, Y = subspace_gsets(G, parts[0])
    else:
        X, Y = flag_gsets(G, parts)
    psi = block_det_character(F, parts, weights, n)
    x0 = X.index[_standard_point(d, parts)]
    return MonomialCoverSpec(G, X, Y, x0, x0, psi, psi, n, label=label)


def _standard_point(d: int, parts: Sequence[int]):
    from .geometry import standard_subspace

    dims = [sum(parts[: i + 1]) for i in range(len(parts) - 1)]
    if len(parts) == 2:
        return standard_subspace(d, parts[0])
    return tuple(standard_subspace(d, k) for k in dims)


def _generic_orbit(spec: MonomialCoverSpec) -> int:
    """The orbit of pairs (x, y) with x ∩ y^⊥ = 0, identified through the head."""
    F = spec.G.field
    for o in spec.orbits():
        x, y = o.head
        if _transversal_pair(F, spec.X.points[x], spec.Y.points[y]):
            return o.index
    raise ArithmeticError("no generic orbit found")


def _transversal_pair(F: FiniteField, V, W) -> bool:
    """For subspaces (or flags, componentwise) V, W: the pairing matrix V·W^T has full rank."""
    from .fields import det

    if V and isinstance(V[0][0], tuple):
        return all(_transversal_pair(F, a, b) for a, b in zip(V, W))
    gram = tuple(tuple(_dot(F, v, w) for w in W) for v in V)
    return det(F, gram) != 0


def _dot(F: FiniteField, v, w) -> int:
    s = 0
    for a, b in zip(v, w):
        if a and b:
            s = F.add(s, F.mul(a, b))
    return s


def projective_gw(q: int, d: int, n: int) -> FamilyResult:
    """GW((q^{d+1}-1)/(q-1), q^d; n) from GL_{d+1}(F_q) on points and hyperplanes."""
    if d < 1:
        raise ValueError("d must be at least 1")
    spec = _subspace_spec(q, d + 1, (1, d), (1, 0), n, f"projective({q},{d},{n})")
    A = spec.develop({_generic_orbit(spec): 0})
    N = (q ** (d + 1) - 1) // (q - 1)
    return _gw_result("projective", A, spec, N, q**d, n)


def grassmannian_gw(q: int, d: int, k: int, n: int) -> FamilyResult:
    """GW([d k]_q, q^{k(d-k)}; n) on k-subspaces of F_q^d."""
    if not 0 < k < d:
        raise ValueError("need 0 < k < d")
    spec = _subspace_spec(q, d, (k, d - k), (1, 0), n, f"grassmannian({q},{d},{k},{n})")
    norbits = len(spec.orbits())
    if norbits != 1 + min(k, d - k):
        raise ArithmeticError(f"found {norbits} orbits on X x Y, expected {1 + min(k, d - k)}")
    A = spec.develop({_generic_orbit(spec): 0})
    res = _gw_result("grassmannian", A, spec, gaussian_binomial(d, k, q), q ** (k * (d - k)), n,
                     f"{norbits} orbits")
    return res


def flag_gw(q: int, partition: Sequence[int], n: int) -> FamilyResult:
    """Flags of type ``partition``; character Π_i (det A_i / F)_n^i."""
    parts = tuple(int(p) for p in partition)
    r = len(parts)
    if r < 2 or any(p <= 0 for p in parts):
        raise ValueError("partition needs at least two positive parts")
    if n < r:
        raise ValueError(f"the flag construction needs n >= r (got n={n}, r={r})")
    d = sum(parts)
    spec = _subspace_spec(q, d, parts, tuple(range(1, r + 1)), n, f"flag({q},{parts},{n})")
    size = gaussian_multinomial(d, parts, q)
    if len(spec.X) != size:
        raise ArithmeticError(f"{len(spec.X)} flags enumerated, expected {size}")
    A = spec.develop({_generic_orbit(spec): 0})
    w = q ** ((d * d - sum(p * p for p in parts)) // 2)
    return _gw_result("flag", A, spec, size, w, n)


# ---------------------------------------------------------------- A_6 and the cube

def sign_on(points: Sequence[int]):
    """Parity of a permutation restricted to an invariant point set."""
    pts = list(points)

    def fn(p) -> int:
        seen: set[int] = set()
        parity = 0
        for a in pts:
            if a in seen:
                continue
            length, b = 0, a
            while b not in seen:
                seen.add(b)
                b = p[b]
                length += 1
            parity += length - 1
        return parity % 2

    return fn


def alternating_group_6() -> PermGroup:
    c = PermGroup.from_cycles
    return PermGroup(6, [c(6, [(1, 2, 3)], 1), c(6, [(2, 3, 4, 5, 6)], 1)], name="A6")


def a6_spec(TX=None) -> MonomialCoverSpec:
    """A_6 on 2-subsets of {1..6}, basepoint {1,2}, ψ = sign on {3,4,5,6}, both sides."""
    G = alternating_group_6()
    pts = sorted((frozenset(c) for c in itertools.combinations(range(6), 2)), key=sorted)
    X = GSet(G, pts, lambda p, s: frozenset(p[i] for i in s), name="2-subsets")
    x0 = X.index[frozenset({0, 1})]
    psi = FormulaCharacter(sign_on([2, 3, 4, 5]), 2, "sign on {3,4,5,6}")
    return MonomialCoverSpec(G, X, X, x0, x0, psi, psi, 2, TX=TX, TY=TX, label="A6")


def a6_w15() -> FamilyResult:
    spec = a6_spec()
    orbits = spec.orbits()
    # O_2 is the orbit of pairs meeting in one point
    o2 = next(o for o in orbits if len(spec.X.points[o.head[0]] & spec.Y.points[o.head[1]]) == 1)
    B2 = spec.develop({o2.index: 0})
    S = B2.to_signs()
    if not (S == S.T).all() or set(S.astype(bool).sum(axis=1)) != {8}:
        raise ArithmeticError("B_2 is not symmetric of row weight 8")
    sq = S @ S - 8 * np.eye(15, dtype=np.int64)
    i, j = np.argwhere(S != 0)[0]
    alpha = int(sq[i, j] // S[i, j])
    if not np.array_equal(sq, alpha * S) or abs(alpha) != 2:
        raise ArithmeticError("B_2 fails the quadratic identity")
    I = np.eye(15, dtype=np.int64)
    for sign in (1, -1):
        W = GenMatrix.from_signs(I + sign * S)
        if is_gw(W, 9):
            return FamilyResult("a6-w15", W, spec, (15, 9, 2), True, f"alpha={alpha}, I{'+' if sign > 0 else '-'}B_2")
    return FamilyResult("a6-w15", GenMatrix.from_signs(I + S), spec, (15, 9, 2), False, f"alpha={alpha}")


CUBE_DISPLAY = (
    (1, 1, -1, -1, 0, 0),
    (1, 1, -1, -1, 0, 0),
    (-1, -1, 0, 0, 1, 1),
    (-1, -1, 0, 0, 1, 1),
    (0, 0, 1, 1, -1, -1),
    (0, 0, 1, 1, -1, -1),
)


def hyperoctahedral_group_3() -> PermGroup:
    """Signed 3 x 3 permutation matrices acting on the points +e1,-e1,+e2,-e2,+e3,-e3 (0..5)."""
    c = PermGroup.from_cycles
    rot = c(6, [(0, 2, 4), (1, 3, 5)])     # cyclic permutation of the axes
    swap = c(6, [(0, 2), (1, 3)])           # exchange of the first two axes
    flip = c(6, [(0, 1)])                   # e1 -> -e1
    return PermGroup(6, [rot, swap, flip], name="B3")


def cube_spec() -> MonomialCoverSpec:
    G = hyperoctahedral_group_3()

    def idx(axis: int, sign: int) -> int:
        return 2 * axis + (0 if sign > 0 else 1)

    # edges ±(e_i + s e_j), i < j, each stored as the set of its two signed-vector representatives
    edges = []
    for i, j in ((0, 1), (0, 2), (1, 2)):
        for s in (1, -1):
            edges.append(frozenset({frozenset({idx(i, 1), idx(j, s)}), frozenset({idx(i, -1), idx(j, -s)})}))
    X = GSet(G, list(range(6)), lambda p, x: p[x], name="faces")
    Y = GSet(G, edges, lambda p, e: frozenset(frozenset(p[a] for a in half) for half in e), name="edges")
    chi1 = FormulaCharacter(sign_on(range(6)), 2, "product of the nonzero entries")
    axes = [frozenset({0, 1}), frozenset({2, 3}), frozenset({4, 5})]

    def det_sign(p) -> int:
        # det = sign of the axis permutation times the product of the entries
        axis_perm = [axes.index(frozenset({p[2 * a], p[2 * a + 1]})) for a in range(3)]
        return (sign_on(range(3))(axis_perm) + sign_on(range(6))(p)) % 2

    chi2 = FormulaCharacter(det_sign, 2, "determinant")
    return MonomialCoverSpec(G, X, Y, 0, 0, chi1, chi2, 2, label="cube")


def cube_example() -> FamilyResult:
    spec = cube_spec()
    incident = next(o for o in spec.orbits()
                    if any(spec.X.points[o.head[0]] in half for half in spec.Y.points[o.head[1]]))
    A = spec.develop({incident.index: 0})
    display = GenMatrix.from_signs(CUBE_DISPLAY)
    ok = d_equivalent(A, display) is not None and exact_rank(A) == 2
    return FamilyResult("cube", A, spec, None, ok, "D-equivalent to the displayed matrix, rank 2")


def projective_line_vs_conference(q: int, n: int) -> tuple[GenMatrix, GenMatrix, str | None]:
    """Reindex projective_gw(q, 1, n) to the Paley conference layout and compare.

    Row s ↦ [1:s], the border row ↦ [0:1]; column t ↦ the dual vector (t, -1),
    the border column ↦ (1, 0).  Returns (reindexed, conference, relation)
    where relation is "equal-class", "conjugate-class" or None.
    """
    from .geometry import canonical_subspace

    res = projective_gw(q, 1, n)
    F, X, Y = res.spec.G.field, res.spec.X, res.spec.Y
    rows = [X.index[canonical_subspace(F, [(1, s)])] for s in range(q)] + [X.index[((0, 1),)]]
    cols = [Y.index[canonical_subspace(F, [(t, F.neg(1))])] for t in range(q)] + [Y.index[((1, 0),)]]
    B = res.matrix.permuted(rows, cols)
    C = paley_conference(q, n).matrix
    if d_equivalent(B, C) is not None:
        return B, C, "equal-class"
    if d_equivalent(B, C.conj()) is not None:
        return B, C, "conjugate-class"
    return B, C, None
