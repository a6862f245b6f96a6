"""Quasiproducts over central extensions, Kronecker and weaving products, Gram value sets."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .develop import MonomialCoverSpec, OrbitData
from .fields import FiniteField, field_of_order
from .geometry import canonical_subspace, dual_matrix, general_linear_group, subspace_gsets, block_det_character
from .groups import CapExceeded, GroupElement, GSet, Transversal, closure, enum_cap
from .matrix import ZERO, GenMatrix, orthogonality_weight


class AxiomError(ValueError):
    """A quasiproduct axiom (A1..A6) fails for the supplied data."""

    def __init__(self, axiom: str, detail: str):
        super().__init__(f"axiom {axiom}: {detail}")
        self.axiom = axiom


# ---------------------------------------------------------------- Z-developed matrices

@dataclass(frozen=True)
class ZDeveloped:
    """Σ t_k [ζ^k] in the group ring of a cyclic group; coefficients are exponents or ZERO."""

    coeffs: tuple[int, ...]
    n: int

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(ZERO if c == ZERO else int(c) % self.n for c in self.coeffs))

    @classmethod
    def from_signs(cls, row: Sequence[int]) -> "ZDeveloped":
        return cls(tuple(ZERO if v == 0 else (0 if v == 1 else 1) for v in row), 2)

    @classmethod
    def indicator(cls, m: int, n: int, k: int = 0) -> "ZDeveloped":
        return cls(tuple(0 if j == k else ZERO for j in range(m)), n)

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def matrix(self) -> GenMatrix:
        """T[k1, k2] = t_{k2 - k1}: the sum of t_z P_z with (P_z)_{z1, z2} = 1 iff z2 z1^{-1} = z."""
        m = self.order
        c = np.asarray(self.coeffs, dtype=np.int64)
        idx = (np.arange(m)[None, :] - np.arange(m)[:, None]) % m
        return GenMatrix(c[idx], self.n)

    def is_weighing(self) -> bool:
        return orthogonality_weight(self.matrix()) is not None


# ---------------------------------------------------------------- setup

@dataclass
class QuasiSetup:
    """Data of a central extension 1 → Z → G → PG → 1 acting on X' → X and Y' → Y.

    ``base`` is the monomial cover on X × Y.  ``Xp``/``Yp`` realize G/H'_X and
    G/H'_Y; ``proj_X``/``proj_Y`` send their points to X and Y.  ``zeta`` generates
    the cyclic central subgroup Z.  Lifted transversals {g_x ζ^k} are built here.
    """

    base: MonomialCoverSpec
    zeta: GroupElement
    Xp: GSet
    Yp: GSet
    xp0: int
    yp0: int
    proj_X: Callable[[object], object]
    proj_Y: Callable[[object], object]
    label: str = ""
    Z: list[GroupElement] = field(init=False)
    psi: int = field(init=False)
    lifted: MonomialCoverSpec = field(init=False)
    _basis: dict | None = field(default=None, init=False, repr=False)
    _heads: dict[int, int] = field(default_factory=dict, init=False, repr=False)
    _diag: MonomialCoverSpec | None = field(default=None, init=False, repr=False)

    def __post_init__(self):
        b = self.base
        G = b.G
        Z = [G.identity]
        while True:
            nxt = Z[-1] * self.zeta
            if nxt.is_identity():
                break
            Z.append(nxt)
            if len(Z) > enum_cap():
                raise CapExceeded("Z is too large")
        self.Z = Z
        # A1: Z is central
        for s in G.generators:
            if s * self.zeta != self.zeta * s:
                raise AxiomError("A1", "Z is not central")
        # A2: Z lies in both stabilizers
        if b.X.act(self.zeta, b.x0) != b.x0 or b.Y.act(self.zeta, b.y0) != b.y0:
            raise AxiomError("A2", "Z does not fix the basepoints")
        # A4: ψ_X|Z = ψ_Y|Z
        px, py = b.psi_X.evaluate(self.zeta), b.psi_Y.evaluate(self.zeta)
        if px != py:
            raise AxiomError("A4", f"ψ_X(ζ) = {px} differs from ψ_Y(ζ) = {py}")
        self.psi = px
        # projections must be equivariant and send basepoints to basepoints
        self._px = np.array([b.X.index[self.proj_X(p)] for p in self.Xp.points], dtype=np.int64)
        self._py = np.array([b.Y.index[self.proj_Y(p)] for p in self.Yp.points], dtype=np.int64)
        if self._px[self.xp0] != b.x0 or self._py[self.yp0] != b.y0:
            raise AxiomError("A3", "the lifted basepoints do not lie over the basepoints")
        for s in G.generators:
            if not (np.array_equal(self._px[list(self.Xp.perm(s))], np.asarray(b.X.perm(s))[self._px])
                    and np.array_equal(self._py[list(self.Yp.perm(s))], np.asarray(b.Y.perm(s))[self._py])):
                raise AxiomError("A3", "projection is not G-equivariant")
        TXp = self._lift(b.TX, self.Xp, self.xp0, self._px, len(b.X))
        TYp = self._lift(b.TY, self.Yp, self.yp0, self._py, len(b.Y))
        self.lifted = MonomialCoverSpec(G, self.Xp, self.Yp, self.xp0, self.yp0, b.psi_X, b.psi_Y, b.n,
                                        TX=TXp, TY=TYp, label=f"{b.label}'")

    def _lift(self, T: Transversal, S: GSet, s0: int, proj: np.ndarray, nbase: int) -> Transversal:
        """{g_x ζ^k}; Z must act freely on the fibre over the basepoint (H' ∩ Z = 1, A3)."""
        m = len(self.Z)
        if len(S) != m * nbase:
            raise AxiomError("A3", f"|X'| = {len(S)} is not |Z|·|X| = {m * nbase}")
        fibre = [S.act(z, s0) for z in self.Z]
        if len(set(fibre)) != m:
            raise AxiomError("A3", "Z meets the lifted stabilizer (H' ∩ Z ≠ 1)")
        reps: dict[int, GroupElement] = {}
        for x, gx in T.reps.items():
            for z, pt in zip(self.Z, fibre):
                reps[S.act(gx, pt)] = gx * z
        if len(reps) != len(S):
            raise AxiomError("A5", "lifted representatives do not cover X'")
        return Transversal.from_reps(S, s0, reps)

    @property
    def n(self) -> int:
        return self.base.n

    def fibre_index(self, which: str, point: int) -> tuple[int, int]:
        """(x, k) with point = g_x ζ^k · x'_0 (similarly for Y')."""
        S, s0, T, proj = ((self.Xp, self.xp0, self.base.TX, self._px) if which == "X"
                          else (self.Yp, self.yp0, self.base.TY, self._py))
        x = int(proj[point])
        local = S.act(T.rep_inv(x), point)
        for k, z in enumerate(self.Z):
            if S.act(z, s0) == local:
                return x, k
        raise AssertionError("point is not in the fibre")

    # ------------------------------------------------------------ heads and bases
    def head_y(self, orbit: OrbitData) -> int:
        """y_O: the least y with (x0, y) in O; g_O is then the representative g_{y_O}."""
        if orbit.index not in self._heads:
            x0 = self.base.x0
            self._heads[orbit.index] = min(y for x, y in orbit.members if x == x0)
        return self._heads[orbit.index]

    def base_basis(self) -> dict[int, GenMatrix]:
        """B_i normalized to 1 at (x0, y_O) for each orientable orbit O_i of X × Y."""
        out = {}
        for o in self.base.orientable_orbits():
            M = self.base.develop({o.index: 0})
            out[o.index] = M.scaled(-M.entry(self.base.x0, self.head_y(o)))
        return out

    def lifted_head(self, orbit: OrbitData, k: int) -> tuple[int, int]:
        g_o = self.base.TY.rep(self.head_y(orbit))
        return self.xp0, self.Yp.act(g_o * self.Z[k], self.yp0)


def lifted_orbital_basis(setup: QuasiSetup) -> dict[tuple[int, int], GenMatrix]:
    """B_{i,k} on X' × Y', normalized to 1 at (x'_0, g_O ζ^k y'_0), for orientable O_i."""
    if setup._basis is not None:
        return setup._basis
    L = setup.lifted
    out: dict[tuple[int, int], GenMatrix] = {}
    for o in setup.base.orientable_orbits():
        seen: set[int] = set()
        for k in range(len(setup.Z)):
            cell = setup.lifted_head(o, k)
            lo = L.orbit_of(*cell)
            if lo.index in seen:
                raise AxiomError("A6", f"two heads above orbit {o.index} share a lifted orbit")
            seen.add(lo.index)
            if not L.is_orientable(lo):
                raise AxiomError("A4", f"lifted orbit above orientable orbit {o.index} is not orientable")
            M = L.develop({lo.index: 0})
            out[(o.index, k)] = M.scaled(-M.entry(*cell))
    setup._basis = out
    return out


def lifted_value_formula(setup: QuasiSetup, i: int, k: int, cell: tuple[int, int],
                         base_basis: dict[int, GenMatrix]) -> int:
    """(B_i)_{x,y} + ψ-exponent of (ζ^k ζ^{k1})^{-1} ζ^{k2} for (x', y') = (g_x ζ^{k1} x'_0, g_y ζ^{k2} y'_0)."""
    x, k1 = setup.fibre_index("X", cell[0])
    y, k2 = setup.fibre_index("Y", cell[1])
    b = base_basis[i].entry(x, y)
    if b is None:
        raise ValueError("cell does not lie above the orbit")
    return (b + setup.psi * (k2 - k - k1)) % setup.n


# ---------------------------------------------------------------- quasiproduct

def decompose(A: GenMatrix, setup: QuasiSetup) -> dict[int, int]:
    """Coefficients a_i (as exponents) with A = Σ ζ^{a_i} B_i; raises when A is not orbit-aligned."""
    spec = setup.base
    if A.shape != (len(spec.X), len(spec.Y)):
        raise ValueError("A has the wrong shape for this setup")
    basis = setup.base_basis()
    coeffs: dict[int, int] = {}
    for o in spec.orbits():
        cells = tuple(np.array(o.members).T)
        vals = A.exps[cells]
        if (vals == ZERO).all():
            continue
        if (vals == ZERO).any():
            raise ValueError(f"support of A cuts orbit {o.index}")
        if o.index not in basis:
            raise ValueError(f"A is supported on non-orientable orbit {o.index}")
        a = int(A.exps[spec.x0, setup.head_y(o)])
        if not np.array_equal((basis[o.index].exps[cells] + a) % A.n, vals):
            raise ValueError(f"A is not invariant on orbit {o.index}")
        coeffs[o.index] = a
    return coeffs


def quasiproduct(A: GenMatrix, T: ZDeveloped, setup: QuasiSetup) -> GenMatrix:
    """A ⊠ T = Σ a_i t_z B_{i,z}."""
    if T.order != len(setup.Z):
        raise ValueError(f"T has {T.order} coefficients but |Z| = {len(setup.Z)}")
    n = setup.n
    if A.n != n:
        if n % A.n:
            raise ValueError("A has an incompatible root order")
        A = A.with_order(n)
    if T.n != n and n % T.n:
        raise ValueError("T has an incompatible root order")
    f = n // T.n
    coeffs = decompose(A, setup)
    basis = lifted_orbital_basis(setup)
    out = np.full((len(setup.Xp), len(setup.Yp)), ZERO, dtype=np.int64)
    for i, a in coeffs.items():
        for k, t in enumerate(T.coeffs):
            if t == ZERO:
                continue
            B = basis[(i, k)].exps
            mask = B != ZERO
            if (out[mask] != ZERO).any():
                raise AssertionError("lifted basis supports overlap")
            out[mask] = (B[mask] + a + f * t) % n
    return GenMatrix(out, n)


def diagonal_spec(setup: QuasiSetup) -> MonomialCoverSpec:
    """(P, P)-cover on X × X."""
    if setup._diag is None:
        b = setup.base
        setup._diag = MonomialCoverSpec(b.G, b.X, b.X, b.x0, b.x0, b.psi_X, b.psi_X, b.n,
                                        TX=b.TX, TY=b.TX, verify=False, label=f"{b.label} (P,P)")
    return setup._diag


def quasi_weighing_iff(A: GenMatrix, T: ZDeveloped, setup: QuasiSetup) -> tuple[bool, bool]:
    """(A ⊠ T is weighing, T is weighing), under a single orientable orbit for (P, P)."""
    count = len(diagonal_spec(setup).orientable_orbits())
    if count != 1:
        raise ValueError(f"(P,P) has {count} orientable orbits on X × X; exactly one is required")
    lhs = orthogonality_weight(quasiproduct(A, T, setup)) is not None
    return lhs, T.is_weighing()


def lifted_diagonal_basis(setup: QuasiSetup) -> list[GenMatrix]:
    """Δ_k on X' × X', supported above the diagonal and normalized to 1 at (x'_0, ζ^k x'_0)."""
    b, L = setup.base, setup.lifted
    S = MonomialCoverSpec(b.G, setup.Xp, setup.Xp, setup.xp0, setup.xp0, b.psi_X, b.psi_X, b.n,
                          TX=L.TX, TY=L.TX, verify=False)
    out = []
    for z in setup.Z:
        cell = (setup.xp0, setup.Xp.act(z, setup.xp0))
        M = S.develop({S.orbit_of(*cell).index: 0})
        out.append(M.scaled(-M.entry(*cell)))
    return out


def qpord_check(setup: QuasiSetup, i: int) -> dict[tuple[int, int], bool]:
    """For all (j, k): B_{i,j} B_{i,k}^* == c·Δ_{j-k}, c the row weight of B_i (exact)."""
    basis = lifted_orbital_basis(setup)
    deltas = lifted_diagonal_basis(setup)
    m = len(setup.Z)
    c = int(setup.base_basis()[i].weight_rows()[0])
    cyc = {k: basis[(i, k)].to_cyc() for k in range(m)}
    out = {}
    for j in range(m):
        for k in range(m):
            lhs = (cyc[j] @ cyc[k].conj_transpose()).reduced()
            rhs = deltas[(j - k) % m].to_cyc().scale(c).reduced()
            out[(j, k)] = bool(np.array_equal(lhs, rhs))
    return out


# ---------------------------------------------------------------- quasiprojective

def quasiprojective_setup(q: int, d: int, n: int) -> QuasiSetup:
    """GL_{d+1}(F_q) ⊃ scalars; X' = nonzero vectors, Y' = nonzero vectors with the dual action."""
    F = field_of_order(q)
    if n < 2 or (q - 1) % n:
        raise ValueError(f"n={n} must satisfy 1 < n | q-1")
    G = general_linear_group(F, d + 1)
    X, Y = subspace_gsets(G, 1)
    psi = block_det_character(F, (1, d), (1, 0), n)
    e1 = tuple(1 if i == 0 else 0 for i in range(d + 1))
    x0 = X.index[(e1,)]
    base = MonomialCoverSpec(G, X, Y, x0, x0, psi, psi, n, label=f"projective({q},{d},{n})")
    vecs = _nonzero_vectors(F, d + 1)

    def act(g, v):
        return tuple(sum_mul(F, row, v) for row in g)

    def act_dual(g, v):
        return act(dual_matrix(F, g, G), v)

    Xp = GSet(G, vecs, act, name="F^{d+1}∖0")
    Yp = GSet(G, vecs, act_dual, name="(F^{d+1}∖0)*")
    zeta = G.element(tuple(tuple(F.generator if i == j else 0 for j in range(d + 1)) for i in range(d + 1)))
    line = lambda v: canonical_subspace(F, [v])  # noqa: E731
    return QuasiSetup(base, zeta, Xp, Yp, Xp.index[e1], Yp.index[e1], line, line,
                      label=f"quasiprojective({q},{d},{n})")


def sum_mul(F: FiniteField, row: Sequence[int], v: Sequence[int]) -> int:
    s = 0
    for a, b in zip(row, v):
        if a and b:
            s = F.add(s, F.mul(a, b))
    return s


def _nonzero_vectors(F: FiniteField, d: int) -> list[tuple[int, ...]]:
    import itertools

    return [v for v in itertools.product(range(F.q), repeat=d) if any(v)]


def quasiprojective_matrix(q: int, d: int, n: int, T: ZDeveloped) -> tuple[GenMatrix, QuasiSetup]:
    """W ⊠ T with W the projective weighing matrix of the setup (normalized basis element)."""
    setup = quasiprojective_setup(q, d, n)
    from .families import _generic_orbit

    W = setup.base_basis()[_generic_orbit(setup.base)]
    return quasiproduct(W, T, setup), setup


# ---------------------------------------------------------------- Kronecker and weaving

def _common(A: GenMatrix, B: GenMatrix) -> tuple[GenMatrix, GenMatrix]:
    m = math.lcm(A.n, B.n)
    return A.with_order(m), B.with_order(m)


def kronecker(A: GenMatrix, B: GenMatrix) -> GenMatrix:
    A, B = _common(A, B)
    e = A.exps[:, None, :, None] + B.exps[None, :, None, :]
    zero = (A.exps[:, None, :, None] == ZERO) | (B.exps[None, :, None, :] == ZERO)
    e = np.where(zero, ZERO, e % A.n)
    return GenMatrix(e.reshape(A.rows * B.rows, A.cols * B.cols), A.n)


def _outer(u: np.ndarray, v: np.ndarray, n: int) -> np.ndarray:
    zero = (u[:, None] == ZERO) | (v[None, :] == ZERO)
    return np.where(zero, ZERO, (u[:, None] + v[None, :]) % n)


def weaving(Ws: Sequence[GenMatrix], Ts: Sequence[GenMatrix]) -> GenMatrix:
    """Block (i, j) = (column j of W_i)(row i of T_j); s matrices W_i are r × r, r matrices T_j are s × s."""
    s, r = len(Ws), len(Ts)
    if s == 0 or r == 0:
        raise ValueError("need at least one matrix on each side")
    if any(W.shape != (r, r) for W in Ws):
        raise ValueError(f"each W_i must be {r} x {r} (one per T_j)")
    if any(T.shape != (s, s) for T in Ts):
        raise ValueError(f"each T_j must be {s} x {s} (one per W_i)")
    n = math.lcm(*(M.n for M in (*Ws, *Ts)))
    Ws = [W.with_order(n) for W in Ws]
    Ts = [T.with_order(n) for T in Ts]
    blocks = [[_outer(Ws[i].exps[:, j], Ts[j].exps[i, :], n) for j in range(r)] for i in range(s)]
    return GenMatrix(np.block(blocks), n)


def gram_value_set(S) -> set[int]:
    """Entries of S S^T for a 0/1 matrix (a GenMatrix is replaced by its support)."""
    M = S.support() if isinstance(S, GenMatrix) else np.asarray(S)
    M = M.astype(np.int64)
    return {int(v) for v in np.unique(M @ M.T)}


def conference_support(m: int) -> np.ndarray:
    return np.ones((m, m), dtype=np.int64) - np.eye(m, dtype=np.int64)


def kronecker_support(q: int) -> np.ndarray:
    """|W| ⊗ |T| for zero-diagonal W(q+1, q) and W(q-1, q-2)."""
    return np.kron(conference_support(q + 1), conference_support(q - 1))


def quasiprojective_support(q: int, c: int = 1) -> np.ndarray:
    """Characteristic matrix of pairs x, y in F^2∖0 with x·y ∉ {0, c}."""
    F = field_of_order(q)
    vecs = _nonzero_vectors(F, 2)
    out = np.zeros((len(vecs), len(vecs)), dtype=np.int64)
    for i, x in enumerate(vecs):
        for j, y in enumerate(vecs):
            v = sum_mul(F, x, y)
            out[i, j] = v not in (0, c)
    return out


def subgroup_elements(gens: Sequence[GroupElement], identity: GroupElement, cap: int | None = None) -> list[GroupElement]:
    return closure(gens, identity, cap)


def verify_splitting(setup: QuasiSetup, cap: int | None = None) -> bool:
    """Enumerate H_X and H'_X and check H'_X ∩ Z = 1 and H'_X · Z = H_X (same for Y)."""
    b, L = setup.base, setup.lifted
    zset = set(setup.Z)
    for H_gens, Hp_gens in ((b.hx_gens, L.hx_gens), (b.hy_gens, L.hy_gens)):
        H = set(closure(H_gens, b.G.identity, cap))
        Hp = closure(Hp_gens, b.G.identity, cap)
        if zset & set(Hp) != {b.G.identity}:
            return False
        if {h * z for h in Hp for z in setup.Z} != H:
            return False
    return True
