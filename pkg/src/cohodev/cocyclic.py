"""2-cocycles on finite groups, cocyclic and modified cocyclic matrices.

Groups here are enumerated (:class:`TableGroup`) and act on themselves by left
multiplication, so X = Y = G and matrices are indexed by element indices.
The coefficient module μ_n carries the trivial action and is written
additively through exponents.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .cyclotomic import euler_phi, reduction_matrix
from .groups import ActionGroup, CapExceeded, TableGroup, enum_cap
from .matrix import ZERO, GenMatrix, d_equivalent


def table_group(G: ActionGroup, cap: int | None = None) -> TableGroup:
    """Enumerate G and return it as a multiplication table (generators preserved)."""
    if isinstance(G, TableGroup):
        return G
    elems = G.enumerate(cap)
    index = {g: i for i, g in enumerate(elems)}
    table = [[index[a * b] for b in elems] for a in elems]
    gens = [index[s] for s in G.generators]
    return TableGroup(table, generators=gens, identity_index=index[G.identity],
                      labels=[g.payload for g in elems], name=G.name)


def _check_size(G: TableGroup, limit: int | None = None) -> None:
    cap = enum_cap() if limit is None else limit
    if G.size > cap:
        raise CapExceeded(f"|G| = {G.size} exceeds the limit {cap}")


# ---------------------------------------------------------------- cocycles

@dataclass(frozen=True, eq=False)
class TwoCocycle:
    """ω: G × G → μ_n stored as an exponent table ``values[a, b]``."""

    G: TableGroup
    values: np.ndarray
    n: int

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.int64) % self.n
        if v.shape != (self.G.size, self.G.size):
            raise ValueError("cocycle table has the wrong shape")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __call__(self, a: int, b: int) -> int:
        return int(self.values[a, b])

    def __add__(self, other: "TwoCocycle") -> "TwoCocycle":
        if other.G is not self.G or other.n != self.n:
            raise ValueError("cocycles live on different groups or orders")
        return TwoCocycle(self.G, self.values + other.values, self.n)

    def scale(self, m: int) -> "TwoCocycle":
        return TwoCocycle(self.G, m * self.values, self.n)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, TwoCocycle) and other.G is self.G and other.n == self.n
                and np.array_equal(other.values, self.values))

    @classmethod
    def zero(cls, G: TableGroup, n: int) -> "TwoCocycle":
        return cls(G, np.zeros((G.size, G.size), dtype=np.int64), n)

    @classmethod
    def from_function(cls, G: TableGroup, fn: Callable[[int, int], int], n: int) -> "TwoCocycle":
        m = G.size
        return cls(G, np.array([[fn(a, b) for b in range(m)] for a in range(m)], dtype=np.int64), n)


def cocycle_defect(w: TwoCocycle, f1: int, f2: int, f3: int) -> int:
    t = w.G.table
    return (w(f2, f3) - w(t[f1][f2], f3) + w(f1, t[f2][f3]) - w(f1, f2)) % w.n


def validate_2cocycle(w: TwoCocycle, exhaustive_limit: int = 200, samples: int = 10_000,
                      seed: int = 0) -> bool:
    """Cocycle identity on all triples when |G| ≤ exhaustive_limit, on random triples otherwise."""
    G = w.G
    m = G.size
    if m <= exhaustive_limit:
        v = w.values
        T = np.asarray(G.table)
        # vectorized over all (f1, f2, f3)
        # index order [f1, f2, f3]
        third = v[np.arange(m)[:, None, None], T[None, :, :]]
        lhs = (v[None, :, :] - v[T] + third - v[:, :, None]) % w.n
        return bool((lhs == 0).all())
    rng = random.Random(seed)
    return all(cocycle_defect(w, rng.randrange(m), rng.randrange(m), rng.randrange(m)) == 0
               for _ in range(samples))


def coboundary_of(G: TableGroup, z: Sequence[int], n: int) -> TwoCocycle:
    """ω(a, b) = z(b) - z(ab) + z(a)."""
    z = np.asarray(z, dtype=np.int64)
    if z.shape != (G.size,):
        raise ValueError("z must have one value per group element")
    T = np.asarray(G.table)
    return TwoCocycle(G, z[None, :] - z[T] + z[:, None], n)


# ---------------------------------------------------------------- extensions

@dataclass
class CentralExtension:
    """1 → Z → Ĝ → G → 1 with Z central, a set-theoretic section, and Z ↪ μ_n.

    ``rho[i]`` is the image in G of element i of Ĝ; ``section[g]`` an element of Ĝ
    over g; ``kernel_exponent`` maps each element of Z = ker ρ to its exponent in μ_n.
    """

    Ghat: TableGroup
    G: TableGroup
    rho: Sequence[int]
    section: Sequence[int]
    kernel_exponent: dict[int, int]
    n: int

    def __post_init__(self):
        Gh, G = self.Ghat, self.G
        for a in range(Gh.size):
            for b in range(Gh.size):
                if self.rho[Gh.table[a][b]] != G.table[self.rho[a]][self.rho[b]]:
                    raise ValueError("rho is not a homomorphism")
        kernel = {i for i in range(Gh.size) if self.rho[i] == G.e}
        if set(self.kernel_exponent) != kernel:
            raise ValueError("kernel identification does not match ker rho")
        for z in kernel:
            for g in range(Gh.size):
                if Gh.table[z][g] != Gh.table[g][z]:
                    raise ValueError("the kernel is not central")
        for a in kernel:
            for b in kernel:
                if self.kernel_exponent[Gh.table[a][b]] % self.n != (self.kernel_exponent[a] + self.kernel_exponent[b]) % self.n:
                    raise ValueError("kernel identification is not a homomorphism into μ_n")
        if len({e % self.n for e in self.kernel_exponent.values()}) != len(kernel):
            raise ValueError("kernel identification is not injective")
        for g in range(G.size):
            if self.rho[self.section[g]] != g:
                raise ValueError(f"section fails at {g}")

    @property
    def Z(self) -> list[int]:
        return sorted(self.kernel_exponent)


def cocycle_from_extension(ext: CentralExtension) -> TwoCocycle:
    """ω(g1, g2) = s(g1) s(g2) s(g1 g2)^{-1}, read in μ_n."""
    Gh, G, s = ext.Ghat, ext.G, ext.section
    m = G.size
    vals = np.zeros((m, m), dtype=np.int64)
    for a in range(m):
        for b in range(m):
            c = Gh.table[Gh.table[s[a]][s[b]]][Gh.inverses[s[G.table[a][b]]]]
            if c not in ext.kernel_exponent:
                raise ValueError("section defect leaves the kernel")
            vals[a, b] = ext.kernel_exponent[c]
    return TwoCocycle(G, vals, ext.n)


def cyclic_extension(m: int, k: int) -> CentralExtension:
    """Z/(mk) → Z/m with section j ↦ j for 0 ≤ j < m; the kernel mZ/(mk) is identified with μ_k."""
    from .groups import cyclic_group

    Gh, G = cyclic_group(m * k), cyclic_group(m)
    rho = [i % m for i in range(m * k)]
    kernel = {j * m: j for j in range(k)}
    return CentralExtension(Gh, G, rho, list(range(m)), kernel, k)


def extension_group(w: TwoCocycle) -> tuple[TableGroup, list[int]]:
    """E_ω = μ_n × G with (z1, g1)(z2, g2) = (z1 + z2 + ω(g1, g2), g1 g2); returns (E, projection)."""
    G, n = w.G, w.n
    m = G.size
    idx = lambda z, g: z * m + g  # noqa: E731
    table = [[idx((z1 + z2 + w(g1, g2)) % n, G.table[g1][g2]) for z2 in range(n) for g2 in range(m)]
             for z1 in range(n) for g1 in range(m)]
    gens = [idx(0, g.payload) for g in G.generators] + [idx(1 % n, G.e)]
    E = TableGroup(table, generators=gens,
                   labels=[(z, g) for z in range(n) for g in range(m)], name=f"E_w({G.name})")
    return E, [i % m for i in range(n * m)]


# ---------------------------------------------------------------- cocyclic matrices

def _orbit_index(G: TableGroup) -> np.ndarray:
    """h[x, y] = x^{-1} y: the left-regular orbit of a cell in G × G."""
    T = np.asarray(G.table)
    inv = np.asarray(G.inverses)
    return T[inv][:, np.arange(G.size)]


def is_g_stable(G: TableGroup, mask: np.ndarray) -> bool:
    T = np.asarray(G.table)
    return all(np.array_equal(mask[np.ix_(T[g.payload], T[g.payload])], mask) for g in G.generators)


def is_group_developed(G: TableGroup, K: GenMatrix) -> bool:
    T = np.asarray(G.table)
    return all(np.array_equal(K.exps[np.ix_(T[g.payload], T[g.payload])], K.exps) for g in G.generators)


def developed_from_function(G: TableGroup, fn: Sequence[int | None], n: int) -> GenMatrix:
    """K[x, y] = ζ^{fn[x^{-1} y]} (fn entry None gives 0): the general G-developed matrix."""
    h = _orbit_index(G)
    vals = np.array([ZERO if v is None else v % n for v in fn], dtype=np.int64)
    return GenMatrix(vals[h], n)


def _prepare(w: TwoCocycle, O, K: GenMatrix | None) -> tuple[np.ndarray, np.ndarray]:
    G, m = w.G, w.G.size
    mask = np.ones((m, m), dtype=bool) if O is None else np.asarray(O, dtype=bool)
    if mask.shape != (m, m):
        raise ValueError("support mask has the wrong shape")
    if not is_g_stable(G, mask):
        raise ValueError("the support is not G-stable")
    if K is None:
        kexp = np.zeros((m, m), dtype=np.int64)
    else:
        if K.shape != (m, m):
            raise ValueError("K has the wrong shape")
        if w.n % K.n:
            raise ValueError("K has an incompatible root order")
        K = K.with_order(w.n)
        if not is_group_developed(G, K):
            raise ValueError("K is not G-developed")
        kexp = K.exps
        mask = mask & (kexp != ZERO)
    return mask, kexp


def cocyclic_matrix(w: TwoCocycle, O=None, K: GenMatrix | None = None) -> GenMatrix:
    """(K ∘ C)_{x,y} with C_{x,y} = ω(x^{-1}, y) on O, zero elsewhere."""
    mask, kexp = _prepare(w, O, K)
    inv = np.asarray(w.G.inverses)
    C = w.values[inv, :]
    return GenMatrix(np.where(mask, (kexp + C) % w.n, ZERO), w.n)


def modified_cocyclic(w: TwoCocycle, K: GenMatrix | None = None, O=None) -> GenMatrix:
    """(K ∘ C')_{x,y} with C'_{x,y} = ω(x^{-1}, y) / ω(y^{-1}, y)."""
    mask, kexp = _prepare(w, O, K)
    inv = np.asarray(w.G.inverses)
    m = w.G.size
    C = w.values[inv, :] - w.values[inv, np.arange(m)][None, :]
    return GenMatrix(np.where(mask, (kexp + C) % w.n, ZERO), w.n)


def translate(G: TableGroup, A: GenMatrix, g: int) -> GenMatrix:
    """(gA)_{x,y} = A_{g^{-1}x, g^{-1}y}."""
    T = np.asarray(G.table)
    gi = G.inverses[g]
    return GenMatrix(A.exps[np.ix_(T[gi], T[gi])], A.n)


def cdm_criterion(G: TableGroup, A: GenMatrix) -> bool:
    """For every generator g: A = L (gA) R^* for some diagonal L, R."""
    return all(d_equivalent(A, translate(G, A, s.payload)) is not None for s in G.generators)


def pp_diagonal(w: TwoCocycle, g: int) -> np.ndarray:
    """Exponents of L(g) with gA = L(g) A L(g)^* for every modified cocyclic A.

    The diagonal is ζ^{-ω(x^{-1}, g)}: translating by g multiplies entry (x, y)
    by ω(x^{-1}, g)^{-1} ω(y^{-1}, g).
    """
    inv = np.asarray(w.G.inverses)
    return (-w.values[inv, g]) % w.n


def pp_holds(w: TwoCocycle, A: GenMatrix, g: int) -> bool:
    L = pp_diagonal(w, g)
    lhs = translate(w.G, A, g)
    e = A.exps
    rhs = np.where(e == ZERO, ZERO, (e + L[:, None] - L[None, :]) % w.n)
    return np.array_equal(lhs.exps, rhs)


# ---------------------------------------------------------------- algebra closure

def modified_basis(w: TwoCocycle) -> list[GenMatrix]:
    """One modified cocyclic matrix per orbit {x^{-1} y = h} of G on G × G."""
    G = w.G
    return [modified_cocyclic(w, developed_from_function(G, [0 if j == h else None for j in range(G.size)], w.n))
            for h in range(G.size)]


def _full_coeffs(A: GenMatrix) -> np.ndarray:
    """(rows, cols, n) coefficient tensor in Z[x]/(x^n - 1)."""
    out = np.zeros(A.shape + (A.n,), dtype=np.int64)
    r, c = np.nonzero(A.exps != ZERO)
    out[r, c, A.exps[r, c]] = 1
    return out


def _span_member(P: np.ndarray, basis: list[GenMatrix], heads: list[tuple[int, int]], n: int) -> bool:
    """Does the reduced tensor P equal Σ_h c_h B_h for cyclotomic integers c_h?

    Supports are disjoint and B_h is 1 at its head, so c_h is read off there.
    """
    R = reduction_matrix(n)
    phi = euler_phi(n)
    expected = np.zeros_like(P)
    for B, (x, y) in zip(basis, heads):
        c = np.zeros(n, dtype=np.int64)
        c[:phi] = P[x, y]
        r, col = np.nonzero(B.exps != ZERO)
        k = B.exps[r, col]
        # c · ζ^k in full coefficients, then reduced
        shifted = np.stack([np.roll(c, int(s)) for s in range(n)])
        expected[r, col] = shifted[k] @ R
    return np.array_equal(expected, P)


def algebra_closure_check(w: TwoCocycle, limit: int = 64) -> bool:
    """The |G| modified basis matrices span an algebra closed under products and adjoints."""
    G, n = w.G, w.n
    if G.size > limit:
        raise CapExceeded(f"|G| = {G.size} exceeds the dense limit {limit}")
    R = reduction_matrix(n)
    basis, heads = [], []
    for B in modified_basis(w):
        r, c = np.nonzero(B.exps != ZERO)
        heads.append((int(r[0]), int(c[0])))
        basis.append(B.scaled(-int(B.exps[r[0], c[0]])))
    full = [_full_coeffs(B).astype(np.int64) for B in basis]
    for a in range(len(basis)):
        adj = _full_coeffs(basis[a].conj_transpose()) @ R
        if not _span_member(adj, basis, heads, n):
            return False
        for b in range(len(basis)):
            prod = _cyc_product(full[a], full[b], n) @ R
            if not _span_member(prod, basis, heads, n):
                return False
    return True


def _cyc_product(A: np.ndarray, B: np.ndarray, n: int) -> np.ndarray:
    """Matrix product of (r, k, n) and (k, c, n) tensors in Z[x]/(x^n - 1)."""
    out = np.zeros((A.shape[0], B.shape[1], n), dtype=np.int64)
    for s in range(n):
        for t in range(n):
            a, b = A[:, :, s], B[:, :, t]
            if a.any() and b.any():
                out[:, :, (s + t) % n] += a @ b
    return out


# ---------------------------------------------------------------- the anti-diagonal obstruction

def signed_automorphisms(A: GenMatrix, row_perm: Sequence[int], col_perm: Sequence[int]):
    """All (row exps, col exps) making P A Q^* = A for the monomials with the given permutations.

    P[perm[i], i] = ζ^{ex[perm[i]]}.  Exhaustive over μ_n^rows × μ_n^cols.
    """
    N, M = A.shape
    n = A.n
    pr, pc = np.asarray(row_perm), np.asarray(col_perm)
    hits = []
    for ex in itertools.product(range(n), repeat=N):
        for ey in itertools.product(range(n), repeat=M):
            ex_a, ey_a = np.asarray(ex), np.asarray(ey)
            # (P A Q^*)[pr[i], pc[j]] = ζ^{ex[pr[i]]} A[i, j] ζ^{-ey[pc[j]]}
            out = np.full_like(A.exps, ZERO)
            e = A.exps
            nz = e != ZERO
            vals = np.where(nz, (e + ex_a[pr][:, None] - ey_a[pc][None, :]) % n, ZERO)
            out[np.ix_(pr, pc)] = vals
            if np.array_equal(out, A.exps):
                hits.append((ex, ey))
    return hits


def monomial_pair_order(row_perm: Sequence[int], ex: Sequence[int], col_perm: Sequence[int], ey: Sequence[int],
                        n: int, limit: int = 64) -> int:
    """Order of (P, Q) as an element of Mon × Mon (not modulo scalars)."""
    from .develop import SignedPair

    g = SignedPair(np.asarray(row_perm), np.asarray(ex), np.asarray(col_perm), np.asarray(ey), n)
    h = g
    for k in range(1, limit + 1):
        if h.is_identity():
            return k
        h = h * g
    raise ArithmeticError("order exceeds the search limit")
