"""Monomial covers from characters, orientability, and matrix development.

Given a transitive pair of G-sets X, Y with basepoints x0, y0, transversals
g_x, g_y and characters ψ_X, ψ_Y of the basepoint stabilizers, the 1-cocycle

    z_X(g)[x] = ψ_X( q · bar(q)^{-1} ),   q = g_x^{-1} g,

(and likewise on Y) defines monomial matrices P(g), Q(g).  Matrices A with
P(g) A Q(g)^* = A for all g are spanned by one matrix per orientable orbit
of G on X × Y.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .characters import Character, FormulaCharacter, TableCharacter, verify_character
from .groups import (ActionGroup, GroupElement, GSet, Transversal, orbit_with_transversal, pair_stabilizer_generators, stabilizer_generators)
from .matrix import ZERO, GenMatrix


class NonOrientableError(ValueError):
    """A nonzero value was requested on a non-orientable orbit."""


# ---------------------------------------------------------------- signed permutation pairs

def _invert(p: Sequence[int]) -> np.ndarray:
    out = np.empty(len(p), dtype=np.int64)
    out[np.asarray(p)] = np.arange(len(p))
    return out


@dataclass
class SignedPair:
    """(P, Q) with P = diag(ζ^{ex}) · perm_x, i.e. P[perm_x[x], x] = ζ^{ex[perm_x[x]]}."""

    perm_x: np.ndarray
    exps_x: np.ndarray
    perm_y: np.ndarray
    exps_y: np.ndarray
    n: int

    def __mul__(self, other: "SignedPair") -> "SignedPair":
        # diag(a) p · diag(b) p' = diag(a + b∘p^{-1}) p p'
        ix, iy = _invert(self.perm_x), _invert(self.perm_y)
        return SignedPair(self.perm_x[other.perm_x], (self.exps_x + other.exps_x[ix]) % self.n,
                          self.perm_y[other.perm_y], (self.exps_y + other.exps_y[iy]) % self.n, self.n)

    def equal_mod_triv(self, other: "SignedPair") -> bool:
        """Equal up to a common scalar pair (cI, cI)."""
        if not (np.array_equal(self.perm_x, other.perm_x) and np.array_equal(self.perm_y, other.perm_y)):
            return False
        dx = (self.exps_x - other.exps_x) % self.n
        dy = (self.exps_y - other.exps_y) % self.n
        c = dx[0] if len(dx) else (dy[0] if len(dy) else 0)
        return bool((dx == c).all() and (dy == c).all())

    def act(self, A: GenMatrix) -> GenMatrix:
        """P A Q^*."""
        ix, iy = _invert(self.perm_x), _invert(self.perm_y)
        moved = A.exps[np.ix_(ix, iy)]
        vals = (moved + self.exps_x[:, None] - self.exps_y[None, :]) % self.n
        return GenMatrix(np.where(moved == ZERO, ZERO, vals), A.n)

    def is_identity(self) -> bool:
        return (np.array_equal(self.perm_x, np.arange(len(self.perm_x)))
                and np.array_equal(self.perm_y, np.arange(len(self.perm_y)))
                and not self.exps_x.any() and not self.exps_y.any())


def sign_at(s: int, perm_and_exps: tuple[Sequence[int], Sequence[int]]) -> int:
    """Exponent of the nonzero entry in row s of a signed permutation (perm, exps)."""
    return int(perm_and_exps[1][s])


# ---------------------------------------------------------------- orbits on X × Y

@dataclass
class OrbitData:
    index: int
    head: tuple[int, int]
    members: list[tuple[int, int]]
    orientable: bool | None = None
    witnesses: dict[tuple[int, int], GroupElement] | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.members)


class MonomialCoverSpec:
    """All data needed to develop matrices: group, G-sets, basepoints, transversals, characters."""

    def __init__(self, G: ActionGroup, X: GSet, Y: GSet, x0: int, y0: int, psi_X: Character, psi_Y: Character,
                 n: int, TX: Transversal | None = None, TY: Transversal | None = None,
                 verify: bool = True, seed: int = 0, label: str = ""):
        if psi_X.n != n or psi_Y.n != n:
            raise ValueError("character orders must equal n")
        self.G, self.X, self.Y = G, X, Y
        self.x0, self.y0 = x0, y0
        self.psi_X, self.psi_Y = psi_X, psi_Y
        self.n = n
        self.label = label
        self.TX = TX or orbit_with_transversal(G, X, x0)
        self.TY = TY or orbit_with_transversal(G, Y, y0)
        if self.TX.base != x0 or self.TY.base != y0:
            raise ValueError("transversal basepoints disagree with x0, y0")
        if not self.TX.covers(len(X)):
            raise ValueError(f"G is not transitive on {X.name or 'X'} ({len(self.TX.reps)} of {len(X)} points reached)")
        if not self.TY.covers(len(Y)):
            raise ValueError(f"G is not transitive on {Y.name or 'Y'} ({len(self.TY.reps)} of {len(Y)} points reached)")
        self._gen_perms_x = [np.asarray(X.perm(g)) for g in G.generators]
        self._gen_perms_y = [np.asarray(Y.perm(g)) for g in G.generators]
        self._stab_cache: dict[int, list[GroupElement]] = {}
        self._hy: list[GroupElement] | None = None
        self._orbits: list[OrbitData] | None = None
        if verify:
            self._verify_characters(seed)

    # ------------------------------------------------------------ stabilizers and characters
    @property
    def hx_gens(self) -> list[GroupElement]:
        if self.x0 not in self._stab_cache:
            self._stab_cache[self.x0] = stabilizer_generators(self.G, self.X, self.x0, self.TX)
        return self._stab_cache[self.x0]

    @property
    def hy_gens(self) -> list[GroupElement]:
        if self._hy is None:
            self._hy = stabilizer_generators(self.G, self.Y, self.y0, self.TY)
        return self._hy

    def _verify_characters(self, seed: int) -> None:
        rng = random.Random(seed)
        for psi, gens, name in ((self.psi_X, self.hx_gens, "psi_X"), (self.psi_Y, self.hy_gens, "psi_Y")):
            if isinstance(psi, TableCharacter):
                for h in gens:
                    psi.evaluate(h)  # raises if the stabilizer is not inside the table's domain
            try:
                verify_character(psi, gens, self.G.identity, rng, products=1000)
            except ValueError as exc:
                raise ValueError(f"{name}: {exc}") from None

    # ------------------------------------------------------------ the cocycle
    def _z(self, g: GroupElement, point: int, preimage: int, T: Transversal, psi: Character) -> int:
        # q = g_x^{-1} g,  bar(q) = g_z^{-1} with z = q^{-1} x0 = g^{-1} x,  q bar(q)^{-1} = g_x^{-1} g g_z
        return psi.evaluate(T.rep_inv(point) * (g * T.rep(preimage)))

    def moncov(self, g: GroupElement) -> SignedPair:
        px = np.asarray(self.X.perm(g))
        py = np.asarray(self.Y.perm(g))
        ipx, ipy = _invert(px), _invert(py)
        ex = np.array([self._z(g, x, int(ipx[x]), self.TX, self.psi_X) for x in range(len(self.X))], dtype=np.int64)
        ey = np.array([self._z(g, y, int(ipy[y]), self.TY, self.psi_Y) for y in range(len(self.Y))], dtype=np.int64)
        return SignedPair(px, ex, py, ey, self.n)

    # ------------------------------------------------------------ orbits
    def orbits(self) -> list[OrbitData]:
        """G-orbits on X × Y; each head is the lexicographically least pair of its orbit."""
        if self._orbits is not None:
            return self._orbits
        nx, ny = len(self.X), len(self.Y)
        label = np.full(nx * ny, -1, dtype=np.int64)
        gx = [p.tolist() for p in self._gen_perms_x]
        gy = [p.tolist() for p in self._gen_perms_y]
        out: list[OrbitData] = []
        for cell in range(nx * ny):
            if label[cell] >= 0:
                continue
            k = len(out)
            label[cell] = k
            members = [divmod(cell, ny)]
            queue = deque([members[0]])
            while queue:
                x, y = queue.popleft()
                for px, py in zip(gx, gy):
                    c2 = px[x] * ny + py[y]
                    if label[c2] < 0:
                        label[c2] = k
                        m = (px[x], py[y])
                        members.append(m)
                        queue.append(m)
            out.append(OrbitData(k, divmod(cell, ny), sorted(members)))
        self._orbits = out
        self._labels = label
        return out

    def orbit_of(self, x: int, y: int) -> OrbitData:
        orbits = self.orbits()
        return orbits[int(self._labels[x * len(self.Y) + y])]

    def witnesses(self, orbit: OrbitData, root: tuple[int, int] | None = None) -> dict[tuple[int, int], GroupElement]:
        """One element per member mapping the root (default: the head) to it."""
        if root is None and orbit.witnesses is not None:
            return orbit.witnesses
        start = root or orbit.head
        wit = {start: self.G.identity}
        queue = deque([start])
        gens = self.G.generators
        gx = [p.tolist() for p in self._gen_perms_x]
        gy = [p.tolist() for p in self._gen_perms_y]
        while queue:
            cell = queue.popleft()
            w = wit[cell]
            for s, px, py in zip(gens, gx, gy):
                nxt = (px[cell[0]], py[cell[1]])
                if nxt not in wit:
                    wit[nxt] = s * w
                    queue.append(nxt)
        if root is None:
            orbit.witnesses = wit
        return wit

    # ------------------------------------------------------------ orientability
    def head_signs(self, h: GroupElement, x: int, y: int) -> tuple[int, int]:
        """(ψ_X(g_x^{-1} h g_x), ψ_Y(g_y^{-1} h g_y)) for h fixing (x, y)."""
        sx = self.psi_X.evaluate(self.TX.rep_inv(x) * (h * self.TX.rep(x)))
        sy = self.psi_Y.evaluate(self.TY.rep_inv(y) * (h * self.TY.rep(y)))
        return sx, sy

    def stabilizer_x(self, x: int) -> list[GroupElement]:
        if x not in self._stab_cache:
            self._stab_cache[x] = stabilizer_generators(self.G, self.X, x)
        return self._stab_cache[x]

    def iter_pair_stabilizer(self, x: int, y: int):
        """Schreier generators of Stab(x) ∩ Stab(y), lazily and possibly repeated."""
        hx = self.stabilizer_x(x)
        if not hx:
            return
        T = orbit_with_transversal(hx, self.Y, y, identity=self.G.identity)
        for yy, g in T.reps.items():
            for s in hx:
                h = T.rep_inv(self.Y.act(s, yy)) * (s * g)
                if not h.is_identity():
                    yield h

    def is_orientable(self, orbit: OrbitData) -> bool:
        if orbit.orientable is None:
            x, y = orbit.head
            orbit.orientable = all(a == b for a, b in (self.head_signs(h, x, y)
                                                       for h in self.iter_pair_stabilizer(x, y)))
        return orbit.orientable

    def orientable_orbits(self) -> list[OrbitData]:
        return [o for o in self.orbits() if self.is_orientable(o)]

    # ------------------------------------------------------------ development
    def cell_value(self, g: GroupElement, head: tuple[int, int], cell: tuple[int, int]) -> int:
        """sign(g x_O, P(g)) - sign(g y_O, Q(g)) for a witness g with g·head = cell."""
        (xo, yo), (x, y) = head, cell
        return (self._z(g, x, xo, self.TX, self.psi_X) - self._z(g, y, yo, self.TY, self.psi_Y)) % self.n

    def develop(self, head_values: Mapping[int, int | None]) -> GenMatrix:
        """Fill each orbit O with ζ^{head_values[O]} at its head and extend by invariance."""
        orbits = self.orbits()
        exps = np.full((len(self.X), len(self.Y)), ZERO, dtype=np.int64)
        for k, zeta in head_values.items():
            o = orbits[k]
            if zeta is None:
                continue
            if not self.is_orientable(o):
                raise NonOrientableError(f"orbit {k} with head {o.head} is not orientable")
            for cell, g in self.witnesses(o).items():
                exps[cell] = (zeta + self.cell_value(g, o.head, cell)) % self.n
        return GenMatrix(exps, self.n)

    def orbital_basis(self) -> list[GenMatrix]:
        return [self.develop({o.index: 0}) for o in self.orientable_orbits()]

    def invariance_check(self, A: GenMatrix) -> bool:
        for g in self.G.generators:
            if self.moncov(g).act(A) != A:
                return False
        return True


# ---------------------------------------------------------------- module-level API

def moncov(g: GroupElement, spec: MonomialCoverSpec) -> SignedPair:
    return spec.moncov(g)


def orientable(orbit: OrbitData, spec: MonomialCoverSpec) -> bool:
    return spec.is_orientable(orbit)


def develop(spec: MonomialCoverSpec, head_values: Mapping[int, int | None]) -> GenMatrix:
    return spec.develop(head_values)


def orbital_basis(spec: MonomialCoverSpec) -> list[GenMatrix]:
    return spec.orbital_basis()


def invariance_check(A: GenMatrix, spec: MonomialCoverSpec) -> bool:
    return spec.invariance_check(A)


def brute_force_orientable(orbit: OrbitData, spec: MonomialCoverSpec, cap: int = 5000) -> bool:
    """Check sign agreement on every element of the full pair stabilizer."""
    x, y = orbit.head
    for h in spec.G.enumerate(cap):
        if spec.X.act(h, x) == x and spec.Y.act(h, y) == y:
            a, b = spec.head_signs(h, x, y)
            if a != b:
                return False
    return True


def pair_stabilizer(spec: MonomialCoverSpec, x: int, y: int) -> list[GroupElement]:
    return pair_stabilizer_generators(spec.G, spec.X, spec.Y, x, y)
