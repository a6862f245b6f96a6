"""Finite groups given by generators, their actions, transversals and stabilizers.

Every element carries an opaque payload (a permutation, a matrix over F_q,
an affine map, an index into a multiplication table) together with a
faithful carrier permutation.  Equality and hashing go through a key that
determines the carrier permutation and vice versa, so comparing keys is the
same as comparing carrier permutations but avoids materialising them.
"""

from __future__ import annotations

import os
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Sequence

from .fields import FiniteField, Matrix, identity as mat_identity, mat_inv, mat_mul, mat_vec

DEFAULT_ENUM_CAP = 10**5


class CapExceeded(RuntimeError):
    pass


def enum_cap() -> int:
    env = os.environ.get("CDM_ENUM_CAP")
    return int(env) if env else DEFAULT_ENUM_CAP


# ---------------------------------------------------------------- elements and groups

class GroupElement:
    __slots__ = ("group", "payload", "key", "_inv", "_carrier")

    def __init__(self, group: "ActionGroup", payload: Any):
        self.group = group
        self.payload = payload
        self.key = group._key(payload)
        self._inv: GroupElement | None = None
        self._carrier: tuple[int, ...] | None = None

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.group, self.group._mul(self.payload, other.payload))

    def inverse(self) -> "GroupElement":
        if self._inv is None:
            inv = GroupElement(self.group, self.group._inv(self.payload))
            inv._inv = self
            self._inv = inv
        return self._inv

    def __pow__(self, e: int) -> "GroupElement":
        base = self if e >= 0 else self.inverse()
        out = self.group.identity
        for _ in range(abs(e)):
            out = out * base
        return out

    @property
    def carrier_perm(self) -> tuple[int, ...]:
        if self._carrier is None:
            self._carrier = self.group._carrier(self.payload)
        return self._carrier

    def is_identity(self) -> bool:
        return self.key == self.group.identity.key

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GroupElement) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"{type(self.group).__name__}Element({self.payload!r})"


class ActionGroup:
    """Base class.  Subclasses provide payload multiplication, inversion,
    identity, a faithful key, and the carrier permutation."""

    carrier_size: int = 0

    def __init__(self, generator_payloads: Sequence[Any], name: str = ""):
        self.name = name
        self.identity = GroupElement(self, self._identity())
        self.generators: tuple[GroupElement, ...] = tuple(GroupElement(self, g) for g in generator_payloads)
        self._check_generators()

    # subclass hooks
    def _mul(self, a: Any, b: Any) -> Any: raise NotImplementedError
    def _inv(self, a: Any) -> Any: raise NotImplementedError
    def _identity(self) -> Any: raise NotImplementedError
    def _key(self, a: Any) -> Hashable: return a
    def _carrier(self, a: Any) -> tuple[int, ...]: raise NotImplementedError

    def element(self, payload: Any) -> GroupElement:
        return GroupElement(self, payload)

    def _check_generators(self) -> None:
        idp = self.identity.carrier_perm
        if idp != tuple(range(len(idp))):
            raise ValueError("identity does not act as the identity permutation")
        gens = self.generators[:4]
        for g in gens:
            if sorted(g.carrier_perm) != list(range(len(idp))):
                raise ValueError("generator carrier is not a bijection")
        for a in gens:
            for b in gens:
                pa, pb = a.carrier_perm, b.carrier_perm
                if (a * b).carrier_perm != tuple(pa[i] for i in pb):
                    raise ValueError("payload product disagrees with carrier composition")

    def enumerate(self, cap: int | None = None) -> list[GroupElement]:
        return closure(self.generators, self.identity, cap)

    def order(self, cap: int | None = None) -> int:
        return len(self.enumerate(cap))

    def random_element(self, rng: random.Random, length: int = 12) -> GroupElement:
        return random_word(self.generators, self.identity, rng, length)


def closure(gens: Sequence[GroupElement], identity: GroupElement, cap: int | None = None) -> list[GroupElement]:
    """All elements of the subgroup generated by ``gens`` (BFS on the Cayley graph)."""
    cap = enum_cap() if cap is None else cap
    seen = {identity.key: identity}
    queue = deque([identity])
    while queue:
        h = queue.popleft()
        for s in gens:
            k = h * s
            if k.key not in seen:
                seen[k.key] = k
                if len(seen) > cap:
                    raise CapExceeded(f"subgroup has more than {cap} elements")
                queue.append(k)
    return list(seen.values())


def random_word(gens: Sequence[GroupElement], identity: GroupElement, rng: random.Random, length: int = 12) -> GroupElement:
    out = identity
    if not gens:
        return out
    for _ in range(rng.randint(0, length)):
        s = rng.choice(gens)
        out = out * (s if rng.random() < 0.5 else s.inverse())
    return out


class PermGroup(ActionGroup):
    """Permutations of range(degree); composition (gh)(i) = g(h(i))."""

    def __init__(self, degree: int, generators: Sequence[Sequence[int]], name: str = ""):
        self.degree = self.carrier_size = degree
        super().__init__([tuple(g) for g in generators], name)

    def _mul(self, a, b):
        return tuple(a[i] for i in b)

    def _inv(self, a):
        out = [0] * len(a)
        for i, j in enumerate(a):
            out[j] = i
        return tuple(out)

    def _identity(self):
        return tuple(range(self.degree))

    def _carrier(self, a):
        return a

    @staticmethod
    def from_cycles(degree: int, cycles: Iterable[Sequence[int]], base: int = 0) -> tuple[int, ...]:
        """Permutation tuple from cycle notation (points numbered from ``base``)."""
        img = list(range(degree))
        for cyc in cycles:
            c = [x - base for x in cyc]
            for i, x in enumerate(c):
                img[x] = c[(i + 1) % len(c)]
        return tuple(img)


def vector_enumeration(F: FiniteField, d: int) -> list[tuple[int, ...]]:
    """Nonzero vectors of F^d ordered by base-q integer code."""
    out = []
    for code in range(1, F.q**d):
        v, c = [], code
        for _ in range(d):
            c, r = divmod(c, F.q)
            v.append(r)
        out.append(tuple(v))
    return out


def vector_code(F: FiniteField, v: Sequence[int]) -> int:
    c = 0
    for x in reversed(v):
        c = c * F.q + x
    return c


class MatrixGroup(ActionGroup):
    """Invertible d x d matrices over F_q acting on column vectors."""

    def __init__(self, F: FiniteField, d: int, generators: Sequence[Matrix], name: str = ""):
        self.field, self.d = F, d
        self._vectors = vector_enumeration(F, d)
        self.carrier_size = len(self._vectors)
        self._inv_cache: dict[Matrix, Matrix] = {}
        super().__init__([tuple(tuple(r) for r in g) for g in generators], name)

    def _mul(self, a, b):
        return mat_mul(self.field, a, b)

    def _inv(self, a):
        inv = self._inv_cache.get(a)
        if inv is None:
            inv = mat_inv(self.field, a)
            if len(self._inv_cache) > 50000:
                self._inv_cache.clear()
            self._inv_cache[a] = inv
        return inv

    def _identity(self):
        return mat_identity(self.d)

    def _carrier(self, a):
        F = self.field
        return tuple(vector_code(F, mat_vec(F, a, v)) - 1 for v in self._vectors)


class AffineGroup(ActionGroup):
    """Maps x -> a*x + b on F_q, payload (a, b)."""

    def __init__(self, F: FiniteField, generators: Sequence[tuple[int, int]], name: str = ""):
        self.field = F
        self.carrier_size = F.q
        super().__init__([tuple(g) for g in generators], name)

    def _mul(self, g, h):
        F = self.field
        a, b = g
        c, d = h
        return (F.mul(a, c), F.add(F.mul(a, d), b))

    def _inv(self, g):
        F = self.field
        a, b = g
        ai = F.inv(a)
        return (ai, F.neg(F.mul(ai, b)))

    def _identity(self):
        return (1, 0)

    def _carrier(self, g):
        F = self.field
        a, b = g
        return tuple(F.add(F.mul(a, x), b) for x in range(F.q))

    def apply(self, g: GroupElement, x: int) -> int:
        F = self.field
        a, b = g.payload
        return F.add(F.mul(a, x), b)


class TableGroup(ActionGroup):
    """A group given by its multiplication table; payload is the element index.

    ``table[a][b]`` is the index of the product ab.  The carrier is the left
    regular action.
    """

    def __init__(self, table: Sequence[Sequence[int]], generators: Sequence[int] | None = None,
                 identity_index: int | None = None, labels: Sequence[Any] | None = None, name: str = ""):
        self.table = [list(r) for r in table]
        m = len(self.table)
        self.size = self.carrier_size = m
        if identity_index is None:
            identity_index = next(e for e in range(m) if self.table[e] == list(range(m)))
        self.e = identity_index
        self.inverses = [next(b for b in range(m) if self.table[a][b] == identity_index) for a in range(m)]
        self.labels = list(labels) if labels is not None else list(range(m))
        if generators is None:
            generators = [g for g in range(m) if g != identity_index]
        super().__init__(list(generators), name)

    def _mul(self, a, b):
        return self.table[a][b]

    def _inv(self, a):
        return self.inverses[a]

    def _identity(self):
        return self.e

    def _carrier(self, a):
        return tuple(self.table[a])

    def elements(self) -> list[GroupElement]:
        return [GroupElement(self, i) for i in range(self.size)]


def cyclic_group(m: int) -> TableGroup:
    return TableGroup([[(a + b) % m for b in range(m)] for a in range(m)], generators=[1 % m], identity_index=0,
                      name=f"Z/{m}")


def direct_product(A: TableGroup, B: TableGroup) -> TableGroup:
    ma, mb = A.size, B.size
    table = [[A.table[a1][a2] * mb + B.table[b1][b2] for a2 in range(ma) for b2 in range(mb)]
             for a1 in range(ma) for b1 in range(mb)]
    gens = [g.payload * mb + B.e for g in A.generators] + [A.e * mb + h.payload for h in B.generators]
    labels = [(a, b) for a in A.labels for b in B.labels]
    return TableGroup(table, generators=gens, identity_index=A.e * mb + B.e, labels=labels,
                      name=f"{A.name}x{B.name}")


# ---------------------------------------------------------------- G-sets

class GSet:
    """A finite set with a left action.  Points are indexed 0..size-1."""

    def __init__(self, group: ActionGroup, points: Sequence[Hashable], act: Callable[[Any, Any], Hashable],
                 name: str = ""):
        self.group = group
        self.points = list(points)
        self.index = {p: i for i, p in enumerate(self.points)}
        if len(self.index) != len(self.points):
            raise ValueError("duplicate points in G-set")
        self._act = act
        self.name = name
        self._perm_cache: dict[Hashable, tuple[int, ...]] = {}

    @classmethod
    def from_orbit(cls, group: ActionGroup, base: Hashable, act: Callable[[Any, Any], Hashable],
                   name: str = "", sort_key: Callable | None = None) -> "GSet":
        """The orbit of ``base`` under the group generators, sorted for determinism."""
        seen = {base}
        queue = deque([base])
        while queue:
            p = queue.popleft()
            for s in group.generators:
                r = act(s.payload, p)
                if r not in seen:
                    seen.add(r)
                    queue.append(r)
        return cls(group, sorted(seen, key=sort_key), act, name)

    def __len__(self) -> int:
        return len(self.points)

    def act(self, g: GroupElement, i: int) -> int:
        cached = self._perm_cache.get(g.key)
        if cached is not None:
            return cached[i]
        return self.index[self._act(g.payload, self.points[i])]

    def perm(self, g: GroupElement) -> tuple[int, ...]:
        """The permutation of point indices induced by g (memoised)."""
        p = self._perm_cache.get(g.key)
        if p is None:
            p = tuple(self.index[self._act(g.payload, x)] for x in self.points)
            if len(self._perm_cache) > 4096:
                self._perm_cache.clear()
            self._perm_cache[g.key] = p
        return p

    def verify(self, rng: random.Random | None = None, words: int = 20) -> None:
        """Check the action axioms on generators and random words."""
        rng = rng or random.Random(0)
        G = self.group
        if self.perm(G.identity) != tuple(range(len(self))):
            raise ValueError(f"identity acts nontrivially on {self.name}")
        samples = list(G.generators) + [G.random_element(rng, 6) for _ in range(words)]
        for g in samples[: len(G.generators) + words]:
            for h in samples[:6]:
                pg, ph, pgh = self.perm(g), self.perm(h), self.perm(g * h)
                if any(pgh[i] != pg[ph[i]] for i in range(len(self))):
                    raise ValueError(f"action on {self.name} is not a left action")


# ---------------------------------------------------------------- transversals

@dataclass
class Transversal:
    """Coset representatives g_x with g_x . base = x, indexed by point."""

    gset: GSet
    base: int
    reps: dict[int, GroupElement]
    words: dict[int, tuple[int, ...]] = field(default_factory=dict)
    _inv: dict[int, GroupElement] = field(default_factory=dict, repr=False)

    @property
    def orbit(self) -> list[int]:
        return list(self.reps)

    def covers(self, size: int) -> bool:
        return len(self.reps) == size

    def rep(self, x: int) -> GroupElement:
        return self.reps[x]

    def rep_inv(self, x: int) -> GroupElement:
        inv = self._inv.get(x)
        if inv is None:
            inv = self._inv[x] = self.reps[x].inverse()
        return inv

    @classmethod
    def from_reps(cls, gset: GSet, base: int, reps: dict[int, GroupElement]) -> "Transversal":
        """Wrap an externally chosen set of representatives, after validation."""
        if not reps[base].is_identity():
            raise ValueError("representative of the basepoint must be the identity")
        for x, g in reps.items():
            if gset.act(g, base) != x:
                raise ValueError(f"representative for point {x} does not map the basepoint to it")
        return cls(gset, base, dict(reps))

    def check(self) -> None:
        for x, g in self.reps.items():
            if self.gset.act(g, self.base) != x:
                raise AssertionError(f"bad representative at {x}")


def _gens_of(G: ActionGroup | Sequence[GroupElement]) -> tuple[Sequence[GroupElement], GroupElement | None]:
    if isinstance(G, ActionGroup):
        return G.generators, G.identity
    gens = list(G)
    return gens, (gens[0].group.identity if gens else None)


def orbit_with_transversal(G: ActionGroup | Sequence[GroupElement], S: GSet, x0: int,
                           identity: GroupElement | None = None) -> Transversal:
    """Breadth-first orbit of x0; representatives are shortest generator words."""
    gens, ident = _gens_of(G)
    ident = identity or ident or S.group.identity
    reps = {x0: ident}
    words: dict[int, tuple[int, ...]] = {x0: ()}
    queue = deque([x0])
    while queue:
        x = queue.popleft()
        for i, s in enumerate(gens):
            y = S.act(s, x)
            if y not in reps:
                reps[y] = s * reps[x]
                words[y] = words[x] + (i,)
                queue.append(y)
    return Transversal(S, x0, reps, words)


def schreier_generators(gens: Sequence[GroupElement], T: Transversal) -> list[GroupElement]:
    """Schreier generators g_{s x}^{-1} s g_x of the stabilizer of T.base."""
    S = T.gset
    out: dict[Hashable, GroupElement] = {}
    for x, gx in T.reps.items():
        for s in gens:
            y = S.act(s, x)
            h = T.rep_inv(y) * (s * gx)
            if not h.is_identity() and h.key not in out:
                out[h.key] = h
    return list(out.values())


def stabilizer_generators(G: ActionGroup | Sequence[GroupElement], S: GSet, x0: int,
                          T: Transversal | None = None) -> list[GroupElement]:
    gens, _ = _gens_of(G)
    T = T or orbit_with_transversal(G, S, x0)
    return schreier_generators(gens, T)


def pair_stabilizer_generators(G: ActionGroup, X: GSet, Y: GSet, x: int, y: int) -> list[GroupElement]:
    """Generators of Stab(x) ∩ Stab(y), via two rounds of Schreier generators."""
    hx = stabilizer_generators(G, X, x)
    if not hx:
        return []
    T = orbit_with_transversal(hx, Y, y, identity=G.identity)
    return schreier_generators(hx, T)


def bar_map(q: GroupElement, T: Transversal, S: GSet) -> GroupElement:
    """The representative-based projection q -> g_z^{-1}, z = q^{-1} x0."""
    z = S.act(q.inverse(), T.base)
    return T.rep_inv(z)
