"""Homomorphisms from stabilizer subgroups to Z/n (exponents of zeta_n)."""

from __future__ import annotations

import random
from collections import deque
from typing import Any, Callable, Hashable, Sequence

from .groups import CapExceeded, GroupElement, closure, enum_cap, random_word


class Character:
    n: int
    description: str = ""

    def __call__(self, h: GroupElement) -> int:
        return self.evaluate(h)

    def evaluate(self, h: GroupElement) -> int:
        raise NotImplementedError

    def __add__(self, other: "Character") -> "FormulaCharacter":
        if self.n != other.n:
            raise ValueError("order mismatch")
        a, b = self, other
        return FormulaCharacter(lambda p, g: (a.evaluate(g) + b.evaluate(g)) % a.n, a.n,
                                f"({a.description})+({b.description})", uses_element=True)

    def __rmul__(self, m: int) -> "FormulaCharacter":
        a = self
        return FormulaCharacter(lambda p, g: (m * a.evaluate(g)) % a.n, a.n, f"{m}*({a.description})",
                                uses_element=True)


class TableCharacter(Character):
    """Values listed over an explicitly enumerated subgroup."""

    def __init__(self, values: dict[Hashable, int], n: int, description: str = "table"):
        self.values = {k: v % n for k, v in values.items()}
        self.n = n
        self.description = description

    def evaluate(self, h: GroupElement) -> int:
        try:
            return self.values[h.key]
        except KeyError:
            raise ValueError("element is not in the domain of this character") from None

    def is_trivial(self) -> bool:
        return not any(self.values.values())


class FormulaCharacter(Character):
    """Value computed from the payload.  The caller guarantees domain membership."""

    def __init__(self, fn: Callable[..., int], n: int, description: str = "formula", uses_element: bool = False):
        self.fn = fn
        self.n = n
        self.description = description
        self._uses_element = uses_element

    def evaluate(self, h: GroupElement) -> int:
        if self._uses_element:
            return self.fn(h.payload, h) % self.n
        return self.fn(h.payload) % self.n


def trivial_character(n: int) -> FormulaCharacter:
    return FormulaCharacter(lambda p: 0, n, "trivial")


def character_eval(psi: Character, h: GroupElement) -> int:
    return psi.evaluate(h)


def verify_character(psi: Character, gens: Sequence[GroupElement], identity: GroupElement,
                     rng: random.Random | None = None, products: int = 1000) -> None:
    """Check multiplicativity on the generators and on random products."""
    rng = rng or random.Random(0)
    if psi.evaluate(identity) != 0:
        raise ValueError(f"character {psi.description} is nonzero at the identity")
    if not gens:
        return
    for a in gens:
        for b in gens[:3]:
            if psi.evaluate(a * b) != (psi.evaluate(a) + psi.evaluate(b)) % psi.n:
                raise ValueError(f"character {psi.description} is not multiplicative")
    for _ in range(products):
        a = random_word(gens, identity, rng, 4)
        b = random_word(gens, identity, rng, 4)
        if psi.evaluate(a * b) != (psi.evaluate(a) + psi.evaluate(b)) % psi.n:
            raise ValueError(f"character {psi.description} is not multiplicative")


def _reduce_generators(gens: Sequence[GroupElement], identity: GroupElement, cap: int) -> list[GroupElement]:
    """Drop generators already in the span of earlier ones."""
    kept: list[GroupElement] = []
    span = {identity.key}
    for s in gens:
        if s.key in span:
            continue
        kept.append(s)
        span = {g.key for g in closure(kept, identity, cap)}
    return kept


def _propagate(gens: Sequence[GroupElement], values: Sequence[int], identity: GroupElement, n: int,
               cap: int) -> dict[Hashable, int] | None:
    """BFS over the Cayley graph assigning value(h s) = value(h) + value(s); None on conflict."""
    val = {identity.key: 0}
    elems = deque([identity])
    while elems:
        h = elems.popleft()
        vh = val[h.key]
        for s, vs in zip(gens, values):
            k = h * s
            v = (vh + vs) % n
            old = val.get(k.key)
            if old is None:
                val[k.key] = v
                if len(val) > cap:
                    raise CapExceeded("subgroup too large to enumerate; use a formula character")
                elems.append(k)
            elif old != v:
                return None
    return val


def enumerate_characters(gens: Sequence[GroupElement], n: int, identity: GroupElement | None = None,
                         cap: int | None = None) -> list[TableCharacter]:
    """All homomorphisms <gens> -> Z/n, as table characters.

    Generator values are chosen one generator at a time; each partial choice
    is propagated over the subgroup generated so far and discarded at the
    first conflict, so only consistent prefixes are extended.
    """
    cap = enum_cap() if cap is None else cap
    if identity is None:
        if not gens:
            raise ValueError("identity required for an empty generator list")
        identity = gens[0].group.identity
    try:
        gens = _reduce_generators(gens, identity, cap)
    except CapExceeded:
        raise CapExceeded("subgroup too large to enumerate; use a formula character") from None
    partial: list[tuple[int, ...]] = [()]
    for i in range(len(gens)):
        nxt = []
        for pre in partial:
            for v in range(n):
                cand = pre + (v,)
                if _propagate(gens[: i + 1], cand, identity, n, cap) is not None:
                    nxt.append(cand)
        partial = nxt
    out = []
    for vals in partial:
        table = _propagate(gens, vals, identity, n, cap)
        assert table is not None
        out.append(TableCharacter(table, n, f"generator values {vals}"))
    return out
