"""Finite fields F_{p^r} with discrete-log tables, and small linear algebra over them.

Elements are encoded as integers in ``range(q)``: the base-p digits of the
integer are the coefficients (lowest degree first) of a polynomial modulo the
defining irreducible polynomial.  For r = 1 the encoding is the usual residue.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from sympy import factorint, isprime

DEFAULT_FIELD_CAP = 2**20
_TABLE_LIMIT = 1024

Matrix = tuple[tuple[int, ...], ...]


# ---------------------------------------------------------------- polynomials mod p

def _trim(a: list[int]) -> list[int]:
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    a = [c % p for c in a]
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    for i in range(len(a) - 1, df - 1, -1):
        c = a[i] * inv_lead % p
        if c:
            for j in range(df + 1):
                a[i - df + j] = (a[i - df + j] - c * f[j]) % p
    return _trim(a[:df] or [0])


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b != [0]:
        a, b = b, _pmod(a, b, p)
    return a


def _xpow_mod(e: int, f: Sequence[int], p: int) -> list[int]:
    """x^e mod f over Z/p."""
    result, base = [1], [0, 1]
    base = _pmod(base, f, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        base = _pmod(_pmul(base, base, p), f, p)
        e >>= 1
    return result


def _is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test: f | x^{p^r} - x and gcd(x^{p^{r/l}} - x, f) = 1 for primes l | r."""
    r = len(f) - 1
    if r == 1:
        return True
    def x_power_minus_x(e: int) -> list[int]:
        h = _xpow_mod(e, f, p)
        h = h + [0] * max(0, 2 - len(h))
        h[1] = (h[1] - 1) % p
        return _trim(h)

    for ell in factorint(r):
        h = x_power_minus_x(p ** (r // ell))
        if h == [0] or len(_pgcd(list(f), h, p)) > 1:
            return False
    return x_power_minus_x(p**r) == [0]


def field_cap() -> int:
    env = os.environ.get("CDM_FIELD_CAP")
    return int(env) if env else DEFAULT_FIELD_CAP


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, r) with q = p^r, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    fac = factorint(q)
    if len(fac) != 1:
        raise ValueError(f"{q} is not a prime power")
    (p, r), = fac.items()
    return int(p), int(r)


# ---------------------------------------------------------------- the field

@dataclass(frozen=True, eq=False)
class FiniteField:
    p: int
    r: int
    q: int
    irreducible: tuple[int, ...]
    generator: int
    exp: tuple[int, ...]
    dlog: tuple[int, ...]  # dlog[0] = -1
    _add: tuple[tuple[int, ...], ...] | None = field(default=None, repr=False)
    _neg: tuple[int, ...] = field(default=(), repr=False)

    # digit helpers
    def digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.r):
            a, d = divmod(a, self.p)
            out.append(d)
        return out

    def from_digits(self, ds: Sequence[int]) -> int:
        v = 0
        for d in reversed(list(ds)):
            v = v * self.p + d % self.p
        return v

    def add(self, a: int, b: int) -> int:
        if self.r == 1:
            return (a + b) % self.p
        if self._add is not None:
            return self._add[a][b]
        return self.from_digits([x + y for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a: int) -> int:
        return self._neg[a] if self._neg else self.from_digits([-x for x in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.dlog[a] + self.dlog[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in a field")
        return self.exp[(-self.dlog[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def power(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e > 0 else 1
        return self.exp[(self.dlog[a] * e) % (self.q - 1)]

    def elements(self) -> range:
        return range(self.q)

    def order(self, a: int) -> int:
        from math import gcd
        return (self.q - 1) // gcd(self.dlog[a], self.q - 1)

    def __repr__(self) -> str:
        return f"FiniteField(q={self.q})"


def _raw_mul(a: int, b: int, p: int, r: int, f: Sequence[int]) -> int:
    da = [(a // p**i) % p for i in range(r)]
    db = [(b // p**i) % p for i in range(r)]
    prod = _pmod(_pmul(da, db, p), f, p)
    return sum(c * p**i for i, c in enumerate(prod))


@lru_cache(maxsize=None)
def field_create(p: int, r: int = 1, cap: int | None = None) -> FiniteField:
    """Build F_{p^r} with deterministic polynomial and generator choices."""
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    if r < 1:
        raise ValueError("extension degree must be at least 1")
    q = p**r
    if q > (cap if cap is not None else field_cap()):
        raise ValueError(f"field size {q} exceeds the configured cap")
    # first monic irreducible of degree r, scanning constant-term-first digit order
    f: tuple[int, ...] | None = None
    for m in range(p**r):
        cand = [(m // p**i) % p for i in range(r)] + [1]
        if _is_irreducible(cand, p):
            f = tuple(cand)
            break
    assert f is not None
    # least element of multiplicative order q - 1
    alpha = None
    for a in range(1, q):
        x, k = a, 1
        while x != 1:
            x = _raw_mul(x, a, p, r, f)
            k += 1
        if k == q - 1:
            alpha = a
            break
    assert alpha is not None
    exp = [1]
    for _ in range(q - 2):
        exp.append(_raw_mul(exp[-1], alpha, p, r, f))
    dlog = [-1] * q
    for k, v in enumerate(exp):
        dlog[v] = k
    if len(set(exp)) != q - 1:
        raise ArithmeticError("generator search failed")
    add_t = None
    neg = []
    for a in range(q):
        ds = [(a // p**i) % p for i in range(r)]
        neg.append(sum(((-d) % p) * p**i for i, d in enumerate(ds)))
    if r > 1 and q <= _TABLE_LIMIT:
        rows = []
        for a in range(q):
            da = [(a // p**i) % p for i in range(r)]
            row = []
            for b in range(q):
                db = [(b // p**i) % p for i in range(r)]
                row.append(sum(((x + y) % p) * p**i for i, (x, y) in enumerate(zip(da, db))))
            rows.append(tuple(row))
        add_t = tuple(rows)
    return FiniteField(p, r, q, f, alpha, tuple(exp), tuple(dlog), add_t, tuple(neg))


def field_of_order(q: int) -> FiniteField:
    p, r = prime_power(q)
    return field_create(p, r)


@dataclass(frozen=True)
class ResidueSymbol:
    """The n-th power residue symbol F^x -> Z/n sending the field generator to 1."""

    field: FiniteField
    n: int

    def __post_init__(self) -> None:
        if self.n < 1 or (self.field.q - 1) % self.n:
            raise ValueError(f"n={self.n} does not divide q-1={self.field.q - 1}")

    def __call__(self, a: int) -> int:
        return residue_symbol(self, a)


def residue_symbol(sym: ResidueSymbol, a: int) -> int:
    if a == 0:
        raise ValueError("the residue symbol of 0 is handled by the caller")
    return sym.field.dlog[a] % sym.n


# ---------------------------------------------------------------- linear algebra

def mat_mul(F: FiniteField, A: Matrix, B: Matrix) -> Matrix:
    cols = list(zip(*B))
    out = []
    add, mul = F.add, F.mul
    for row in A:
        new = []
        for col in cols:
            s = 0
            for a, b in zip(row, col):
                if a and b:
                    s = add(s, mul(a, b))
            new.append(s)
        out.append(tuple(new))
    return tuple(out)


def mat_vec(F: FiniteField, A: Matrix, v: Sequence[int]) -> tuple[int, ...]:
    add, mul = F.add, F.mul
    out = []
    for row in A:
        s = 0
        for a, b in zip(row, v):
            if a and b:
                s = add(s, mul(a, b))
        out.append(s)
    return tuple(out)


def identity(d: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(d))


def transpose(A: Matrix) -> Matrix:
    return tuple(zip(*A))


def rref(F: FiniteField, rows: Sequence[Sequence[int]]) -> tuple[tuple[tuple[int, ...], ...], int]:
    """Reduced row echelon form, with zero rows dropped; also returns the rank."""
    M = [list(r) for r in rows]
    if not M:
        return (), 0
    ncols = len(M[0])
    piv_row = 0
    for c in range(ncols):
        pr = next((i for i in range(piv_row, len(M)) if M[i][c]), None)
        if pr is None:
            continue
        M[piv_row], M[pr] = M[pr], M[piv_row]
        inv = F.inv(M[piv_row][c])
        M[piv_row] = [F.mul(inv, x) for x in M[piv_row]]
        for i in range(len(M)):
            if i != piv_row and M[i][c]:
                f = M[i][c]
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], M[piv_row])]
        piv_row += 1
        if piv_row == len(M):
            break
    return tuple(tuple(r) for r in M[:piv_row]), piv_row


def det(F: FiniteField, A: Matrix) -> int:
    M = [list(r) for r in A]
    d = len(M)
    result = 1
    for c in range(d):
        pr = next((i for i in range(c, d) if M[i][c]), None)
        if pr is None:
            return 0
        if pr != c:
            M[c], M[pr] = M[pr], M[c]
            result = F.neg(result)
        result = F.mul(result, M[c][c])
        inv = F.inv(M[c][c])
        for i in range(c + 1, d):
            if M[i][c]:
                f = F.mul(M[i][c], inv)
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], M[c])]
    return result


def mat_inv(F: FiniteField, A: Matrix) -> Matrix:
    d = len(A)
    aug = [list(r) + [1 if i == j else 0 for j in range(d)] for i, r in enumerate(A)]
    red, rank = rref(F, aug)
    if rank < d or any(red[i][i] != 1 for i in range(d)):
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(r[d:]) for r in red)
