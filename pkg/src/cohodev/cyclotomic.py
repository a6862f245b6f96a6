"""Exact arithmetic with n-th roots of unity.

A root of unity is stored as its exponent modulo ``n``.  Sums of roots of
unity live in Z[x]/(Phi_n) and are compared through their canonical
remainder modulo the cyclotomic polynomial, so vanishing sums are detected
exactly.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np


def _poly_divmod(num: list[int], den: Sequence[int]) -> tuple[list[int], list[int]]:
    """Divide integer polynomials (low degree first); ``den`` must be monic."""
    num = list(num)
    dd = len(den) - 1
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    if len(num) - 1 < dd:
        return [0], num
    quot = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            quot[i - dd] = c
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
    rem = num[:dd] or [0]
    return quot, rem


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("n must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        poly, rem = _poly_divmod(poly, cyclotomic_polynomial(d))
        if any(rem):
            raise ArithmeticError("non-exact cyclotomic division")
    return tuple(poly)


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
def reduction_matrix(n: int) -> np.ndarray:
    """Row k holds the canonical coefficients of x^k mod Phi_n (k < n)."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    out = np.zeros((n, deg), dtype=np.int64)
    for k in range(n):
        mono = [0] * k + [1]
        _, rem = _poly_divmod(mono, phi)
        rem = (rem + [0] * deg)[:deg]
        out[k] = rem
    out.setflags(write=False)
    return out


def _wrap(coeffs: Iterable[int], n: int) -> np.ndarray:
    """Fold an arbitrary-length coefficient list into Z[x]/(x^n - 1)."""
    acc = np.zeros(n, dtype=np.int64)
    for k, c in enumerate(coeffs):
        acc[k % n] += c
    return acc


@dataclass(frozen=True)
class CyclotomicInt:
    """An element of Z[zeta_n] in canonical form (degree < phi(n))."""

    n: int
    coeffs: tuple[int, ...]

    @classmethod
    def from_coeffs(cls, n: int, coeffs: Iterable[int]) -> "CyclotomicInt":
        red = _wrap(coeffs, n) @ reduction_matrix(n)
        return cls(n, tuple(int(c) for c in red))

    @classmethod
    def root(cls, n: int, k: int) -> "CyclotomicInt":
        return cls(n, tuple(int(c) for c in reduction_matrix(n)[k % n]))

    @classmethod
    def integer(cls, n: int, m: int) -> "CyclotomicInt":
        return cls.from_coeffs(n, [m])

    def _check(self, other: "CyclotomicInt") -> None:
        if self.n != other.n:
            raise ValueError(f"order mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "CyclotomicInt") -> "CyclotomicInt":
        self._check(other)
        return CyclotomicInt(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CyclotomicInt") -> "CyclotomicInt":
        self._check(other)
        return CyclotomicInt(self.n, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CyclotomicInt":
        return CyclotomicInt(self.n, tuple(-a for a in self.coeffs))

    def __mul__(self, other: "CyclotomicInt") -> "CyclotomicInt":
        self._check(other)
        prod = np.convolve(np.array(self.coeffs, dtype=np.int64), np.array(other.coeffs, dtype=np.int64))
        return CyclotomicInt.from_coeffs(self.n, prod.tolist())

    def conj(self) -> "CyclotomicInt":
        n = self.n
        acc = np.zeros(n, dtype=np.int64)
        for k, c in enumerate(self.coeffs):
            acc[(-k) % n] += c
        return CyclotomicInt.from_coeffs(n, acc.tolist())

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def as_int(self) -> int | None:
        """The rational integer value, or None when the element is not rational."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def to_complex(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.n)
        return sum(c * z**k for k, c in enumerate(self.coeffs))

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            terms.append(f"{c}" if k == 0 else f"{c}z^{k}")
        return " + ".join(terms) if terms else "0"


def cyc_reduce(v: CyclotomicInt) -> CyclotomicInt:
    return CyclotomicInt.from_coeffs(v.n, v.coeffs)


def cyc_add(a: CyclotomicInt, b: CyclotomicInt) -> CyclotomicInt:
    return a + b


def cyc_mul(a: CyclotomicInt, b: CyclotomicInt) -> CyclotomicInt:
    return a * b


def cyc_conj(a: CyclotomicInt) -> CyclotomicInt:
    return a.conj()


class CycMatrix:
    """Matrix over Z[x]/(x^n - 1), stored as an integer tensor (rows, cols, n).

    Products are computed before reduction; ``reduced`` gives canonical
    coefficients modulo Phi_n for exact comparison.
    """

    def __init__(self, n: int, coeffs: np.ndarray):
        self.n = n
        self.coeffs = np.asarray(coeffs, dtype=np.int64)
        if self.coeffs.ndim != 3 or self.coeffs.shape[2] != n:
            raise ValueError("coefficient tensor must have shape (rows, cols, n)")

    @classmethod
    def from_exponents(cls, exps: np.ndarray, n: int) -> "CycMatrix":
        exps = np.asarray(exps)
        out = np.zeros(exps.shape + (n,), dtype=np.int64)
        rr, cc = np.nonzero(exps >= 0)
        out[rr, cc, exps[rr, cc]] = 1
        return cls(n, out)

    @classmethod
    def scalar_identity(cls, size: int, n: int, c: int = 1) -> "CycMatrix":
        out = np.zeros((size, size, n), dtype=np.int64)
        out[np.arange(size), np.arange(size), 0] = c
        return cls(n, out)

    @property
    def shape(self) -> tuple[int, int]:
        return self.coeffs.shape[:2]

    def __matmul__(self, other: "CycMatrix") -> "CycMatrix":
        if self.n != other.n:
            raise ValueError("order mismatch")
        n = self.n
        a, b = self.coeffs, other.coeffs
        out = np.zeros((a.shape[0], b.shape[1], n), dtype=np.int64)
        for s in range(n):
            if not a[:, :, s].any():
                continue
            for t in range(n):
                if b[:, :, t].any():
                    out[:, :, (s + t) % n] += a[:, :, s] @ b[:, :, t]
        return CycMatrix(n, out)

    def __add__(self, other: "CycMatrix") -> "CycMatrix":
        return CycMatrix(self.n, self.coeffs + other.coeffs)

    def __sub__(self, other: "CycMatrix") -> "CycMatrix":
        return CycMatrix(self.n, self.coeffs - other.coeffs)

    def scale(self, c: int) -> "CycMatrix":
        return CycMatrix(self.n, self.coeffs * c)

    def shift(self, k: int) -> "CycMatrix":
        """Multiply every entry by zeta^k."""
        return CycMatrix(self.n, np.roll(self.coeffs, k % self.n, axis=2))

    def conj_transpose(self) -> "CycMatrix":
        c = self.coeffs.transpose(1, 0, 2)
        idx = (-np.arange(self.n)) % self.n
        return CycMatrix(self.n, c[:, :, idx])

    def reduced(self) -> np.ndarray:
        return self.coeffs @ reduction_matrix(self.n)

    def entry(self, i: int, j: int) -> CyclotomicInt:
        return CyclotomicInt.from_coeffs(self.n, self.coeffs[i, j].tolist())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CycMatrix):
            return NotImplemented
        return self.n == other.n and self.shape == other.shape and np.array_equal(self.reduced(), other.reduced())

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True)
class RootExponent:
    """zeta_n^value, with value kept in range(n)."""

    value: int
    n: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", self.value % self.n)

    def __add__(self, other: "RootExponent") -> "RootExponent":
        if self.n != other.n:
            raise ValueError("order mismatch")
        return RootExponent(self.value + other.value, self.n)

    def __neg__(self) -> "RootExponent":
        return RootExponent(-self.value, self.n)

    def to_complex(self) -> complex:
        return cmath.exp(2j * cmath.pi * self.value / self.n)

    def as_cyclotomic(self) -> CyclotomicInt:
        return CyclotomicInt.root(self.n, self.value)
