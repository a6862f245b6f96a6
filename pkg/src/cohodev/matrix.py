"""Matrices with entries in {0} ∪ μ_n and their exact checks."""

from __future__ import annotations

import json
from collections import deque
from typing import Any, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .cyclotomic import CycMatrix, CyclotomicInt, reduction_matrix

ZERO = -1  # exponent marker for a zero entry


class GenMatrix:
    """X x Y matrix over μ_n⁺ stored as an exponent array (-1 for zero)."""

    __slots__ = ("n", "exps")

    def __init__(self, exps: Any, n: int):
        arr = np.array(exps, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError("matrix must be two-dimensional")
        if n < 1:
            raise ValueError("n must be positive")
        if ((arr < ZERO) | (arr >= n)).any():
            raise ValueError(f"exponents must lie in range({n}) or be {ZERO}")
        arr.setflags(write=False)
        self.exps = arr
        self.n = n

    # construction helpers
    @classmethod
    def zeros(cls, rows: int, cols: int, n: int) -> "GenMatrix":
        return cls(np.full((rows, cols), ZERO), n)

    @classmethod
    def identity(cls, size: int, n: int) -> "GenMatrix":
        e = np.full((size, size), ZERO)
        np.fill_diagonal(e, 0)
        return cls(e, n)

    @classmethod
    def from_signs(cls, values: Sequence[Sequence[int]]) -> "GenMatrix":
        """Build an n = 2 matrix from entries in {0, 1, -1}."""
        v = np.array(values, dtype=np.int64)
        if not np.isin(v, (-1, 0, 1)).all():
            raise ValueError("entries must be 0 or ±1")
        e = np.where(v == 0, ZERO, np.where(v == 1, 0, 1))
        return cls(e, 2)

    @classmethod
    def from_entries(cls, entries: Sequence[Sequence[int | None]], n: int) -> "GenMatrix":
        return cls([[ZERO if e is None else e for e in row] for row in entries], n)

    # basic views
    @property
    def shape(self) -> tuple[int, int]:
        return self.exps.shape  # type: ignore[return-value]

    @property
    def rows(self) -> int:
        return self.exps.shape[0]

    @property
    def cols(self) -> int:
        return self.exps.shape[1]

    def support(self) -> np.ndarray:
        return self.exps >= 0

    def entry(self, i: int, j: int) -> int | None:
        e = int(self.exps[i, j])
        return None if e == ZERO else e

    def to_signs(self) -> np.ndarray:
        if self.n != 2:
            raise ValueError("sign view only exists for n = 2")
        return np.where(self.exps == ZERO, 0, np.where(self.exps == 0, 1, -1))

    def to_complex(self) -> np.ndarray:
        z = np.exp(2j * np.pi * self.exps / self.n)
        return np.where(self.exps == ZERO, 0, z)

    def to_cyc(self) -> CycMatrix:
        return CycMatrix.from_exponents(self.exps, self.n)

    def conj(self) -> "GenMatrix":
        return GenMatrix(np.where(self.exps == ZERO, ZERO, (-self.exps) % self.n), self.n)

    def transpose(self) -> "GenMatrix":
        return GenMatrix(self.exps.T, self.n)

    def conj_transpose(self) -> "GenMatrix":
        return self.conj().transpose()

    def scaled(self, k: int) -> "GenMatrix":
        """Multiply every entry by zeta^k."""
        return GenMatrix(np.where(self.exps == ZERO, ZERO, (self.exps + k) % self.n), self.n)

    def negated(self) -> "GenMatrix":
        if self.n % 2:
            raise ValueError("-1 is not an n-th root of unity for odd n")
        return self.scaled(self.n // 2)

    def with_order(self, m: int) -> "GenMatrix":
        """Reinterpret over μ_m for a multiple m of n."""
        if m % self.n:
            raise ValueError("new order must be a multiple of the old one")
        f = m // self.n
        return GenMatrix(np.where(self.exps == ZERO, ZERO, self.exps * f), m)

    def permuted(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> "GenMatrix":
        """Return B with B[i, j] = A[row_perm[i], col_perm[j]]."""
        return GenMatrix(self.exps[np.ix_(list(row_perm), list(col_perm))], self.n)

    def weight_rows(self) -> np.ndarray:
        return self.support().sum(axis=1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GenMatrix):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.exps, other.exps)

    def __hash__(self) -> int:
        return hash((self.n, self.exps.tobytes(), self.exps.shape))

    def __repr__(self) -> str:
        return f"GenMatrix({self.rows}x{self.cols}, n={self.n})"

    # interchange
    def to_json(self) -> dict:
        return {"n": self.n, "rows": self.rows, "cols": self.cols,
                "entries": [[None if e == ZERO else int(e) for e in row] for row in self.exps]}

    @classmethod
    def from_json(cls, data: dict) -> "GenMatrix":
        try:
            n, rows, cols, entries = data["n"], data["rows"], data["cols"], data["entries"]
        except KeyError as exc:
            raise ValueError(f"matrix JSON is missing field {exc}") from None
        m = cls.from_entries(entries, n) if rows else cls.zeros(0, cols, n)
        if m.shape != (rows, cols):
            raise ValueError("matrix JSON dimensions disagree with the entries")
        return m

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def render(self) -> str:
        """Plain text: 0/+/- for n = 2, exponent digits (or '.' for zero) otherwise."""
        if self.n == 2:
            sym = {ZERO: "0", 0: "+", 1: "-"}
            return "\n".join("".join(sym[int(e)] for e in row) for row in self.exps)
        width = len(str(self.n - 1))
        lines = [f"# entries are exponents of zeta_{self.n}; '.' marks zero"]
        for row in self.exps:
            lines.append(" ".join("." * width if e == ZERO else str(int(e)).rjust(width) for e in row))
        return "\n".join(lines)

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "GenMatrix":
        """Inverse of :meth:`render`."""
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        if lines and lines[0].startswith("#"):
            header = lines.pop(0)
            if n is None:
                n = int(header.split("zeta_")[1].split(";")[0])
            rows = [[ZERO if tok.strip(".") == "" else int(tok) for tok in ln.split()] for ln in lines]
            return cls(rows, n)
        table = {"0": ZERO, "+": 0, "-": 1}
        return cls([[table[c] for c in ln.strip()] for ln in lines], 2)


# ---------------------------------------------------------------- Gram and weighing checks

def gram_coeffs(A: GenMatrix) -> np.ndarray:
    """Canonical coefficients of A A^* as an array (rows, rows, phi(n))."""
    C = A.to_cyc()
    return (C @ C.conj_transpose()).reduced()


def gram(A: GenMatrix) -> list[list[CyclotomicInt]]:
    g = gram_coeffs(A)
    return [[CyclotomicInt(A.n, tuple(int(c) for c in g[i, j])) for j in range(g.shape[1])] for i in range(g.shape[0])]


def orthogonality_weight(A: GenMatrix) -> int | None:
    """Return w if A A^* = w I exactly, else None."""
    if A.rows != A.cols:
        return None
    g = gram_coeffs(A)
    N = A.rows
    if N == 0:
        return None
    w = int(g[0, 0, 0])
    target = np.zeros_like(g)
    target[np.arange(N), np.arange(N), 0] = w
    return w if np.array_equal(g, target) and w > 0 else None


def is_gw(A: GenMatrix, w: int) -> bool:
    if A.rows != A.cols:
        raise ValueError("is_gw requires a square matrix")
    return orthogonality_weight(A) == w


def gram_equals(A: GenMatrix, target: np.ndarray) -> bool:
    """Compare the Gram matrix with an integer matrix."""
    g = gram_coeffs(A)
    t = np.zeros_like(g)
    t[:, :, 0] = target
    return np.array_equal(g, t)


# ---------------------------------------------------------------- Hadamard operations

def _same_shape(A: GenMatrix, B: GenMatrix) -> None:
    if A.shape != B.shape or A.n != B.n:
        raise ValueError("shape or order mismatch")


def hadamard_product(A: GenMatrix, B: GenMatrix) -> GenMatrix:
    _same_shape(A, B)
    both = A.support() & B.support()
    return GenMatrix(np.where(both, (A.exps + B.exps) % A.n, ZERO), A.n)


def hadamard_power(A: GenMatrix, m: int) -> GenMatrix:
    return GenMatrix(np.where(A.support(), (A.exps * m) % A.n, ZERO), A.n)


def support_matrix(A: GenMatrix) -> GenMatrix:
    """|A|: ones on the support."""
    return GenMatrix(np.where(A.support(), 0, ZERO), A.n)


# ---------------------------------------------------------------- structure

def is_irreducible(A: GenMatrix) -> bool:
    """Connectedness of the bipartite support graph on rows ⊔ columns."""
    if not A.support().any():
        raise ValueError("irreducibility is undefined for the zero matrix")
    r, c = A.shape
    rr, cc = np.nonzero(A.support())
    adj = csr_matrix((np.ones(len(rr)), (rr, cc + r)), shape=(r + c, r + c))
    ncomp, _ = connected_components(adj, directed=False)
    return ncomp == 1


def d_equivalent(A: GenMatrix, B: GenMatrix) -> tuple[np.ndarray, np.ndarray] | None:
    """Diagonal witnesses (l, r) with A = diag(ζ^l) B diag(ζ^r)^*, or None.

    Signs are forced along a BFS forest of the common support graph, each
    component rooted at a column with r = 0, then every entry is checked.
    """
    if A.shape != B.shape or A.n != B.n:
        return None
    if not np.array_equal(A.support(), B.support()):
        return None
    n = A.n
    rows, cols = A.shape
    sup = A.support()
    row_nbrs = [np.nonzero(sup[i])[0] for i in range(rows)]
    col_nbrs = [np.nonzero(sup[:, j])[0] for j in range(cols)]
    diff = (A.exps - B.exps) % n  # on the support: l[x] - r[y]
    left = np.full(rows, -1)
    right = np.full(cols, -1)
    order = [("c", j) for j in range(cols)] + [("r", i) for i in range(rows)]
    for kind, root in order:
        if (kind == "c" and right[root] >= 0) or (kind == "r" and left[root] >= 0):
            continue
        if kind == "c":
            right[root] = 0
        else:
            left[root] = 0
        queue = deque([(kind, root)])
        while queue:
            k, v = queue.popleft()
            if k == "c":
                for x in col_nbrs[v]:
                    if left[x] < 0:
                        left[x] = (diff[x, v] + right[v]) % n
                        queue.append(("r", x))
            else:
                for y in row_nbrs[v]:
                    if right[y] < 0:
                        right[y] = (left[v] - diff[v, y]) % n
                        queue.append(("c", y))
    check = (left[:, None] - right[None, :]) % n
    if not np.array_equal(np.where(sup, check, 0), np.where(sup, diff, 0)):
        return None
    return left, right


def apply_diagonals(B: GenMatrix, left: Sequence[int], right: Sequence[int]) -> GenMatrix:
    """diag(ζ^left) B diag(ζ^right)^*."""
    l = np.asarray(left)[:, None]
    r = np.asarray(right)[None, :]
    return GenMatrix(np.where(B.support(), (B.exps + l - r) % B.n, ZERO), B.n)


def exact_rank(A: GenMatrix) -> int:
    """Rank over Q(zeta_n), computed exactly."""
    import sympy

    z = sympy.exp(2 * sympy.pi * sympy.I / A.n) if A.n > 2 else None
    if A.n <= 2:
        M = sympy.Matrix(A.to_signs().tolist() if A.n == 2 else A.support().astype(int).tolist())
    else:
        M = sympy.Matrix([[0 if e == ZERO else z**int(e) for e in row] for row in A.exps])
    return int(M.rank(simplify=True))


__all__ = [
    "ZERO", "GenMatrix", "gram", "gram_coeffs", "is_gw", "orthogonality_weight", "gram_equals",
    "hadamard_product", "hadamard_power", "support_matrix", "is_irreducible", "d_equivalent",
    "apply_diagonals", "exact_rank", "reduction_matrix",
]
