"""GL_d(F_q) with its actions on subspaces and flags, and block-determinant characters."""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from sympy import factorint

from .characters import FormulaCharacter
from .fields import FiniteField, Matrix, det, identity, mat_mul, rref, transpose
from .groups import GSet, MatrixGroup

Subspace = tuple[tuple[int, ...], ...]  # rows of the reduced echelon basis
Flag = tuple[Subspace, ...]


def _mat_pow(F: FiniteField, A: Matrix, e: int) -> Matrix:
    out, base = identity(len(A)), A
    while e:
        if e & 1:
            out = mat_mul(F, out, base)
        base = mat_mul(F, base, base)
        e >>= 1
    return out


def companion(F: FiniteField, coeffs: Sequence[int]) -> Matrix:
    """Companion matrix of x^d + c_{d-1}x^{d-1} + ... + c_0 (coeffs = c_0..c_{d-1})."""
    d = len(coeffs)
    rows = [[0] * d for _ in range(d)]
    for i in range(1, d):
        rows[i][i - 1] = 1
    for i in range(d):
        rows[i][d - 1] = F.neg(coeffs[i])
    return tuple(tuple(r) for r in rows)


@lru_cache(maxsize=None)
def singer_cycle(F: FiniteField, d: int) -> Matrix:
    """Companion matrix of the first primitive polynomial of degree d (order q^d - 1)."""
    N = F.q**d - 1
    I = identity(d)
    primes = list(factorint(N))
    for code in range(F.q**d):
        cs = []
        c = code
        for _ in range(d):
            c, r = divmod(c, F.q)
            cs.append(r)
        if cs[0] == 0:
            continue
        C = companion(F, cs)
        if _mat_pow(F, C, N) != I:
            continue
        if all(_mat_pow(F, C, N // ell) != I for ell in primes):
            return C
    raise ArithmeticError("no primitive polynomial found")


def gl_generators(F: FiniteField, d: int) -> list[Matrix]:
    """A Singer cycle and the transvection I + E_{12} (just the generator of F^x when d = 1)."""
    if d == 1:
        return [((F.generator,),)]
    t = [list(r) for r in identity(d)]
    t[0][1] = 1
    return [singer_cycle(F, d), tuple(tuple(r) for r in t)]


def _generated_order(G: MatrixGroup) -> int:
    from sympy.combinatorics import Permutation, PermutationGroup

    return int(PermutationGroup([Permutation(list(g.carrier_perm)) for g in G.generators]).order())


def general_linear_group(F: FiniteField, d: int) -> MatrixGroup:
    """GL_d(F_q) on two generators, with diag(α, 1, ..., 1) added when those fall short.

    Generation is confirmed by a stabilizer-chain order computation on the
    carrier permutations (sympy).
    """
    gens = gl_generators(F, d)
    G = MatrixGroup(F, d, gens, name=f"GL_{d}(F_{F.q})")
    if d > 1 and _generated_order(G) != gl_order(F.q, d):
        diag = [list(r) for r in identity(d)]
        diag[0][0] = F.generator
        G = MatrixGroup(F, d, gens + [tuple(tuple(r) for r in diag)], name=f"GL_{d}(F_{F.q})")
        if _generated_order(G) != gl_order(F.q, d):
            raise ArithmeticError(f"generators fail to generate GL_{d}(F_{F.q})")
    return G


def gl_order(q: int, d: int) -> int:
    out = 1
    for i in range(d):
        out *= q**d - q**i
    return out


# ---------------------------------------------------------------- actions

def apply_rows(F: FiniteField, g: Matrix, rows: Subspace) -> list[tuple[int, ...]]:
    """Images g·v of the basis vectors v (stored as rows)."""
    return [r for r in transpose(mat_mul(F, g, transpose(rows)))] if rows else []


def canonical_subspace(F: FiniteField, rows: Sequence[Sequence[int]]) -> Subspace:
    red, _ = rref(F, rows)
    return red


def standard_subspace(d: int, k: int) -> Subspace:
    return tuple(tuple(1 if j == i else 0 for j in range(d)) for i in range(k))


def dual_matrix(F: FiniteField, g: Matrix, group: MatrixGroup) -> Matrix:
    """(g^{-1})^T, the matrix of g on the dual space."""
    return transpose(group._inv(g))


def subspace_gsets(G: MatrixGroup, k: int) -> tuple[GSet, GSet]:
    """k-subspaces with the natural action and with the dual (inverse-transpose) action."""
    F = G.field

    def act(g: Matrix, V: Subspace) -> Subspace:
        return canonical_subspace(F, apply_rows(F, g, V))

    def act_dual(g: Matrix, V: Subspace) -> Subspace:
        return canonical_subspace(F, apply_rows(F, dual_matrix(F, g, G), V))

    base = standard_subspace(G.d, k)
    X = GSet.from_orbit(G, base, act, name=f"Gr({G.d},{k})")
    Y = GSet(G, X.points, act_dual, name=f"Gr({G.d},{k})*")
    return X, Y


def flag_gsets(G: MatrixGroup, parts: Sequence[int]) -> tuple[GSet, GSet]:
    """Flags V_1 ⊂ ... ⊂ V_{r-1} of the given type, natural and dual actions.

    A flag is stored as the tuple of echelon bases of its proper members.
    """
    F = G.field
    dims = [sum(parts[: i + 1]) for i in range(len(parts) - 1)]

    def act_by(g: Matrix, flag: Flag) -> Flag:
        return tuple(canonical_subspace(F, apply_rows(F, g, V)) for V in flag)

    def act(g: Matrix, flag: Flag) -> Flag:
        return act_by(g, flag)

    def act_dual(g: Matrix, flag: Flag) -> Flag:
        return act_by(dual_matrix(F, g, G), flag)

    base = tuple(standard_subspace(G.d, k) for k in dims)
    X = GSet.from_orbit(G, base, act, name=f"Flag{tuple(parts)}")
    Y = GSet(G, X.points, act_dual, name=f"Flag{tuple(parts)}*")
    return X, Y


def block_det_character(F: FiniteField, parts: Sequence[int], weights: Sequence[int], n: int,
                        description: str = "") -> FormulaCharacter:
    """h ↦ Σ_i weights[i] · dlog(det of the i-th diagonal block) mod n.

    On block-triangular matrices (either orientation) this is a homomorphism.
    """
    if (F.q - 1) % n:
        raise ValueError(f"n={n} does not divide q-1")
    starts = [sum(parts[:i]) for i in range(len(parts))]

    def fn(h: Matrix) -> int:
        total = 0
        for s, m, w in zip(starts, parts, weights):
            if w == 0:
                continue
            block = tuple(tuple(h[i][s: s + m]) for i in range(s, s + m))
            total += w * F.dlog[det(F, block)]
        return total % n

    return FormulaCharacter(fn, n, description or f"block det {tuple(parts)} weights {tuple(weights)}")


# ---------------------------------------------------------------- counting

def q_integer(m: int, q: int) -> int:
    return (q**m - 1) // (q - 1)


def q_factorial(m: int, q: int) -> int:
    out = 1
    for i in range(1, m + 1):
        out *= q_integer(i, q)
    return out


def gaussian_binomial(d: int, k: int, q: int) -> int:
    if k < 0 or k > d:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (d - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def gaussian_multinomial(d: int, parts: Sequence[int], q: int) -> int:
    if sum(parts) != d or any(p < 0 for p in parts):
        raise ValueError("parts must be nonnegative and sum to d")
    out, rest = 1, d
    for p in parts:
        out *= gaussian_binomial(rest, p, q)
        rest -= p
    return out
