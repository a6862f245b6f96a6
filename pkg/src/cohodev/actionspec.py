"""JSON action specs: a portable description of (G, X, Y, psi_X, psi_Y, n).

Schema (all keys required unless marked optional)::

    {
      "kind": "perm" | "matrix" | "affine",
      "n": 2,
      "label": "A6",                                  # optional
      "group": {...},                                 # depends on kind, see below
      "X": {"action": ..., ...},
      "Y": {"action": ..., ...},
      "psi_X": {"type": ..., ...},
      "psi_Y": {"type": ..., ...}
    }

perm
    group: ``{"degree": d, "generators": [g, ...]}`` where each ``g`` is either an
    image array ``[g(0), ..., g(d-1)]`` or ``{"cycles": [[...], ...], "base": 0|1}``.
    G-set actions: ``natural`` (``base``: a point), ``subsets`` (``base``: a list of
    points), ``nested_sets`` (``base``: nested lists, acted on elementwise at every depth).
    Characters: ``sign_on`` (``points``), ``block_sign`` (``blocks``: the parity of the
    permutation induced on a system of blocks).

matrix
    group: ``{"q": q, "d": d, "generators": "gl" | [matrix, ...]}``.
    G-set actions: ``subspaces`` (``k``) and ``flags`` (``parts``), each with an
    optional ``dual`` flag selecting the inverse-transpose action.  The basepoint is the
    span of the leading coordinate vectors.
    Characters: ``block_det`` (``parts``, ``weights``).

affine
    group: ``{"q": q, "generators": "default" | [[a, b], ...]}`` acting by x -> a x + b.
    G-set action: ``field`` (``base``: an element code, default 0).
    Characters: ``residue`` (power residue symbol of the multiplier).

Every kind also accepts the characters ``trivial`` and ``sum`` (``terms``: a list of
characters added together).

Loading normalizes defaults in, so ``to_dict(from_dict(d))`` is a fixed point and
``from_dict(to_dict(s)) == s``.
"""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .characters import Character, FormulaCharacter, trivial_character
from .develop import MonomialCoverSpec
from .fields import FiniteField, ResidueSymbol, field_of_order
from .geometry import (block_det_character, flag_gsets, general_linear_group, standard_subspace,
                       subspace_gsets)
from .groups import AffineGroup, GSet, MatrixGroup, PermGroup

KINDS = ("perm", "matrix", "affine")
ACTIONS = {"perm": ("natural", "subsets", "nested_sets"),
           "matrix": ("subspaces", "flags"),
           "affine": ("field",)}
CHARACTERS = {"perm": ("sign_on", "block_sign"), "matrix": ("block_det",), "affine": ("residue",)}


class SpecError(ValueError):
    """Malformed action spec."""


def _need(d: dict, key: str, where: str) -> Any:
    if not isinstance(d, dict):
        raise SpecError(f"{where}: expected an object")
    if key not in d:
        raise SpecError(f"{where}: missing key {key!r}")
    return d[key]


def _int(v: Any, where: str, lo: int | None = None) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise SpecError(f"{where}: expected an integer, got {v!r}")
    if lo is not None and v < lo:
        raise SpecError(f"{where}: must be >= {lo}")
    return v


def _int_list(v: Any, where: str) -> list[int]:
    if not isinstance(v, list):
        raise SpecError(f"{where}: expected a list")
    return [_int(x, where) for x in v]


@dataclass
class ActionSpec:
    kind: str
    n: int
    group: dict
    X: dict
    Y: dict
    psi_X: dict
    psi_Y: dict
    label: str = ""

    # ------------------------------------------------------------ (de)serialization
    @classmethod
    def from_dict(cls, data: dict) -> "ActionSpec":
        data = copy.deepcopy(data)
        kind = _need(data, "kind", "spec")
        if kind not in KINDS:
            raise SpecError(f"spec: kind must be one of {KINDS}, got {kind!r}")
        unknown = set(data) - {"kind", "n", "label", "group", "X", "Y", "psi_X", "psi_Y"}
        if unknown:
            raise SpecError(f"spec: unknown keys {sorted(unknown)}")
        n = _int(_need(data, "n", "spec"), "n", 1)
        group = _normalize_group(kind, _need(data, "group", "spec"))
        X = _normalize_gset(kind, _need(data, "X", "spec"), "X")
        Y = _normalize_gset(kind, _need(data, "Y", "spec"), "Y")
        psi_X = _normalize_char(kind, _need(data, "psi_X", "spec"), "psi_X")
        psi_Y = _normalize_char(kind, _need(data, "psi_Y", "spec"), "psi_Y")
        label = data.get("label", "")
        if not isinstance(label, str):
            raise SpecError("label: expected a string")
        return cls(kind, n, group, X, Y, psi_X, psi_Y, label)

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "n": self.n, "group": self.group, "X": self.X, "Y": self.Y,
               "psi_X": self.psi_X, "psi_Y": self.psi_Y}
        if self.label:
            out["label"] = self.label
        return copy.deepcopy(out)

    def dumps(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def loads(cls, text: str) -> "ActionSpec":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SpecError(f"invalid JSON: {exc}") from None
        return cls.from_dict(data)

    @classmethod
    def load(cls, path: str | Path) -> "ActionSpec":
        return cls.loads(Path(path).read_text())

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.dumps() + "\n")

    # ------------------------------------------------------------ construction
    def build(self, verify: bool = True, seed: int = 0) -> MonomialCoverSpec:
        try:
            if self.kind == "perm":
                G = self._perm_group()
                X, x0 = _perm_gset(G, self.X, "X")
                Y, y0 = _perm_gset(G, self.Y, "Y")
                chars = [_perm_char(c, self.n, G.degree) for c in (self.psi_X, self.psi_Y)]
            elif self.kind == "matrix":
                G = self._matrix_group()
                X, x0 = _matrix_gset(G, self.X)
                Y, y0 = _matrix_gset(G, self.Y)
                chars = [_matrix_char(c, self.n, G) for c in (self.psi_X, self.psi_Y)]
            else:
                G = self._affine_group()
                X, x0 = _affine_gset(G, self.X, "X")
                Y, y0 = _affine_gset(G, self.Y, "Y")
                chars = [_affine_char(c, self.n, G.field) for c in (self.psi_X, self.psi_Y)]
        except (KeyError, IndexError, TypeError) as exc:
            raise SpecError(f"spec cannot be realized: {exc!r}") from None
        return MonomialCoverSpec(G, X, Y, x0, y0, chars[0], chars[1], self.n, verify=verify, seed=seed,
                                 label=self.label)

    def _perm_group(self) -> PermGroup:
        deg = self.group["degree"]
        gens = []
        for g in self.group["generators"]:
            if isinstance(g, dict):
                gens.append(PermGroup.from_cycles(deg, g["cycles"], g.get("base", 0)))
            else:
                gens.append(tuple(g))
        for g in gens:
            if sorted(g) != list(range(deg)):
                raise SpecError(f"generator {list(g)} is not a permutation of 0..{deg - 1}")
        return PermGroup(deg, gens, name=self.label or "G")

    def _matrix_group(self) -> MatrixGroup:
        F = field_of_order(self.group["q"])
        d = self.group["d"]
        gens = self.group["generators"]
        if gens == "gl":
            return general_linear_group(F, d)
        mats = [tuple(tuple(r) for r in m) for m in gens]
        for m in mats:
            if len(m) != d or any(len(r) != d for r in m) or any(not 0 <= v < F.q for r in m for v in r):
                raise SpecError(f"generator {m} is not a {d}x{d} matrix over F_{F.q}")
        return MatrixGroup(F, d, mats, name=self.label or f"G<GL_{d}(F_{F.q})")

    def _affine_group(self) -> AffineGroup:
        F = field_of_order(self.group["q"])
        gens = self.group["generators"]
        pairs = [(F.generator, 0), (1, 1)] if gens == "default" else [tuple(p) for p in gens]
        for a, b in pairs:
            if not (0 < a < F.q and 0 <= b < F.q):
                raise SpecError(f"affine generator ({a},{b}) is not invertible over F_{F.q}")
        return AffineGroup(F, pairs, name=self.label or f"AGL_1(F_{F.q})")


# ---------------------------------------------------------------- normalization

def _normalize_group(kind: str, g: dict) -> dict:
    if kind == "perm":
        deg = _int(_need(g, "degree", "group"), "group.degree", 1)
        gens = _need(g, "generators", "group")
        if not isinstance(gens, list) or not gens:
            raise SpecError("group.generators: expected a nonempty list")
        out = []
        for s in gens:
            if isinstance(s, dict):
                cyc = _need(s, "cycles", "group.generators[]")
                if not isinstance(cyc, list):
                    raise SpecError("cycles: expected a list of lists")
                out.append({"cycles": [_int_list(c, "cycles") for c in cyc],
                            "base": _int(s.get("base", 0), "cycles.base", 0)})
            else:
                imgs = _int_list(s, "group.generators[]")
                if len(imgs) != deg:
                    raise SpecError(f"generator {imgs} has length {len(imgs)}, expected {deg}")
                out.append(imgs)
        return {"degree": deg, "generators": out}
    q = _int(_need(g, "q", "group"), "group.q", 2)
    gens = _need(g, "generators", "group")
    if kind == "matrix":
        d = _int(_need(g, "d", "group"), "group.d", 1)
        if gens != "gl":
            if not isinstance(gens, list) or not gens:
                raise SpecError("group.generators: expected \"gl\" or a list of matrices")
            gens = [[_int_list(r, "matrix row") for r in m] for m in gens]
        return {"q": q, "d": d, "generators": gens}
    if gens != "default":
        if not isinstance(gens, list) or not gens:
            raise SpecError("group.generators: expected \"default\" or a list of [a, b] pairs")
        gens = [_int_list(p, "affine pair") for p in gens]
        if any(len(p) != 2 for p in gens):
            raise SpecError("affine generators are pairs [a, b]")
    return {"q": q, "generators": gens}


def _nested(v: Any, where: str) -> Any:
    if isinstance(v, list):
        return [_nested(x, where) for x in v]
    return _int(v, where)


def _normalize_gset(kind: str, s: dict, where: str) -> dict:
    action = _need(s, "action", where)
    if action not in ACTIONS[kind]:
        raise SpecError(f"{where}.action: {action!r} is not available for kind {kind!r} "
                        f"(choose from {ACTIONS[kind]})")
    if action == "natural":
        return {"action": action, "base": _int(s.get("base", 0), f"{where}.base", 0)}
    if action == "subsets":
        return {"action": action, "base": _int_list(_need(s, "base", where), f"{where}.base")}
    if action == "nested_sets":
        base = _need(s, "base", where)
        if not isinstance(base, list):
            raise SpecError(f"{where}.base: expected nested lists")
        return {"action": action, "base": _nested(base, f"{where}.base")}
    if action == "subspaces":
        return {"action": action, "k": _int(_need(s, "k", where), f"{where}.k", 1),
                "dual": bool(s.get("dual", False))}
    if action == "flags":
        return {"action": action, "parts": _int_list(_need(s, "parts", where), f"{where}.parts"),
                "dual": bool(s.get("dual", False))}
    return {"action": action, "base": _int(s.get("base", 0), f"{where}.base", 0)}


def _normalize_char(kind: str, c: dict, where: str) -> dict:
    t = _need(c, "type", where)
    if t == "trivial":
        return {"type": t}
    if t == "sum":
        terms = _need(c, "terms", where)
        if not isinstance(terms, list) or not terms:
            raise SpecError(f"{where}.terms: expected a nonempty list")
        return {"type": t, "terms": [_normalize_char(kind, x, f"{where}.terms[]") for x in terms]}
    if t not in CHARACTERS[kind]:
        raise SpecError(f"{where}.type: {t!r} is not available for kind {kind!r}")
    if t == "sign_on":
        return {"type": t, "points": _int_list(_need(c, "points", where), f"{where}.points")}
    if t == "block_sign":
        blocks = _need(c, "blocks", where)
        if not isinstance(blocks, list):
            raise SpecError(f"{where}.blocks: expected a list of lists")
        return {"type": t, "blocks": [_int_list(b, f"{where}.blocks") for b in blocks]}
    if t == "block_det":
        parts = _int_list(_need(c, "parts", where), f"{where}.parts")
        weights = _int_list(_need(c, "weights", where), f"{where}.weights")
        if len(parts) != len(weights):
            raise SpecError(f"{where}: parts and weights differ in length")
        return {"type": t, "parts": parts, "weights": weights}
    return {"type": t}


# ---------------------------------------------------------------- realization

def _freeze(v: Any) -> Any:
    return frozenset(_freeze(x) for x in v) if isinstance(v, list) else v


def _sort_key(v: Any) -> Any:
    if isinstance(v, frozenset):
        return (1, sorted(_sort_key(x) for x in v))
    return (0, v)


def _apply_nested(p: tuple[int, ...], v: Any) -> Any:
    if isinstance(v, frozenset):
        return frozenset(_apply_nested(p, x) for x in v)
    return p[v]


def _perm_gset(G: PermGroup, s: dict, name: str) -> tuple[GSet, int]:
    action = s["action"]
    if action == "natural":
        base = s["base"]
        if base >= G.degree:
            raise SpecError(f"{name}.base {base} is outside 0..{G.degree - 1}")
    else:
        base = _freeze(s["base"])
    X = GSet.from_orbit(G, base, _apply_nested, name=f"{name}:{action}", sort_key=_sort_key)
    return X, X.index[base]


def _parity(perm: dict[int, int]) -> int:
    seen: set[int] = set()
    parity = 0
    for a in perm:
        if a in seen:
            continue
        length, b = 0, a
        while b not in seen:
            seen.add(b)
            b = perm[b]
            length += 1
        parity += length - 1
    return parity % 2


def _perm_char(c: dict, n: int, degree: int) -> Character:
    t = c["type"]
    if t == "trivial":
        return trivial_character(n)
    if t == "sum":
        terms = [_perm_char(x, n, degree) for x in c["terms"]]
        out = terms[0]
        for x in terms[1:]:
            out = out + x
        return out
    if n % 2:
        raise SpecError(f"{t} takes values in Z/2 and needs even n, got n={n}")
    lift = n // 2
    if t == "sign_on":
        pts = c["points"]
        return FormulaCharacter(lambda p: lift * _parity({a: p[a] for a in pts}), n,
                                f"sign on {pts}")
    blocks = [frozenset(b) for b in c["blocks"]]
    where = {a: i for i, b in enumerate(blocks) for a in b}

    def block_parity(p) -> int:
        induced = {i: where[p[next(iter(b))]] for i, b in enumerate(blocks)}
        return lift * _parity(induced)

    return FormulaCharacter(block_parity, n, f"block sign {c['blocks']}")


def _matrix_gset(G: MatrixGroup, s: dict) -> tuple[GSet, int]:
    d = G.d
    if s["action"] == "subspaces":
        k = s["k"]
        if not 0 < k < d:
            raise SpecError(f"subspace dimension k={k} must lie strictly between 0 and d={d}")
        X, Xd = subspace_gsets(G, k)
        base = standard_subspace(d, k)
    else:
        parts = s["parts"]
        if sum(parts) != d or any(p < 1 for p in parts):
            raise SpecError(f"flag parts {parts} must be positive and sum to d={d}")
        X, Xd = flag_gsets(G, parts)
        dims = [sum(parts[: i + 1]) for i in range(len(parts) - 1)]
        base = tuple(standard_subspace(d, k) for k in dims)
    S = Xd if s["dual"] else X
    return S, S.index[base]


def _matrix_char(c: dict, n: int, G: MatrixGroup) -> Character:
    t = c["type"]
    if t == "trivial":
        return trivial_character(n)
    if t == "sum":
        terms = [_matrix_char(x, n, G) for x in c["terms"]]
        out = terms[0]
        for x in terms[1:]:
            out = out + x
        return out
    if sum(c["parts"]) != G.d:
        raise SpecError(f"block_det parts {c['parts']} must sum to d={G.d}")
    return block_det_character(G.field, c["parts"], c["weights"], n)


def _affine_gset(G: AffineGroup, s: dict, name: str) -> tuple[GSet, int]:
    F = G.field
    if s["base"] >= F.q:
        raise SpecError(f"{name}.base {s['base']} is outside F_{F.q}")
    act = lambda g, x: F.add(F.mul(g[0], x), g[1])  # noqa: E731
    X = GSet(G, range(F.q), act, name=f"{name}:field")
    return X, s["base"]


def _affine_char(c: dict, n: int, F: FiniteField) -> Character:
    t = c["type"]
    if t == "trivial":
        return trivial_character(n)
    if t == "sum":
        terms = [_affine_char(x, n, F) for x in c["terms"]]
        out = terms[0]
        for x in terms[1:]:
            out = out + x
        return out
    sym = ResidueSymbol(F, n)
    return FormulaCharacter(lambda g: sym(g[0]), n, "residue of the multiplier")


def load_spec(path: str | Path, verify: bool = True, seed: int = 0) -> MonomialCoverSpec:
    return ActionSpec.load(path).build(verify=verify, seed=seed)


__all__ = ["ActionSpec", "SpecError", "load_spec"]
