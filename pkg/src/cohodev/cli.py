"""Command-line front end.

Exit codes: 0 ok/verified, 1 verification failed, 2 usage or input error,
3 a nonzero head value was placed on a non-orientable orbit.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Sequence

import numpy as np

from .actionspec import ActionSpec, SpecError
from .groups import CapExceeded

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_ORIENT = 0, 1, 2, 3
FAMILIES = ("paley-kernel", "paley-conference", "paley-hadamard1", "paley-hadamard2", "projective",
            "grassmannian", "flag", "a6-w15", "cube")


class UsageError(ValueError):
    pass


@dataclass
class CommandConfig:
    subcommand: str
    params: dict[str, Any]
    output: str | None = None
    fmt: str = "text"
    cap: int | None = None
    seed: int = 0
    verbose: int = 0
    lines: list[str] = field(default_factory=list)
    report: dict[str, Any] = field(default_factory=dict)

    def say(self, text: str) -> None:
        self.lines.append(text)


# ---------------------------------------------------------------- matrix I/O

def read_matrix(path: str):
    from .matrix import GenMatrix

    p = Path(path)
    if not p.exists():
        raise UsageError(f"no such file: {path}")
    text = p.read_text()
    try:
        if text.lstrip().startswith("{"):
            return GenMatrix.from_json(json.loads(text))
        return GenMatrix.parse(text)
    except (ValueError, KeyError, IndexError) as exc:
        raise UsageError(f"{path}: cannot parse matrix ({exc})") from None


def write_matrix(M, path: str) -> None:
    p = Path(path)
    if p.suffix == ".json":
        p.write_text(json.dumps(M.to_json()) + "\n")
    else:
        p.write_text(M.render() + "\n")


def _emit_matrix(cfg: CommandConfig, M) -> None:
    if cfg.output:
        write_matrix(M, cfg.output)
        cfg.say(f"wrote {M.rows}x{M.cols} matrix to {cfg.output}")
    else:
        cfg.say(M.render())
    cfg.report["matrix"] = M.to_json()


def _ints(text: str, what: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"{what}: expected comma-separated integers, got {text!r}") from None


# ---------------------------------------------------------------- family

def _require(params: dict, *names: str) -> list[Any]:
    missing = [f"--{n}" for n in names if params.get(n) is None]
    if missing:
        raise UsageError(f"missing {' '.join(missing)}")
    return [params[n] for n in names]


def cmd_family(cfg: CommandConfig) -> int:
    from . import families as fam

    p = cfg.params
    name = p["name"]
    if name == "paley-kernel":
        q, n = _require(p, "q", "n")
        res = fam.paley_kernel(q, n)
    elif name == "paley-conference":
        q, n = _require(p, "q", "n")
        res = fam.paley_conference(q, n)
    elif name == "paley-hadamard1":
        (q,) = _require(p, "q")
        res = fam.paley_hadamard_I(q)
    elif name == "paley-hadamard2":
        (q,) = _require(p, "q")
        res = fam.paley_hadamard_II(q, border=p.get("border") or "symmetric")
    elif name == "projective":
        q, d, n = _require(p, "q", "d", "n")
        res = fam.projective_gw(q, d, n)
    elif name == "grassmannian":
        q, d, k, n = _require(p, "q", "d", "k", "n")
        res = fam.grassmannian_gw(q, d, k, n)
    elif name == "flag":
        q, part, n = _require(p, "q", "partition", "n")
        res = fam.flag_gw(q, _ints(part, "--partition"), n)
    elif name == "a6-w15":
        res = fam.a6_w15()
    else:
        res = fam.cube_example()
    cfg.say(res.summary())
    if res.note:
        cfg.say(res.note)
    cfg.report.update(name=name, claimed=res.claimed, verified=res.verified, note=res.note)
    _emit_matrix(cfg, res.matrix)
    return EXIT_OK if res.verified else EXIT_FAILED


# ---------------------------------------------------------------- develop

def _orbit_key(text: str, count: int) -> int:
    t = text.strip()
    if t.upper().startswith("O_"):
        t = t[2:]
    try:
        k = int(t)
    except ValueError:
        raise UsageError(f"bad orbit label {text!r} (use O_k or k, numbered from 1)") from None
    if not 1 <= k <= count:
        raise UsageError(f"orbit O_{k} does not exist (there are {count})")
    return k - 1


def _head_value(v: Any, n: int) -> int | None:
    """0 -> zero entry, 1 -> 1, -1 -> -1 (n even), "z^k" -> ζ^k."""
    if isinstance(v, str):
        s = v.strip()
        if s.startswith("z^"):
            try:
                return int(s[2:]) % n
            except ValueError:
                pass
        try:
            v = int(s)
        except ValueError:
            raise UsageError(f"bad head value {v!r} (use 0, 1, -1 or z^k)") from None
    if v == 0:
        return None
    if v == 1:
        return 0
    if v == -1 and n % 2 == 0:
        return n // 2
    raise UsageError(f"bad head value {v!r} for n={n} (use 0, 1, -1 or z^k)")


def parse_heads(text: str | None, count: int, n: int) -> dict[int, int | None]:
    if not text:
        return {}
    t = text.strip()
    if t.startswith("{"):
        try:
            items = list(json.loads(t).items())
        except json.JSONDecodeError as exc:
            raise UsageError(f"--heads: invalid JSON ({exc})") from None
    else:
        items = []
        for part in t.split(","):
            if "=" not in part:
                raise UsageError(f"--heads: expected O_k=value, got {part!r}")
            k, v = part.split("=", 1)
            items.append((k, v))
    return {_orbit_key(str(k), count): _head_value(v, n) for k, v in items}


def cmd_develop(cfg: CommandConfig) -> int:
    from .develop import NonOrientableError
    from .matrix import d_equivalent

    p = cfg.params
    path = Path(p["spec"])
    if not path.exists():
        raise UsageError(f"no such file: {path}")
    spec = ActionSpec.load(path).build(seed=cfg.seed)
    orbits = spec.orbits()
    report = []
    for o in orbits:
        ok = spec.is_orientable(o)
        x, y = o.head
        cfg.say(f"O_{o.index + 1}: size {len(o)}, head ({x},{y}), {'orientable' if ok else 'non-orientable'}")
        report.append({"orbit": o.index + 1, "size": len(o), "head": [x, y], "orientable": ok})
    cfg.report["orbits"] = report
    heads = parse_heads(p.get("heads"), len(orbits), spec.n)
    try:
        A = spec.develop(heads)
    except NonOrientableError:
        bad = [f"O_{k + 1}" for k, v in heads.items() if v is not None and not spec.is_orientable(orbits[k])]
        cfg.say(f"error: nonzero head value on non-orientable orbit {', '.join(bad)}")
        return EXIT_ORIENT
    status = EXIT_OK
    if p.get("compare"):
        B = read_matrix(p["compare"])
        eq = d_equivalent(A, B.with_order(A.n) if A.n % B.n == 0 else B) is not None
        cfg.say(f"D-equivalent to {p['compare']}: {'yes' if eq else 'no'}")
        cfg.report["d_equivalent"] = eq
        status = EXIT_OK if eq else EXIT_FAILED
    _emit_matrix(cfg, A)
    return status


# ---------------------------------------------------------------- verify, gram, equiv

def cmd_verify(cfg: CommandConfig) -> int:
    from .matrix import is_gw, orthogonality_weight

    A = read_matrix(cfg.params["file"])
    w = cfg.params.get("w")
    found = orthogonality_weight(A)
    cfg.report.update(shape=list(A.shape), n=A.n, weight=found)
    if w is None:
        ok = found is not None
        cfg.say(f"GW({A.rows},{found};{A.n}) VERIFIED" if ok else "not a generalized weighing matrix")
    else:
        ok = is_gw(A, w)
        cfg.say(f"GW({A.rows},{w};{A.n}) {'VERIFIED' if ok else 'FAILED'}")
    cfg.report["verified"] = ok
    return EXIT_OK if ok else EXIT_FAILED


def cmd_gram(cfg: CommandConfig) -> int:
    from .matrix import gram

    A = read_matrix(cfg.params["file"])
    G = gram(A)
    cells = [[str(v) for v in row] for row in G]
    width = max((len(c) for row in cells for c in row), default=1)
    for row in cells:
        cfg.say(" ".join(c.rjust(width) for c in row))
    cfg.report["gram"] = [[list(v.coeffs) for v in row] for row in G]
    return EXIT_OK


def cmd_equiv(cfg: CommandConfig) -> int:
    from .matrix import d_equivalent

    A, B = read_matrix(cfg.params["a"]), read_matrix(cfg.params["b"])
    wit = d_equivalent(A, B)
    if wit is None:
        cfg.say("none")
        cfg.report["witness"] = None
        return EXIT_FAILED
    left, right = (list(map(int, v)) for v in wit)
    cfg.say(f"left  = {left}")
    cfg.say(f"right = {right}")
    cfg.say(f"A = diag(z^left) B diag(z^right)^*, z = exp(2 pi i/{A.n})")
    cfg.report["witness"] = {"left": left, "right": right}
    return EXIT_OK


# ---------------------------------------------------------------- quasiproduct

def _parse_row(text: str, n: int) -> tuple[int, ...]:
    from .matrix import ZERO

    toks = [t.strip() for t in text.split(",") if t.strip()]
    if n == 2:
        vals = _ints(text, "--row")
        if any(v not in (-1, 0, 1) for v in vals):
            raise UsageError("--row entries must be -1, 0 or 1 when n = 2")
        return tuple(ZERO if v == 0 else (0 if v == 1 else 1) for v in vals)
    out = []
    for t in toks:
        if t == ".":
            out.append(ZERO)
        else:
            try:
                out.append(int(t) % n)
            except ValueError:
                raise UsageError(f"--row: bad exponent {t!r} (use integers or '.')") from None
    return tuple(out)


def cmd_quasiproduct(cfg: CommandConfig) -> int:
    from .matrix import orthogonality_weight
    from .products import ZDeveloped, quasi_weighing_iff, quasiprojective_matrix

    p = cfg.params
    q, d, n, row = _require(p, "q", "d", "n", "row")
    T = ZDeveloped(_parse_row(row, n), n)
    z_order = q - 1  # the central subgroup is the scalar matrices
    if T.order != z_order:
        raise UsageError(f"--row has {T.order} entries; the central subgroup has order {z_order}")
    M, setup = quasiprojective_matrix(q, d, n, T)
    w = orthogonality_weight(M)
    W = setup.base_basis()
    cfg.say(f"T weighing: {T.is_weighing()}")
    cfg.say(f"quasiproduct {M.rows}x{M.cols}: " + (f"GW({M.rows},{w};{n}) VERIFIED" if w is not None
                                                   else "not weighing"))
    try:
        from .families import _generic_orbit

        lhs, rhs = quasi_weighing_iff(W[_generic_orbit(setup.base)], T, setup)
        cfg.say(f"iff check: product weighing={lhs}, T weighing={rhs}, agree={lhs == rhs}")
        cfg.report["iff"] = [lhs, rhs]
    except ValueError as exc:
        cfg.say(f"iff check skipped: {exc}")
    cfg.report.update(weight=w, verified=w is not None)
    _emit_matrix(cfg, M)
    return EXIT_OK if w is not None else EXIT_FAILED


# ---------------------------------------------------------------- cocyclic

def _parse_group(text: str):
    from .groups import cyclic_group, direct_product

    kind, _, arg = text.partition(":")
    orders = _ints(arg, "--group")
    if not orders or any(m < 1 for m in orders):
        raise UsageError("--group: orders must be positive")
    if kind == "cyclic" and len(orders) == 1:
        return cyclic_group(orders[0])
    if kind == "product":
        G = cyclic_group(orders[0])
        for m in orders[1:]:
            G = direct_product(G, cyclic_group(m))
        return G
    raise UsageError("--group: use cyclic:m or product:m1,m2,...")


def _read_omega(path: str, G):
    from .cocyclic import TwoCocycle

    p = Path(path)
    if not p.exists():
        raise UsageError(f"no such file: {path}")
    try:
        data = json.loads(p.read_text())
        n = int(data["n"])
        m = G.size
        if "values" in data:
            vals = np.asarray(data["values"], dtype=np.int64)
        else:
            vals = np.zeros((m, m), dtype=np.int64)
            for key, e in data["pairs"].items():
                a, b = (int(t) for t in key.split(","))
                vals[a, b] = int(e)
        return TwoCocycle(G, vals, n)
    except (KeyError, ValueError, TypeError, IndexError, json.JSONDecodeError) as exc:
        raise UsageError(f"{path}: bad cocycle file ({exc!r})") from None


def cmd_cocyclic(cfg: CommandConfig) -> int:
    from .cocyclic import (cdm_criterion, cocycle_from_extension, cocyclic_matrix, cyclic_extension,
                           modified_cocyclic, validate_2cocycle)

    p = cfg.params
    if p.get("extension"):
        mk = _ints(p["extension"], "--extension")
        if len(mk) != 2:
            raise UsageError("--extension expects m,k (the extension Z/mk -> Z/m)")
        w = cocycle_from_extension(cyclic_extension(*mk))
    elif p.get("group") and p.get("omega"):
        w = _read_omega(p["omega"], _parse_group(p["group"]))
    else:
        raise UsageError("give --extension m,k or both --group and --omega")
    ok = validate_2cocycle(w, seed=cfg.seed)
    cfg.say(f"2-cocycle identity: {'holds' if ok else 'FAILS'}")
    cfg.report["cocycle_valid"] = ok
    if not ok:
        return EXIT_FAILED
    A = modified_cocyclic(w) if p.get("modified") else cocyclic_matrix(w)
    crit = cdm_criterion(w.G, A)
    cfg.say(f"diagonal-invariance criterion: {'holds' if crit else 'fails'}")
    cfg.report["cdm_criterion"] = crit
    _emit_matrix(cfg, A)
    return EXIT_OK if crit else EXIT_FAILED


# ---------------------------------------------------------------- parser

COMMANDS: dict[str, Callable[[CommandConfig], int]] = {
    "family": cmd_family, "develop": cmd_develop, "verify": cmd_verify, "gram": cmd_gram,
    "equiv": cmd_equiv, "quasiproduct": cmd_quasiproduct, "cocyclic": cmd_cocyclic,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits with 2 already; keep the message format
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text", help="stdout format")
    common.add_argument("-o", "--output", help="write the matrix here (.json, otherwise text grid)")
    common.add_argument("--cap", type=int, help="enumeration cap (overrides CDM_ENUM_CAP)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument("-v", "--verbose", action="count", default=0)

    ap = _Parser(prog="cohodev", description="Construct and verify generalized weighing matrices.")
    sub = ap.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    f = sub.add_parser("family", parents=[common], help="build a named family")
    f.add_argument("name", choices=FAMILIES)
    f.add_argument("--q", type=int)
    f.add_argument("--n", type=int)
    f.add_argument("--d", type=int)
    f.add_argument("--k", type=int)
    f.add_argument("--partition", help="comma-separated block sizes, e.g. 1,1,1")
    f.add_argument("--border", choices=("symmetric", "display"), help="type II border variant")

    d = sub.add_parser("develop", parents=[common], help="develop from an action-spec file")
    d.add_argument("spec")
    d.add_argument("--heads", help='O_1=1,O_2=-1 or JSON {"O_1": 1}; values 0, 1, -1 or z^k')
    d.add_argument("--compare", help="report D-equivalence against this matrix file")

    v = sub.add_parser("verify", parents=[common], help="check A A* = w I exactly")
    v.add_argument("file")
    v.add_argument("--w", type=int)

    g = sub.add_parser("gram", parents=[common], help="print the reduced Gram matrix")
    g.add_argument("file")

    e = sub.add_parser("equiv", parents=[common], help="D-equivalence witness")
    e.add_argument("a")
    e.add_argument("b")

    qp = sub.add_parser("quasiproduct", parents=[common], help="quasiprojective product W ⊠ T")
    qp.add_argument("--q", type=int, required=True)
    qp.add_argument("--d", type=int, required=True)
    qp.add_argument("--n", type=int, required=True)
    qp.add_argument("--row", required=True, help="first row of T: signs for n=2, else exponents or '.'")

    c = sub.add_parser("cocyclic", parents=[common], help="cocyclic matrix of a 2-cocycle")
    c.add_argument("--group", help="cyclic:m or product:m1,m2,...")
    c.add_argument("--omega", help='JSON {"n": n, "values": [[...]]} or {"n": n, "pairs": {"a,b": e}}')
    c.add_argument("--extension", help="m,k for the extension Z/mk -> Z/m")
    c.add_argument("--modified", action="store_true", help="build the modified cocyclic matrix")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    params = {k: v for k, v in vars(args).items()
              if k not in ("subcommand", "format", "output", "cap", "seed", "verbose")}
    cfg = CommandConfig(args.subcommand, params, args.output, args.format, args.cap, args.seed, args.verbose)
    if cfg.cap is not None:
        if cfg.cap < 1:
            print("error: --cap must be positive", file=sys.stderr)
            return EXIT_USAGE
        os.environ["CDM_ENUM_CAP"] = str(cfg.cap)
    t0 = time.perf_counter()
    try:
        code = COMMANDS[cfg.subcommand](cfg)
    except (UsageError, SpecError, CapExceeded, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.fmt == "json":
        cfg.report.update(command=cfg.subcommand, exit=code, messages=cfg.lines)
        print(json.dumps(cfg.report))
    else:
        for line in cfg.lines:
            print(line)
    if cfg.verbose:
        print(f"[{time.perf_counter() - t0:.2f}s]", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
