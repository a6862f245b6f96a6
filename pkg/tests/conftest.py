from functools import lru_cache
from pathlib import Path

import pytest

from cohodev.actionspec import ActionSpec
from cohodev.families import a6_spec, cube_spec, paley_spec

SPECS = Path(__file__).resolve().parent.parent / "specs"


@lru_cache(maxsize=None)
def corpus_spec(name: str):
    """Small covers shared across test modules (all with |G| <= 5000)."""
    if name == "a6":
        return a6_spec()
    if name == "cube":
        return cube_spec()
    if name.startswith("paley"):
        _, q, n = name.split("-")
        return paley_spec(int(q), int(n))
    if name.startswith("z"):
        return ActionSpec.from_dict(regular_spec_dict(int(name[1:]))).build()
    return ActionSpec.load(SPECS / f"{name}.json").build()


def regular_spec_dict(m: int, n: int = 2) -> dict:
    shift = [(i + 1) % m for i in range(m)]
    return {"kind": "perm", "n": n, "group": {"degree": m, "generators": [shift]},
            "X": {"action": "natural", "base": 0}, "Y": {"action": "natural", "base": 0},
            "psi_X": {"type": "trivial"}, "psi_Y": {"type": "trivial"}}


CORPUS = ["a6", "cube", "paley-5-2", "paley-5-4", "paley-7-2", "paley-7-3", "z4", "z6", "z7"]


@pytest.fixture(params=CORPUS)
def small_spec(request):
    return corpus_spec(request.param)


def pp_spec(spec):
    """The (P, P) cover on X x X built from the row data of ``spec``."""
    from cohodev.develop import MonomialCoverSpec

    return MonomialCoverSpec(spec.G, spec.X, spec.X, spec.x0, spec.x0, spec.psi_X, spec.psi_X, spec.n,
                             TX=spec.TX, TY=spec.TX, verify=False)


def a6_worked_transversal(spec):
    """BFS representatives, overridden by the three representatives used in the worked A_6 example."""
    from cohodev.groups import PermGroup, Transversal

    def el(*cycles):
        return spec.G.element(PermGroup.from_cycles(6, cycles, 1))

    def pt(a, b):
        return spec.X.index[frozenset({a - 1, b - 1})]

    reps = dict(spec.TX.reps)
    reps[pt(1, 3)] = el((1, 3, 2))
    reps[pt(3, 6)] = el((1, 3), (2, 6))
    reps[pt(2, 3)] = el((1, 2, 3))
    return Transversal.from_reps(spec.X, spec.x0, reps)


def translation_paley_spec(q: int, n: int):
    """Affine cover whose transversal consists of the translations x -> x + t."""
    from cohodev.develop import MonomialCoverSpec
    from cohodev.groups import Transversal

    base = paley_spec(q, n)
    T = Transversal.from_reps(base.X, 0, {t: base.G.element((1, t)) for t in range(q)})
    return MonomialCoverSpec(base.G, base.X, base.Y, 0, 0, base.psi_X, base.psi_Y, n, TX=T, TY=T)
