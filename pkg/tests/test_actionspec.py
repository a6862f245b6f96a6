import json
from pathlib import Path

import pytest

from cohodev import ActionSpec, SpecError, load_spec

SPECS = Path(__file__).resolve().parent.parent / "specs"

# orbit sizes and orientability worked out by hand from the stabilizers
EXPECTED = {
    "a6.json": [(15, True), (120, True), (90, False)],
    "cube.json": [(24, True), (12, False)],
    "paley-f5.json": [(20, True), (5, False)],
    "z6-regular.json": [(6, True)] * 6,
}


def orbit_profile(spec):
    return sorted(((len(o), spec.is_orientable(o)) for o in spec.orbits()), key=lambda t: (not t[1], t[0]))


@pytest.mark.parametrize("name", sorted(p.name for p in SPECS.glob("*.json")))
def test_round_trip(name, tmp_path):
    a = ActionSpec.load(SPECS / name)
    assert ActionSpec.loads(a.dumps()) == a
    a.save(tmp_path / "x.json")
    assert ActionSpec.load(tmp_path / "x.json") == a


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_built_orbits(name):
    spec = load_spec(SPECS / name)
    assert orbit_profile(spec) == sorted(EXPECTED[name], key=lambda t: (not t[1], t[0]))


def test_projective_spec_sizes():
    spec = load_spec(SPECS / "projective-3-2.json")
    assert sorted(len(o) for o in spec.orbits()) == [52, 117]
    assert [len(o) for o in spec.orientable_orbits()] == [117]


def base():
    return json.loads((SPECS / "z6-regular.json").read_text())


@pytest.mark.parametrize("mutate,fragment", [
    (lambda d: d.pop("kind"), "kind"),
    (lambda d: d.update(kind="lie"), "kind"),
    (lambda d: d.update(colour="red"), "unknown"),
    (lambda d: d.update(n=0), "n"),
    (lambda d: d.update(n="two"), "n"),
    (lambda d: d.pop("psi_Y"), "psi_Y"),
    (lambda d: d["X"].update(action="cosets"), "X"),
    (lambda d: d["psi_X"].update(type="mystery"), "psi_X"),
    (lambda d: d.update(label=3), "label"),
])
def test_rejects_bad_specs(mutate, fragment):
    d = base()
    mutate(d)
    with pytest.raises(SpecError, match=fragment):
        ActionSpec.from_dict(d)


def test_rejects_bad_json():
    with pytest.raises(SpecError):
        ActionSpec.loads("{not json")


def test_spec_error_is_value_error():
    assert issubclass(SpecError, ValueError)


def test_unrealizable_generator():
    d = base()
    d["group"]["generators"] = [[0, 0, 1, 2, 3, 4]]
    with pytest.raises((SpecError, ValueError)):
        ActionSpec.from_dict(d).build()
