import json
import os
from pathlib import Path

import pytest

import eqmorse

DATA = Path(os.environ.get("EQMORSE_DATA", Path(__file__).resolve().parents[2] / "data"))


def load(name):
    return json.loads((DATA / f"{name}.json").read_text())


def test_point_homology():
    assert eqmorse.homology(load("point")) == {"0": {"betti": 1, "torsion": []}}


def test_hexagon_z2_reduction():
    hexagon = load("hexagon")
    z2 = load("hexagon_z2")
    matching = load("hexagon_z2_matching")
    report = eqmorse.check_matching(hexagon, matching, z2)
    assert report["all_ok"]
    result = eqmorse.reduce(hexagon, matching, z2)
    morse = result["morse_complex"]
    assert [len(morse["basis"][d]) for d in ("0", "1")] == [2, 2]
    assert len(result["pieces"]["pieces"]) == 2
    assert eqmorse.homology(morse) == eqmorse.homology(hexagon)


def test_greedy_matching_validates():
    hexagon = load("hexagon")
    z3 = load("hexagon_z3")
    assert eqmorse.group_order(hexagon, z3) == 3
    matching = eqmorse.match(hexagon, z3)
    assert len(matching["pairs"]) == 3
    assert eqmorse.check_matching(hexagon, matching, z3)["all_ok"]


def test_cyclic_matching_is_reported():
    report = eqmorse.check_matching(load("square"), load("square_cycle_matching"))
    assert not report["all_ok"]
    assert not report["acyclic"]
    with pytest.raises(eqmorse.EqmorseError) as err:
        eqmorse.reduce(load("square"), load("square_cycle_matching"))
    assert err.value.kind == "acyclicity-failure"


def test_ingest_rp2():
    complex_, generators = eqmorse.ingest(load("rp2.simplicial"))
    assert eqmorse.check_complex(complex_) == []
    h = eqmorse.homology(complex_)
    assert h["1"] == {"betti": 0, "torsion": [2]}
    assert generators["generators"] == []


def test_reflection_needs_mod_2():
    with pytest.raises(eqmorse.EqmorseError) as err:
        eqmorse.ingest(load("hexagon_reflection.simplicial"))
    assert err.value.kind == "orientation-reversing-action"
    complex_, generators = eqmorse.ingest(load("hexagon_reflection.simplicial"), ring="mod:2")
    assert eqmorse.group_order(complex_, generators) == 2


def test_bad_json_text():
    with pytest.raises(eqmorse.EqmorseError) as err:
        eqmorse.homology("{")
    assert err.value.kind == "parse-error"
