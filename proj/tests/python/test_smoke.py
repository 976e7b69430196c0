import json
import os

import torgamma


def load(name):
    with open(os.path.join(os.environ["TORGAMMA_DATA"], name)) as f:
        return json.load(f)


def test_sectors_and_chi():
    t = torgamma.Toolkit(load("keyexample.json"))
    s = t.sectors()
    assert s["total_volume"] == 3
    assert len(s["sectors"]) == 2
    assert t.chi([0, 0, 2], [2]) == 2
    assert t.chi([0, 0, 0], [2]) == 1


def test_pairing_matrix():
    t = torgamma.Toolkit(load("keyexample.json"))
    pm = t.pairing_matrix()
    assert pm["entries"] == [[1, 0, 0], [1, 1, 0], [2, 1, 1]]
    assert pm["det"] == "1"


def test_gamma_and_identities():
    t = torgamma.Toolkit(load("keyexample.json"))
    g = t.gamma([0, 0])
    assert g["terms"] > 0 and g["tail"] < 1e-6

    r = t.verify_gkz()
    for part in ("plain", "compact"):
        assert r[part]["shift_residual"] < 1e-8
        assert r[part]["euler_residual"] < 1e-8
        assert r[part]["compared_terms"] > 0

    v = t.verify_volume()
    assert v["error"] < 1e-6

    h = t.verify_hrr()
    assert h["pairs"] == 9 and h["mismatches"] == 0


def test_pairing_table():
    t = torgamma.Toolkit(load("keyexample.json"))
    p = t.verify_pairing(load("explicit-pairing.json"))
    assert p["evaluation"]["entries_used"] == 8
    assert p["evaluation"]["deviation"] < 1e-6
    assert p["inverse_euler"]["residual"] < 1e-6


def test_coarse_fan():
    t = torgamma.Toolkit(load("keyexample-coarse.json"))
    assert t.chi([0, 0, 3], [1, 3]) == 1
    assert t.chi([0, 0, 1], [1, 3]) == 0
    p = t.verify_pairing(load("explicit-pairing.json"), large_side=True)
    assert p["evaluation"]["deviation"] < 1e-4
    assert p["inverse_euler"]["residual"] < 1e-4


def test_bad_input_raises():
    try:
        torgamma.Toolkit({"rank": 2, "points": [[0, 1]], "max_simplices": []})
    except ValueError:
        return
    raise AssertionError("expected ValueError")
