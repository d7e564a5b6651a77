import json
import math

import pytest

import amenent

Z_FULL2 = {
    "group": {"free_rank": 1, "finite_moduli": [], "trivial_mask": [False]},
    "alphabet": ["a", "b"],
    "forbidden": [],
}
Z3_FULL2 = {
    "group": {"free_rank": 0, "finite_moduli": [3], "trivial_mask": [False]},
    "alphabet": ["a", "b"],
    "forbidden": [],
}
P0 = {"window": [[0]], "cells": [[["a"]], [["b"]]], "partition": True}
TRIVIAL = {"window": [], "cells": [[[]]], "partition": True}
BERNOULLI_HALF = {"variant": "bernoulli", "probs": ["1/2", "1/2"]}


def test_version():
    assert amenent.__version__


def test_example82_passes():
    report = amenent.example82()
    result = report["result"]
    assert result["pass"] is True
    assert result["N"] == {"QE_RE": 2, "QDEF_RDEF": 1, "QDE_RDE": 1, "QEF_REF": 1}
    assert abs(result["H"]["QE_RE"] - math.log(2)) < 1e-12
    assert amenent.example82(trivial_z=True)["result"]["N"] == result["N"]


def test_counting_rows_are_log2():
    report = amenent.counting(Z_FULL2, P0, TRIVIAL, n_max=5)
    rows = report["result"]["conditional"]["rows"]
    assert [r["N"] for r in rows] == [2, 4, 8, 16, 32]
    for r in rows:
        assert abs(r["value"] - math.log(2)) < 1e-12


def test_measure_entropy_table():
    report = amenent.measure_entropy(Z_FULL2, BERNOULLI_HALF, P0, n_max=4)
    for row in report["result"]["dynamical"]["rows"]:
        assert abs(row["normalized"] - math.log(2)) < 1e-12


def test_varp_gap_is_small():
    report = amenent.varp(Z3_FULL2, P0, TRIVIAL, grid=True, resolution=100)
    result = report["result"]
    assert result["pass"] is True
    assert abs(result["gap"]) <= 1e-3
    assert abs(result["counting_value"] - math.log(2)) < 1e-12


def test_search_shearer_deterministic():
    a = amenent.search_shearer(seed=7, trials=40)
    b = amenent.search_shearer(seed=7, trials=40)
    assert a["result"] == b["result"]
    assert a["result"]["checked"] + a["result"]["skipped"] == 40


def test_tile_and_group_helpers():
    group = {"free_rank": 1, "finite_moduli": [], "trivial_mask": [False]}
    report = amenent.tile(group, 7, [[[0], [1]], [[0], [1], [2]]])
    pieces = report["result"]["pieces"]
    assert pieces == [
        {"tile": 0, "translate": [0]},
        {"tile": 0, "translate": [2]},
        {"tile": 1, "translate": [4]},
    ]
    assert amenent.folner_box(json.dumps(group), 3) == [[0], [1], [2]]
    assert amenent.invariance_defect(json.dumps(group), "[[0],[1],[2],[3]]", "[[0],[1]]") == 0.25


def test_config_errors_surface():
    with pytest.raises(amenent.ConfigError):
        amenent.counting({"group": {"free_rank": 1}, "alphabet": []}, P0, TRIVIAL)
