"""Batch expansion, execution, and deterministic serialization."""

import json

import pytest

from rimcert import batch_json, expand_config, run_batch
from rimcert.batch import expand_sweep


def test_sweep_expansion_order_and_coprime_filter():
    rows = expand_sweep(
        {"knots": ["3_1", "4_1"], "d": [2, 3], "m": [1, 3], "n": 0,
         "coprime": True}
    )
    # knots outer, then d, then m; gcd(d, m) > 1 pairs dropped.
    assert [(r["knot"], r["d"], r["m"]) for r in rows] == [
        ("3_1", 2, 1), ("3_1", 2, 3), ("3_1", 3, 1), ("3_1", 3, 2),
        ("4_1", 2, 1), ("4_1", 2, 3), ("4_1", 3, 1), ("4_1", 3, 2),
    ]
    assert all(r["n"] == 0 and r["kind"] == "rim" for r in rows)


def test_scalar_and_range_parameters():
    rows = expand_sweep({"knot": "unknot", "d": 2, "m": [0, 2], "n": 5})
    assert [(r["d"], r["m"], r["n"]) for r in rows] == [
        (2, 0, 5), (2, 1, 5), (2, 2, 5)
    ]
    assert expand_sweep({"knot": "unknot"}) == [
        {"knot": "unknot", "d": 1, "m": 0, "n": 0, "kind": "rim"}
    ]


def test_sweep_rejects_malformed_input():
    with pytest.raises(ValueError):
        expand_sweep({"d": 2})
    with pytest.raises(ValueError):
        expand_sweep({"knot": "unknot", "d": [3, 1]})
    with pytest.raises(ValueError):
        expand_sweep({"knot": "unknot", "d": True})
    with pytest.raises(ValueError):
        expand_sweep({"knot": "unknot", "d": [1, 2, 3]})


def test_config_lists_specs_before_sweeps():
    config = {
        "specs": [{"knot": "5_1", "d": 4}],
        "sweeps": [
            {"knot": "unknot", "d": 2},
            {"knot": "3_1", "d": 3, "kind": "annulus"},
        ],
    }
    rows = expand_config(config)
    assert [r["knot"] for r in rows] == ["5_1", "unknot", "3_1"]
    assert rows[2]["kind"] == "annulus"
    assert expand_config({}) == []


def test_run_batch_counts_and_isolates_errors():
    config = {
        "specs": [
            {"knot": "unknot", "d": 2},
            {"knot": "no_such_knot", "d": 2},
            {"knot": "3_1", "d": 2, "m": 0},
        ],
        "max_cosets": 20_000,
    }
    doc = run_batch(config)
    assert doc["schema"] == "rimcert.batch/1"
    assert doc["summary"] == {
        "total": 3, "cyclic": 1, "non_cyclic": 1, "inconclusive": 0, "error": 1,
    }
    good, bad, refuted = doc["rows"]
    assert good["verdict"]["status"] == "cyclic"
    assert "timing" not in good
    assert bad["spec"] == {"knot": "no_such_knot", "d": 2}
    assert "no_such_knot" in bad["error"]
    assert refuted["verdict"]["status"] == "non_cyclic"


def test_empty_config_yields_empty_document():
    doc = run_batch({})
    assert doc["rows"] == []
    assert doc["summary"]["total"] == 0


def test_run_batch_validates_limits():
    with pytest.raises(ValueError):
        run_batch({"max_cosets": 0})
    with pytest.raises(ValueError):
        run_batch({"parallelism": 0})
    with pytest.raises(ValueError):
        run_batch({"timeout": -1})


def test_parallelism_does_not_change_the_bytes():
    config = {
        "sweeps": [{"knots": ["unknot", "3_1", "4_1"], "d": [2, 3],
                    "m": 1, "n": [0, 1]}],
        "max_cosets": 50_000,
    }
    serial = batch_json(run_batch({**config, "parallelism": 1}))
    parallel = batch_json(run_batch({**config, "parallelism": 4}))
    assert serial == parallel


def test_batch_json_is_canonical():
    doc = run_batch({"specs": [{"knot": "unknot", "d": 1}]})
    text = batch_json(doc)
    assert text.endswith("\n")
    assert json.loads(text) == doc
    assert text == batch_json(json.loads(text))
