import json
import os

import pytest

from agcodes.cli import _dump, example_report, golden_dir


def _load(name):
    with open(os.path.join(golden_dir(), name)) as fh:
        return json.load(fh)


@pytest.mark.parametrize("fname, args", [
    ("example_3_1.json", ("3.1",)),
    ("example_3_2.json", ("3.2",)),
    ("example_5_3_q4_m1-1.json", ("5.3", 4, (1, 1))),
    ("example_5_3_q5_m1-1.json", ("5.3", 5, (1, 1))),
])
def test_golden_is_reproduced_byte_for_byte(fname, args):
    with open(os.path.join(golden_dir(), fname)) as fh:
        assert fh.read() == _dump(example_report(*args))


def test_golden_3_1_holds_published_values():
    g = _load("example_3_1.json")
    assert g["residues"] == [["1", "0", "a+1", "a"], ["0", "0", "0", "0"], ["0", "1", "a", "a+1"]]
    assert g["functional_code"]["k"] == 2
    assert g["plain_differential_code"] == g["functional_code"]
    assert g["rectified_code_P0"]["generator_rows"] == [["1", "a+1", "a"]]


def test_golden_3_2_holds_published_values():
    g = _load("example_3_2.json")
    assert g["multiplicities"] == [1, 1, 1, 1, 2]
    assert g["residues"] == [["1", "2", "2*a", "a", "0"], ["1", "1", "1", "1", "2"],
                             ["1", "2", "0", "0", "0"]]
    assert g["theta_1"]["verdict"] == "Rectifying"
    assert g["theta_1"]["code"]["generator_rows"] == [["1", "2", "2*a", "a", "0"]]
    assert g["theta_strict"]["verdict"] == "StrictlyRectifying"
    assert g["theta_strict"]["code"]["generator_rows"] == [["1", "1", "1", "1", "2"]]
    assert g["sum_equals_dual"]


@pytest.mark.parametrize("q", [4, 5])
def test_golden_5_3_records_observed_orientation(q):
    g = _load(f"example_5_3_q{q}_m1-1.json")
    assert g["functional_equals_tensor_RS"] and g["sum_equals_dual"] and g["wilson_linear_parts"]
    d = g["differential_codes"]
    assert d["1"]["equals_RS_x_full"] and not d["1"]["equals_full_x_RS"]
    assert d["2"]["equals_full_x_RS"] and not d["2"]["equals_RS_x_full"]
    assert d["1"]["code"]["k"] == d["2"]["code"]["k"] == q * (q - 2)
