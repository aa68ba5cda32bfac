import json
from fractions import Fraction

import pytest

from conftest import random_gv, rank2_geometry
from qkgv.geometry import CY3Data, GVTable
from qkgv.io import (InputError, dumps, geometry_from_dict, geometry_to_dict, jfunction_from_dict,
                     jfunction_to_dict, qk_table_from_dict, qk_table_to_dict, read_json,
                     table_from_dict, table_to_dict)
from qkgv.jfunction import build_jtilde, extract_qk_table


def test_geometry_round_trip():
    geom = rank2_geometry()
    d = geometry_to_dict(geom)
    assert d["triple_intersections"][0]["ijk"] == [1, 1, 1]
    assert geometry_from_dict(json.loads(dumps(d))) == geom


def test_geometry_missing_field():
    with pytest.raises(InputError, match="n1"):
        geometry_from_dict({"h2_rank": 1, "divisor_pairing": [[1]], "triple_intersections": []})


def test_table_round_trip():
    gv = GVTable(2, {(1, 0): 3, (0, 2): Fraction(-1, 2)})
    d = table_to_dict(gv)
    assert d["entries"][0]["value"] == "-1/2"
    assert table_from_dict(json.loads(dumps(d))) == gv


def test_table_errors():
    with pytest.raises(InputError, match="duplicate"):
        table_from_dict({"genus": 0, "entries": [{"beta": [1], "value": "1"},
                                                 {"beta": [1], "value": "2"}]})
    with pytest.raises(InputError, match="genus"):
        table_from_dict({"genus": 1, "entries": []})


def test_floats_rejected(tmp_path):
    path = tmp_path / "t.json"
    path.write_text('{"genus": 0, "entries": [{"beta": [1], "value": 2.5}]}')
    with pytest.raises(InputError, match="floating"):
        read_json(path)


def test_malformed_json(tmp_path):
    path = tmp_path / "t.json"
    path.write_text("{not json")
    with pytest.raises(InputError):
        read_json(path)


def test_jfunction_round_trip():
    geom = rank2_geometry()
    J = build_jtilde(geom, random_gv(2, 2, 3), 2, 2, 4)
    text = dumps(jfunction_to_dict(J))
    json.loads(text, parse_float=lambda v: pytest.fail(f"float {v} in output"))
    back, problems = jfunction_from_dict(json.loads(text))
    assert problems == []
    assert list(back.entries()) == list(J.entries())
    assert dumps(jfunction_to_dict(back)) == text


def test_jfunction_non_cyclotomic_entry_reported():
    geom = CY3Data(1, 1, [[1]], {(0, 0, 0): 5})
    d = jfunction_to_dict(build_jtilde(geom, GVTable(1, {(1,): 1}), 1, 0))
    d["entries"][-1]["denominator"] = ["1", "0", "-2"]
    _, problems = jfunction_from_dict(d)
    assert len(problems) == 1


def test_qk_table_round_trip():
    geom = CY3Data(1, 1, [[1]], {(0, 0, 0): 5})
    table = extract_qk_table(build_jtilde(geom, GVTable(1, {(1,): 2}), 2, 1), k_max=3)
    d = json.loads(dumps(qk_table_to_dict(table)))
    assert qk_table_from_dict(d).entries == table.entries


def test_dumps_is_deterministic():
    a = dumps({"b": [1, 2], "a": "x"})
    assert a == dumps({"a": "x", "b": [1, 2]}) and a.endswith("\n")
