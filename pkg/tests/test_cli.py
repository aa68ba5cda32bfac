import json
import subprocess
import sys
from fractions import Fraction

import pytest

import qkgv.jfunction
from qkgv.cli import main
from qkgv.exact import QRat
from qkgv.series import KVector, NovikovSeries, TPoly, component_from_indices

QUINTIC = {"h2_rank": 1, "n1": 1, "divisor_pairing": [[1]],
           "triple_intersections": [{"ijk": [1, 1, 1], "value": "5"}]}
QUINTIC_GV = {"genus": 0, "entries": [{"beta": [1], "value": "2875"},
                                      {"beta": [2], "value": "609250"},
                                      {"beta": [3], "value": "317206375"}]}


def no_floats(text):
    return json.loads(text, parse_float=lambda v: pytest.fail(f"float {v} in output"))


@pytest.fixture
def files(tmp_path):
    def write(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return str(path)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# ----- convert ----------------------------------------------------------------------

def test_convert_round_trip(files, tmp_path, capsys):
    src = files("gv.json", {"genus": 0, "entries": [{"beta": [1], "value": "1"}]})
    gw, back = str(tmp_path / "gw.json"), str(tmp_path / "back.json")
    assert run(capsys, "convert", "gv2gw", src, gw, "--d-max", "5")[0] == 0
    values = {e["beta"][0]: e["value"] for e in no_floats(open(gw).read())["entries"]}
    assert values == {d: str(Fraction(1, d ** 3)) for d in range(1, 6)}
    assert run(capsys, "convert", "gw2gv", gw, back, "--d-max", "5")[0] == 0
    assert no_floats(open(back).read())["entries"] == [{"beta": [1], "value": "1"}]


def test_convert_missing_field(files, tmp_path, capsys):
    src = files("bad.json", {"entries": []})
    code, _, err = run(capsys, "convert", "gv2gw", src, str(tmp_path / "o.json"))
    assert code == 1 and "genus" in err


def test_convert_malformed_json(tmp_path, capsys):
    src = tmp_path / "bad.json"
    src.write_text("{")
    assert run(capsys, "convert", "gv2gw", str(src), str(tmp_path / "o.json"))[0] == 1


def test_convert_integrality_warning(files, tmp_path, capsys):
    src = files("gw.json", {"genus": 0, "entries": [{"beta": [2], "value": "1/3"}]})
    code, _, err = run(capsys, "convert", "gw2gv", src, str(tmp_path / "o.json"), "--d-max", "2")
    assert code == 2 and "non-integer" in err


def test_usage_error(capsys):
    assert run(capsys, "frobnicate")[0] == 1


def test_conductor_cap(monkeypatch, capsys):
    monkeypatch.setenv("QKGV_CONDUCTOR_CAP", "10")
    code, _, err = run(capsys, "jfun", "--d-max", "5")
    assert code == 1 and "QKGV_CONDUCTOR_CAP" in err
    monkeypatch.setenv("QKGV_CONDUCTOR_CAP", "60")
    assert run(capsys, "jfun", "--d-max", "5", "--t-degree", "0")[0] == 0


# ----- jfun ---------------------------------------------------------------------------

def test_jfun_quintic(files, capsys):
    code, out, _ = run(capsys, "jfun", "--geometry", files("g.json", QUINTIC),
                       "--gv", files("gv.json", QUINTIC_GV), "--d-max", "3", "--t-degree", "1")
    assert code == 0
    data = no_floats(out)
    assert data["pole_report"]["status"] == "pass"
    assert data["pole_report"]["max_order"] == 3


def test_jfun_deterministic(files, capsys):
    argv = ["jfun", "--geometry", files("g.json", QUINTIC), "--gv", files("gv.json", QUINTIC_GV),
            "--d-max", "2", "--t-degree", "2"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_jfun_empty_gv(files, capsys):
    geom = dict(QUINTIC, triple_intersections=[])
    code, out, _ = run(capsys, "jfun", "--geometry", files("g.json", geom),
                       "--gv", files("gv.json", {"genus": 0, "entries": []}), "--t-degree", "1")
    assert code == 0
    assert {e["beta"][0] for e in no_floats(out)["entries"]} == {0}


def test_jfun_single_curve_degree_one(files, capsys):
    _, out, _ = run(capsys, "jfun", "--geometry", files("g.json", QUINTIC), "--gv",
                    files("gv.json", {"genus": 0, "entries": [{"beta": [1], "value": "1"}]}),
                    "--d-max", "1", "--t-degree", "0")
    q1 = {e["component"]: e for e in no_floats(out)["entries"] if e["beta"] == [1]}
    assert q1["Phi^{11}"]["numerator"] == ["1"] and q1["Phi^{11}"]["factors"] == [[1, 1]]
    assert q1["Phi^{01}"]["numerator"] == ["1", "-3"] and q1["Phi^{01}"]["factors"] == [[1, 2]]


def test_jfun_pole_violation(monkeypatch, capsys):
    real = qkgv.jfunction.build_jtilde

    def broken(*args, **kwargs):
        J = real(*args, **kwargs)
        comp = component_from_indices("up", 0, 1)
        bad = KVector({comp: TPoly(1, J.t_degree, {(0,): QRat.inv_one_minus_q_power(1, 4)})})
        return J.replace_series(J.series + NovikovSeries(1, J.cutoff, {(1,): bad}))

    monkeypatch.setattr(qkgv.jfunction, "build_jtilde", broken)
    assert run(capsys, "jfun", "--d-max", "2", "--t-degree", "0")[0] == 3


# ----- verify ---------------------------------------------------------------------------

@pytest.mark.parametrize("suite", ["lemmas", "fake", "poles", "roundtrip"])
def test_verify_suites_pass(suite, capsys):
    code, out, _ = run(capsys, "verify", suite)
    data = no_floats(out)
    assert code == 0 and data["status"] == "pass" and data["summary"]["failed"] == 0


def test_verify_lemmas_with_gv_file(files, capsys):
    gv = files("gv.json", {"genus": 0, "entries": [{"beta": [1], "value": "1"}]})
    assert run(capsys, "verify", "lemmas", "--gv", gv, "--d-max", "4")[0] == 0


def test_verify_conifold_reports_epsilon_discrepancy(capsys):
    code, out, _ = run(capsys, "verify", "conifold", "--r-max", "4")
    data = no_floats(out)
    failed = [(c["name"], c["location"]) for c in data["checks"] if not c["passed"]]
    assert code == 4
    assert failed == [("reconstruction-coefficient", [3, "epsilon_2"])]


def _jfile(tmp_path, capsys, gv="1"):
    path = str(tmp_path / "j.json")
    gvp = tmp_path / "gv.json"
    gvp.write_text(json.dumps({"genus": 0, "entries": [{"beta": [1], "value": gv}]}))
    assert run(capsys, "jfun", "--gv", str(gvp), "--d-max", "2", "--t-degree", "0",
               "--out", path)[0] == 0
    return path


def test_verify_poles_on_file(tmp_path, capsys):
    assert run(capsys, "verify", "poles", "--jfile", _jfile(tmp_path, capsys))[0] == 0


@pytest.mark.parametrize("corruption", ["non-cyclotomic", "order-four"])
def test_verify_poles_corrupted_file(tmp_path, capsys, corruption):
    path = _jfile(tmp_path, capsys)
    data = json.load(open(path))
    entry = next(e for e in data["entries"] if e["beta"] == [1])
    if corruption == "non-cyclotomic":
        entry["denominator"] = ["1", "0", "-2"]
    else:
        entry["denominator"] = ["1", "-4", "6", "-4", "1"]
    open(path, "w").write(json.dumps(data))
    assert run(capsys, "verify", "poles", "--jfile", path)[0] == 4


# ----- qk-table ---------------------------------------------------------------------------

def test_qk_table_single_curve(files, capsys):
    gv = files("gv.json", {"genus": 0, "entries": [{"beta": [1], "value": "1"}]})
    code, out, _ = run(capsys, "qk-table", "--gv", gv, "--alpha", "0,1", "--beta", "1",
                       "--k-max", "3", "--d-max", "1")
    values = [e["value"] for e in sorted(no_floats(out)["entries"], key=lambda e: e["k"])]
    assert code == 0 and values == ["1", "-1", "-3", "-5"]


def test_qk_table_component_name_alpha(files, capsys):
    gv = files("gv.json", {"genus": 0, "entries": [{"beta": [1], "value": "1"}]})
    _, out, _ = run(capsys, "qk-table", "--gv", gv, "--alpha", "Phi^{11}", "--k-max", "0",
                    "--d-max", "1")
    assert [e["value"] for e in no_floats(out)["entries"]] == ["1"]


def test_qk_table_bad_alpha(capsys):
    assert run(capsys, "qk-table", "--alpha", "1,2,3")[0] == 1


def test_qk_table_empty(files, capsys):
    gv = files("gv.json", {"genus": 0, "entries": []})
    code, out, _ = run(capsys, "qk-table", "--gv", gv)
    assert code == 0 and no_floats(out)["entries"] == []


def test_qk_table_quintic_integral(files, capsys):
    code, out, _ = run(capsys, "qk-table", "--geometry", files("g.json", QUINTIC),
                       "--gv", files("gv.json", QUINTIC_GV), "--d-max", "3", "--k-max", "10")
    data = no_floats(out)
    assert code == 0 and data["non_integral"] == [] and len(data["entries"]) == 3 * 11 * 2


def test_qk_table_non_integer_input_warns(files, capsys):
    gv = files("gv.json", {"genus": 0, "entries": [{"beta": [1], "value": "1/2"}]})
    assert run(capsys, "qk-table", "--gv", gv, "--d-max", "1", "--k-max", "2")[0] == 2


def test_qk_table_theorem_violation(monkeypatch, files, capsys):
    real = qkgv.jfunction.extract_qk_table

    def skewed(*args, **kwargs):
        table = real(*args, **kwargs)
        key = next(iter(table.entries))
        table.entries[key] += Fraction(1, 2)
        return table

    monkeypatch.setattr(qkgv.jfunction, "extract_qk_table", skewed)
    gv = files("gv.json", {"genus": 0, "entries": [{"beta": [1], "value": "1"}]})
    assert run(capsys, "qk-table", "--gv", gv, "--d-max", "1", "--k-max", "2")[0] == 5


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qkgv", "verify", "lemmas", "--d-max", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert no_floats(proc.stdout)["status"] == "pass"
