import json
import os
import subprocess
import sys

import pytest

from ggk.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path, capsys):
    paths = {}
    for name, args in (("a2", ["a_n", "--n", "2"]), ("a3", ["a_n", "--n", "3"]),
                       ("d3", ["dihedral", "--m", "3"]), ("sw", ["sigma_swap", "--c", "1"])):
        p = str(tmp_path / (name + ".json"))
        assert run(capsys, "generate", *args, "-o", p)[0] == 0
        paths[name] = p
    return paths


def test_generate_to_stdout(capsys):
    code, out, _ = run(capsys, "generate", "a_n", "--n", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == "fanmodel/1" and len(doc["maximal_rigid"]) == 5


def test_presentation_counts(files, capsys):
    code, out, _ = run(capsys, "groupoid", "presentation", "-m", files["a2"])
    doc = json.loads(out)
    assert code == 0 and len(doc["generators"]) == 10 and len(doc["relations"]) == 5


def test_antisymmetry_witness(files, capsys):
    code, out, _ = run(capsys, "check", "antisymmetry", "-m", files["a2"])
    doc = json.loads(out)
    assert code == 1 and doc["witnesses"][0]["object"] == "24"


def test_recognize(files, capsys):
    code, out, _ = run(capsys, "fan", "recognize", "-m", files["d3"])
    assert code == 0 and len(json.loads(out)["hyperplanes"]) == 3
    code, out, _ = run(capsys, "fan", "recognize", "-m", files["a2"])
    assert code == 1 and json.loads(out)["witnesses"][0]["objects"] == ["24"]


def test_fan_verify_and_reduce(files, capsys):
    assert run(capsys, "fan", "verify", "-m", files["a3"])[0] == 0
    code, out, _ = run(capsys, "fan", "reduce", "-m", files["a3"], "--ray", "13")
    assert code == 0 and len(json.loads(out)["chambers"]) == 5
    code, out, _ = run(capsys, "fan", "reduce", "-m", files["a3"], "--ray", "14")
    assert code == 0 and len(json.loads(out)["chambers"]) == 4
    code, _, err = run(capsys, "fan", "reduce", "-m", files["a3"], "--ray", "99")
    assert code == 2 and "unknown indecomposable" in err


def test_fan_export(files, capsys):
    code, out, _ = run(capsys, "fan", "export", "-m", files["a3"])
    doc = json.loads(out)
    assert code == 0 and doc["dim"] == 3 and len(doc["chambers"]) == 14


def test_paths(files, capsys):
    code, out, _ = run(capsys, "paths", "-m", files["a2"], "--from", "13+14", "--to", "25+35", "--green")
    assert code == 0 and len(json.loads(out)["paths"]) == 2
    code, out, _ = run(capsys, "paths", "-m", files["a2"], "--from", "13+14", "--to", "25+35")
    assert [len(p["arrows"]) for p in json.loads(out)["paths"]] == [2]


def test_vertex_group(files, capsys):
    code, out, _ = run(capsys, "groupoid", "vertex-group", "-m", files["a2"], "--at", "24+25")
    doc = json.loads(out)
    assert code == 0 and len(doc["braid"]["generators"]) == 2 and len(doc["braid"]["relators"]) == 1


def test_normal_form_and_word_eq(files, capsys):
    code, out, _ = run(capsys, "groupoid", "normal-form", "-m", files["d3"],
                       "--from", "C0", "--word", "x1 x5 x7 x9")
    assert code == 0 and [len(s) for s in json.loads(out)["segments"]] == [3, 1]
    code, _, err = run(capsys, "groupoid", "normal-form", "-m", files["a2"], "--word", "x1")
    assert code == 2 and "hyper" in err
    code, out, _ = run(capsys, "groupoid", "word-eq", "-m", files["a2"], "--from", "13+14",
                       "--w1", "x3 x7 x9", "--w2", "x1 x5", "--depth", "6")
    assert code == 0 and json.loads(out)["result"] == "equal"


def test_checks(files, capsys):
    assert run(capsys, "check", "forms", "-m", files["a2"])[0] == 0
    assert run(capsys, "check", "invariance", "-m", files["a2"])[0] == 1
    assert run(capsys, "check", "congruence", "-m", files["a2"], "--from", "13+14", "--to", "14+24")[0] == 0
    assert run(capsys, "check", "congruence", "-m", files["a2"])[0] == 1
    for which in ("forms", "invariance", "antisymmetry", "congruence", "middle-terms"):
        assert run(capsys, "check", which, "-m", files["sw"])[0] == 0
    assert run(capsys, "check", "congruence", "-m", files["a2"], "--from", "13+14")[0] == 2


def test_text_output(files, capsys):
    code, out, _ = run(capsys, "check", "antisymmetry", "-m", files["a2"], "--text")
    assert code == 1 and out.startswith("antisymmetry: fail")


def test_render(files, capsys, tmp_path):
    code, out, _ = run(capsys, "render", "-m", files["a2"])
    assert code == 0 and out.count("<line ") == 5
    code, _, err = run(capsys, "render", "-m", files["a3"], "-o", str(tmp_path / "x.svg"))
    assert code == 2 and "2-D only" in err
    assert not (tmp_path / "x.svg").exists()


def test_schema_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"schema": "fanmodel/1", "reference": "A"}))
    code, _, err = run(capsys, "fan", "verify", "-m", str(bad))
    assert code == 2 and "/dim" in err


def test_no_partial_output(tmp_path, capsys):
    out = tmp_path / "m.json"
    code, _, _ = run(capsys, "generate", "dihedral", "--m", "0", "-o", str(out))
    assert code == 2
    assert os.listdir(tmp_path) == []


def test_missing_param(capsys):
    assert run(capsys, "generate", "a_n")[0] == 2
    assert run(capsys, "fan", "verify")[0] == 2


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main([])
    assert e.value.code == 2


def test_deterministic_output(files, capsys):
    outs = {run(capsys, "groupoid", "presentation", "-m", files["a2"])[1] for _ in range(3)}
    assert len(outs) == 1
    svgs = {run(capsys, "render", "-m", files["d3"])[1] for _ in range(2)}
    assert len(svgs) == 1


def test_console_entry_point(files):
    r = subprocess.run([sys.executable, "-m", "ggk.cli", "fan", "recognize", "-m", files["d3"], "--text"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.startswith("arrangement of 3 hyperplanes")
