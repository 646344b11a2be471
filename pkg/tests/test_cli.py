import json
import subprocess
import sys

import pytest

from nestocone.building import standard_example
from nestocone.cli import dispatch
from nestocone.graphs import complete_graph, path_graph


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, data in {
        "path3": path_graph(3).to_json(),
        "k3": complete_graph(3).to_json(),
        "bcirc": standard_example().to_json(),
    }.items():
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(data))
        paths[name] = str(p)
    return paths


def run(capsys, *argv):
    code = dispatch(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_typecone_irredundant_tsv(capsys, files):
    code, out, _ = run(capsys, "typecone", "--graph", files["path3"], "--irredundant", "--format", "tsv")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 4  # header plus three facets
    assert lines[0].split("\t") == ["1", "2", "3", "12", "23"]


def test_typecone_modes(capsys, files):
    counts = {}
    for mode in ("--redundant", "--irredundant", "--oracle"):
        code, out, _ = run(capsys, "typecone", "--graph", files["path3"], mode)
        assert code == 0
        counts[mode] = len(json.loads(out)["inequalities"])
    assert counts == {"--redundant": 5, "--irredundant": 3, "--oracle": 3}


def test_count_bcirc(capsys, files):
    code, out, _ = run(capsys, "count", "--building", files["bcirc"], "--compact")
    assert code == 0
    assert json.loads(out) == {"facets": 12, "rays": 19, "dim": 7, "simplicial": True}
    assert out.strip() == '{"facets": 12, "rays": 19, "dim": 7, "simplicial": true}'


def test_nested_count_and_tubes(capsys, files):
    assert json.loads(run(capsys, "nested", "--graph", files["path3"], "--count")[1]) == {"count": 5}
    data = json.loads(run(capsys, "tubes", "--graph", files["k3"], "--tubings")[1])
    assert data["count"] == 7 and len(data["maximal_tubings"]) == 6


def test_building_and_simplicial(capsys, files):
    data = json.loads(run(capsys, "building", "--building", files["bcirc"])[1])
    assert data["elementary"] == [[1, 4], [2, 5], [1, 2, 3], [4, 5, 6], [7, 8, 9]]
    assert data["graphical"] is False
    data = json.loads(run(capsys, "simplicial", "--graph", files["k3"])[1])
    assert data["simplicial"] is False and data["obstructions"] == [[1, 2, 3]]


def test_flips_from_file(capsys, files, tmp_path):
    nested = tmp_path / "n.json"
    blocks = [[3], [4], [5], [7], [8], [1, 4], [7, 8, 9], [1, 2, 3, 4, 5], [1, 2, 3, 4, 5, 6]]
    nested.write_text(json.dumps({"blocks": blocks}))
    code, out, _ = run(capsys, "flips", "--building", files["bcirc"], "--nested", str(nested))
    assert code == 0
    frames = [f["frame"] for f in json.loads(out)["flips"]]
    assert any(f["b_out"] == [1, 4] and f["b_in"] == [2, 5] and f["pivots"] == [1, 2] for f in frames)


def test_heights_and_check(capsys, files, tmp_path):
    code, out, _ = run(capsys, "heights", "--graph", files["path3"], "--postnikov")
    data = json.loads(out)
    assert code == 0 and data["membership"] == "interior"
    zero = tmp_path / "zero.json"
    zero.write_text(json.dumps([0] * 6))
    assert json.loads(run(capsys, "heights", "--graph", files["path3"], "--check", str(zero))[1]) == {
        "membership": "boundary"
    }


def test_realize_and_kinematic(capsys, files):
    code, out, _ = run(capsys, "realize", "--graph", files["path3"])
    assert code == 0 and len(json.loads(out)["vertices"]) == 5
    code, out, _ = run(capsys, "kinematic", "--graph", files["path3"])
    assert code == 0 and json.loads(out)["dim"] == 5


def test_exit_codes(capsys, files, tmp_path):
    assert run(capsys, "kinematic", "--graph", files["k3"])[0] == 1
    assert run(capsys, "interval", "--graph", files["k3"])[0] == 1
    zero = tmp_path / "zero.json"
    zero.write_text(json.dumps([0] * 6))
    assert run(capsys, "realize", "--graph", files["path3"], "--heights", str(zero))[0] == 1
    assert run(capsys, "count")[0] == 2
    assert run(capsys, "count", "--graph", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 3, "blocks": [[1], [2], [3], [1, 2], [2, 3]]}')
    code, _, err = run(capsys, "building", "--building", str(bad))
    assert code == 2 and "error" in err
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "count", "--bogus")[0] == 2


def test_interval_verb(capsys, tmp_path):
    f = tmp_path / "ps.json"
    f.write_text(json.dumps({"n": 3, "blocks": [[1], [2], [3], [1, 2], [1, 2, 3]]}))
    code, out, _ = run(capsys, "interval", "--building", str(f), "--format", "tsv")
    assert code == 0 and len(out.splitlines()) == 2


def test_json_round_trip(capsys, files):
    for argv in (
        ["building", "--building", files["bcirc"]],
        ["typecone", "--building", files["bcirc"]],
        ["realize", "--graph", files["k3"], "--postnikov"],
    ):
        out = run(capsys, *argv)[1]
        data = json.loads(out)
        assert json.loads(json.dumps(data)) == data
        assert out == json.dumps(data, indent=2) + "\n"


def test_verify_small(capsys):
    code, out, _ = run(capsys, "verify", "--max-n", "3", "--random", "3", "--compact")
    data = json.loads(out)
    assert code == 0 and data["failures"] == 0 and data["instances"] > 0


def test_console_script(files):
    proc = subprocess.run(
        [sys.executable, "-m", "nestocone.cli", "count", "--graph", files["path3"], "--compact"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"facets": 3, "rays": 5, "dim": 2, "simplicial": True}
