import json
from importlib import resources

import pytest

from nflocus import cli, oracle
from nflocus.groebner import DEFAULT_MAX_PAIRS, Limits
from nflocus.workbench import AnalysisConfig, ConfigError, render_markdown

U34 = {"n": 4, "r": 3, "bases": [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]}
NON_PAPPUS = {"n": 9, "r": 3, "nonbases": [[1, 2, 3], [4, 5, 6], [1, 5, 7], [2, 4, 7], [1, 6, 8], [3, 4, 8],
                                           [2, 6, 9], [3, 5, 9]]}


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, name, data):
    p = tmp_path / name
    p.write_text(data if isinstance(data, str) else json.dumps(data))
    return str(p)


def test_analyze_fixture(capsys):
    code, out, _ = run(["analyze", "--fixture", "M12_1"], capsys)
    rep = json.loads(out)
    assert code == 0
    assert rep["schema_version"] == 1
    assert rep["nfl"]["classification"] == "Empty"
    assert rep["phi"] == {"rows": 24, "cols": 25, "index": 1, "degree": 4}


def test_analyze_with_oracle(capsys):
    code, out, _ = run(["analyze", "--fixture", "M11", "--oracle", "4,5"], capsys)
    rep = json.loads(out)
    assert code == 0
    assert rep["nfl"]["char_support"] == 2 and rep["nfl"]["primes"] == [2]
    assert rep["oracle"]["mismatches"] == 0 and rep["oracle"]["yoshinaga"]
    assert {p["q"] for p in rep["oracle"]["nonfree"]} == {4}


def test_nonsplitting_exit(tmp_path, capsys):
    code, out, err = run(["analyze", "--matroid", write(tmp_path, "u34.json", U34)], capsys)
    assert code == 3
    assert json.loads(out)["characteristic_polynomial"] == "t^3-4t^2+6t-3"
    assert "does not split" in err


def test_invalid_matroid_exit(tmp_path, capsys):
    bad = {"n": 4, "r": 2, "bases": [[1, 2], [3, 4]]}
    assert run(["analyze", "--matroid", write(tmp_path, "bad.json", bad)], capsys)[0] == 2
    assert run(["analyze", "--matroid", write(tmp_path, "junk.json", "{")], capsys)[0] == 2
    assert run(["analyze", "--fixture", "M99"], capsys)[0] == 2
    assert run(["analyze", "--fixture", "M9", "--oracle", "6"], capsys)[0] == 2
    assert run(["analyze", "--fixture", "M9", "--hyperplane", "10"], capsys)[0] == 2


def test_not_representable_exit(tmp_path, capsys):
    assert run(["analyze", "--matroid", write(tmp_path, "np.json", NON_PAPPUS)], capsys)[0] == 4


def test_resource_exit(capsys):
    try:
        code, out, _ = run(["analyze", "--fixture", "M11", "--max-pairs", "3"], capsys)
    finally:
        Limits.max_pairs = DEFAULT_MAX_PAIRS
    assert code == 5
    assert "budget" in json.loads(out)["error"]


def test_oracle_mismatch_exit(monkeypatch, capsys):
    monkeypatch.setattr(oracle, "in_locus", lambda locus, pt, F: True)
    code, out, _ = run(["analyze", "--fixture", "M11", "--oracle", "5"], capsys)
    assert code == 6
    assert json.loads(out)["oracle"]["mismatches"] == 1


def test_oracle_command_defaults(capsys):
    code, out, _ = run(["oracle", "--fixture", "M9"], capsys)
    rep = json.loads(out)
    assert code == 0
    assert rep["oracle"]["fields"] == [2, 3, 4, 5, 7, 9, 11, 13, 17, 19, 23, 25]
    assert {p["q"] % 3 for p in rep["oracle"]["nonfree"]} == {0}


def test_markdown_is_rendering_of_json(tmp_path, capsys):
    out_file = tmp_path / "r.md"
    code, _, _ = run(["analyze", "--fixture", "M9", "--format", "md", "--out", str(out_file)], capsys)
    assert code == 0
    _, js, _ = run(["analyze", "--fixture", "M9"], capsys)
    assert out_file.read_text() == render_markdown(json.loads(js))
    assert "nonfree locus: Proper" in out_file.read_text()


def test_config_needs_one_source():
    with pytest.raises(ConfigError):
        AnalysisConfig().validate()
    with pytest.raises(ConfigError):
        AnalysisConfig(fixture="M9", gnn3=3).validate()
    with pytest.raises(ConfigError):
        AnalysisConfig(fixture="M9", oracle=[128]).validate()


def test_slice_and_gnn3_commands(capsys):
    code, out, _ = run(["slice", "--fixture", "M11", "--format", "md"], capsys)
    assert code == 0 and out.startswith("V(")
    code, out, _ = run(["gnn3", "3", "--format", "md"], capsys)
    assert code == 0 and "9 elements" in out
    assert run(["gnn3", "12"], capsys)[0] == 2


def test_table_matches_golden_file(tmp_path, capsys):
    golden = resources.files("nflocus").joinpath("data", "fixture_table.md").read_text()
    a, b = tmp_path / "a.md", tmp_path / "b.md"
    assert run(["table", "--format", "md", "--out", str(a)], capsys)[0] == 0
    assert run(["table", "--format", "md", "--workers", "1", "--out", str(b)], capsys)[0] == 0
    assert a.read_text() == golden == b.read_text()
