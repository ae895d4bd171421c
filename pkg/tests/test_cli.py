import json
import subprocess
import sys

from stemrank.characters import character_table, table_to_json
from stemrank.cli import run
from stemrank.groups import build_group


def cli(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_rank_examples(capsys):
    assert cli(capsys, "rank", "C2", "--alpha", "0,1")[:2] == (0, "r = 1; witnesses: [C2]\n")
    assert cli(capsys, "rank", "C2", "--alpha", "1,-1")[1] == "r = 0; witnesses: []\n"
    assert cli(capsys, "rank", "C2", "--alpha", "sigma=1")[1] == "r = 1; witnesses: [C2]\n"
    code, out, _ = cli(capsys, "rank", "Q8", "--alpha", "h=0")
    assert out.startswith("r = 6")
    code, out, _ = cli(capsys, "rank", "C3", "--alpha", "-2,1")
    assert code == 0 and out.startswith("r = 1")


def test_usage_errors(capsys):
    assert cli(capsys, "rank", "C2", "--alpha", "1,2,3")[0] == 2
    assert cli(capsys, "rank", "C2", "--alpha", "tau=1")[0] == 2
    assert cli(capsys, "rank", "Nope7")[0] == 2
    assert cli(capsys, "rank", "Frob(5)", "--alpha", "0")[0] == 2
    assert cli(capsys, "slice", "C2", "--axes", "1,1")[0] == 2
    assert cli(capsys, "slice", "C2", "--axes", "1,2", "--range", "a..b")[0] == 2
    code, _, err = cli(capsys, "verify", "C4")
    assert code == 2 and "no bundled claims" in err


def test_cap_refusal(capsys, monkeypatch):
    monkeypatch.setenv("STEMRANK_MAX_ORDER", "20")
    code, _, err = cli(capsys, "analyze", "S4")
    assert code == 3 and err.startswith("refused")


def test_verify_exit_codes(capsys):
    code, out, _ = cli(capsys, "verify", "C9")
    assert code == 0 and "0 disputed" in out and "oracle disagreements: 0" in out
    code, out, _ = cli(capsys, "verify", "K4")
    assert code == 4 and "DISPUTED N_e+" in out and "oracle disagreements: 0" in out
    code, out, _ = cli(capsys, "verify", "D6", "--format", "json")
    obj = json.loads(out)
    assert code == 4 and obj["oracle"] and obj["oracle_disagreements"] == []
    assert obj["claim_disagreements"]


def test_verify_custom_claims(capsys, tmp_path):
    f = tmp_path / "claims.json"
    f.write_text(json.dumps({"claims": [{"label": "mine", "classes": ["e"], "generators": [[2, -2]]}]}))
    code, out, _ = cli(capsys, "verify", "C2", "--claims", str(f))
    assert code == 0 and "1 confirmed" in out


def test_analyze_formats(capsys):
    code, out, _ = cli(capsys, "analyze", "K4", "--format", "json")
    obj = json.loads(out)
    assert obj["order"] == 4 and [c["label"] for c in obj["classes"]] == ["e", "<i>", "<j>", "<k>", "K4"]
    code, out, _ = cli(capsys, "analyze", "C2", "--format", "orientation")
    assert json.loads(out)[0]["signs"] == {"1": [1], "sigma": [-1]}
    code, out, _ = cli(capsys, "analyze", "C2", "--format", "tex")
    assert "tabular" in out
    code, out, _ = cli(capsys, "analyze", "C2")
    assert "r_0 = 2" in out


def test_cache_does_not_change_output(capsys):
    first = cli(capsys, "analyze", "Dic3", "--format", "json")[1]
    cached = cli(capsys, "analyze", "Dic3", "--format", "json")[1]
    fresh = cli(capsys, "--no-cache", "analyze", "Dic3", "--format", "json")[1]
    assert first == cached == fresh


def test_strata_command(capsys):
    code, out, _ = cli(capsys, "strata", "K4")
    assert code == 0 and len(json.loads(out)["strata"]) == 26
    code, out, _ = cli(capsys, "strata", "C2", "--format", "text")
    assert out.startswith("3 strata")


def test_slice_outputs(capsys, tmp_path):
    code, out, _ = cli(capsys, "slice", "C3", "--axes", "1,phi_1", "--range", "-2..2")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "i\tj\trank\twitnesses" and len(lines) == 26
    svg = tmp_path / "s.svg"
    png = tmp_path / "s.png"
    code, out, _ = cli(capsys, "slice", "D6", "--axes", "1,3", "--fix", "sigma=-1", "--range", "-3..3",
                       "--out", "svg", "--output", str(svg), "--figure", str(png))
    assert code == 0 and out == ""
    assert svg.read_text().startswith("<svg")
    assert png.read_bytes()[:4] == b"\x89PNG"


def test_mackey_command(capsys, tmp_path):
    assert cli(capsys, "mackey-rank", "C2", "--alpha", "0,0")[1] == "r = 2\n"
    assert cli(capsys, "mackey-rank", "C2", "--alpha", "0,0", "--coeff", "zero")[1] == "r = 0\n"
    f = tmp_path / "m.json"
    f.write_text(json.dumps({"classes": {"e": [{"signs": [-1], "mult": 3}]}}))
    assert cli(capsys, "mackey-rank", "C2", "--alpha", "1,-1", "--coeff", str(f))[1] == "r = 3\n"
    f.write_text(json.dumps({"classes": {"e": [{"signs": [1, 1]}]}}))
    assert cli(capsys, "mackey-rank", "C2", "--alpha", "1,-1", "--coeff", str(f))[0] == 2


def test_import_table(capsys, tmp_path):
    G = build_group("S4")
    obj = table_to_json(character_table(G))
    obj["group"] = G.spec.to_json()
    f = tmp_path / "t.json"
    f.write_text(json.dumps(obj))
    code, out, _ = cli(capsys, "import-table", str(f))
    assert code == 0 and "agrees with computed table: yes" in out
    # same table offered for a group it does not belong to
    code, out, err = cli(capsys, "import-table", str(f), "--group", "C2xC2xC2")
    assert code == 2 and "import rejected" in err
    obj["chars"][0] = obj["chars"][1]
    f.write_text(json.dumps(obj))
    assert cli(capsys, "import-table", str(f))[0] == 2


def test_permutation_group_file(capsys, tmp_path):
    f = tmp_path / "a4.json"
    f.write_text(json.dumps({"perm_generators": [[1, 2, 0, 3], [0, 2, 3, 1]]}))
    code, out, _ = cli(capsys, "analyze", str(f))
    assert code == 0 and "table source dixon" in out


def test_groups_list(capsys):
    code, out, _ = cli(capsys, "groups", "list")
    assert code == 0 and "Q8\t8" in out and "S4\t24" in out


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "stemrank", "rank", "C2", "--alpha", "0,1"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "r = 1; witnesses: [C2]\n"


def test_q8_positional_example(capsys):
    code, out, _ = cli(capsys, "rank", "Q8", "--alpha", "0,0,0,0,1")
    assert code == 0 and out.startswith("r = 5;")


def test_slice_matches_pointwise_rank(capsys):
    _, out, _ = cli(capsys, "slice", "K4", "--axes", "sigma_i,4", "--fix", "1=2", "--range", "-3..3")
    rows = [r.split("\t") for r in out.splitlines()[1:]]
    for i, j, r, _ in rows[::5]:
        alpha = f"2,{i},0,{j}"
        code, line, _ = cli(capsys, "rank", "K4", "--alpha", alpha)
        assert line.startswith(f"r = {r};"), (alpha, line)
