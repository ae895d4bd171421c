import json
import xml.etree.ElementTree as ET

import pytest

from stemrank import cache
from stemrank.report import (SliceSpec, analysis_from_json, analysis_to_json, format_analysis_tex,
                             format_analysis_text, format_lattice, format_strata_text, render_png,
                             render_svg, render_tsv, slice_points, strata_to_json)
from stemrank.strata import analyze, strata_report
from stemrank import lattice as zl
from stemrank.groups import parse_group


def test_format_lattice():
    names = ["1", "sigma"]
    assert format_lattice(zl.hnf([[2, -2]], 2), names) == "Z{2 - 2sigma}"
    assert format_lattice(zl.zero(2), names) == "{0}"
    assert format_lattice(zl.hnf([[0, 1]], 2), names) == "Z{sigma}"


def test_text_and_tex():
    A = analyze("C2")
    text = format_analysis_text(A)
    assert "N+  = Z{2 - 2sigma}" in text and text.rstrip().endswith("r_0 = 2")
    tex = format_analysis_tex(A)
    assert tex.startswith("\\begin{tabular}") and "\\sigma" in tex


def test_analysis_json_round_trip():
    for g in ["C2", "Q8", "S4"]:
        A = analyze(g)
        obj = json.loads(json.dumps(analysis_to_json(A)))
        B = analysis_from_json(obj)
        assert B.names == A.names
        assert [c.to_json() for c in B.classes] == [c.to_json() for c in A.classes]


def test_analysis_json_rejects_mismatch():
    obj = analysis_to_json(analyze("C2"))
    obj["irreps"] = list(reversed(obj["irreps"]))
    with pytest.raises(ValueError):
        analysis_from_json(obj)


def test_strata_json_and_text():
    A = analyze("C2")
    obj = strata_to_json(A)
    assert obj["irreps"] == ["1", "sigma"]
    assert [s["generic_rank"] for s in obj["strata"]] == [2, 1, 1]
    assert format_strata_text(A).startswith("3 strata for C2")
    assert len(obj["strata"]) == len(strata_report(A).strata)


def test_tsv_header_and_values():
    A = analyze("C2")
    pts = slice_points(A, SliceSpec(0, 1, {}, -1, 1))
    lines = render_tsv(pts).splitlines()
    assert lines[0] == "i\tj\trank\twitnesses"
    assert len(lines) == 10
    assert "0\t0\t2\t0;1" in lines
    # 1 - sigma reverses orientation at e; 0 + sigma lies in N_C2
    assert "1\t-1\t0\t" in lines
    assert "0\t1\t1\t1" in lines


def test_empty_range():
    A = analyze("C2")
    pts = slice_points(A, SliceSpec(0, 1, {}, 1, 0))
    assert pts == [] and render_tsv(pts) == "i\tj\trank\twitnesses\n"
    ET.fromstring(render_svg(A, SliceSpec(0, 1, {}, 1, 0), pts))


def test_slice_spec_validation():
    A = analyze("C3")
    with pytest.raises(ValueError):
        SliceSpec(0, 0)
    with pytest.raises(IndexError):
        slice_points(A, SliceSpec(0, 5))
    with pytest.raises(ValueError):
        slice_points(A, SliceSpec(0, 1, {1: 2}))


def test_svg_deterministic_and_parses():
    A = analyze("D6")
    spec = SliceSpec(0, 2, {1: 1}, -3, 3)
    a, b = render_svg(A, spec), render_svg(A, spec)
    assert a == b
    root = ET.fromstring(a)
    assert root.tag.endswith("svg")
    texts = [t.text for t in root.iter("{http://www.w3.org/2000/svg}text")]
    assert "1" in texts and "phi_1" in texts


def test_png(tmp_path):
    pytest.importorskip("matplotlib")
    A = analyze("C2")
    out = render_png(A, SliceSpec(0, 1, {}, -2, 2), tmp_path / "s.png")
    assert out.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_cache_round_trip(tmp_path):
    spec = parse_group("D6")
    A = cache.cached_analyze(spec, root=tmp_path)
    files = list(tmp_path.glob("*.json"))
    assert len(files) == 1 and files[0].stem == cache.cache_key(spec)
    B = cache.load(spec, root=tmp_path)
    assert [c.to_json() for c in B.classes] == [c.to_json() for c in A.classes]
    assert cache.load(parse_group("C2"), root=tmp_path) is None


def test_corrupt_cache_entry_is_ignored(tmp_path, caplog):
    spec = parse_group("C3")
    path = cache.store(analyze("C3"), root=tmp_path)
    path.write_text("{ not json")
    assert cache.load(spec, root=tmp_path) is None
    assert "ignoring cache entry" in caplog.text
    A = cache.cached_analyze(spec, root=tmp_path)
    assert A.names == ["1", "phi_1"]
    assert cache.load(spec, root=tmp_path) is not None


def test_tampered_table_is_rejected(tmp_path):
    spec = parse_group("C3")
    path = cache.store(analyze("C3"), root=tmp_path)
    obj = json.loads(path.read_text())
    obj["table"]["chars"][1] = obj["table"]["chars"][0]
    path.write_text(json.dumps(obj))
    assert cache.load(spec, root=tmp_path) is None


def test_cache_dir_env(monkeypatch, tmp_path):
    monkeypatch.setenv(cache.ENV_VAR, str(tmp_path))
    assert cache.cache_dir() == tmp_path
    monkeypatch.delenv(cache.ENV_VAR)
    monkeypatch.setenv("XDG_CACHE_HOME", str(tmp_path))
    assert cache.cache_dir() == tmp_path / "stemrank"
