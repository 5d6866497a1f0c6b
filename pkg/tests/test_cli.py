"""Command-line interface: exit codes, determinism, file formats."""

from __future__ import annotations

import json

import pytest

from crosscap.cli import export_svg, load_family_doc, main, state_to_doc
from crosscap.construct import build_theorem_b
from crosscap.schema import SurfaceType, dump_schema, standard_schema


@pytest.fixture
def klein_file(tmp_path):
    p = tmp_path / "klein.json"
    p.write_text(dump_schema(standard_schema(SurfaceType(False, 2, 1))))
    return str(p)


def test_classify_command(klein_file, capsys):
    assert main(["classify", klein_file]) == 0
    assert capsys.readouterr().out.strip() == "non-orientable g=2 b=1"


def test_classify_torus(tmp_path, capsys):
    p = tmp_path / "t.json"
    p.write_text(dump_schema(standard_schema(SurfaceType(True, 1, 0))))
    assert main(["classify", str(p)]) == 0
    assert capsys.readouterr().out.strip() == "orientable k=1 b=0"


def test_classify_pair_of_pants(tmp_path, capsys):
    p = tmp_path / "p.json"
    p.write_text(dump_schema(standard_schema(SurfaceType(True, 0, 3))))
    assert main(["classify", str(p)]) == 0
    assert capsys.readouterr().out.strip() == "orientable k=0 b=3"


def test_classify_malformed_exits_2(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert main(["classify", str(p)]) == 2


def test_build_verify_round_trip(tmp_path, capsys):
    out = tmp_path / "b8.json"
    assert main(["build", "--theorem", "b", "--g", "8", "--out", str(out)]) == 0
    capsys.readouterr()
    assert main(["verify", str(out), "--workers", "1"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["is_1_system"] is True
    assert report["count"] == 24
    manifest = json.loads((tmp_path / "b8.json.manifest.json").read_text())
    assert manifest["predicted"] == manifest["actual"] == 24


def test_build_refuses_small_g(capsys):
    assert main(["build", "--theorem", "a", "--g", "4"]) == 2


def test_corrupted_family_fails_verification(tmp_path, capsys):
    out = tmp_path / "b5.json"
    main(["build", "--theorem", "b", "--g", "5", "--out", str(out)])
    capsys.readouterr()
    doc = json.loads(out.read_text())
    # duplicate a curve under a fresh id: same homotopy class twice
    import copy

    dup = copy.deepcopy(doc["curves"][0])
    dup["id"] = "dup"
    for ch in dup["chords"]:
        for end in ("from", "to"):
            num, den = ch[end]["pos"].split("/")
            ch[end]["pos"] = f"{int(num) * 4 + 1}/{int(den) * 4}"
    doc["curves"].append(dup)
    out.write_text(json.dumps(doc))
    code = main(["verify", str(out), "--workers", "1"])
    assert code == 1


def test_verify_malformed_exits_2(tmp_path):
    p = tmp_path / "junk.json"
    p.write_text('{"curves": "nope"}')
    assert main(["verify", str(p)]) == 2


def test_cut_command_klein(tmp_path, capsys):
    # hand-build a family file bearing alpha and beta on N_{2,1}
    from crosscap.curve import CurveFamily, cap_chain_curve, core_curve, family_to_json

    s = standard_schema(SurfaceType(False, 2, 1))
    fam = CurveFamily(
        s,
        [
            cap_chain_curve(s, ["x1", "x2"], curve_id="alpha"),
            core_curve(s, "x1", pos=None, curve_id="beta"),
        ],
    )
    p = tmp_path / "klein_curves.json"
    p.write_text(json.dumps(family_to_json(fam)))
    assert main(["cut", str(p), "alpha"]) == 0
    out = capsys.readouterr().out
    assert "orientable k=0 b=3" in out
    assert main(["cut", str(p), "beta"]) == 0
    out = capsys.readouterr().out
    assert "non-orientable g=1 b=2" in out


def test_table_counts_only(capsys):
    assert main(
        ["table", "--theorem", "b", "--g-min", "3", "--g-max", "6", "--counts-only"]
    ) == 0
    out = capsys.readouterr().out
    lines = out.strip().splitlines()
    assert lines[0].split() == ["g", "k", "predicted", "built", "bound", "verified"]
    assert len(lines) == 5


def test_table_unsupported_rows(capsys):
    assert main(
        ["table", "--theorem", "a", "--g-min", "4", "--g-max", "5", "--b", "0",
         "--counts-only"]
    ) == 0
    out = capsys.readouterr().out
    assert "unsupported" in out


def test_export_svg_deterministic(tmp_path):
    st = build_theorem_b(5)
    doc = state_to_doc(st, {})
    p = tmp_path / "fam.json"
    p.write_text(json.dumps(doc))
    out1, out2 = tmp_path / "a.svg", tmp_path / "b.svg"
    assert main(["export-svg", str(p), "--out", str(out1)]) == 0
    assert main(["export-svg", str(p), "--out", str(out2)]) == 0
    b1, b2 = out1.read_bytes(), out2.read_bytes()
    assert b1 == b2
    assert b1.startswith(b"<svg")
    fam, aux, params = load_family_doc(p.read_text())
    assert len(fam) == 12 and len(aux) == 3


def test_family_svg_marks_crosscaps():
    st = build_theorem_b(5)
    text = export_svg(st.family)
    assert text.count('stroke="#c00"') >= 1  # the circled-x cap marks
