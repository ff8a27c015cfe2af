import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import jsonschema
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affine_moduli import cli
from affine_moduli import reports as rp
from affine_moduli import type_a as ta


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, [json.loads(l) for l in out.splitlines() if l.strip()]


def write_jsonl(path, recs):
    path.write_text("".join(json.dumps(r) + "\n" for r in recs))
    return str(path)


def test_reference_records(tmp_path, capsys):
    recs = [
        {"id": "csp", "family": "A", "gamma": ta.GAMMA_CSP.as_vector().tolist()},
        {"id": "zero", "family": "A", "gamma": [0] * 6},
        {"id": "pplus", "family": "B", "gamma": [1, 0, 0, 0, 1, 0]},
    ]
    code, out = run(["classify", "--input", write_jsonl(tmp_path / "in.jsonl", recs)], capsys)
    assert code == 0
    assert out[0]["rank2"]["region"] == "cusp"
    assert (out[0]["rank2"]["iso_plus"], out[0]["rank2"]["iso_full"]) == (3, 6)
    assert out[1]["membership"] == "Flat"
    assert out[2]["membership"] == "Flat"
    for r in out:
        jsonschema.validate(r, rp.schema_for("classify", r))


def test_bad_records_do_not_stop_the_batch(tmp_path, capsys):
    p = tmp_path / "in.jsonl"
    p.write_text('{"id":"a","gamma":[1,0,0,1,1,0]}\nnot json\n{"id":"b","gamma":[1,2]}\n'
                 '{"id":"a","gamma":[1,0,0,1,1,0]}\n{"id":"c","gamma":[1,0,0,0.2,0.5,0.3]}\n')
    code, out = run(["classify", "--input", str(p)], capsys)
    assert code == 1
    assert [r["status"] for r in out] == ["ok", "error", "error", "error", "ok"]
    assert out[2]["id"] == "b"
    for r in out:
        jsonschema.validate(r, rp.schema_for("classify", r))


def test_sample_is_deterministic(capsys):
    outs = []
    for _ in range(2):
        cli.main(["sample", "plus", "-n", "20", "--seed", "11"])
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1] and len(outs[0].splitlines()) == 20
    cli.main(["sample", "B", "-n", "0"])
    assert capsys.readouterr().out == ""


@pytest.mark.parametrize("kind", ["plus", "minus", "zero", "B"])
def test_classify_fixed_point(kind, tmp_path, capsys):
    cli.main(["sample", kind, "-n", "15", "--seed", "3", "--output", str(tmp_path / "s.jsonl")])
    cli.main(["classify", "--input", str(tmp_path / "s.jsonl"), "--output", str(tmp_path / "c1.jsonl")])
    cli.main(["classify", "--input", str(tmp_path / "c1.jsonl"), "--output", str(tmp_path / "c2.jsonl")])
    a = (tmp_path / "c1.jsonl").read_text()
    assert a == (tmp_path / "c2.jsonl").read_text()
    for line in a.splitlines():
        r = json.loads(line)
        jsonschema.validate(r, rp.schema_for("classify", r))
        if kind in ("plus", "minus"):
            assert r["rank2"]["sig"] == kind


def test_minus_orientation_negates_chi():
    g = [1.5, 0.0, 0.0, 0.2, 0.5, 0.3]
    a = rp.classify_record(rp.parse_record({"id": "x", "gamma": g}))
    b = rp.classify_record(rp.parse_record({"id": "x", "gamma": g, "orientation": "minus"}))
    assert a["rank2"]["chi"] == -b["rank2"]["chi"] != 0


def test_equiv_command(tmp_path, capsys):
    g = ta.gamma_plus(0.5, 1.0).as_vector()
    t = np.array([[1.2, 0.3], [-0.4, 0.9]])
    from helpers import pull
    h = pull(g, t).tolist()
    pairs = [
        {"id": "orbit", "first": {"id": "g", "gamma": g.tolist()}, "second": {"id": "h", "gamma": h}},
        {"id": "sig", "first": {"id": "g", "gamma": g.tolist()},
         "second": {"id": "m", "gamma": ta.gamma_minus(0.5, 1.0).as_vector().tolist()}},
        {"id": "B", "first": {"id": "u", "family": "B", "gamma": [0.3, -0.4, 0.7, 0.1, 0.9, -0.2]},
         "second": {"id": "w", "family": "B",
                    "gamma": rp.tb.pullback_b([0.3, -0.4, 0.7, 0.1, 0.9, -0.2], (1, 2)).as_vector().tolist()}},
    ]
    code, out = run(["equiv", "--oriented", "--input", write_jsonl(tmp_path / "p.jsonl", pairs)], capsys)
    assert code == 0
    assert out[0]["verdict"] == "equivalent"
    w = np.array(out[0]["witness"]["matrix"])
    assert np.abs(pull(g, w) - h).max() < 1e-8
    assert out[1]["verdict"] == "inequivalent"
    assert out[2]["witness"]["effective"] == pytest.approx([1.0, 2.0])
    for r in out:
        jsonschema.validate(r, rp.schema_for("equiv", r))


def test_family_mismatch_is_usage_error(tmp_path, capsys):
    pair = {"id": "x", "first": {"id": "a", "gamma": [1, 0, 0, 1, 1, 0]},
            "second": {"id": "b", "family": "B", "gamma": [1, 0, 0, 1, 1, 0]}}
    code, out = run(["equiv", "--input", write_jsonl(tmp_path / "p.jsonl", [pair])], capsys)
    assert code == 2 and out[0]["error"]["kind"] == "usage"


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as e:
        cli.main(["nosuch"])
    assert e.value.code == 2
    assert cli.main(["sample", "plus", "-n", "-1"]) == 2
    assert cli.main(["classify", "--input", "/nonexistent/x.jsonl"]) == 2


def test_canon_and_csv(tmp_path, capsys):
    recs = [{"id": "a", "gamma": [1, 0, 0, 0.2, 0.5, 0.3]}, {"id": "b", "family": "B",
                                                           "gamma": [0, 0, 1, 0, 0, -1]}]
    code, out = run(["canon", "--input", write_jsonl(tmp_path / "c.jsonl", recs)], capsys)
    assert code == 0 and out[0]["canonical"]["variant"] == "DefPlus"
    assert out[1]["canonical"]["chart"] == "O3_plus"
    for r in out:
        jsonschema.validate(r, rp.schema_for("canon", r))
    cli.main(["classify", "--format", "csv", "--input", str(tmp_path / "c.jsonl")])
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("id,family") and len(lines) == 3


@pytest.mark.parametrize("target", ["regions", "jacobi_plus", "jacobi_minus", "zones_plus",
                                    "zones_minus", "scatter"])
def test_plot_targets(target, tmp_path):
    svg = tmp_path / f"{target}.svg"
    assert cli.main(["plot", target, "--output", str(svg), "-n", "20"]) == 0
    root = ET.parse(svg).getroot()
    assert root.get("viewBox") == "0 0 640 480"
    header = (tmp_path / f"{target}.csv").read_text().splitlines()[0]
    assert header in ("curve,t,p,P", "curve,x,y")


def test_scatter_with_no_points(tmp_path):
    svg = tmp_path / "s.svg"
    cli.main(["plot", "scatter", "-n", "0", "--output", str(svg)])
    root = ET.parse(svg).getroot()
    ns = "{http://www.w3.org/2000/svg}"
    layers = root.findall(f"{ns}g")
    assert len(layers) == 3 and all(len(g) == 0 for g in layers)


def test_jacobi_plus_touches_axis(tmp_path):
    cli.main(["plot", "jacobi_plus", "--output", str(tmp_path / "j.svg")])
    rows = [l.split(",") for l in (tmp_path / "j.csv").read_text().splitlines()[1:]]
    pts = [(float(x), float(y)) for c, x, y in rows if c == "jacobi_plus"]
    assert (1.0, 0.0) in pts


@settings(max_examples=25)
@given(st.lists(st.floats(-1e6, 1e6, allow_nan=False), min_size=6, max_size=6))
def test_record_roundtrip_is_lossless(g):
    rec = rp.parse_record({"id": "r", "gamma": g})
    out = rp.classify_record(rec) if abs(np.linalg.det(ta.ricci_closed_form(g))) > 1e-6 else None
    again = json.loads(rp.dumps({"gamma": rec["gamma"]}))
    assert again["gamma"] == rec["gamma"]
    if out is not None:
        assert json.loads(rp.dumps(out)) == out


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "affine_moduli", "sample", "zero", "-n", "2"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and len(res.stdout.splitlines()) == 2
