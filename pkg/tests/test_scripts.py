import importlib.util
from pathlib import Path

import numpy as np

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


def load(name):
    spec = importlib.util.spec_from_file_location(name, SCRIPTS / f"{name}.py")
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


def test_containment_scan():
    mod = load("containment_scan")
    res = mod.run(mod.ScanConfig(n=200, seed=1))["results"]
    assert all(r["violations"] == 0 for r in res.values())


def test_gluing_check():
    mod = load("gluing_check")
    rows = np.array(mod.run(mod.GluingConfig(n=40)))
    assert np.nanmax(rows[:, 1:]) < 1e-10


def test_render_figures(tmp_path):
    mod = load("render_figures")
    paths = mod.run(mod.RenderConfig(outdir=str(tmp_path), samples=30, points=10))
    assert len(paths) == 6 and all(p.exists() and p.with_suffix(".csv").exists() for p in paths)
