"""SVG 1.1 and CSV emission for the moduli-region figures.  Hand-written, no plotting backend."""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from xml.sax.saxutils import escape

import numpy as np

from . import region_geometry as rg
from .sampling import make_rng, sample_type_a
from .tensor_core import invariants_batch

WIDTH, HEIGHT, PAD = 640, 480, 40
COLORS = {"sigma_plus": "#c0392b", "sigma_minus": "#2471a3", "plus": "#c0392b",
          "minus": "#2471a3", "zero": "#27ae60", "discriminant": "#8e44ad", "axis": "#555555",
          "jacobi_plus": "#c0392b", "jacobi_minus": "#2471a3", "ray": "#555555"}
TARGETS = ("regions", "jacobi_plus", "jacobi_minus", "zones_plus", "zones_minus", "scatter")


@dataclass
class Figure:
    title: str
    xlabel: str
    ylabel: str
    xlim: tuple
    ylim: tuple
    curves: list = field(default_factory=list)  # (name, params, xs, ys)
    points: dict = field(default_factory=dict)  # layer -> (xs, ys)
    params_name: str = "t"


def _sigma_params(n):
    t = np.concatenate([np.geomspace(0.25, 2.0, n), [1.0, rg.T_CUSP]])
    return np.unique(t)


def regions_figure(n=400) -> Figure:
    t = _sigma_params(n)
    fig = Figure("Boundary curves of the invariant image", "psi3", "Psi3", (-14, 20), (-2, 30))
    fig.curves.append(("sigma_plus", t, *rg.sigma_plus(t)))
    fig.curves.append(("sigma_minus", t, *rg.sigma_minus(t)))
    return fig


def _jacobi_curve(sign, n):
    if sign > 0:
        x = np.unique(np.concatenate([np.linspace(0.12, 1.0, n), [1.0]]))
    else:
        x = np.unique(np.concatenate([np.linspace(0.12, 0.96, n), [1 / np.sqrt(2)]]))
    return x, rg.jacobi_locus_y_factored(sign, x)


def jacobi_figure(sign, n=400) -> Figure:
    name = "jacobi_plus" if sign > 0 else "jacobi_minus"
    fig = Figure(f"Jacobi locus ({'positive' if sign > 0 else 'negative'} definite)", "x", "y",
                 (0, 2), (0, 8), params_name="x")
    x, y = _jacobi_curve(sign, n)
    fig.curves.append((name, x, x, y))
    fig.curves.append(("axis", np.array([0.0, 2.0]), np.array([0.0, 2.0]), np.zeros(2)))
    if sign > 0:
        fig.curves.append(("ray", np.array([0.0, 8.0]), np.ones(2), np.array([0.0, 8.0])))
    return fig


def zones_figure(sign, n=400) -> Figure:
    fig = jacobi_figure(sign, n)
    fig.title = f"Zones of the {'positive' if sign > 0 else 'negative'} definite strip"
    if sign > 0:
        x = np.linspace(0.0, 1.0, n)
        fig.curves.append(("discriminant", x, x, 2 * np.sqrt(1 - x * x)))
    else:
        fig.curves.append(("ray", np.array([0.0, 8.0]), np.full(2, 1 / np.sqrt(2)), np.array([0.0, 8.0])))
        fig.curves.append(("ray", np.array([0.0, 8.0]), np.ones(2), np.array([0.0, 8.0])))
    return fig


def scatter_figure(n=200, seed=0) -> Figure:
    fig = regions_figure()
    fig.title = "Invariant images of random structures"
    rng = make_rng(seed)
    for sig in ("plus", "zero", "minus"):
        vs = sample_type_a(rng, sig, n)
        if vs:
            p, P = invariants_batch(np.array(vs))
        else:
            p, P = np.zeros(0), np.zeros(0)
        fig.points[sig] = (np.asarray(p), np.asarray(P))
    return fig


def build(target, n=400, seed=0, points=200) -> Figure:
    if target == "regions":
        return regions_figure(n)
    if target == "jacobi_plus":
        return jacobi_figure(+1, n)
    if target == "jacobi_minus":
        return jacobi_figure(-1, n)
    if target == "zones_plus":
        return zones_figure(+1, n)
    if target == "zones_minus":
        return zones_figure(-1, n)
    if target == "scatter":
        return scatter_figure(points, seed)
    raise ValueError(f"unknown plot target {target!r}")


def _to_px(fig, x, y):
    (x0, x1), (y0, y1) = fig.xlim, fig.ylim
    px = PAD + (np.asarray(x) - x0) / (x1 - x0) * (WIDTH - 2 * PAD)
    py = HEIGHT - PAD - (np.asarray(y) - y0) / (y1 - y0) * (HEIGHT - 2 * PAD)
    return px, py


def _inside(fig, x, y):
    (x0, x1), (y0, y1) = fig.xlim, fig.ylim
    return (x >= x0) & (x <= x1) & (y >= y0) & (y <= y1) & np.isfinite(x) & np.isfinite(y)


def to_svg(fig: Figure) -> str:
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f"<title>{escape(fig.title)}</title>",
        f'<rect x="{PAD}" y="{PAD}" width="{WIDTH - 2 * PAD}" height="{HEIGHT - 2 * PAD}" '
        'fill="none" stroke="#999999"/>',
        f'<text x="{WIDTH / 2}" y="{HEIGHT - 8}" text-anchor="middle" font-size="12">{escape(fig.xlabel)}</text>',
        f'<text x="12" y="{HEIGHT / 2}" font-size="12" transform="rotate(-90 12 {HEIGHT / 2})">'
        f"{escape(fig.ylabel)}</text>",
    ]
    for name, _, xs, ys in fig.curves:
        xs, ys = np.asarray(xs, float), np.asarray(ys, float)
        keep = _inside(fig, xs, ys)
        px, py = _to_px(fig, xs[keep], ys[keep])
        pts = " ".join(f"{a:.3f},{b:.3f}" for a, b in zip(px, py))
        out.append(f'<polyline id="{escape(name)}" class="curve" fill="none" '
                   f'stroke="{COLORS.get(name, "#000000")}" stroke-width="1.5" points="{pts}"/>')
    for layer, (xs, ys) in fig.points.items():
        out.append(f'<g id="layer-{escape(layer)}" fill="{COLORS.get(layer, "#000000")}">')
        xs, ys = np.asarray(xs, float), np.asarray(ys, float)
        keep = _inside(fig, xs, ys)
        px, py = _to_px(fig, xs[keep], ys[keep])
        out += [f'<circle cx="{a:.3f}" cy="{b:.3f}" r="1.5"/>' for a, b in zip(px, py)]
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_csv(fig: Figure, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        if fig.params_name == "t":
            w.writerow(["curve", "t", "p", "P"])
        else:
            w.writerow(["curve", "x", "y"])
        for name, params, xs, ys in fig.curves:
            for t, a, b in zip(params, xs, ys):
                row = [name, repr(float(t)), repr(float(a)), repr(float(b))]
                w.writerow(row if fig.params_name == "t" else [name, repr(float(a)), repr(float(b))])
        for layer, (xs, ys) in fig.points.items():
            for a, b in zip(xs, ys):
                w.writerow([f"point_{layer}", "", repr(float(a)), repr(float(b))])
