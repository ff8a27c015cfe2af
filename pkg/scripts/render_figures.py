"""Write every plot target as SVG plus CSV into one directory."""
import argparse
from dataclasses import dataclass
from pathlib import Path

from affine_moduli import plotting


@dataclass
class RenderConfig:
    outdir: str = "figures"
    samples: int = 400
    points: int = 200
    seed: int = 0


def run(cfg: RenderConfig):
    out = Path(cfg.outdir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for target in plotting.TARGETS:
        fig = plotting.build(target, n=cfg.samples, seed=cfg.seed, points=cfg.points)
        svg = out / f"{target}.svg"
        svg.write_text(plotting.to_svg(fig))
        plotting.write_csv(fig, svg.with_suffix(".csv"))
        written.append(svg)
    return written


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default=RenderConfig.outdir)
    ap.add_argument("--samples", type=int, default=RenderConfig.samples)
    ap.add_argument("--points", type=int, default=RenderConfig.points)
    ap.add_argument("--seed", type=int, default=RenderConfig.seed)
    a = ap.parse_args()
    for p in run(RenderConfig(a.outdir, a.samples, a.points, a.seed)):
        print(p)


if __name__ == "__main__":
    main()
