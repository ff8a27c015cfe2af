"""Sample random GL(2) images of each normal-form family and tally which region codes
their (psi3, Psi3) invariants land in."""
import argparse
import json
from dataclasses import asdict, dataclass

import numpy as np

from affine_moduli import region_geometry as rg
from affine_moduli.sampling import make_rng, sample_type_a
from affine_moduli.tensor_core import invariants_batch

ALLOWED = {"plus": {2, 3}, "minus": {0, 4, 5}, "zero": {1, 3, 4, 5}}


@dataclass
class ScanConfig:
    n: int = 10_000
    seed: int = 0
    tol: float = 1e-7
    sigs: tuple = ("plus", "minus", "zero")


def run(cfg: ScanConfig) -> dict:
    rng = make_rng(cfg.seed)
    out = {"config": asdict(cfg), "results": {}}
    for sig in cfg.sigs:
        v = np.array(sample_type_a(rng, sig, cfg.n)) if cfg.n else np.zeros((0, 6))
        codes = rg.region_codes(*invariants_batch(v), tol=cfg.tol) if cfg.n else np.zeros(0, int)
        hist = {int(c): int(k) for c, k in zip(*np.unique(codes, return_counts=True))}
        bad = sum(k for c, k in hist.items() if c not in ALLOWED[sig])
        out["results"][sig] = {"codes": hist, "violations": bad}
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-n", type=int, default=ScanConfig.n)
    ap.add_argument("--seed", type=int, default=ScanConfig.seed)
    ap.add_argument("--tol", type=float, default=ScanConfig.tol)
    a = ap.parse_args()
    print(json.dumps(run(ScanConfig(n=a.n, seed=a.seed, tol=a.tol)), indent=2))


if __name__ == "__main__":
    main()
