"""Sweep the boundary parameter u and compare the indefinite families, evaluated on
their gluing lines, against the sigma curves."""
import argparse
from dataclasses import dataclass

import numpy as np

from affine_moduli import region_geometry as rg
from affine_moduli import type_a as ta
from affine_moduli.tensor_core import invariants_batch


@dataclass
class GluingConfig:
    u_min: float = 0.1
    u_max: float = 3.0
    n: int = 200


def _rel(a, b):
    a, b = np.asarray(a, float), np.asarray(b, float)
    return float(np.max(np.abs(a - b) / np.maximum(1.0, np.maximum(np.abs(a), np.abs(b)))))


def run(cfg: GluingConfig):
    k = 2 ** -1.5
    rows = []
    for u in np.linspace(cfg.u_min, cfg.u_max, cfg.n):
        if abs(u - rg.T_CUSP) < 1e-9:
            continue
        v = k * (2 * u + 1 / u) * (1 if u < rg.T_CUSP else -1)
        v2 = k * (2 * u - 1 / u)
        e1 = _rel(ta.theta_indef(1, v, v), rg.sigma_plus(u))
        e2 = _rel(ta.theta_indef(2, v2, -v2), rg.sigma_minus(u))
        # same comparison through the general invariant formulas
        s1 = _rel(invariants_batch(ta.gamma_indef1(v, v).as_vector()), rg.sigma_plus(u)) \
            if v * v > 1 else np.nan
        s2 = _rel(invariants_batch(ta.gamma_indef2(v2, -v2).as_vector()), rg.sigma_minus(u))
        rows.append((u, e1, e2, s1, s2))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-n", type=int, default=GluingConfig.n)
    ap.add_argument("--u-min", type=float, default=GluingConfig.u_min)
    ap.add_argument("--u-max", type=float, default=GluingConfig.u_max)
    a = ap.parse_args()
    rows = run(GluingConfig(a.u_min, a.u_max, a.n))
    print("u,closed_plus,closed_minus,symbol_plus,symbol_minus")
    for r in rows:
        print(",".join(f"{x:.6g}" for x in r))
    arr = np.array([r[1:] for r in rows])
    print(f"# worst: {np.nanmax(arr):.3e}")


if __name__ == "__main__":
    main()
