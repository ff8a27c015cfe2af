"""Independent oracles shared by the unit and acceptance tests."""
import numpy as np
from scipy.optimize import minimize_scalar

from affine_moduli.tensor_core import pullback_tensor, ricci_closed_form, to_tensor, to_vector


def pull(v, a):
    return to_vector(pullback_tensor(to_tensor(np.asarray(v, float)), np.asarray(a, float)))


def rel_residual(v, w):
    v, w = np.asarray(v, float), np.asarray(w, float)
    return float(np.max(np.abs(v - w)) / max(1.0, np.max(np.abs(w))))


def _rot(t):
    return np.array([[np.cos(t), -np.sin(t)], [np.sin(t), np.cos(t)]])


def isotropy_oracle(v, grid=2880, tol=1e-8):
    """(|fixers in GL+|, |fixers in GL|) for a definite symbol by brute search over O(rho)."""
    r = ricci_closed_form(v)
    lam, U = np.linalg.eigh(r)
    M = np.diag(np.abs(lam) ** -0.5) @ U.T  # M r M^T = +-Id
    w = pull(v, np.linalg.inv(M))
    scale = max(1.0, np.max(np.abs(w)))
    counts = []
    for refl in (np.eye(2), np.diag([1.0, -1.0])):
        f = lambda t: np.sum((pull(w, _rot(t) @ refl) - w) ** 2) / scale**2
        ts = np.linspace(0, 2 * np.pi, grid, endpoint=False)
        mats = np.einsum("nij,jk->nik", np.stack([_rot(t) for t in ts]), refl)
        vals = np.sum((pull(w, mats) - w) ** 2, axis=-1) / scale**2
        found = []
        h = ts[1] - ts[0]
        for i in range(grid):
            if vals[i] <= vals[i - 1] and vals[i] <= vals[(i + 1) % grid] and vals[i] < 1e-2:
                res = minimize_scalar(f, bounds=(ts[i] - h, ts[i] + h), method="bounded",
                                      options={"xatol": 1e-13})
                if res.fun < tol:
                    t = res.x % (2 * np.pi)
                    if all(min(abs(t - s), 2 * np.pi - abs(t - s)) > 1e-5 for s in found):
                        found.append(t)
        counts.append(len(found))
    return counts[0], counts[0] + counts[1]
