"""Type A structures: invariants, canonical forms, equivalence and isotropy.

Normal forms used throughout:

    Gamma_{+-}(x, y) = (x +- 1/x, 0, 0, x, x, y)          rho = +-Id
    Gamma_{0,1}(x, y) = (x, r, y, x, r, y),  r = sqrt(xy-1)
    Gamma_{0,2}(x, y) = (x, r, y, x, -r, y), r = sqrt(1-xy)
    exceptional(k)    = (1, 0, 1, 1, k, 1)                invariants (6, 5-4k)

The indefinite forms have rho = dx1 (x) dx2 + dx2 (x) dx1.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, least_squares

from . import region_geometry as rg
from .errors import (CanonicalizationError, DomainError, FlatInputError, WrongRankError,
                     WrongSignatureError)
from .tensor_core import (DEFAULT_TOL, ChristoffelA, LinearMap2, Tolerances, chi_batch,
                          invariants_batch, nabla_rho, pullback_tensor, ricci_closed_form,
                          ricci_type_a, to_tensor, to_vector)

SQRT2 = np.sqrt(2.0)
SWAP = np.array([[0.0, 1.0], [1.0, 0.0]])
NEG_SWAP = -SWAP
FLIP_X = np.diag([-1.0, 1.0])
FLIP_Y = np.diag([1.0, -1.0])
THETA_GRID = 64


# --- normal-form constructors ---------------------------------------------

def gamma_def(sign: int, x: float, y: float) -> ChristoffelA:
    e = 1.0 if sign > 0 else -1.0
    return ChristoffelA(x + e / x, 0.0, 0.0, x, x, y)


def gamma_plus(x, y):
    return gamma_def(+1, x, y)


def gamma_minus(x, y):
    return gamma_def(-1, x, y)


def gamma_indef1(x: float, y: float) -> ChristoffelA:
    if not x * y > 1:
        raise DomainError("Gamma_{0,1} needs xy > 1")
    r = np.sqrt(x * y - 1)
    return ChristoffelA(x, r, y, x, r, y)


def gamma_indef2(x: float, y: float) -> ChristoffelA:
    if not x * y < 1:
        raise DomainError("Gamma_{0,2} needs xy < 1")
    r = np.sqrt(1 - x * y)
    return ChristoffelA(x, r, y, x, -r, y)


def gamma_exceptional(k: float) -> ChristoffelA:
    return ChristoffelA(1.0, 0.0, 1.0, 1.0, k, 1.0)


GAMMA_CSP = ChristoffelA(-1 / SQRT2, 0.0, 0.0, 1 / SQRT2, 1 / SQRT2, 0.0)


def theta_indef(branch: int, x, y):
    """Closed forms of (psi3, Psi3) on Gamma_{0,1} (branch 1) or Gamma_{0,2} (branch 2)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    p = -2 + 8 * x * y
    if branch == 1:
        P = 1 - 4 * x * y + 8 * x * x * y * y - 4 * (x**3 + y**3) * np.sqrt(x * y - 1)
    else:
        P = 1 - 4 * x * y + 8 * x * x * y * y + 4 * (x**3 - y**3) * np.sqrt(1 - x * y)
    return p, P


def chi_closed(kind: str, x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if kind == "plus":
        return y * x**-3 * (4 * x**6 + x**4 * y**2 + x**2 * (y**2 - 3) - 1)
    if kind == "minus":
        return y * x**-3 * (-4 * x**6 - x**4 * y**2 + x**2 * (y**2 + 3) - 1)
    if kind == "indef1":
        return 8 * np.sqrt(x * y - 1) * (y**3 - x**3)
    if kind == "indef2":
        return 8 * np.sqrt(1 - x * y) * (x**3 + y**3)
    raise ValueError(kind)


# --- result records -------------------------------------------------------

@dataclass(frozen=True)
class Rank1Invariants:
    alpha: float
    epsilon: int
    is_symmetric: bool
    also_type_b: bool


@dataclass(frozen=True)
class CanonicalFormA:
    variant: str  # DefPlus, DefMinus, Indef1, Indef2, IndefExceptional
    x: float
    y: float
    witness: LinearMap2

    def symbol(self) -> ChristoffelA:
        if self.variant == "DefPlus":
            return gamma_plus(self.x, self.y)
        if self.variant == "DefMinus":
            return gamma_minus(self.x, self.y)
        if self.variant == "Indef1":
            return gamma_indef1(self.x, self.y)
        if self.variant == "Indef2":
            return gamma_indef2(self.x, self.y)
        return gamma_exceptional(self.x)


@dataclass(frozen=True)
class Rank2Invariants:
    sig: str  # plus / zero / minus
    psi3: float
    Psi3: float
    chi: float
    region: str  # interior / boundary / cusp
    iso_plus: int
    iso_full: int
    region_tag: rg.RegionTag


@dataclass(frozen=True)
class Flat:
    kind = "flat"


@dataclass(frozen=True)
class Rank1:
    invariants: Rank1Invariants
    kind = "rank1"


@dataclass(frozen=True)
class Rank2:
    invariants: Rank2Invariants
    canonical: CanonicalFormA
    kind = "rank2"


# --- helpers -------------------------------------------------------------

def _vec(g) -> np.ndarray:
    return g.as_vector() if isinstance(g, ChristoffelA) else np.asarray(g, dtype=float)


def _pull(v, a) -> np.ndarray:
    return to_vector(pullback_tensor(to_tensor(v), a))


def _frame_map(M) -> np.ndarray:
    return np.linalg.inv(np.asarray(M, dtype=float))


def _scale(*vs) -> float:
    return max(1.0, *(float(np.max(np.abs(v))) for v in vs))


def _sig_of(tag: str) -> str | None:
    return {"positive": "plus", "negative": "minus", "indefinite": "zero"}.get(tag)


def _cubic12(v, theta):
    """(T_theta^* Gamma)_12^1 as a cubic form in (cos, sin)."""
    a, b, c, d, e, f = v
    C, S = np.cos(theta), np.sin(theta)
    return C**3 * c + C * C * S * (e + d - a) + C * S * S * (f - c - b) - S**3 * d


def _clustered_root(v, radius=3e-5):
    """Angle of a near-triple root of the rotation cubic, else None.

    Bracketing resolves a triple root only to ~eps^(1/3); the centroid of the
    cluster (the root of the second derivative) is well conditioned.
    """
    a, b, c, d, e, f = v
    p, q = e + d - a, f - c - b
    if abs(d) >= abs(c):
        coeffs, use_tan = [-d, q, p, c], True  # in t = tan(theta)
    else:
        coeffs, use_tan = [c, p, q, -d], False  # in s = cot(theta)
    if coeffs[0] == 0:
        return None
    z = np.roots(coeffs)
    zbar = float(np.real(np.mean(z)))
    if np.max(np.abs(z - zbar)) > radius * (1 + abs(zbar)):
        return None
    th = np.arctan(zbar) if use_tan else np.arctan2(1.0, zbar)
    return float(th % np.pi)


def _theta_roots(v):
    th = _clustered_root(v)
    if th is not None:
        return [th]
    grid = np.linspace(0.0, np.pi, THETA_GRID + 1)
    vals = _cubic12(v, grid)
    scale = _scale(v)
    roots = []
    for i in range(THETA_GRID):
        lo, hi, flo, fhi = grid[i], grid[i + 1], vals[i], vals[i + 1]
        if flo == 0.0:
            roots.append(lo)
        elif flo * fhi < 0:
            roots.append(brentq(lambda t: _cubic12(v, t), lo, hi, xtol=1e-14, rtol=1e-15))
    if not roots:
        # tangential double root: take the grid minimum of |f|
        i = int(np.argmin(np.abs(vals[:-1])))
        if abs(vals[i]) <= 1e-8 * scale:
            roots.append(grid[i])
    return roots


def _ricci_normalizer(r):
    lam, U = np.linalg.eigh(r)
    M = np.diag(np.abs(lam) ** -0.5) @ U.T
    return lam, _frame_map(M)


def _read_definite(v, sign, tol_check=1e-6):
    """Signs flipped so x > 0, y >= 0; returns (x, y, flip_map) for a symbol with G12^1 = 0."""
    a = np.eye(2)
    if v[3] < 0:
        a = a @ FLIP_X
    w = _pull(v, a)
    if w[5] < 0:
        a = a @ FLIP_Y
        w = _pull(w, FLIP_Y)
    x, y = w[3], w[5]
    e = 1.0 if sign > 0 else -1.0
    if x <= 0:
        raise CanonicalizationError("degenerate definite normal form (x = 0)")
    resid = max(abs(w[0] - x - e / x), abs(w[1]), abs(w[2]), abs(w[4] - x))
    if resid > tol_check * _scale(w):
        raise CanonicalizationError(f"definite normalization residual {resid:.2e}")
    return float(x), float(max(y, 0.0)), a


def _definite_points(v, sign):
    """All normal forms reachable through roots of the rotation cubic.

    Returns list of (x, y, a) with pullback(v, a) ~ Gamma_sign(x, y).
    """
    r = ricci_closed_form(v)
    _, a0 = _ricci_normalizer(r)
    v1 = _pull(v, a0)
    out = []
    for th in _theta_roots(v1):
        aR = _frame_map([[np.cos(th), np.sin(th)], [-np.sin(th), np.cos(th)]])
        v2 = _pull(v1, aR)
        x, y, aS = _read_definite(v2, sign)
        out.append((x, y, a0 @ aR @ aS))
    if not out:
        raise CanonicalizationError("no root of the rotation cubic found")
    return out


def definite_partners(sign: int, x: float, y: float, tol: Tolerances = DEFAULT_TOL):
    """Points of the strip equivalent to (x, y) through the u-rotations.

    Returns [(x', y', a)] with pullback(Gamma(x, y), a) = Gamma(x', y'), x' > 0,
    y' >= 0, excluding the identity.  Also returns the signed values before
    the sign flips as the fourth entry.
    """
    v = gamma_def(sign, x, y).as_vector()
    out = []
    for u in rg.u_pm(sign, x, y, tol):
        if u is None:
            continue
        aR = _frame_map(rg.u_rotation_frame(u))
        w = _pull(v, aR)
        signed = (float(w[4]), float(w[5]))
        xp, yp, aS = _read_definite(w, sign)
        out.append((xp, yp, aR @ aS, signed))
    return out


def _orbit_points(sign, x, y, tol):
    pts = [(x, y, np.eye(2))]
    pts += [(xp, yp, a) for xp, yp, a, _ in definite_partners(sign, x, y, tol)]
    return pts


def _pick_fundamental(sign, pts):
    def key(p):
        return (round(rg.fundamental_violation(sign, p[0], p[1]), 12), p[0], p[1])
    return min(pts, key=key)


def _check_strip(x, y):
    if not (x > 0 and y >= 0 and np.isfinite(x) and np.isfinite(y)):
        raise DomainError(f"(x, y) = ({x!r}, {y!r}) is outside the strip x > 0, y >= 0")


def fundamental_rep(sign: int, x: float, y: float, tol: Tolerances = DEFAULT_TOL):
    _check_strip(x, y)
    xp, yp, _ = _pick_fundamental(sign, _orbit_points(sign, x, y, tol))
    return float(xp), float(yp)


def fundamental_rep_plus(x: float, y: float, tol: Tolerances = DEFAULT_TOL):
    """Unique point of C = {0<x<=1, 0<=y<=Y_+(x)} equivalent to (x, y)."""
    return fundamental_rep(+1, x, y, tol)


def fundamental_rep_minus(x: float, y: float, tol: Tolerances = DEFAULT_TOL):
    """Point of {0<x<=1/sqrt2, 0<=y<=Y_-(x)} equivalent to (x, y)."""
    return fundamental_rep(-1, x, y, tol)


def n_count(sig: str, x: float, y: float, tol: Tolerances = DEFAULT_TOL) -> int:
    """Number of distinct strip points in the orbit of (x, y)."""
    _check_strip(x, y)
    z = tol.zero_tol
    if sig == "plus":
        if abs(x - 1) <= z:
            return 1 if y <= z else 2
        if y <= z:
            return 1 if x < 1 else 2
        D = y * y + 4 * (x * x - 1)
        if abs(D) <= z * (1 + y * y):
            return 2
        if D < 0:
            return 1
        if x < 1:
            Y = float(rg.jacobi_locus_y_factored(+1, x))
            if abs(y - Y) <= z * (1 + Y):
                return 2
        return 3
    if sig == "minus":
        if y <= z:
            return 1 if abs(x - 1 / SQRT2) <= z else 2
        if x < 1:
            Y = float(rg.jacobi_locus_y_factored(-1, x))
            if abs(y - Y) <= z * (1 + Y):
                return 2
        return 3
    raise ValueError(f"sig must be 'plus' or 'minus', got {sig!r}")


# --- canonicalization -----------------------------------------------------

def _finish(variant, x, y, a, v, tol_check=1e-6):
    form = CanonicalFormA(variant, float(x), float(y), LinearMap2.from_matrix(a))
    target = form.symbol().as_vector()
    got = _pull(v, a)
    resid = float(np.max(np.abs(got - target)))
    if resid > tol_check * _scale(target, got):
        raise CanonicalizationError(f"{variant}: residual {resid:.2e}")
    return form


def canonicalize_definite(g, tol: Tolerances = DEFAULT_TOL) -> CanonicalFormA:
    v = _vec(g)
    rd = ricci_type_a(v, tol)
    sig = _sig_of(rd.signature) if rd.rank == 2 else None
    if sig not in ("plus", "minus"):
        raise WrongSignatureError(f"expected definite Ricci tensor, got {rd.signature}")
    sign = 1 if sig == "plus" else -1
    roots = _definite_points(v, sign)
    # the roots already list the orbit; the partners of one root guard against a
    # root lost to tangency
    x, y, a = roots[0]
    pts = roots + [(xp, yp, a @ b) for xp, yp, b in _orbit_points(sign, x, y, tol)[1:]]
    x, y, a = _pick_fundamental(sign, pts)
    return _finish("DefPlus" if sign > 0 else "DefMinus", x, y, a, v)


def _indef_normalize(v, tol):
    """Null frame plus SO(1,1) scaling.

    Returns (branch, x, y, a) with branch 1, 2 or 0 (exceptional) and
    pullback(v, a) equal to the branch normal form (before residual choices).
    For branch 0, x holds k.
    """
    r = ricci_closed_form(v)
    lam, U = np.linalg.eigh(r)  # lam[0] < 0 < lam[1]
    n_neg = U[:, 0] / np.sqrt(-lam[0])
    n_pos = U[:, 1] / np.sqrt(lam[1])
    M = np.array([n_pos + n_neg, n_pos - n_neg]) / SQRT2
    a = _frame_map(M)
    w = _pull(v, a)
    sc = _scale(w)
    if max(abs(w[0] - w[3]), abs(w[2] - w[5])) > 1e-6 * sc:
        raise CanonicalizationError("null frame did not force the indefinite relations")
    x, y = w[3], w[2]
    A, B = w[1], w[4]  # G11^2, G22^1 with A * B = xy - 1
    prod = x * y - 1
    if abs(prod) <= tol.zero_tol * max(1.0, abs(x * y)):
        if abs(A) > abs(B):
            a = a @ SWAP
            w = _pull(w, SWAP)
            x, y, A, B = w[3], w[2], w[1], w[4]
        m = 1.0 / x
        s = np.diag([m, 1.0 / m])
        a = a @ _frame_map(s)
        w = _pull(w, _frame_map(s))
        return 0, float(w[4]), 1.0, a
    ratio = B / A if prod > 0 else -B / A
    m = np.sign(A) * ratio ** (1.0 / 6.0)
    s = _frame_map(np.diag([m, 1.0 / m]))
    a = a @ s
    w = _pull(w, s)
    return (1 if prod > 0 else 2), float(w[3]), float(w[2]), a


def _indef_residual(branch):
    """Discrete residual maps (besides identity) preserving the branch normal form."""
    if branch == 1:
        return [SWAP]
    if branch == 2:
        return [NEG_SWAP]
    return []


def _indef_choose(branch, x, y, tol):
    """Whether to apply the residual map to reach the preferred representative."""
    z = tol.zero_tol
    if branch == 1:
        return abs(x) < abs(y) - z * max(1.0, abs(y))
    if branch == 2:
        if abs(x * y) <= z * max(1.0, abs(x), abs(y)):
            return abs(x) > abs(y)  # land on the x = 0 form
        if x * y > 0:
            return x < 0
        return abs(x) < abs(y) - z * max(1.0, abs(y))
    return False


def canonicalize_indefinite(g, tol: Tolerances = DEFAULT_TOL) -> CanonicalFormA:
    v = _vec(g)
    rd = ricci_type_a(v, tol)
    if rd.rank != 2 or rd.signature != "indefinite":
        raise WrongSignatureError(f"expected indefinite Ricci tensor, got {rd.signature}")
    branch, x, y, a = _indef_normalize(v, tol)
    if branch == 0:
        return _finish("IndefExceptional", x, 1.0, a, v)
    if _indef_choose(branch, x, y, tol):
        (rmap,) = _indef_residual(branch)
        a = a @ rmap
        x, y = (y, x) if branch == 1 else (-y, -x)
    return _finish("Indef1" if branch == 1 else "Indef2", x, y, a, v)


def canonicalize(g, tol: Tolerances = DEFAULT_TOL) -> CanonicalFormA:
    rd = ricci_type_a(g, tol)
    if rd.rank != 2:
        raise WrongRankError(f"canonical forms need rank 2, got rank {rd.rank}")
    if rd.signature == "indefinite":
        return canonicalize_indefinite(g, tol)
    return canonicalize_definite(g, tol)


# --- rank 1 ----------------------------------------------------------------

def alpha_at(g, X) -> float:
    v = _vec(g)
    X = np.asarray(X, dtype=float)
    r = ricci_closed_form(v)
    N = nabla_rho(v)
    num = float(np.einsum("ijk,i,j,k->", N, X, X, X))
    den = float(X @ r @ X)
    return num * num / den**3


def rank1_invariants(g, tol: Tolerances = DEFAULT_TOL) -> Rank1Invariants:
    v = _vec(g)
    rd = ricci_type_a(v, tol)
    if rd.rank != 1:
        raise WrongRankError(f"rank-1 invariants need rank 1, got rank {rd.rank}")
    lam, U = np.linalg.eigh(rd.matrix)
    i = int(np.argmax(np.abs(lam)))
    X = U[:, i]
    alpha = alpha_at(v, X)
    eps = 1 if lam[i] > 0 else -1
    sym = abs(alpha) <= tol.zero_tol
    if sym:
        alpha = 0.0
        also_b = eps < 0
    else:
        at_16 = abs(alpha - 16) <= tol.invariant_tol * 16
        also_b = alpha < 0 or alpha >= 16 or at_16
    return Rank1Invariants(float(alpha), eps, sym, bool(also_b))


# --- rank 2 ----------------------------------------------------------------

def _rank2_sig(v, tol):
    rd = ricci_type_a(v, tol)
    if rd.rank != 2:
        raise WrongRankError(f"expected rank 2, got rank {rd.rank}")
    return _sig_of(rd.signature)


def _region_of(sig, tag: rg.RegionTag) -> str:
    if tag.position == "cusp" and sig == "minus":
        return "cusp"
    return "boundary" if tag.on_boundary else "interior"


_ISO = {"interior": (1, 1), "boundary": (1, 2), "cusp": (3, 6)}


def rank2_invariants(g, tol: Tolerances = DEFAULT_TOL) -> Rank2Invariants:
    v = _vec(g)
    sig = _rank2_sig(v, tol)
    p, P = (float(t) for t in invariants_batch(v))
    c = float(chi_batch(v))
    tag = rg.region_classify(p, P, tol)
    region = _region_of(sig, tag)
    ip, ifull = _ISO[region]
    return Rank2Invariants(sig, p, P, c, region, ip, ifull, tag)


def isotropy_orders_a(g, tol: Tolerances = DEFAULT_TOL):
    inv = rank2_invariants(g, tol)
    return inv.iso_plus, inv.iso_full


def classify_a(g, tol: Tolerances = DEFAULT_TOL):
    v = _vec(g)
    rd = ricci_type_a(v, tol)
    if rd.rank == 0:
        return Flat()
    if rd.rank == 1:
        return Rank1(rank1_invariants(v, tol))
    return Rank2(rank2_invariants(v, tol), canonicalize(v, tol))


# --- equivalence -----------------------------------------------------------

def _close(a, b, rtol):
    return abs(a - b) <= rtol * max(1.0, abs(a), abs(b))


def equivalent_a(g1, g2, oriented: bool = False, tol: Tolerances = DEFAULT_TOL) -> bool:
    v1, v2 = _vec(g1), _vec(g2)
    r1, r2 = ricci_type_a(v1, tol), ricci_type_a(v2, tol)
    if r1.rank == 0 or r2.rank == 0:
        raise FlatInputError("equivalence is only decided for non-flat structures")
    if r1.rank != r2.rank:
        return False
    it = tol.invariant_tol
    if r1.rank == 1:
        a1, a2 = rank1_invariants(v1, tol), rank1_invariants(v2, tol)
        return a1.epsilon == a2.epsilon and _close(a1.alpha, a2.alpha, it)
    if r1.signature != r2.signature:
        return False
    p1, q1 = invariants_batch(v1)
    p2, q2 = invariants_batch(v2)
    if not (_close(p1, p2, it) and _close(q1, q2, it)):
        return False
    if oriented:
        return _close(float(chi_batch(v1)), float(chi_batch(v2)), it)
    return True


def _same(v, w, rtol=1e-6):
    return float(np.max(np.abs(v - w))) <= rtol * _scale(v, w)


def _reflections(form: CanonicalFormA, tol):
    """Orientation-reversing maps fixing the canonical symbol (may be empty)."""
    v = form.symbol().as_vector()
    cands = []
    if form.variant in ("DefPlus", "DefMinus"):
        sign = 1 if form.variant == "DefPlus" else -1
        for xp, yp, a in _orbit_points(sign, form.x, form.y, tol):
            cands.append(a @ FLIP_Y @ np.linalg.inv(a))
    else:
        cands += [SWAP, NEG_SWAP]
    return [R for R in cands if _same(_pull(v, R), v)]


def _match_forms(f1: CanonicalFormA, f2: CanonicalFormA, tol, rtol=1e-6):
    """Map b with pullback(symbol(f2), b) == symbol(f1), or None."""
    v1, v2 = f1.symbol().as_vector(), f2.symbol().as_vector()
    if _same(v1, v2, rtol):
        return np.eye(2)
    if f2.variant in ("DefPlus", "DefMinus") and f1.variant == f2.variant:
        sign = 1 if f2.variant == "DefPlus" else -1
        best = None
        for xp, yp, a in _orbit_points(sign, f2.x, f2.y, tol):
            w = _pull(v2, a)
            if _same(w, v1, rtol):
                d = float(np.max(np.abs(w - v1)))
                if best is None or d < best[0]:
                    best = (d, a)
        return None if best is None else best[1]
    if f1.variant == f2.variant:
        for b in [SWAP, NEG_SWAP]:
            if _same(_pull(v2, b), v1, rtol):
                return b
    return None


def _polish(v1, v2, t):
    """Gauss-Newton refinement of t toward pullback(v1, t) == v2."""
    scale = _scale(v1, v2)
    if float(np.max(np.abs(_pull(v1, t) - v2))) <= 1e-12 * scale:
        return t
    sol = least_squares(lambda z: _pull(v1, z.reshape(2, 2)) - v2, t.ravel(), method="lm",
                        xtol=1e-15, ftol=1e-15, gtol=1e-15)
    return sol.x.reshape(2, 2)


def equivalence_witness_a(g1, g2, oriented: bool = False, tol: Tolerances = DEFAULT_TOL):
    """LinearMap2 t with pullback_a(g1, t) == g2, or None when inequivalent.

    Only rank-2 structures carry witnesses.
    """
    v1, v2 = _vec(g1), _vec(g2)
    if not equivalent_a(v1, v2, oriented, tol):
        return None
    if ricci_type_a(v1, tol).rank != 2:
        raise WrongRankError("witnesses are only constructed for rank 2")
    f1, f2 = canonicalize(v1, tol), canonicalize(v2, tol)
    b = _match_forms(f1, f2, tol)
    if b is None:
        # near multiple rotation roots the forms agree only to ~eps^(1/3)
        b = _match_forms(f1, f2, tol, rtol=1e-3)
    if b is None:
        return None
    W1, W2 = f1.witness.matrix, f2.witness.matrix
    # pull(g1, W1) = N1 = pull(g2, W2 @ b)
    t = W1 @ np.linalg.inv(W2 @ b)
    if oriented and np.linalg.det(t) < 0:
        refl = _reflections(f1, tol)
        if not refl:
            return None
        t = W1 @ refl[0] @ np.linalg.inv(W2 @ b)
    t = _polish(v1, v2, t)
    if not _same(_pull(v1, t), v2, 1e-9) or (oriented and np.linalg.det(t) < 0):
        return None
    return LinearMap2.from_matrix(t)
