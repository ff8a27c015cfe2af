"""Index conventions, pullback actions and Ricci contractions.

A symbol is stored as the 6-vector

    (G_11^1, G_11^2, G_12^1, G_12^2, G_22^1, G_22^2)

and expanded to an array ``G[i, j, k] = G_ij^k`` symmetric in (i, j).  Index 0
stands for the coordinate x^1 and index 1 for x^2.

Linear maps act contravariantly.  A map with matrix ``a = (a_i^j)`` pulls a
symbol back through the frame ``M = a^{-1}`` whose rows are the new basis
vectors ``e_i = M[i, a] d_a``; composition obeys

    pullback(g, t1 @ t2) == pullback(pullback(g, t1), t2).

Most helpers accept leading batch axes so the property suites can run on
thousands of samples without Python loops.
"""
from __future__ import annotations

from dataclasses import astuple, dataclass, fields

import numpy as np

from .errors import InvalidMapError, RankDeficientError

IDX = ((0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1), (1, 1, 0), (1, 1, 1))
COMPONENT_NAMES = ("G11^1", "G11^2", "G12^1", "G12^2", "G22^1", "G22^2")


@dataclass(frozen=True)
class Tolerances:
    zero_tol: float = 1e-9
    invariant_tol: float = 1e-8
    rank_tol: float = 1e-9

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not (np.isfinite(v) and v > 0):
                raise ValueError(f"{f.name} must be a positive finite number, got {v!r}")
        if self.zero_tol >= 1:
            raise ValueError("zero_tol must be < 1")


DEFAULT_TOL = Tolerances()


class _Six:
    """Shared behaviour of the two six-component symbol containers."""

    def __post_init__(self):
        for f in fields(self):
            v = float(getattr(self, f.name))
            if not np.isfinite(v):
                raise ValueError(f"component {f.name} is not finite: {v!r}")
            object.__setattr__(self, f.name, v)

    @classmethod
    def from_vector(cls, v):
        v = np.asarray(v, dtype=float).reshape(-1)
        if v.shape != (6,):
            raise ValueError(f"expected 6 components, got {v.size}")
        return cls(*v.tolist())

    @classmethod
    def from_tensor(cls, G):
        return cls.from_vector(to_vector(G))

    def as_vector(self) -> np.ndarray:
        return np.array([getattr(self, f.name) for f in fields(self)], dtype=float)

    def tensor(self) -> np.ndarray:
        return to_tensor(self.as_vector())


@dataclass(frozen=True)
class ChristoffelA(_Six):
    g111: float
    g112: float
    g121: float
    g122: float
    g221: float
    g222: float


@dataclass(frozen=True)
class LinearMap2:
    a11: float
    a12: float
    a21: float
    a22: float

    def __post_init__(self):
        m = np.array(astuple(self), dtype=float)
        if not np.all(np.isfinite(m)):
            raise InvalidMapError("map entries must be finite")
        for f, v in zip(fields(self), m):
            object.__setattr__(self, f.name, float(v))
        d = self.det
        scale = max(1.0, float(np.max(np.abs(m))) ** 2)
        if abs(d) <= DEFAULT_TOL.zero_tol * scale:
            raise InvalidMapError(f"map is singular (det={d:.3e})")

    @classmethod
    def from_matrix(cls, a):
        a = np.asarray(a, dtype=float)
        return cls(a[0, 0], a[0, 1], a[1, 0], a[1, 1])

    @classmethod
    def from_frame(cls, M):
        """The map whose pullback uses the frame rows of ``M``."""
        return cls.from_matrix(np.linalg.inv(np.asarray(M, dtype=float)))

    @classmethod
    def identity(cls):
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def rotation(cls, theta):
        c, s = np.cos(theta), np.sin(theta)
        return cls.from_frame([[c, s], [-s, c]])

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a11, self.a12], [self.a21, self.a22]])

    @property
    def frame(self) -> np.ndarray:
        return np.linalg.inv(self.matrix)

    @property
    def det(self) -> float:
        return self.a11 * self.a22 - self.a12 * self.a21

    def inverse(self) -> "LinearMap2":
        return LinearMap2.from_matrix(np.linalg.inv(self.matrix))

    def __matmul__(self, other: "LinearMap2") -> "LinearMap2":
        return LinearMap2.from_matrix(self.matrix @ other.matrix)


@dataclass(frozen=True)
class RicciData:
    r11: float
    r12: float
    r21: float
    r22: float
    rank: int
    signature: str

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.r11, self.r12], [self.r21, self.r22]])


# --- array level helpers -------------------------------------------------

_I, _J, _K = (np.array(t) for t in zip(*IDX))


def to_tensor(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    G = np.zeros(v.shape[:-1] + (2, 2, 2))
    G[..., _I, _J, _K] = v
    G[..., _J, _I, _K] = v
    return G


def to_vector(G) -> np.ndarray:
    G = np.asarray(G, dtype=float)
    return G[..., _I, _J, _K]


def _as_vec(g) -> np.ndarray:
    if isinstance(g, _Six):
        return g.as_vector()
    return np.asarray(g, dtype=float)


def _as_map(t) -> np.ndarray:
    if isinstance(t, LinearMap2):
        return t.matrix
    return np.asarray(t, dtype=float)


def ricci_closed_form(v) -> np.ndarray:
    """Closed-form Ricci matrix of a constant symbol; batched over leading axes."""
    v = np.asarray(v, dtype=float)
    a, b, c, d, e, f = (v[..., n] for n in range(6))
    r11 = d * (a - d) + b * (f - c)
    r12 = c * d - b * e
    r22 = e * (a - d) + c * (f - c)
    out = np.empty(v.shape[:-1] + (2, 2))
    out[..., 0, 0] = r11
    out[..., 0, 1] = r12
    out[..., 1, 0] = r12
    out[..., 1, 1] = r22
    return out


def curvature_tensor(G, dG=None) -> np.ndarray:
    """R[a, b, c, n]: the d_n component of R(d_a, d_b) d_c.

    ``dG[l, i, j, k]`` holds d_l G_ij^k (zero for constant symbols).
    """
    G = np.asarray(G, dtype=float)
    R = np.einsum("...bcm,...amn->...abcn", G, G) - np.einsum("...acm,...bmn->...abcn", G, G)
    if dG is not None:
        R = R + dG - np.swapaxes(dG, -4, -3)
    return R


def ricci_from_curvature(G, dG=None) -> np.ndarray:
    """rho(X, Y) = Tr{Z -> R(Z, X) Y}, i.e. rho_jk = R[l, j, k, l]."""
    return np.einsum("...ljkl->...jk", curvature_tensor(G, dG))


def pullback_tensor(G, a) -> np.ndarray:
    """Pull back by the map with matrix ``a`` (frame ``a^{-1}``)."""
    a = np.asarray(a, dtype=float)
    d = a[..., 0, 0] * a[..., 1, 1] - a[..., 0, 1] * a[..., 1, 0]
    M = np.stack([np.stack([a[..., 1, 1], -a[..., 0, 1]], -1),
                  np.stack([-a[..., 1, 0], a[..., 0, 0]], -1)], -2) / np.asarray(d)[..., None, None]
    return np.einsum("...ia,...jb,...abg,...gk->...ijk", M, M, G, a)


def rho3_tensor(G) -> np.ndarray:
    return np.einsum("...ikl,...jlk->...ij", G, G)


def symmetric_eigen_tags(r, rank_tol):
    """Rank and signature tag from the eigenvalues of the symmetric part."""
    r = np.asarray(r, dtype=float)
    sym = 0.5 * (r + r.T)
    lam = np.linalg.eigvalsh(sym)
    thr = rank_tol * max(1.0, float(np.linalg.norm(r)))
    pos = int(np.sum(lam > thr))
    neg = int(np.sum(lam < -thr))
    rank = pos + neg
    if rank == 2:
        sig = "positive" if pos == 2 else "negative" if neg == 2 else "indefinite"
    elif rank == 1:
        sig = "degenerate-rank1-positive" if pos else "degenerate-rank1-negative"
    else:
        sig = "zero"
    return rank, sig


def _ricci_data(r, tol, rank=None) -> RicciData:
    rk, sig = symmetric_eigen_tags(r, tol.rank_tol)
    if rank is not None and rank != rk:
        # non-symmetric matrix whose singular values disagree with its
        # symmetric part; report the matrix rank and keep the tag consistent
        rk = rank
        if rank == 0:
            sig = "zero"
    return RicciData(float(r[0, 0]), float(r[0, 1]), float(r[1, 0]), float(r[1, 1]), rk, sig)


def matrix_rank(r, rank_tol) -> int:
    s = np.linalg.svd(np.asarray(r, dtype=float), compute_uv=False)
    thr = rank_tol * max(1.0, float(np.linalg.norm(r)))
    return int(np.sum(s > thr))


# --- public single-structure API ----------------------------------------

def ricci_type_a(g, tol: Tolerances = DEFAULT_TOL) -> RicciData:
    return _ricci_data(ricci_closed_form(_as_vec(g)), tol)


def ricci_oracle(g, family: str = "A", tol: Tolerances = DEFAULT_TOL) -> RicciData:
    """Ricci tensor from the full curvature formula.

    Family B means Gamma(x) = C / x^1; the result is the coefficient of
    (x^1)^-2, obtained by evaluating at x^1 = 1 including derivative terms.
    """
    G = to_tensor(_as_vec(g))
    if family == "A":
        r = ricci_from_curvature(G)
        return _ricci_data(r, tol)
    if family == "B":
        dG = np.zeros((2, 2, 2, 2))
        dG[0] = -G  # d_1 (C / x^1) = -C / (x^1)^2 at x^1 = 1
        r = ricci_from_curvature(G, dG)
        return _ricci_data(r, tol, rank=matrix_rank(r, tol.rank_tol))
    raise ValueError(f"family must be 'A' or 'B', got {family!r}")


def pullback_a(g, t) -> ChristoffelA:
    if not isinstance(t, LinearMap2):
        t = LinearMap2.from_matrix(t)
    G = pullback_tensor(to_tensor(_as_vec(g)), t.matrix)
    return ChristoffelA.from_vector(to_vector(G))


def nabla_rho(g) -> np.ndarray:
    """N[i, j, k] = (nabla rho)(d_i, d_j; d_k) for a constant symbol."""
    G = to_tensor(_as_vec(g))
    r = ricci_closed_form(to_vector(G))
    return -np.einsum("kil,lj->ijk", G, r) - np.einsum("kjl,il->ijk", G, r)


def rho3(g) -> np.ndarray:
    m = rho3_tensor(to_tensor(_as_vec(g)))
    m[1, 0] = m[0, 1]
    return m


def _invertible_ricci(v, tol):
    r = ricci_closed_form(v)
    rank, _ = symmetric_eigen_tags(r, tol.rank_tol)
    if rank < 2:
        raise RankDeficientError("Ricci tensor has rank < 2")
    return r


def psi3(g, tol: Tolerances = DEFAULT_TOL) -> float:
    v = _as_vec(g)
    r = _invertible_ricci(v, tol)
    return float(np.trace(np.linalg.solve(r, rho3(v))))


def Psi3(g, tol: Tolerances = DEFAULT_TOL) -> float:
    v = _as_vec(g)
    r = _invertible_ricci(v, tol)
    return float(np.linalg.det(rho3(v)) / np.linalg.det(r))


def chi(g, tol: Tolerances = DEFAULT_TOL) -> float:
    v = _as_vec(g)
    _invertible_ricci(v, tol)
    return float(chi_batch(v))


# --- batched invariants ---------------------------------------------------

def _det2(m):
    return m[..., 0, 0] * m[..., 1, 1] - m[..., 0, 1] * m[..., 1, 0]


def invariants_batch(v):
    """(psi3, Psi3) for an array of symbols; no rank checks."""
    v = np.asarray(v, dtype=float)
    G = to_tensor(v)
    r = ricci_closed_form(v)
    r3 = rho3_tensor(G)
    d = _det2(r)
    # tr(r^-1 r3) via the adjugate
    tr = (r[..., 1, 1] * r3[..., 0, 0] - 2 * r[..., 0, 1] * r3[..., 0, 1] + r[..., 0, 0] * r3[..., 1, 1]) / d
    return tr, _det2(r3) / d


def chi_batch(v):
    v = np.asarray(v, dtype=float)
    G = to_tensor(v)
    r = ricci_closed_form(v)
    r3 = rho3_tensor(G)
    d = _det2(r)
    rinv = np.linalg.inv(r)
    trace_g = np.einsum("...abb->...a", G)
    w = np.einsum("...a,...ijk,...kl,...ij->...al", trace_g, G, r3, rinv)
    return (w[..., 0, 1] - w[..., 1, 0]) * np.sqrt(np.abs(d)) / d
