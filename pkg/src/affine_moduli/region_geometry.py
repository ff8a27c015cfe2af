"""Plane geometry of the (psi3, Psi3) image and of the definite parameter strip.

The boundary curves

    sigma_+(t) = (4t^2 + 1/t^2 + 2, 4t^4 + 4t^2 + 2)
    sigma_-(t) = (-4t^2 - 1/t^2 + 2, 4t^4 - 4t^2 + 2)

are the two real branches of one plane cubic

    F(p, P) = 4(P-1)^2 + 4(P-1)(p+2) - (P-2)(p+2)^2,

since F = (p+2)^2 q(s) with s = (P-1)/(p+2) and q(s) = 4s^2 + (2-p)s + 1,
and q vanishes at s = t^2 on sigma_+ and at s = -t^2 on sigma_-.  The open
regions bounded by sigma_+ (p > 6 side) and sigma_- (p < -2 side) are exactly
{F < 0}; the region between them is {F > 0}.  Classification uses the sign
of F with a first-order distance band; the quadratic-in-t^2 inversion is kept
for reporting the curve parameter and as a test oracle.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .tensor_core import DEFAULT_TOL, Tolerances

CUSP = (-2.0, 1.0)
T_CUSP = float(1.0 / np.sqrt(2.0))

REGIONS = ("C_minus", "C_zero", "C_plus")
POSITIONS = ("interior", "on_sigma_plus", "on_sigma_minus", "cusp", "outside_all")


@dataclass(frozen=True)
class RegionTag:
    which: str
    position: str
    t: float | None = None  # curve parameter when on a boundary curve

    def __post_init__(self):
        if self.which not in REGIONS or self.position not in POSITIONS:
            raise ValueError(f"bad region tag {self.which!r}/{self.position!r}")

    def in_closure(self, which: str) -> bool:
        """Membership of the closed region ``which``."""
        if self.position == "interior":
            return self.which == which
        if self.position == "on_sigma_plus":
            return which in ("C_plus", "C_zero")
        if self.position in ("on_sigma_minus", "cusp"):
            return which in ("C_minus", "C_zero")
        return False

    @property
    def on_boundary(self) -> bool:
        return self.position in ("on_sigma_plus", "on_sigma_minus", "cusp")


def _positive(t):
    t = np.asarray(t, dtype=float)
    if np.any(~(t > 0)):
        raise DomainError("curve parameter must be > 0")
    return t


def sigma_plus(t):
    t = _positive(t)
    p, P = 4 * t**2 + t**-2 + 2, 4 * t**4 + 4 * t**2 + 2
    return (float(p), float(P)) if p.ndim == 0 else (p, P)


def sigma_minus(t):
    t = _positive(t)
    p, P = -4 * t**2 - t**-2 + 2, 4 * t**4 - 4 * t**2 + 2
    return (float(p), float(P)) if p.ndim == 0 else (p, P)


def boundary_cubic(p, P):
    p = np.asarray(p, dtype=float)
    P = np.asarray(P, dtype=float)
    return 4 * (P - 1) ** 2 + 4 * (P - 1) * (p + 2) - (P - 2) * (p + 2) ** 2


def boundary_cubic_grad(p, P):
    p = np.asarray(p, dtype=float)
    P = np.asarray(P, dtype=float)
    dp = 4 * (P - 1) - 2 * (P - 2) * (p + 2)
    dP = 8 * (P - 1) + 4 * (p + 2) - (p + 2) ** 2
    return dp, dP


def invert_sigma(sign: int, p: float, P: float):
    """Parameters t > 0 with sigma_sign(t) closest to (p, P), from the p coordinate.

    Solves 4s^2 + (2-p)s + 1 = 0 with s = t^2 (plus) or 4s^2 + (p-2)s + 1 = 0
    with s = t^2 (minus).  Returns a list of candidate t values (possibly empty).
    """
    b = (2 - p) if sign > 0 else (p - 2)
    disc = b * b - 16
    if disc < 0:
        # closest parameter is the vertex / cusp
        return [T_CUSP] if abs(disc) < 1e-6 * max(1.0, b * b) else []
    root = np.sqrt(disc)
    s_vals = [(-b + root) / 8, (-b - root) / 8]
    return [float(np.sqrt(s)) for s in s_vals if s > 0]


def _nearest_param(sign, p, P):
    cands = invert_sigma(sign, p, P) or [T_CUSP]
    curve = sigma_plus if sign > 0 else sigma_minus
    best = min(cands, key=lambda t: np.hypot(*(np.subtract(curve(t), (p, P)))))
    return best


def region_codes(p, P, tol: float = DEFAULT_TOL.invariant_tol):
    """Vectorized classification.

    Returns integer codes: 0 interior C_minus, 1 interior C_zero, 2 interior
    C_plus, 3 on sigma_plus, 4 on sigma_minus, 5 cusp.
    """
    p = np.asarray(p, dtype=float)
    P = np.asarray(P, dtype=float)
    F = boundary_cubic(p, P)
    gp, gP = boundary_cubic_grad(p, P)
    gn = np.hypot(gp, gP)
    band = tol * (1.0 + np.hypot(p, P))
    dist = np.abs(F) / np.where(gn > 0, gn, np.inf)
    d_cusp = np.hypot(p - CUSP[0], P - CUSP[1])
    code = np.where(F > 0, 1, np.where(p > 2, 2, 0))
    code = np.where(dist <= band, np.where(p > 2, 3, 4), code)
    # the gradient vanishes at the cusp, so test it by plain distance
    return np.where(d_cusp <= band, 5, code)


_CODE_TAGS = {
    0: ("C_minus", "interior"),
    1: ("C_zero", "interior"),
    2: ("C_plus", "interior"),
    3: ("C_plus", "on_sigma_plus"),
    4: ("C_minus", "on_sigma_minus"),
    5: ("C_minus", "cusp"),
}


def region_classify(p: float, P: float, tol: Tolerances = DEFAULT_TOL) -> RegionTag:
    """Locate (p, P) relative to the closed regions C_-, C_0, C_+.

    For boundary points ``which`` names the definite region whose boundary
    curve the point lies on; use ``RegionTag.in_closure`` for closed-region
    membership.
    """
    if not (np.isfinite(p) and np.isfinite(P)):
        raise DomainError("point must be finite")
    code = int(region_codes(p, P, tol.invariant_tol))
    which, pos = _CODE_TAGS[code]
    t = None
    if code == 3:
        t = _nearest_param(+1, p, P)
    elif code == 4:
        t = _nearest_param(-1, p, P)
    elif code == 5:
        t = T_CUSP
    return RegionTag(which, pos, t)


# --- the definite parameter strip S = {x > 0, y >= 0} ---------------------

def _need_x(x):
    if not x > 0:
        raise DomainError(f"x must be > 0, got {x!r}")


def theta_definite(sign: int, x, y):
    """Closed forms of (psi3, Psi3) on the normal form Gamma_sign(x, y)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    e = 1.0 if sign > 0 else -1.0
    p = e * (4 * x**2 + x**-2 + y**2) + 2
    P = 4 * x**4 + x**2 * (y**2 + 4 * e) + y**2 / x**2 + 2 * (1 + e * y**2)
    return p, P


def jacobian_det(sign: int, x: float, y: float) -> float:
    """det of the derivative of (p_sign, P_sign) on the strip."""
    _need_x(x)
    if sign > 0:
        return float(-4 * (x * x - 1) * y * (4 * x**6 + x**4 * y * y + x * x * (y * y - 3) - 1) / x**5)
    return float(4 * (x * x + 1) * y * (4 * x**6 + x**4 * y * y - x * x * (y * y + 3) + 1) / x**5)


def jacobi_locus_y(sign: int, x: float):
    if sign > 0:
        if not (0 < x <= 1):
            return None
        rad = (-4 * x**6 + 3 * x**2 + 1) / (x**4 + x**2)
    else:
        if not (0 < x < 1):
            return None
        rad = (1 + 4 * x**6 - 3 * x**2) / (x**2 - x**4)
    if rad < 0:
        return None
    return float(np.sqrt(rad))


def jacobi_locus_y_factored(sign: int, x):
    """Equivalent factored forms, valid on the stated domains.

    Y_+(x) = (2x^2+1) sqrt((1-x^2)/(x^2(x^2+1)))
    Y_-(x) = |2x^2-1| sqrt((1+x^2)/(x^2(1-x^2)))
    """
    x = np.asarray(x, dtype=float)
    if sign > 0:
        return (2 * x**2 + 1) * np.sqrt((1 - x**2) / (x**2 * (x**2 + 1)))
    return np.abs(2 * x**2 - 1) * np.sqrt((1 + x**2) / (x**2 * (1 - x**2)))


def discriminant_y(x: float) -> float:
    if not (0 < x <= 1):
        raise DomainError(f"discriminant locus needs 0 < x <= 1, got {x!r}")
    return float(2 * np.sqrt(1 - x * x))


def _stable_roots(a, b, c):
    """Roots (r_plus, r_minus) of a r^2 + b r + c = 0 with a != 0, b >= 0,
    labelled as (-b + sqrt(D)) / 2a and (-b - sqrt(D)) / 2a."""
    D = b * b - 4 * a * c
    sq = np.sqrt(max(D, 0.0))
    q = -0.5 * (b + sq)
    if q == 0:
        return 0.0, 0.0
    return c / q, q / a


def u_pm(sign: int, x: float, y: float, tol: Tolerances = DEFAULT_TOL):
    """Solutions u of the residual-rotation quadratic.

    Absent values are returned as None.  Uses the cancellation-free form of
    the quadratic formula; near x = 1 the plus branch degenerates smoothly
    into the linear case u = x/y.
    """
    _need_x(x)
    z = tol.zero_tol
    if sign > 0:
        a, b, c = x * x - 1, x * y, -x * x
        x_is_one = abs(x - 1) <= z
        disc = y * y + 4 * (x * x - 1)
        if x_is_one and abs(y) <= z:
            return None, None
        if x_is_one:
            u = x / y
            return u, u
        if disc < -z:
            return None, None
        if abs(disc) <= z:
            u = -y * x / (2 * (x * x - 1))
            return u, u
        return _stable_roots(a, b, c)
    a, b, c = 1 + x * x, x * y, -x * x
    return _stable_roots(a, b, c)


def u_rotation_frame(u: float) -> np.ndarray:
    """Frame of the rotation with cos = u/sqrt(1+u^2), sin = 1/sqrt(1+u^2)."""
    n = np.sqrt(1 + u * u)
    c, s = u / n, 1 / n
    return np.array([[c, s], [-s, c]])


def zone_plus(x: float, y: float, tol: Tolerances = DEFAULT_TOL) -> int:
    """Open zones 1..4 of the positive-definite strip; 0 on a separating locus."""
    _need_x(x)
    z = tol.zero_tol
    if y <= z or abs(x - 1) <= z:
        return 0
    if x > 1:
        return 4
    d = discriminant_y(x)
    Y = jacobi_locus_y_factored(+1, x)
    if abs(y - d) <= z * (1 + d) or abs(y - Y) <= z * (1 + Y):
        return 0
    if y < d:
        return 1
    return 2 if y < Y else 3


def zone_minus(x: float, y: float, tol: Tolerances = DEFAULT_TOL) -> int:
    """Open zones 1..3 of the negative-definite strip; 0 on a separating locus."""
    _need_x(x)
    z = tol.zero_tol
    if y <= z:
        return 0
    if x >= 1:
        return 3
    Y = float(jacobi_locus_y_factored(-1, x))
    if abs(y - Y) <= z * (1 + Y):
        return 0
    if y > Y:
        return 2
    return 1 if x < 1 / np.sqrt(2) else 3


def in_fundamental_domain(sign: int, x: float, y: float, slack: float = 0.0) -> bool:
    """Closed fundamental domain: {0<x<=1, 0<=y<=Y_+} or {0<x<=1/sqrt2, 0<=y<=Y_-}."""
    return fundamental_violation(sign, x, y) <= slack


def fundamental_violation(sign: int, x: float, y: float) -> float:
    xmax = 1.0 if sign > 0 else 1 / np.sqrt(2.0)
    v = max(0.0, -x, x - xmax, -y)
    xc = min(max(x, 1e-300), xmax)
    Y = float(jacobi_locus_y_factored(sign, xc)) if xc < 1 else 0.0
    return max(v, y - Y)
