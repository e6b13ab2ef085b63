"""Points of the R-radius hyperboloid H_R^d inside Minkowski space R^{d,1}.

Points are stored by their ambient coordinates (x_0, ..., x_d) on the upper
sheet [x, x] = R^2, x_0 > 0. Standard geodesic polar coordinates

    x_0 = R cosh r
    x_i = R sinh r sin(theta_1) ... sin(theta_{i-1}) cos(theta_i),  i <= d-2
    x_{d-1} = R sinh r sin(theta_1) ... sin(theta_{d-2}) cos(phi)
    x_d     = R sinh r sin(theta_1) ... sin(theta_{d-2}) sin(phi)

reduce for d = 2 to (r, phi) alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import GeometryError

MAX_DIM = 12


@dataclass(frozen=True)
class KernelParams:
    """Dimension, radius and numerical tolerances for kernel evaluation."""

    d: int
    R: float = 1.0
    tol_rel: float = 1e-10
    rho_min: float = 1e-6

    def __post_init__(self):
        if not (isinstance(self.d, (int, np.integer)) and 2 <= self.d <= MAX_DIM):
            raise ValueError(f"d must be an integer in [2, {MAX_DIM}], got {self.d!r}")
        if not (0 < self.R < math.inf):
            raise ValueError(f"R must be positive and finite, got {self.R!r}")
        if not self.tol_rel > 0:
            raise ValueError("tol_rel must be positive")
        if not self.rho_min > 0:
            raise ValueError("rho_min must be positive")


@dataclass(frozen=True, eq=False)
class AmbientPoint:
    """A point (x_0, ..., x_d) of Minkowski space."""

    coords: np.ndarray

    def __post_init__(self):
        arr = np.array(self.coords, dtype=float)
        if arr.ndim != 1 or arr.size < 3:
            raise GeometryError("an ambient point needs d + 1 >= 3 coordinates")
        arr.setflags(write=False)
        object.__setattr__(self, "coords", arr)

    @property
    def dim(self) -> int:
        return self.coords.size - 1

    def __getitem__(self, i):
        return self.coords[i]

    def __len__(self):
        return self.coords.size


@dataclass(frozen=True)
class GeodesicPolar:
    """Standard geodesic polar coordinates (r, theta_1..theta_{d-2}, phi)."""

    r: float
    theta: tuple[float, ...] = ()
    phi: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "theta", tuple(float(t) for t in self.theta))
        if not self.r >= 0:
            raise GeometryError(f"r must be >= 0, got {self.r!r}")
        if any(not 0.0 <= t <= math.pi for t in self.theta):
            raise GeometryError("theta angles must lie in [0, pi]")
        if not 0.0 <= self.phi < 2.0 * math.pi:
            raise GeometryError("phi must lie in [0, 2 pi)")

    @property
    def dim(self) -> int:
        return len(self.theta) + 2


def _as_point(x) -> AmbientPoint:
    return x if isinstance(x, AmbientPoint) else AmbientPoint(x)


def _check_same_dim(x: AmbientPoint, y: AmbientPoint) -> None:
    if x.dim != y.dim:
        raise GeometryError(f"dimension mismatch: {x.dim} vs {y.dim}")


def _minkowski_exact(x: Sequence[float], y: Sequence[float], shift: float = 0.0) -> float:
    # rational arithmetic: the only rounding is the final conversion
    total = Fraction(float(x[0])) * Fraction(float(y[0])) - Fraction(shift)
    for a, b in zip(x[1:], y[1:]):
        total -= Fraction(float(a)) * Fraction(float(b))
    return float(total)


def bilinear_form(x, y) -> float:
    """Minkowski bilinear form [x, y] = x_0 y_0 - x_1 y_1 - ... - x_d y_d.

    The sum is accumulated exactly and rounded once.
    """
    x, y = _as_point(x), _as_point(y)
    _check_same_dim(x, y)
    return _minkowski_exact(x.coords, y.coords)


def euclidean_inner(x, y) -> float:
    """Euclidean inner product (x, y) = sum_i x_i y_i of the ambient coordinates."""
    x = np.asarray(getattr(x, "coords", x), dtype=float)
    y = np.asarray(getattr(y, "coords", y), dtype=float)
    if x.shape != y.shape:
        raise GeometryError(f"dimension mismatch: {x.shape} vs {y.shape}")
    return float(np.dot(x, y))


def on_hyperboloid(x: AmbientPoint, R: float, tol: float) -> bool:
    """True if x lies on the upper sheet of [x, x] = R^2.

    The constraint is tested relative to max(R^2, x_0^2): coordinates of a
    point at geodesic radius r carry rounding of order eps * cosh^2(r) R^2.
    """
    x = _as_point(x)
    if not x.coords[0] > 0:
        return False
    residual = _minkowski_exact(x.coords, x.coords, R * R)
    return abs(residual) <= tol * max(R * R, x.coords[0] ** 2)


def _require_on_hyperboloid(x: AmbientPoint, params: KernelParams) -> None:
    if x.dim != params.d:
        raise GeometryError(f"point has dimension {x.dim}, params say d = {params.d}")
    if not on_hyperboloid(x, params.R, params.tol_rel):
        raise GeometryError(f"point {x.coords} is not on H_R^d with R = {params.R}")


def _minkowski_sq_difference(x: Sequence[float], y: Sequence[float]) -> float:
    # -[x - y, x - y], exact until the final rounding
    diff = [Fraction(float(a)) - Fraction(float(b)) for a, b in zip(x, y)]
    return float(sum(c * c for c in diff[1:]) - diff[0] * diff[0])


def geodesic_distance(x, x2, params: KernelParams) -> float:
    """Geodesic distance R cosh^{-1}([x, x'] / R^2) on H_R^d.

    On the sheet [x, x'] / R^2 - 1 = -[x - x', x - x'] / (2 R^2), so the
    distance is evaluated as 2 R sinh^{-1}(sqrt(-[x - x', x - x']) / (2 R)).
    This reads the separation off the coordinate difference, which is exact
    for coincident points and keeps full relative accuracy for close ones;
    the cosh^{-1} argument is never formed.
    """
    x, x2 = _as_point(x), _as_point(x2)
    _check_same_dim(x, x2)
    _require_on_hyperboloid(x, params)
    _require_on_hyperboloid(x2, params)
    R2 = params.R * params.R
    q = _minkowski_sq_difference(x.coords, x2.coords)
    if q < 0:
        # a timelike separation means [x, x'] < R^2: clamp rounding, reject the rest
        scale = max(1.0, x.coords[0] * x2.coords[0] / R2)
        if q < -2.0 * R2 * params.tol_rel * scale:
            raise GeometryError(f"[x, x']/R^2 = {1 - q / (2 * R2)!r} < 1: "
                                "points not on one hyperboloid")
        q = 0.0
    return 2.0 * params.R * math.asinh(math.sqrt(q) / (2.0 * params.R))


def from_geodesic_polar(p: GeodesicPolar, params: KernelParams) -> AmbientPoint:
    """Ambient coordinates of a point given in standard geodesic polar form."""
    if p.dim != params.d:
        raise GeometryError(f"polar point has dimension {p.dim}, params say d = {params.d}")
    R = params.R
    coords = np.empty(params.d + 1)
    coords[0] = R * math.cosh(p.r)
    radial = R * math.sinh(p.r)
    for i, t in enumerate(p.theta, start=1):
        coords[i] = radial * math.cos(t)
        radial *= math.sin(t)
    coords[-2] = radial * math.cos(p.phi)
    coords[-1] = radial * math.sin(p.phi)
    return AmbientPoint(coords)


def to_geodesic_polar(x, params: KernelParams) -> GeodesicPolar:
    """Inverse of :func:`from_geodesic_polar`.

    At the pole (r <= rho_min) every angle is returned as 0.
    """
    x = _as_point(x)
    R = params.R
    if x.coords[0] < R * (1.0 - params.tol_rel):
        raise GeometryError(f"x_0 = {x.coords[0]!r} lies below the sheet x_0 >= R")
    _require_on_hyperboloid(x, params)
    spatial = x.coords[1:]
    r = math.asinh(math.hypot(*spatial) / R)
    n_theta = params.d - 2
    if r <= params.rho_min:
        return GeodesicPolar(r, (0.0,) * n_theta, 0.0)
    theta = []
    for i in range(n_theta):
        tail = math.hypot(*spatial[i + 1:])
        theta.append(math.atan2(tail, spatial[i]))
    phi = math.atan2(spatial[-1], spatial[-2]) % (2.0 * math.pi)
    if phi >= 2.0 * math.pi:  # -tiny % 2pi rounds up to 2pi
        phi = 0.0
    return GeodesicPolar(r, tuple(theta), phi)


def separation_angle(p: GeodesicPolar, p2: GeodesicPolar) -> float:
    """Angle gamma in [0, pi] between the angular parts of two polar points."""
    if p.dim != p2.dim:
        raise GeometryError(f"dimension mismatch: {p.dim} vs {p2.dim}")
    cos_gamma = 0.0
    sin_prod = 1.0
    for t, t2 in zip(p.theta, p2.theta):
        cos_gamma += math.cos(t) * math.cos(t2) * sin_prod
        sin_prod *= math.sin(t) * math.sin(t2)
    cos_gamma += math.cos(p.phi - p2.phi) * sin_prod
    return math.acos(min(1.0, max(-1.0, cos_gamma)))


def geodesic_distance_polar(r: float, r2: float, gamma: float, params: KernelParams) -> float:
    """R cosh^{-1}(cosh r cosh r' - sinh r sinh r' cos gamma).

    Uses cosh r cosh r' - sinh r sinh r' cos gamma - 1
    = 2 sinh^2((r - r')/2) + 2 sinh r sinh r' sin^2(gamma/2) = 2 sinh^2(rho/2),
    so rho = 2 sinh^{-1} hypot(sinh((r - r')/2), sqrt(sinh r sinh r') sin(gamma/2))
    with no cancellation and no underflow for tiny separations.
    """
    if r < 0 or r2 < 0:
        raise GeometryError("radial parameters must be non-negative")
    radial = math.sinh(0.5 * (r - r2))
    angular = math.sqrt(math.sinh(r)) * math.sqrt(math.sinh(r2)) * math.sin(0.5 * gamma)
    return 2.0 * params.R * math.asinh(math.hypot(radial, angular))


@dataclass(frozen=True)
class LorentzTransform:
    """Linear isometry of R^{d,1} given by its (d+1) x (d+1) matrix."""

    matrix: np.ndarray
    rapidity: float = 0.0

    def __call__(self, x) -> AmbientPoint:
        x = _as_point(x)
        return AmbientPoint(self.matrix @ x.coords)

    def __matmul__(self, other: "LorentzTransform") -> "LorentzTransform":
        return LorentzTransform(self.matrix @ other.matrix)


def _rotation_to_axis(v: np.ndarray) -> np.ndarray:
    """Proper rotation Q of R^n with Q v = |v| e_1."""
    n = v.size
    norm = np.linalg.norm(v)
    if norm == 0.0:
        return np.eye(n)
    e1 = np.zeros(n)
    e1[0] = 1.0
    w = v / norm - e1
    wn = np.linalg.norm(w)
    if wn == 0.0:
        return np.eye(n)
    w /= wn
    householder = np.eye(n) - 2.0 * np.outer(w, w)
    # a reflection; flip another axis to land in SO(n)
    householder[-1] *= -1.0
    return householder


def boost_to_origin(x, R: float | None = None) -> LorentzTransform:
    """Isometry of H_R^d carrying x to the origin (R, 0, ..., 0).

    A Euclidean rotation first aligns the spatial part of x with the x_1
    axis, giving (R cosh a, R sinh a, 0, ...); the hyperbolic rotation

        x_0' = x_0 cosh a - x_1 sinh a,   x_1' = x_1 cosh a - x_0 sinh a

    then sends it to the origin. ``rapidity`` on the result is a.
    """
    x = _as_point(x)
    if not x.coords[0] > 0:
        raise GeometryError("point must lie on the upper sheet (x_0 > 0)")
    if R is None:
        R = math.sqrt(_minkowski_exact(x.coords, x.coords))
    n = x.coords.size
    spatial = x.coords[1:]
    rot = np.eye(n)
    rot[1:, 1:] = _rotation_to_axis(spatial)
    s = float(np.linalg.norm(spatial))
    sinh_a = s / R
    cosh_a = math.sqrt(1.0 + sinh_a * sinh_a)
    boost = np.eye(n)
    boost[0, 0] = boost[1, 1] = cosh_a
    boost[0, 1] = boost[1, 0] = -sinh_a
    return LorentzTransform(boost @ rot, rapidity=math.asinh(sinh_a))
