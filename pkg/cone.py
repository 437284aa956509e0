"""
Spherical cone-manifolds as symbols, and the standard cone metric.

A join K * N inserts arcs of length pi/2 between K and N; S^m * S^n is
S^(m+n+1). Every normalized symbol is S^k * (primes), with k = -1 meaning
no sphere factor (S^-1 is the empty set, the unit for joins).

cone_metric_check is the only floating point code in the package.
"""
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from config import get_metric_tolerance
from events import log_event


@dataclass(frozen=True)
class Sphere:
    k: int

    def __post_init__(self):
        if isinstance(self.k, bool) or not isinstance(self.k, int) or self.k < -1:
            raise ValueError(f"sphere dimension must be an integer >= -1, got {self.k!r}")

    @property
    def dim(self):
        return self.k

    def __str__(self):
        return f"S^{self.k}"


@dataclass(frozen=True)
class Prime:
    label: str
    dim: int

    def __post_init__(self):
        if isinstance(self.dim, bool) or not isinstance(self.dim, int) or self.dim < 0:
            raise ValueError(f"prime cone-manifold {self.label}: dimension must be >= 0")

    def __str__(self):
        return f"{self.label}^{self.dim}"


@dataclass(frozen=True)
class Join:
    sphere: int        # -1 when there is no sphere factor
    primes: tuple

    @property
    def dim(self):
        dims = [self.sphere] + [p.dim for p in self.primes]
        return sum(dims) + len(dims) - 1

    def __str__(self):
        parts = ([f"S^{self.sphere}"] if self.sphere >= 0 else []) + [str(p) for p in self.primes]
        return " * ".join(parts)


def dim(M) -> int:
    return M.dim


def _factors(M):
    """(sphere index, primes) of any symbol."""
    if isinstance(M, Sphere):
        return M.k, ()
    if isinstance(M, Prime):
        return -1, (M,)
    if isinstance(M, Join):
        return M.sphere, M.primes
    raise ValueError(f"not a cone-manifold symbol: {M!r}")


def _normalize(sphere, primes):
    primes = tuple(sorted(primes, key=lambda p: (p.label, p.dim)))
    if not primes:
        return Sphere(sphere)
    if sphere < 0 and len(primes) == 1:
        return primes[0]
    return Join(sphere, primes)


def join(*parts):
    """Normalized join of any number of symbols."""
    sphere = -1
    primes = []
    for M in parts:
        k, ps = _factors(M)
        # S^a * S^b = S^(a+b+1); S^-1 is the unit
        sphere = sphere + k + 1
        primes.extend(ps)
    return _normalize(sphere, primes)


def prime_decompose(M):
    """(k, remainder): M = S^k * remainder, remainder prime or None."""
    k, primes = _factors(M)
    if not primes:
        return k, None
    return k, _normalize(-1, primes)


def recompose(k, remainder):
    return join(Sphere(k), remainder) if remainder is not None else Sphere(k)


@dataclass(frozen=True)
class Location:
    kind: str                  # "K", "N" or "arc"
    link_k: object = None      # S_xK or S_aK
    link_n: object = None      # S_bN


def _default_link(factor, given, side):
    if given is not None:
        if given.dim != factor.dim - 1:
            raise ValueError(f"link on {side} has dim {given.dim}, expected {factor.dim - 1}")
        return given
    if isinstance(factor, Sphere):
        # the unit tangent sphere of S^m at any point is S^(m-1)
        return Sphere(factor.k - 1)
    raise ValueError(f"location on {side} needs the unit tangent cone of {factor}")


def unit_tangent_cone(K, N, location: Location):
    """Unit tangent cone of K * N at a point of K, of N, or of an open arc."""
    if location.kind == "K":
        if K.dim < 0:
            raise ValueError("no points on an empty factor")
        out = join(_default_link(K, location.link_k, "K"), N)
    elif location.kind == "N":
        if N.dim < 0:
            raise ValueError("no points on an empty factor")
        out = join(K, _default_link(N, location.link_n, "N"))
    elif location.kind == "arc":
        if K.dim < 0 or N.dim < 0:
            raise ValueError("an arc needs both ends")
        out = join(Sphere(0), _default_link(K, location.link_k, "K"), _default_link(N, location.link_n, "N"))
    else:
        raise ValueError(f"unknown location kind: {location.kind!r}")
    if out.dim != join(K, N).dim - 1:
        raise RuntimeError("tangent cone dimension mismatch")
    return out


# -------------------------------------------------
# Standard cone metric g = dr^2 + beta^2 r^2 dtheta^2 + sum dw_i^2
# -------------------------------------------------
@dataclass(frozen=True)
class ConeMetricModel:
    beta: Fraction

    def __post_init__(self):
        beta = Fraction(self.beta)
        if not 0 < beta < 1:
            raise ValueError(f"cone parameter beta must lie in (0,1), got {beta}")
        object.__setattr__(self, "beta", beta)

    @property
    def cone_angle(self):
        """As a fraction of a full turn."""
        return self.beta


@dataclass(frozen=True)
class MetricCheck:
    beta: float
    samples: int
    max_deviation: float
    tolerance: float

    @property
    def passed(self):
        return self.max_deviation <= self.tolerance


def sample_grid(count=100, r_min=0.5, r_max=2.0):
    """Exactly `count` (r, theta) rows: a polar grid filled radius by radius."""
    if count < 1:
        raise ValueError(f"sample count must be positive, got {count}")
    side = math.isqrt(count - 1) + 1
    rings = -(-count // side)
    r, theta = np.meshgrid(
        np.linspace(r_min, r_max, rings),
        np.linspace(0.0, 2 * np.pi, side, endpoint=False),
        indexing="ij",
    )
    return np.column_stack([r.ravel(), theta.ravel()])[:count]


def cone_metric_check(beta, samples=None, tolerance=None) -> MetricCheck:
    """
    Pull beta^2 |xi|^(2(beta-1)) |dxi|^2 back through xi = r^(1/beta) e^(i theta)
    and compare with dr^2 + beta^2 r^2 dtheta^2 at every sample.
    beta = 1 is accepted as the smooth limit.
    """
    b = float(Fraction(beta)) if not isinstance(beta, float) else beta
    if not 0 < b <= 1:
        raise ValueError(f"cone parameter beta must lie in (0,1], got {beta}")
    tolerance = get_metric_tolerance() if tolerance is None else tolerance
    pts = sample_grid() if samples is None else np.asarray(samples, dtype=float).reshape(-1, 2)
    r, theta = pts[:, 0], pts[:, 1]
    if np.any(r <= 0):
        raise ValueError("samples must have r > 0 (the cone point is singular)")

    rho = r ** (1.0 / b)
    # Jacobian of (Re xi, Im xi) with respect to (r, theta)
    dx_dr = (1.0 / b) * r ** (1.0 / b - 1.0) * np.cos(theta)
    dy_dr = (1.0 / b) * r ** (1.0 / b - 1.0) * np.sin(theta)
    dx_dt = -rho * np.sin(theta)
    dy_dt = rho * np.cos(theta)
    factor = b * b * rho ** (2.0 * (b - 1.0))

    g_rr = factor * (dx_dr ** 2 + dy_dr ** 2)
    g_rt = factor * (dx_dr * dx_dt + dy_dr * dy_dt)
    g_tt = factor * (dx_dt ** 2 + dy_dt ** 2)

    deviation = np.max(np.abs(np.stack([g_rr - 1.0, g_rt, g_tt - b * b * r ** 2])))
    result = MetricCheck(b, len(r), float(deviation), float(tolerance))
    log_event("CONE_METRIC_CHECKED", beta=b, samples=result.samples, max_deviation=result.max_deviation)
    return result


def link_circle_length(W, L) -> float:
    """2*pi*(1 - a_L): circumference of the circle factor in the real link."""
    from singularities import cone_angle

    return 2 * math.pi * float(cone_angle(W, L).fraction)
