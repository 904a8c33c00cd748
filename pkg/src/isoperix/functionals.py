"""Closed-form geometric functionals from support-function coefficients.

All formulas are Parseval identities and exact for the truncated series;
the first harmonic (a translation) never contributes.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .support import (
    PlanePoint,
    SupportFourier,
    is_strictly_convex,
    max_rho,
    min_rho,
    warn_if_not_convex,
)

PI = math.pi


@dataclass(frozen=True)
class CurveFunctionals:
    L: float
    A: float
    A_tilde_oriented: float
    A_tilde_abs: float
    int_rho_sq: float
    max_rho_sq: float
    convex: bool

    def to_dict(self) -> dict:
        return asdict(self)


def _energy(c: SupportFourier) -> tuple[np.ndarray, np.ndarray]:
    """(n, a_n^2 + b_n^2) for n >= 1."""
    return c.n, c.a**2 + c.b**2


def length(c: SupportFourier) -> float:
    return 2.0 * PI * c.a0


def area(c: SupportFourier) -> float:
    n, e = _energy(c)
    return PI * c.a0**2 - 0.5 * PI * float(np.sum((n * n - 1.0) * e))


def evolute_area_abs(c: SupportFourier) -> float:
    """Area enclosed by the locus of curvature centres, |A~|."""
    n, e = _energy(c)
    return 0.5 * PI * float(np.sum(n * n * (n * n - 1.0) * e))


def evolute_area_oriented(c: SupportFourier) -> float:
    """(1/2) int (p'^2 - p''^2) dtheta; never positive."""
    return -evolute_area_abs(c)


def integral_rho_sq(c: SupportFourier) -> float:
    n, e = _energy(c)
    return 2.0 * PI * (c.a0**2 + 0.5 * float(np.sum((n * n - 1.0) ** 2 * e)))


def _max_rho_sq(c: SupportFourier) -> float:
    lo, _ = min_rho(c)
    hi, _ = max_rho(c)
    return max(lo * lo, hi * hi)


def max_rho_sq(c: SupportFourier) -> float:
    """max over theta of rho(theta)^2.

    Emits a RuntimeWarning for curves that are not strictly convex; the
    value is still returned (it may then come from a negative rho).
    """
    warn_if_not_convex(c)
    return _max_rho_sq(c)


def compute_all(c: SupportFourier) -> CurveFunctionals:
    tilde = evolute_area_abs(c)
    return CurveFunctionals(
        L=length(c),
        A=area(c),
        A_tilde_oriented=-tilde,
        A_tilde_abs=tilde,
        int_rho_sq=integral_rho_sq(c),
        max_rho_sq=_max_rho_sq(c),
        convex=is_strictly_convex(c),
    )


def steiner_point(c: SupportFourier) -> PlanePoint:
    """(1/pi) int (cos t, sin t) p(t) dt, i.e. the first harmonic."""
    if c.degree == 0:
        return PlanePoint(0.0, 0.0)
    return PlanePoint(float(c.a[0]), float(c.b[0]))


def steiner_disc(c: SupportFourier) -> SupportFourier:
    s = steiner_point(c)
    r = c.a0  # == L / 2pi without the round trip through 2pi
    if s.x == 0.0 and s.y == 0.0:
        return SupportFourier(r)
    return SupportFourier(r, ((s.x, s.y),))
