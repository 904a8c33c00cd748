"""Quadrature oracle for the support-function integrals.

Integrands are sampled pointwise (p, p', p'' from the analytic derivative
series) and integrated with the periodic trapezoid rule, which is exact
for trigonometric polynomials of degree < M. Nothing here uses the
Parseval closed forms, so agreement with :mod:`isoperix.functionals` is a
genuine cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .functionals import CurveFunctionals
from .support import SupportFourier, eval_ddp, eval_dp, eval_p, eval_rho, uniform_angles

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class PeriodicSamples:
    """Values of a 2pi-periodic function at theta_k = 2 pi k / M."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1 or v.size < 4:
            raise ValueError("need at least 4 periodic samples")
        if not np.all(np.isfinite(v)):
            raise ValueError("samples must be finite")
        object.__setattr__(self, "values", v)

    @property
    def M(self) -> int:
        return int(self.values.size)

    @classmethod
    def of(cls, fn, M: int) -> "PeriodicSamples":
        return cls(fn(uniform_angles(M)))


def periodic_trapezoid(samples: PeriodicSamples) -> float:
    return TWO_PI / samples.M * math.fsum(samples.values)


def top_harmonic(c: SupportFourier) -> int:
    return c.trimmed().degree


def min_nodes(c: SupportFourier) -> int:
    return 4 * (top_harmonic(c) + 1)


def _integrate(fn, M: int) -> float:
    return periodic_trapezoid(PeriodicSamples.of(fn, M))


def grid_extremum(fn, M: int, *, maximize: bool = False, refine: int = 4) -> tuple[float, float]:
    """Extremum of a smooth periodic function: M-point scan + bounded search.

    The ``refine`` best grid nodes are each polished with a bounded
    Brent search on their two neighbouring cells.
    """
    sign = -1.0 if maximize else 1.0
    th = uniform_angles(M)
    g = sign * np.asarray(fn(th), dtype=float)
    h = TWO_PI / M
    best_k = int(np.argmin(g))
    best = (float(g[best_k]), float(th[best_k]))
    for k in np.argsort(g)[:refine]:
        res = minimize_scalar(
            lambda t: sign * float(fn(np.array([t]))[0]),
            bounds=(th[k] - h, th[k] + h),
            method="bounded",
            options={"xatol": 1e-12},
        )
        if res.fun < best[0]:
            best = (float(res.fun), float(res.x) % TWO_PI)
    return sign * best[0], best[1]


def oracle_integrals(c: SupportFourier, M: int | None = None) -> dict[str, float]:
    """L, A, oriented A~ and int rho^2 by trapezoid quadrature on M nodes."""
    if M is None:
        M = min_nodes(c)
    if M < min_nodes(c):
        raise ValueError(f"M={M} is below the exactness threshold 4(N+1)={min_nodes(c)}")
    t = uniform_angles(M)
    p, dp, ddp = eval_p(c, t), eval_dp(c, t), eval_ddp(c, t)
    rho = eval_rho(c, t)
    return {
        "L": periodic_trapezoid(PeriodicSamples(p)),
        "A": 0.5 * periodic_trapezoid(PeriodicSamples(p**2 - dp**2)),
        "A_tilde_oriented": 0.5 * periodic_trapezoid(PeriodicSamples(dp**2 - ddp**2)),
        "int_rho_sq": periodic_trapezoid(PeriodicSamples(rho**2)),
    }


def oracle_functionals(c: SupportFourier, M: int | None = None) -> CurveFunctionals:
    """L, A, A~, int rho^2 and max rho^2 by quadrature on M nodes."""
    if M is None:
        M = min_nodes(c)
    q = oracle_integrals(c, M)
    L, A, At, irho = q["L"], q["A"], q["A_tilde_oriented"], q["int_rho_sq"]
    scan = max(M, 16 * (top_harmonic(c) + 1))
    rmin, _ = grid_extremum(lambda t: eval_rho(c, t), scan)
    rmax, _ = grid_extremum(lambda t: eval_rho(c, t), scan, maximize=True)
    return CurveFunctionals(
        L=L,
        A=A,
        A_tilde_oriented=At,
        A_tilde_abs=abs(At),
        int_rho_sq=irho,
        max_rho_sq=max(rmin * rmin, rmax * rmax),
        convex=rmin > 0.0,
    )


def _deviation_from_disc(c: SupportFourier):
    # p_K - p_S(K): drop the constant and first harmonic by subtracting them pointwise
    a1 = c.a[0] if c.degree else 0.0
    b1 = c.b[0] if c.degree else 0.0
    return lambda t: eval_p(c, t) - (c.a0 + a1 * np.cos(t) + b1 * np.sin(t))


def oracle_h2_sq(c: SupportFourier, M: int | None = None) -> float:
    """int |p_K - p_S(K)|^2 dtheta by trapezoid quadrature."""
    M = M or min_nodes(c)
    dev = _deviation_from_disc(c)
    return _integrate(lambda t: dev(t) ** 2, M)


def oracle_h1_sq(c: SupportFourier, M: int = 4096) -> float:
    """(max |p_K - p_S(K)|)^2 by dense scan and bounded refinement."""
    dev = _deviation_from_disc(c)
    hi, _ = grid_extremum(lambda t: np.abs(dev(t)), max(M, 16 * (top_harmonic(c) + 1)), maximize=True)
    return hi * hi
