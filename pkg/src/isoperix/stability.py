"""Distance of a convex body to its Steiner disc and the stability bounds.

Translating the curve so its Steiner point is the origin, the support
function of the Steiner disc is the constant a0, and

    p_K - p_S(K) = sum_{n>=2} (a_n cos n t + b_n sin n t).

h1 is the sup norm of that difference, h2 its L2 norm.
"""

from __future__ import annotations

import functools
import math
import warnings
from dataclasses import asdict, dataclass
from typing import Callable, Optional

import numpy as np

from .errors import ConeConditionError
from .inequalities import (
    PANXU_H2_PARAMS,
    PRESETS,
    DeficitReport,
    IneqParams,
    coefficient,
    cone_check,
    deficit,
)
from .support import SupportFourier, require_convex, trig_extremum

PI = math.pi
_EPS = float(np.finfo(float).eps)
PANXU_H1_CONSTANT = (4 * PI**2 - 33) / (96 * PI**2)
PANXU_H2_CONSTANT = 1 / (18 * PI)
MAX_SERIES_TERMS = 1 << 24

DeficitFn = Callable[[SupportFourier, IneqParams], DeficitReport]


def _scale(c: SupportFourier) -> float:
    return max(1.0, (2 * PI * c.a0) ** 2)


@functools.lru_cache(maxsize=2048)
def h1_sq(c: SupportFourier) -> float:
    """(max_t |p_K(t) - p_S(K)(t)|)^2, sup found by scan + refinement."""
    require_convex(c)
    if c.degree < 2:
        return 0.0
    a = np.concatenate([[0.0], c.a[1:]])
    b = np.concatenate([[0.0], c.b[1:]])
    lo, _ = trig_extremum(0.0, a, b)
    hi, _ = trig_extremum(0.0, a, b, maximize=True)
    m = max(abs(lo), abs(hi))
    return m * m


def h1_sq_bound(c: SupportFourier) -> float:
    """(sum_{n>=2} sqrt(a_n^2 + b_n^2))^2, the coefficient upper bound on h1^2."""
    s = math.fsum(np.hypot(c.a[1:], c.b[1:]).tolist())
    return s * s


def h2_sq(c: SupportFourier) -> float:
    require_convex(c)
    return PI * math.fsum((c.a[1:] ** 2 + c.b[1:] ** 2).tolist())


@dataclass(frozen=True)
class SeriesConstant:
    """C(alpha, lambda, delta) = max(1, S) with S summed to a certified tail.

    ``series`` is the partial sum plus an upper bound on the tail, so the
    returned constant never under-estimates. ``error`` bounds
    |value - C_exact|: the tail bracket width (at most ``tol``) plus rounding.
    """

    value: float
    error: float
    series: float
    partial: float
    tail_bound: float
    tail_error: float
    terms: int


def _tail_integral(k: float, m: float, X: float) -> float:
    """int_X^inf dx / ((k x^2 - m)(x^2 - 1)) for k > 0, X >= 4, k X^2 > m.

    With c = m/k and y = 1/X the integrand expands to
    (1/k) sum_j y^(2j+1) (1 + c + ... + c^(j-1)) / (2j+1), used while
    |c| y^2 <= 1/4. Otherwise c is large and negative and the closed form
    (atanh y - atan(a y)/a) / (k - m), a^2 = -c, has no cancellation.
    """
    c = m / k
    y = 1.0 / X
    if abs(c) * y * y <= 0.25:
        total, s, ypow, j = 0.0, 1.0, y**3, 1
        while True:
            term = ypow * s / (2 * j + 1)
            total += term
            if abs(term) <= 1e-17 * abs(total) or j > 200:
                break
            j += 1
            s = 1.0 + c * s
            ypow *= y * y
        return total / k
    a = math.sqrt(-c)
    return (math.atanh(y) - math.atan(a * y) / a) / (k - m)


def _tail_bracket(k: float, m: float, N: int) -> tuple[float, float]:
    # t(x) = 1/((k x^2 - m)(x^2 - 1)) is convex for x >= 2, so
    #   int_{N+1}^inf t + t(N+1)/2 <= sum_{n>N} t(n) <= int_{N+1/2}^inf t
    # (trapezoid over-, midpoint under-estimates a convex integral)
    g = 1.0 / ((k * (N + 1) ** 2 - m) * ((N + 1) ** 2 - 1))
    hi = _tail_integral(k, m, N + 0.5)
    lo = _tail_integral(k, m, N + 1.0) + 0.5 * g
    return (2 / PI) * lo, (2 / PI) * hi


@functools.lru_cache(maxsize=4096)
def _series_constant(alpha: float, lam: float, delta: float, tol: float) -> SeriesConstant:
    p = IneqParams(alpha, 0.0, lam, delta)
    k = p.curvature_slope()
    f2 = math.fsum(p._terms_n2())
    m = 4 * k - f2  # 2 alpha + lambda, recovered so that f(2) is exact

    if k <= 8 * _EPS * (abs(2 * alpha) + abs(delta)):
        # constant factor f(n) = f(2): sum_{n>=2} 1/(n^2-1) = 3/4 exactly
        s = (2 / PI) * 0.75 / f2
        err = 4 * _EPS * s
        return SeriesConstant(max(1.0, s), err if s > 1 else 0.0, s, s, 0.0, 0.0, 0)

    # the bracket width shrinks like N^-3 in every regime
    N = 64
    while True:
        n = np.arange(2, N + 1, dtype=float)
        partial = (2 / PI) * float(np.sum(1.0 / ((k * n * n - m) * (n * n - 1.0))))
        lo, hi = _tail_bracket(k, m, N)
        if hi - lo <= tol or N >= MAX_SERIES_TERMS:
            break
        N = min(4 * N, MAX_SERIES_TERMS)
    if hi - lo > tol:
        warnings.warn(f"series tail bracket {hi - lo:.3e} exceeds tol {tol:.1e}", RuntimeWarning)
    # pairwise summation: rounding error <= (log2 N + 4) eps * sum
    rounding = (math.log2(N) + 4) * _EPS * (partial + hi)
    s = partial + hi
    err = (hi - lo) + rounding
    return SeriesConstant(max(1.0, s), err if s > 1 else 0.0, s, partial, hi, hi - lo, N)


def stability_series(p: IneqParams, tol: float = 1e-12) -> SeriesConstant:
    if not cone_check(p).cond20:
        raise ConeConditionError("the stability constant needs cond20 (6a - l + 4d > 0)")
    return _series_constant(p.alpha, p.lam, p.delta, float(tol))


def stability_constant(p: IneqParams, tol: float = 1e-12) -> tuple[float, float]:
    """(C(alpha, lambda, delta), certified error)."""
    s = stability_series(p, tol)
    return s.value, s.error


# ---------------------------------------------------------------------------
# bound checks

@dataclass(frozen=True)
class Theorem42Check:
    holds: bool
    h1_sq: float
    h1_sq_bound: float
    C: float
    deficit: float
    margin: float
    margin_bound: float

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class Theorem43Check:
    holds: bool
    h2_sq: float
    deficit: float
    margin: float
    equality: bool
    degree_at_most_two: Optional[bool]

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class Remark2Check:
    holds: bool
    lhs: float
    rhs: float
    margin: float

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class PanXuCheck:
    phi: float
    h1_sq: float
    h2_sq: float
    h1_rhs: float
    h2_rhs: float
    h1_ok: bool
    h2_ok: bool
    h2_rhs_via_theorem_4_3: float
    routes_agree: bool

    def to_dict(self):
        return asdict(self)


def _require(status: bool, what: str):
    if not status:
        raise ConeConditionError(f"parameters violate {what}")


def check_theorem_4_2(c: SupportFourier, p: IneqParams, tol: float = 1e-9,
                      *, deficit_fn: DeficitFn = deficit) -> Theorem42Check:
    """h1^2 <= C * deficit, for both the exact sup and the coefficient bound."""
    _require(cone_check(p).cond20, "cond20")
    require_convex(c)
    C, _ = stability_constant(p)
    d = deficit_fn(c, p).value
    sup, bound = h1_sq(c), h1_sq_bound(c)
    slack = tol * _scale(c)
    margin, margin_bound = C * d - sup, C * d - bound
    holds = margin >= -slack and margin_bound >= -slack and sup <= bound * (1 + 1e-12) + 1e-300
    return Theorem42Check(holds, sup, bound, C, d, margin, margin_bound)


def check_theorem_4_3(c: SupportFourier, p: IneqParams, tol: float = 1e-9,
                      *, deficit_fn: DeficitFn = deficit) -> Theorem43Check:
    """h2^2 <= deficit, with the equality characterisation under cond27."""
    cone = cone_check(p)
    _require(cone.cond25, "cond25")
    require_convex(c)
    d = deficit_fn(c, p).value
    h2 = h2_sq(c)
    slack = tol * _scale(c)
    margin = d - h2
    equality = abs(margin) <= slack
    deg2 = None
    holds = margin >= -slack
    if cone.cond27 and equality:
        # each n >= 3 harmonic adds (pi/2)(w_n - 2)|c_n|^2 to the margin
        w3 = coefficient(p, 3) - 2.0
        bound = math.sqrt(2 * slack / (PI * w3))
        amps = np.hypot(c.a[2:], c.b[2:])
        deg2 = bool(amps.size == 0 or amps.max() <= bound)
        holds = holds and deg2
    return Theorem43Check(holds, h2, d, margin, equality, deg2)


def check_remark_2(c: SupportFourier, p: IneqParams, tol: float = 1e-9,
                   *, deficit_fn: DeficitFn = deficit) -> Remark2Check:
    cone = cone_check(p)
    _require(cone.cond20 and cone.cond25, "cond20 and cond25")
    require_convex(c)
    C, _ = stability_constant(p)
    lhs = max(h1_sq(c), h2_sq(c))
    rhs = C * deficit_fn(c, p).value
    margin = rhs - lhs
    return Remark2Check(margin >= -tol * _scale(c), lhs, rhs, margin)


def check_panxu(c: SupportFourier, tol: float = 1e-9,
                *, deficit_fn: DeficitFn = deficit) -> PanXuCheck:
    """Steiner-disc estimates of h1^2 and h2^2 in terms of Phi = 4pi(A+|A~|) - L^2."""
    require_convex(c)
    phi = deficit_fn(c, PRESETS["eq2"]).value
    h1, h2 = h1_sq(c), h2_sq(c)
    r1, r2 = PANXU_H1_CONSTANT * phi, PANXU_H2_CONSTANT * phi
    via43 = deficit_fn(c, PANXU_H2_PARAMS).value
    slack = tol * _scale(c)
    agree = abs(r2 - via43) <= 1e-12 * max(abs(r2), abs(via43))
    return PanXuCheck(phi, h1, h2, r1, r2, h1 <= r1 + slack, h2 <= r2 + slack, via43, agree)


@dataclass(frozen=True)
class StabilityReport:
    h1_sq: float
    h1_sq_bound: float
    h2_sq: float
    C_const: Optional[float]
    C_error: Optional[float]
    deficit_value: float
    bound_21_ok: Optional[bool]
    bound_26_ok: Optional[bool]
    bound_30_ok: Optional[bool]
    panxu_h1_ok: bool
    panxu_h2_ok: bool
    margin_21: Optional[float]
    margin_26: Optional[float]
    margin_30: Optional[float]

    @property
    def all_ok(self) -> bool:
        flags = [self.bound_21_ok, self.bound_26_ok, self.bound_30_ok, self.panxu_h1_ok, self.panxu_h2_ok]
        return all(f for f in flags if f is not None)

    def to_dict(self) -> dict:
        return asdict(self)


def stability_report(c: SupportFourier, p: IneqParams, tol: float = 1e-9) -> StabilityReport:
    """Every applicable stability check for one curve and parameter set.

    Checks whose cone condition fails are reported as None; at least one
    of cond20 / cond25 must hold.
    """
    cone = cone_check(p)
    if not (cone.cond20 or cone.cond25):
        raise ConeConditionError("parameters satisfy neither cond20 nor cond25")
    require_convex(c)
    C = err = None
    b21 = b26 = b30 = m21 = m26 = m30 = None
    if cone.cond20:
        C, err = stability_constant(p)
        t42 = check_theorem_4_2(c, p, tol)
        b21, m21 = t42.holds, t42.margin
    if cone.cond25:
        t43 = check_theorem_4_3(c, p, tol)
        b26, m26 = t43.holds, t43.margin
    if cone.cond20 and cone.cond25:
        r2 = check_remark_2(c, p, tol)
        b30, m30 = r2.holds, r2.margin
    px = check_panxu(c, tol)
    return StabilityReport(
        h1_sq=h1_sq(c),
        h1_sq_bound=h1_sq_bound(c),
        h2_sq=h2_sq(c),
        C_const=C,
        C_error=err,
        deficit_value=deficit(c, p).value,
        bound_21_ok=b21,
        bound_26_ok=b26,
        bound_30_ok=b30,
        panxu_h1_ok=px.h1_ok,
        panxu_h2_ok=px.h2_ok,
        margin_21=m21,
        margin_26=m26,
        margin_30=m30,
    )
