"""Truncated Fourier representation of a Minkowski support function.

A convex curve is stored as the coefficients of

    p(theta) = a0 + sum_{n=1}^{N} (a_n cos(n theta) + b_n sin(n theta))

where theta is the angle of the outward normal. Everything else (curve
points, evolute, curvature radius) is evaluated from these coefficients.
"""

from __future__ import annotations

import functools
import json
import math
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

TWO_PI = 2.0 * math.pi
_EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class PlanePoint:
    x: float
    y: float

    def __iter__(self):
        yield self.x
        yield self.y


@dataclass(frozen=True)
class SupportFourier:
    """Support function p(theta) truncated at degree N = len(harmonics).

    ``harmonics[n-1]`` holds ``(a_n, b_n)``. Instances that are not
    strictly convex are representable; use :func:`is_strictly_convex`
    before trusting geometric output.
    """

    a0: float
    harmonics: tuple[tuple[float, float], ...] = ()
    a: np.ndarray = field(init=False, repr=False, compare=False)
    b: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        pairs = tuple((float(an), float(bn)) for an, bn in self.harmonics)
        a0 = float(self.a0)
        coeffs = np.array([a0] + [v for pair in pairs for v in pair], dtype=float)
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("support function coefficients must be finite")
        object.__setattr__(self, "a0", a0)
        object.__setattr__(self, "harmonics", pairs)
        arr = np.array(pairs, dtype=float).reshape(-1, 2)
        a, b = arr[:, 0].copy(), arr[:, 1].copy()
        a.flags.writeable = False
        b.flags.writeable = False
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def degree(self) -> int:
        return len(self.harmonics)

    @property
    def n(self) -> np.ndarray:
        return np.arange(1, self.degree + 1, dtype=float)

    @classmethod
    def from_arrays(cls, a0: float, a: Sequence[float], b: Sequence[float]) -> "SupportFourier":
        if len(a) != len(b):
            raise ValueError("a and b must have equal length")
        return cls(a0, tuple(zip(a, b)))

    @classmethod
    def from_dict(cls, data: dict) -> "SupportFourier":
        if not isinstance(data, dict) or "a0" not in data:
            raise ValueError("curve JSON must be an object with key 'a0'")
        harmonics = data.get("harmonics", [])
        pairs = []
        for pair in harmonics:
            if len(pair) != 2:
                raise ValueError(f"harmonic entry must be [a_n, b_n], got {pair!r}")
            pairs.append((float(pair[0]), float(pair[1])))
        return cls(float(data["a0"]), tuple(pairs))

    @classmethod
    def from_json(cls, text: str) -> "SupportFourier":
        return cls.from_dict(json.loads(text))

    def to_dict(self) -> dict:
        return {"a0": self.a0, "harmonics": [list(p) for p in self.harmonics]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def padded(self, degree: int) -> "SupportFourier":
        """Same curve with trailing zero harmonics up to ``degree``."""
        extra = max(0, degree - self.degree)
        return SupportFourier(self.a0, self.harmonics + ((0.0, 0.0),) * extra)

    def trimmed(self) -> "SupportFourier":
        pairs = list(self.harmonics)
        while pairs and pairs[-1] == (0.0, 0.0):
            pairs.pop()
        return SupportFourier(self.a0, tuple(pairs))

    def scaled(self, s: float) -> "SupportFourier":
        return SupportFourier.from_arrays(s * self.a0, s * self.a, s * self.b)

    def translated(self, v1: float, v2: float) -> "SupportFourier":
        """Support function of the curve shifted by (v1, v2)."""
        c = self.padded(1)
        a, b = c.a.copy(), c.b.copy()
        a[0] += v1
        b[0] += v2
        return SupportFourier.from_arrays(c.a0, a, b)

    def rotated(self, phi: float) -> "SupportFourier":
        """Coefficients of theta -> p(theta + phi)."""
        n = self.n
        cs, sn = np.cos(n * phi), np.sin(n * phi)
        return SupportFourier.from_arrays(
            self.a0, self.a * cs + self.b * sn, -self.a * sn + self.b * cs
        )


def circle(r: float, center: tuple[float, float] = (0.0, 0.0)) -> SupportFourier:
    cx, cy = center
    if cx == 0.0 and cy == 0.0:
        return SupportFourier(r)
    return SupportFourier(r, ((cx, cy),))


# ---------------------------------------------------------------------------
# trigonometric polynomial evaluation

def _reduce(theta):
    return np.mod(theta, TWO_PI)


def _cos_sin(t: np.ndarray, N: int):
    nt = np.multiply.outer(t, np.arange(1, N + 1, dtype=float))
    return np.cos(nt), np.sin(nt)


def trig_eval(c0: float, a: np.ndarray, b: np.ndarray, theta, order: int = 0):
    """Evaluate the ``order``-th derivative of c0 + sum a_n cos + b_n sin.

    ``theta`` may be a scalar or an array; the result has the same shape.
    """
    t = _reduce(np.asarray(theta, dtype=float))
    N = len(a)
    base = float(c0) if order == 0 else 0.0
    if N == 0:
        return base if t.ndim == 0 else np.full(t.shape, base)
    n = np.arange(1, N + 1, dtype=float)
    if t.size * N <= _OUTER_LIMIT:
        C, S = _cos_sin(t, N)
        out = _combine(a, b, n, C, S, order).sum(axis=-1) + base
        return float(out) if t.ndim == 0 else out

    out = np.full(t.shape, base)
    for k in range(N):
        if a[k] == 0.0 and b[k] == 0.0:
            continue
        C, S = np.cos(n[k] * t), np.sin(n[k] * t)
        out += _combine(a[k], b[k], n[k], C, S, order)
    return out


_OUTER_LIMIT = 1 << 21
_XTOL = 1e-13


def _combine(a, b, n, C, S, order):
    if order == 0:
        return a * C + b * S
    if order == 1:
        return n * (b * C - a * S)
    if order == 2:
        return -(n * n) * (a * C + b * S)
    if order == 3:
        return n**3 * (a * S - b * C)
    raise ValueError("order must be 0..3")


def _newton_critical(a, b, n, sign, t, lo, hi):
    """Zero of sign*g' in [lo, hi] (sign*g' < 0 at lo, > 0 at hi).

    Newton on g' with g'' analytic, falling back to bisection whenever a
    step leaves the shrinking bracket.
    """
    for _ in range(100):
        C, S = np.cos(n * t), np.sin(n * t)
        d1 = sign * float(np.dot(n, b * C - a * S))
        d2 = -sign * float(np.dot(n * n, a * C + b * S))
        if d1 == 0.0:
            return t
        if d1 < 0.0:
            lo = t
        else:
            hi = t
        if d2 > 0.0:
            nxt = t - d1 / d2
            if abs(nxt - t) <= _XTOL:
                return min(max(nxt, lo), hi)
        else:
            nxt = lo - 1.0
        if not lo < nxt < hi:
            nxt = 0.5 * (lo + hi)
        if hi - lo <= _XTOL:
            return nxt
        t = nxt
    return t


def trig_extremum(c0: float, a: np.ndarray, b: np.ndarray, *, maximize: bool = False) -> tuple[float, float]:
    """Global min (or max) of a trigonometric polynomial over [0, 2pi).

    Dense scan with 16(N+1) nodes, then every node that could neighbour
    the true extremum (within the Taylor margin h^2/8 * max|g''|) is
    refined by safeguarded Newton on g' to 1e-13 in theta.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    N = len(a)
    if N == 0 or (not np.any(a) and not np.any(b)):
        return float(c0), 0.0
    sign = -1.0 if maximize else 1.0
    K = max(16 * (N + 1), 64)
    h = TWO_PI / K
    grid = h * np.arange(K)
    n = np.arange(1, N + 1, dtype=float)
    C, S = _cos_sin(grid, N)
    g = sign * (C @ a + S @ b + c0)
    dg = sign * ((C @ (n * b)) - (S @ (n * a)))

    amp = np.hypot(a, b)
    margin = h * h / 8.0 * float(np.sum(n * n * amp)) + 16 * _EPS * (abs(c0) + float(amp.sum()))

    k_best = int(np.argmin(g))
    best_val, best_theta = float(g[k_best]), float(grid[k_best])

    def f(t):
        return sign * trig_eval(c0, a, b, t)

    for k in np.flatnonzero(g <= g[k_best] + margin):
        lo, hi = grid[k] - h, grid[k] + h
        if dg[k - 1] < 0.0 < dg[(k + 1) % K]:
            t = _newton_critical(a, b, n, sign, float(grid[k]), lo, hi)
        else:
            res = minimize_scalar(f, bounds=(lo, hi), method="bounded", options={"xatol": 1e-12})
            t = float(res.x)
        val = f(t)
        if val < best_val:
            best_val, best_theta = val, t
    return sign * best_val, float(_reduce(best_theta))


# ---------------------------------------------------------------------------
# support function and its derivatives

def eval_p(c: SupportFourier, theta):
    return trig_eval(c.a0, c.a, c.b, theta)


def eval_dp(c: SupportFourier, theta):
    return trig_eval(c.a0, c.a, c.b, theta, order=1)


def eval_ddp(c: SupportFourier, theta):
    return trig_eval(c.a0, c.a, c.b, theta, order=2)


def eval_rho(c: SupportFourier, theta):
    """Radius of curvature rho = p + p''."""
    return eval_p(c, theta) + eval_ddp(c, theta)


def rho_coefficients(c: SupportFourier) -> tuple[float, np.ndarray, np.ndarray]:
    """Fourier coefficients of rho: a0 and (1 - n^2)(a_n, b_n)."""
    w = 1.0 - c.n**2
    return c.a0, w * c.a, w * c.b


@functools.lru_cache(maxsize=2048)
def min_rho(c: SupportFourier) -> tuple[float, float]:
    """Global minimum of rho and an angle attaining it."""
    return trig_extremum(*rho_coefficients(c))


@functools.lru_cache(maxsize=2048)
def max_rho(c: SupportFourier) -> tuple[float, float]:
    return trig_extremum(*rho_coefficients(c), maximize=True)


def convexity_lower_bound(c: SupportFourier) -> float:
    """a0 - sum_{n>=2} (n^2-1)|(a_n, b_n)|, a lower bound on min rho."""
    n = c.n
    return c.a0 - float(np.sum((n * n - 1.0) * np.hypot(c.a, c.b)))


def is_strictly_convex(c: SupportFourier) -> bool:
    if convexity_lower_bound(c) > 0.0:
        return True
    return min_rho(c)[0] > 0.0


def require_convex(c: SupportFourier) -> None:
    from .errors import NotConvexError

    if convexity_lower_bound(c) > 0.0:
        return
    value, theta = min_rho(c)
    if not value > 0.0:
        raise NotConvexError(value, theta)


def warn_if_not_convex(c: SupportFourier) -> bool:
    ok = is_strictly_convex(c)
    if not ok:
        warnings.warn("support function is not strictly convex", RuntimeWarning, stacklevel=3)
    return ok


# ---------------------------------------------------------------------------
# points

def curve_points(c: SupportFourier, thetas) -> np.ndarray:
    """gamma(theta) for an array of angles, shape (K, 2)."""
    t = np.asarray(thetas, dtype=float)
    p, dp = eval_p(c, t), eval_dp(c, t)
    cs, sn = np.cos(t), np.sin(t)
    return np.stack([p * cs - dp * sn, p * sn + dp * cs], axis=-1)


def evolute_points(c: SupportFourier, thetas) -> np.ndarray:
    """Centres of curvature beta(theta), shape (K, 2)."""
    t = np.asarray(thetas, dtype=float)
    dp, ddp = eval_dp(c, t), eval_ddp(c, t)
    cs, sn = np.cos(t), np.sin(t)
    return np.stack([-dp * sn - ddp * cs, dp * cs - ddp * sn], axis=-1)


def curve_point(c: SupportFourier, theta: float) -> PlanePoint:
    x, y = curve_points(c, theta)
    return PlanePoint(float(x), float(y))


def evolute_point(c: SupportFourier, theta: float) -> PlanePoint:
    x, y = evolute_points(c, theta)
    return PlanePoint(float(x), float(y))


def uniform_angles(M: int) -> np.ndarray:
    return TWO_PI * np.arange(M) / M


def shoelace_area(points: Iterable) -> float:
    """Signed area of a closed polygon (counter-clockwise positive)."""
    P = np.asarray(points, dtype=float)
    x, y = P[:, 0], P[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))
