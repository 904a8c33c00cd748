"""Test-curve factories, random sampling and point-cloud ingestion."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .inequalities import IneqParams
from .support import SupportFourier, eval_p, is_strictly_convex, uniform_angles

PI = math.pi
U64 = 1 << 64


def make_circle(r: float, center: tuple[float, float] = (0.0, 0.0)) -> SupportFourier:
    if not r > 0:
        raise ValueError("radius must be positive")
    cx, cy = center
    if cx == 0.0 and cy == 0.0:
        return SupportFourier(r)
    return SupportFourier(r, ((cx, cy),))


def make_degree_two(a0: float, a2: float, b2: float) -> SupportFourier:
    """p = a0 + a2 cos 2t + b2 sin 2t; min rho = a0 - 3 |(a2, b2)|."""
    if not a0 > 3 * math.hypot(a2, b2):
        raise ValueError(f"a0={a0} must exceed 3*|(a2, b2)|={3 * math.hypot(a2, b2)} for convexity")
    return SupportFourier(a0, ((0.0, 0.0), (a2, b2)))


@dataclass(frozen=True)
class RandomCurveSpec:
    max_harmonic: int = 8
    decay: float = 3.0
    budget: float = 0.5
    seed: int = 0

    def __post_init__(self):
        if self.max_harmonic < 2:
            raise ValueError("max_harmonic must be >= 2")
        if not self.decay > 2:
            raise ValueError("decay exponent must exceed 2")
        if not 0 < self.budget < 1:
            raise ValueError("amplitude budget must lie in (0, 1)")
        if not 0 <= self.seed < U64:
            raise ValueError("seed must be an unsigned 64-bit integer")


def random_convex(spec: RandomCurveSpec) -> SupportFourier:
    """Random curve with a0 = 1 and min rho >= 1 - budget.

    Harmonic n >= 2 has both coefficients uniform in [-1, 1] times
    budget / (sqrt(2) Z n^q (n^2 - 1)), Z = sum_{n=2}^N n^-q, so that
    sum (n^2 - 1)|(a_n, b_n)| <= budget. The first harmonic (a pure
    translation) is uniform in [-1, 1].
    """
    rng = np.random.default_rng(spec.seed)
    N, q = spec.max_harmonic, spec.decay
    n = np.arange(2, N + 1, dtype=float)
    Z = float(np.sum(n**-q))
    scale = spec.budget / (math.sqrt(2.0) * Z * n**q * (n * n - 1.0))
    a1, b1 = rng.uniform(-1.0, 1.0, size=2)
    ab = rng.uniform(-1.0, 1.0, size=(N - 1, 2)) * scale[:, None]
    return SupportFourier(1.0, ((a1, b1),) + tuple(map(tuple, ab)))


# ---------------------------------------------------------------------------
# parameter sampling from the cones

def _slack(rng: np.random.Generator, lo: float, hi: float, p_zero: float = 0.25) -> float:
    return 0.0 if rng.random() < p_zero else float(rng.uniform(lo, hi))


def sample_params(rng: np.random.Generator, cone: str = "cond4") -> IneqParams:
    """Draw weights inside a cone, landing on its faces a quarter of the time.

    ``cone`` is one of "cond4", "cond20", "cond25" or "both" (cond20 and
    cond25 together).
    """
    alpha = float(rng.uniform(-1.0, 2.0))
    delta = _slack(rng, 0.05, 3.0) - 2 * alpha
    if cone == "cond4":
        s3 = _slack(rng, 0.0, 4.0)
    elif cone == "cond20":
        s3 = float(rng.uniform(0.05, 4.0))
    elif cone in ("cond25", "both"):
        s3 = 2.0 / 3.0 + _slack(rng, 0.0, 4.0)
    else:
        raise ValueError(f"unknown cone {cone!r}")
    lam = 6 * alpha + 4 * delta - s3
    beta = (_slack(rng, 0.0, 2.0) - 2 * alpha - lam) / (4 * PI)
    return IneqParams(alpha, beta, lam, delta)


def sample_equality_params(rng: np.random.Generator) -> IneqParams:
    """Weights on the cond7 ray: 2a+d > 0, 2a+4pi b+l = 0, 6a-l+4d = 0."""
    alpha = float(rng.uniform(-1.0, 2.0))
    delta = float(rng.uniform(0.05, 3.0)) - 2 * alpha
    lam = 6 * alpha + 4 * delta
    beta = -(2 * alpha + lam) / (4 * PI)
    return IneqParams(alpha, beta, lam, delta)


# ---------------------------------------------------------------------------
# point clouds

@dataclass(frozen=True)
class PointCloud:
    points: np.ndarray

    def __post_init__(self):
        P = np.asarray(self.points, dtype=float)
        if P.ndim != 2 or P.shape[1] != 2 or P.shape[0] < 3:
            raise ValueError("point cloud needs at least 3 points of shape (k, 2)")
        if not np.all(np.isfinite(P)):
            raise ValueError("point coordinates must be finite")
        Q = P - P.mean(axis=0)
        sv = np.linalg.svd(Q, compute_uv=False)
        if sv[1] <= 1e-12 * max(sv[0], 1e-300):
            raise ValueError("points are collinear")
        object.__setattr__(self, "points", P)


def load_point_cloud(path: str | Path) -> PointCloud:
    """Read ``[[x, y], ...]`` JSON or two-column x,y CSV (header optional)."""
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".json" or text.lstrip().startswith("["):
        return PointCloud(np.array(json.loads(text), dtype=float))
    rows = []
    for row in csv.reader(text.splitlines()):
        if not row or not "".join(row).strip():
            continue
        try:
            rows.append((float(row[0]), float(row[1])))
        except (ValueError, IndexError):
            if rows:
                raise ValueError(f"bad CSV row: {row!r}")
            continue  # header
    return PointCloud(np.array(rows, dtype=float))


def support_of_cloud(pc: PointCloud, theta):
    """h(theta) = max_i <x_i, (cos theta, sin theta)>; theta scalar or array."""
    t = np.asarray(theta, dtype=float)
    u = np.stack([np.cos(t), np.sin(t)], axis=0).reshape(2, -1)
    h = (pc.points @ u).max(axis=0)
    return float(h[0]) if t.ndim == 0 else h.reshape(t.shape)


@dataclass(frozen=True)
class FitReport:
    curve: SupportFourier
    residual_sup: float
    convex: bool

    def to_dict(self) -> dict:
        d = self.curve.to_dict()
        d.update(residual_sup=self.residual_sup, convex=self.convex)
        return d


def project_samples(h: np.ndarray, N: int) -> SupportFourier:
    """Fourier coefficients up to degree N of uniform periodic samples."""
    h = np.asarray(h, dtype=float)
    M = h.size
    t = uniform_angles(M)
    n = np.arange(1, N + 1)[:, None]
    a = 2.0 / M * (np.cos(n * t) @ h)
    b = 2.0 / M * (np.sin(n * t) @ h)
    return SupportFourier.from_arrays(float(h.mean()), a, b)


def fit_support_fourier(pc: PointCloud, N: int, M: int) -> FitReport:
    """Project the discrete support function onto degree-N harmonics.

    Polygon support functions are only continuous, so truncation smooths
    them; convexity of the result is checked, never enforced.
    """
    if M < 4 * (N + 1):
        raise ValueError(f"M={M} must be at least 4(N+1)={4 * (N + 1)}")
    t = uniform_angles(M)
    h = support_of_cloud(pc, t)
    c = project_samples(h, N)
    resid = float(np.max(np.abs(h - eval_p(c, t))))
    return FitReport(c, resid, is_strictly_convex(c))
