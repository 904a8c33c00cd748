"""Parametric isoperimetric deficit and its Bonnesen-type special cases.

For weights (alpha, beta, lambda, delta) the deficit is

    alpha * int rho^2 + beta * L^2 + lambda * A + delta * |A~|

which in Fourier coefficients splits into a constant term and one
nonnegative-weighted term per harmonic n >= 2. Every residual reported
here follows one convention: residual >= 0 means the inequality holds.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import ConeConditionError, ConsistencyError
from .functionals import area, compute_all, evolute_area_abs, integral_rho_sq, length
from .support import SupportFourier, require_convex

PI = math.pi
_EPS = float(np.finfo(float).eps)
CONE_RTOL = 8 * _EPS
CONSISTENCY_RTOL = 1e-11


@dataclass(frozen=True)
class IneqParams:
    alpha: float
    beta: float
    lam: float
    delta: float

    def __post_init__(self):
        for name in ("alpha", "beta", "lam", "delta"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite")
            object.__setattr__(self, name, v)

    def to_dict(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta, "lambda": self.lam, "delta": self.delta}

    @classmethod
    def from_dict(cls, d: dict) -> "IneqParams":
        return cls(d["alpha"], d["beta"], d.get("lambda", d.get("lam")), d["delta"])

    # linear forms appearing in the cone conditions, each as a list of terms
    def _terms_k(self):
        return [2 * self.alpha, self.delta]

    def _terms_circle(self):
        return [2 * self.alpha, 4 * PI * self.beta, self.lam]

    def _terms_n2(self):
        return [6 * self.alpha, -self.lam, 4 * self.delta]

    def _terms_h2(self):
        return [18 * self.alpha, -3 * self.lam, 12 * self.delta, -2.0]

    def circle_factor(self) -> float:
        """2 alpha + 4 pi beta + lambda; the a0^2 weight divided by pi."""
        return math.fsum(self._terms_circle())

    def curvature_slope(self) -> float:
        """2 alpha + delta; leading n^2 coefficient of the harmonic factor."""
        return math.fsum(self._terms_k())


PRESETS: dict[str, IneqParams] = {
    "eq1": IneqParams(0.0, 1.0, -4 * PI, 0.0),
    "eq2": IneqParams(0.0, -1.0, 4 * PI, 4 * PI),
    "eq3": IneqParams(1.0, -1 / PI, 2.0, 0.0),
    "eq8": IneqParams(0.0, -1.0, 4 * PI, PI),
    "eq9": IneqParams(1.0, -1 / PI, 2.0, -1.0),
}
# h2 estimate comparing K with its Steiner disc: deficit here equals Phi / (18 pi).
# lambda is 2/9 up to one ulp, taken as -(4 pi beta) so the a0 weight is exactly 0
_PANXU_BETA = -1 / (18 * PI)
PANXU_H2_PARAMS = IneqParams(0.0, _PANXU_BETA, -(4 * PI * _PANXU_BETA), 2 / 9)


@dataclass(frozen=True)
class ConeStatus:
    cond4: bool
    cond6: bool
    cond7: bool
    cond20: bool
    cond25: bool
    cond27: bool

    def to_dict(self) -> dict:
        return asdict(self)


class _Form:
    """A linear form sum(terms) compared against 0 up to rounding."""

    def __init__(self, terms, rtol):
        self.value = math.fsum(terms)
        self.tol = rtol * math.fsum(abs(t) for t in terms)

    def ge(self):
        return self.value >= -self.tol

    def gt(self):
        return self.value > self.tol

    def eq(self):
        return abs(self.value) <= self.tol


def cone_check(p: IneqParams, rtol: float = CONE_RTOL) -> ConeStatus:
    """Which cone conditions the parameters satisfy.

    Each linear form is compared with zero up to ``rtol`` times the sum
    of its term magnitudes, so that weights like beta = -1/(18 pi) land
    on the boundary they were constructed for. ``rtol=0`` compares exactly.
    """
    k = _Form(p._terms_k(), rtol)
    circ = _Form(p._terms_circle(), rtol)
    n2 = _Form(p._terms_n2(), rtol)
    h2 = _Form(p._terms_h2(), rtol)
    cond4 = k.ge() and circ.ge() and n2.ge()
    return ConeStatus(
        cond4=cond4,
        cond6=circ.eq(),
        cond7=k.gt() and circ.eq() and n2.eq(),
        cond20=k.ge() and circ.ge() and n2.gt(),
        cond25=k.ge() and circ.ge() and h2.ge(),
        cond27=k.gt() and circ.eq() and h2.eq(),
    )


def harmonic_weights(p: IneqParams, n) -> np.ndarray:
    """(2 alpha (n^2-1) - lambda + delta n^2)(n^2-1), elementwise in n."""
    n = np.asarray(n, dtype=float)
    m = n * n - 1.0
    return (2 * p.alpha * m - p.lam + p.delta * n * n) * m


def coefficient(p: IneqParams, n: int) -> float:
    if n < 2:
        raise ValueError("harmonic index must be >= 2")
    return float(harmonic_weights(p, n))


@dataclass(frozen=True)
class DeficitReport:
    value: float
    a0_term: float
    harmonic_terms: tuple[tuple[int, float], ...]
    value_functionals: float
    params: IneqParams
    cone: ConeStatus
    L: float

    @property
    def scale(self) -> float:
        return max(1.0, self.L**2)

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "a0_term": self.a0_term,
            "harmonic_terms": [[n, t] for n, t in self.harmonic_terms],
            "value_functionals": self.value_functionals,
            "params": self.params.to_dict(),
            "cone": self.cone.to_dict(),
        }


def deficit_from_functionals(c: SupportFourier, p: IneqParams) -> tuple[float, float]:
    """(deficit, sum of term magnitudes) from L, A, |A~| and int rho^2."""
    L = length(c)
    terms = [p.alpha * integral_rho_sq(c), p.beta * L**2, p.lam * area(c), p.delta * evolute_area_abs(c)]
    return math.fsum(terms), math.fsum(abs(t) for t in terms)


def deficit(c: SupportFourier, p: IneqParams, *, validate: bool = True) -> DeficitReport:
    """Deficit computed from functionals and from the per-harmonic expansion.

    The harmonic expansion is reported (it avoids the cancellation of the
    a0 terms); the two routes must agree to 1e-11 relative to the term
    magnitudes or :class:`ConsistencyError` is raised.
    """
    if validate:
        require_convex(c)
    n = c.n
    energy = c.a**2 + c.b**2
    a0_term = PI * c.a0**2 * p.circle_factor()
    terms = 0.5 * PI * harmonic_weights(p, n[1:]) * energy[1:]
    value = math.fsum([a0_term, *terms.tolist()])

    value_f, magnitude = deficit_from_functionals(c, p)
    if abs(value - value_f) > CONSISTENCY_RTOL * max(1.0, magnitude):
        raise ConsistencyError(
            f"deficit routes disagree: expansion {value!r} vs functionals {value_f!r}"
        )
    return DeficitReport(
        value=value,
        a0_term=a0_term,
        harmonic_terms=tuple((int(k), float(t)) for k, t in zip(n[1:], terms)),
        value_functionals=value_f,
        params=p,
        cone=cone_check(p),
        L=2 * PI * c.a0,
    )


@dataclass(frozen=True)
class EqualityDiagnosis:
    deficit: float
    deficit_is_zero: bool
    high_harmonic_amplitude: float
    amplitude_bound: float
    degree_at_most_two: bool
    consistent: bool

    @property
    def label(self) -> str:
        return "degree <= 2" if self.degree_at_most_two else "harmonics n >= 3 present"

    def to_dict(self) -> dict:
        d = asdict(self)
        d["label"] = self.label
        return d


def equality_diagnosis(c: SupportFourier, p: IneqParams, tol: float = 1e-10) -> EqualityDiagnosis:
    """Test the equality characterisation under the cond7 weights.

    With 2a+4pi b+l = 0 and 6a-l+4d = 0 only harmonics n >= 3 carry
    weight, each at least w_3 = (2a+d) * 5 * 8. A deficit below
    ``tol * max(1, L^2)`` therefore bounds every amplitude n >= 3 by
    sqrt(2 tol scale / (pi w_3)).
    """
    if not cone_check(p).cond7:
        raise ConeConditionError("equality diagnosis needs the cond7 weights")
    rep = deficit(c, p)
    scale = rep.scale
    is_zero = abs(rep.value) <= tol * scale
    amps = np.hypot(c.a[2:], c.b[2:])
    high = float(amps.max()) if amps.size else 0.0
    w3 = coefficient(p, 3)
    bound = math.sqrt(2 * tol * scale / (PI * w3))
    deg2 = high <= bound
    consistent = (not is_zero or deg2) and (high > 0.0 or is_zero)
    return EqualityDiagnosis(rep.value, is_zero, high, bound, deg2, consistent)


# ---------------------------------------------------------------------------
# named special cases

def classical_isoperimetric(c: SupportFourier) -> float:
    """L^2 - 4 pi A."""
    return deficit(c, PRESETS["eq1"]).value


def reverse_pan_zhang(c: SupportFourier) -> float:
    """4 pi (A + |A~|) - L^2."""
    return deficit(c, PRESETS["eq2"]).value


def pan_yang(c: SupportFourier) -> float:
    """int rho^2 - (L^2 - 2 pi A) / pi."""
    return deficit(c, PRESETS["eq3"]).value


def bonnesen_8(c: SupportFourier) -> float:
    """4 pi A + pi |A~| - L^2."""
    return deficit(c, PRESETS["eq8"]).value


def bonnesen_9(c: SupportFourier) -> float:
    """int rho^2 - (L^2 / pi - 2A + |A~|)."""
    return deficit(c, PRESETS["eq9"]).value


def bonnesen_10(c: SupportFourier) -> float:
    """max rho^2 - (L^2 / pi - 2A + |A~|) / (2 pi)."""
    require_convex(c)
    f = compute_all(c)
    return f.max_rho_sq - (f.L**2 / PI - 2 * f.A + f.A_tilde_abs) / (2 * PI)


COROLLARIES = {
    "eq1": classical_isoperimetric,
    "eq2": reverse_pan_zhang,
    "eq3": pan_yang,
    "eq8": bonnesen_8,
    "eq9": bonnesen_9,
    "eq10": bonnesen_10,
}


def corollary_residuals(c: SupportFourier) -> dict[str, float]:
    return {name: fn(c) for name, fn in COROLLARIES.items()}


@dataclass(frozen=True)
class TightnessReport:
    residual_2: float
    residual_8: float
    bound_3: float
    bound_9: float
    eq8_stronger: bool
    eq9_dominates: bool

    @property
    def gap_8(self) -> float:
        """residual(2) - residual(8) = 3 pi |A~|."""
        return self.residual_2 - self.residual_8

    @property
    def gap_9(self) -> float:
        """lower bound of (9) minus lower bound of (3) = |A~|."""
        return self.bound_9 - self.bound_3


def tightness_ordering(c: SupportFourier) -> TightnessReport:
    require_convex(c)
    f = compute_all(c)
    r2 = 4 * PI * (f.A + f.A_tilde_abs) - f.L**2
    r8 = 4 * PI * f.A + PI * f.A_tilde_abs - f.L**2
    b3 = f.L**2 / PI - 2 * f.A
    b9 = b3 + f.A_tilde_abs
    return TightnessReport(r2, r8, b3, b9, r8 <= r2, b9 >= b3)
