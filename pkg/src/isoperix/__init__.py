"""Fourier support-function toolkit for isoperimetric-type inequalities of convex plane curves."""

__version__ = "0.1.0"

from .errors import ConeConditionError, ConsistencyError, NotConvexError
from .functionals import CurveFunctionals, compute_all, steiner_disc, steiner_point
from .generators import (
    FitReport,
    PointCloud,
    RandomCurveSpec,
    fit_support_fourier,
    load_point_cloud,
    make_circle,
    make_degree_two,
    random_convex,
)
from .inequalities import (
    PANXU_H2_PARAMS,
    PRESETS,
    DeficitReport,
    IneqParams,
    cone_check,
    deficit,
    equality_diagnosis,
)
from .quadrature import oracle_functionals, oracle_integrals, periodic_trapezoid
from .stability import h1_sq, h2_sq, stability_constant, stability_report
from .support import PlanePoint, SupportFourier, circle, is_strictly_convex, max_rho, min_rho

__all__ = [
    "ConeConditionError", "ConsistencyError", "NotConvexError",
    "CurveFunctionals", "compute_all", "steiner_disc", "steiner_point",
    "FitReport", "PointCloud", "RandomCurveSpec", "fit_support_fourier", "load_point_cloud",
    "make_circle", "make_degree_two", "random_convex",
    "PANXU_H2_PARAMS", "PRESETS", "DeficitReport", "IneqParams", "cone_check", "deficit",
    "equality_diagnosis",
    "oracle_functionals", "oracle_integrals", "periodic_trapezoid",
    "h1_sq", "h2_sq", "stability_constant", "stability_report",
    "PlanePoint", "SupportFourier", "circle", "is_strictly_convex", "max_rho", "min_rho",
]
