"""Randomised invariant campaign over curves and cone-sampled parameters.

Each case draws its own generator from ``(seed, index)``, so any failure
is reproducible from those two numbers alone and the campaign can be
split across processes without changing its result.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import ConsistencyError
from .functionals import compute_all
from .generators import (
    RandomCurveSpec,
    make_degree_two,
    random_convex,
    sample_equality_params,
    sample_params,
)
from .inequalities import PRESETS, DeficitReport, IneqParams, deficit, equality_diagnosis
from .quadrature import oracle_integrals
from .stability import check_panxu, check_remark_2, check_theorem_4_2, check_theorem_4_3
from .support import SupportFourier, is_strictly_convex

PI = math.pi
DeficitFn = Callable[[SupportFourier, IneqParams], DeficitReport]
CHECKS = (
    "convex", "oracle", "corollaries", "theorem_1_2", "equality",
    "theorem_4_2", "theorem_4_3", "remark_2", "panxu",
)


def negated_evolute_deficit(c: SupportFourier, p: IneqParams) -> DeficitReport:
    """Deliberately wrong deficit with the |A~| term's sign flipped.

    Used to show the campaign can fail; both internal routes agree, so
    only the inequality checks can catch it.
    """
    rep = deficit(c, IneqParams(p.alpha, p.beta, p.lam, -p.delta))
    return DeficitReport(rep.value, rep.a0_term, rep.harmonic_terms, rep.value_functionals, p, rep.cone, rep.L)


MUTATIONS: dict[str, DeficitFn] = {"negate-evolute-area": negated_evolute_deficit}


@dataclass
class FuzzFailure:
    seed: int
    index: int
    check: str
    detail: str
    curve: dict
    params: Optional[dict] = None

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class FuzzSummary:
    count: int
    seed: int
    max_harmonic: int
    tol: float
    mutation: Optional[str]
    checks_run: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def failures_by_check(self) -> dict:
        out = {name: 0 for name in self.checks_run}
        for f in self.failures:
            out[f.check] = out.get(f.check, 0) + 1
        return out

    def to_dict(self, with_failures: bool = False) -> dict:
        d = {
            "count": self.count,
            "seed": self.seed,
            "max_harmonic": self.max_harmonic,
            "tol": self.tol,
            "mutation": self.mutation,
            "checks_run": dict(self.checks_run),
            "failures_by_check": self.failures_by_check(),
            "failure_count": len(self.failures),
            "ok": self.ok,
        }
        if with_failures:
            d["failures"] = [f.to_dict() for f in self.failures]
        return d


def case_curve(seed: int, index: int, max_harmonic: int) -> tuple[SupportFourier, np.random.Generator]:
    rng = np.random.default_rng([seed, index])
    spec = RandomCurveSpec(
        max_harmonic=int(rng.integers(2, max_harmonic + 1)),
        decay=float(rng.uniform(2.05, 4.0)),
        budget=float(rng.uniform(0.05, 0.95)),
        seed=int(rng.integers(0, 1 << 63)),
    )
    c = random_convex(spec).scaled(float(10 ** rng.uniform(-1.0, 1.0)))
    return c, rng


def _rel_close(x: float, y: float, rtol: float) -> bool:
    return abs(x - y) <= rtol * max(1.0, abs(y))


def run_case(seed: int, index: int, max_harmonic: int = 16, tol: float = 1e-9,
             deficit_fn: DeficitFn = deficit, checks=CHECKS) -> tuple[dict, list[FuzzFailure]]:
    """Run the selected checks for one case; returns (checks run, failures).

    Random draws happen whether or not a check is selected, so a case is
    the same curve and parameters under any selection.
    """
    c, rng = case_curve(seed, index, max_harmonic)
    scale = max(1.0, (2 * PI * c.a0) ** 2)
    ran: dict[str, int] = {}
    failures: list[FuzzFailure] = []

    def check(name, fn, params: Optional[IneqParams] = None, curve: SupportFourier = c):
        if name not in checks:
            return
        ran[name] = ran.get(name, 0) + 1
        try:
            detail = fn()
        except ConsistencyError as exc:
            detail = f"consistency: {exc}"
        except Exception as exc:  # a crash is a failure, not an abort
            detail = f"{type(exc).__name__}: {exc}"
        if detail:
            failures.append(FuzzFailure(seed, index, name, str(detail), curve.to_dict(),
                                        params.to_dict() if params else None))

    check("convex", lambda: None if is_strictly_convex(c) else "random curve not strictly convex")

    def oracle():
        f = compute_all(c)
        q = oracle_integrals(c)
        bad = [k for k in q if not _rel_close(q[k], getattr(f, k), 1e-11)]
        return f"oracle mismatch on {bad}" if bad else None

    check("oracle", oracle)

    def corollaries():
        f = compute_all(c)
        res = {name: deficit_fn(c, p).value for name, p in PRESETS.items()}
        res["eq10"] = f.max_rho_sq - (f.L**2 / PI - 2 * f.A + f.A_tilde_abs) / (2 * PI)
        neg = {k: v for k, v in res.items() if v < -tol * scale}
        return f"negative residuals {neg}" if neg else None

    check("corollaries", corollaries)

    p4 = sample_params(rng, "cond4")

    def theorem_1_2():
        v = deficit_fn(c, p4).value
        return None if v >= -tol * scale else f"deficit {v!r} < 0"

    check("theorem_1_2", theorem_1_2, p4)

    # equality instances: a degree-two curve must give zero deficit, the
    # random curve (harmonics n >= 3 present) must be diagnosed as such
    p7 = sample_equality_params(rng)
    r = float(rng.uniform(0.0, 0.3))
    phi = float(rng.uniform(0.0, 2 * PI))
    c2 = make_degree_two(c.a0, r * c.a0 * math.cos(phi), r * c.a0 * math.sin(phi))

    def equality():
        v = deficit_fn(c2, p7).value
        if abs(v) > 1e-10 * scale:
            return f"degree-two deficit {v!r} not zero"
        d2 = equality_diagnosis(c2, p7)
        d = equality_diagnosis(c, p7)
        if not (d2.deficit_is_zero and d2.degree_at_most_two and d2.consistent and d.consistent):
            return f"diagnosis inconsistent: {d2.to_dict()} / {d.to_dict()}"
        return None

    check("equality", equality, p7, c2)

    p20 = sample_params(rng, "cond20")
    check("theorem_4_2", lambda: _verdict(check_theorem_4_2(c, p20, tol, deficit_fn=deficit_fn)), p20)
    p25 = sample_params(rng, "cond25")
    check("theorem_4_3", lambda: _verdict(check_theorem_4_3(c, p25, tol, deficit_fn=deficit_fn)), p25)
    pb = sample_params(rng, "both")
    check("remark_2", lambda: _verdict(check_remark_2(c, pb, tol, deficit_fn=deficit_fn)), pb)

    def panxu():
        px = check_panxu(c, tol, deficit_fn=deficit_fn)
        ok = px.h1_ok and px.h2_ok and px.routes_agree
        return None if ok else f"Steiner-disc estimate failed: {px.to_dict()}"

    check("panxu", panxu)
    return ran, failures


def _verdict(result) -> Optional[str]:
    return None if result.holds else f"bound violated: {result.to_dict()}"


def _run_range(args) -> tuple[dict, list[FuzzFailure]]:
    seed, start, stop, max_harmonic, tol, mutation, checks = args
    fn = MUTATIONS[mutation] if mutation else deficit
    ran: dict[str, int] = {}
    failures: list[FuzzFailure] = []
    for i in range(start, stop):
        r, f = run_case(seed, i, max_harmonic, tol, fn, checks)
        for k, v in r.items():
            ran[k] = ran.get(k, 0) + v
        failures.extend(f)
    return ran, failures


def worker_count() -> int:
    env = os.environ.get("ISOPERIX_THREADS")
    if env:
        return max(1, int(env))
    return 1


def run_fuzz(count: int, seed: int = 42, max_harmonic: int = 16, tol: float = 1e-9,
             mutation: Optional[str] = None, workers: Optional[int] = None,
             checks=CHECKS) -> FuzzSummary:
    """Run ``count`` cases; the summary does not depend on ``workers``."""
    checks = tuple(checks)
    unknown = set(checks) - set(CHECKS)
    if unknown:
        raise ValueError(f"unknown checks {sorted(unknown)}; choose from {CHECKS}")
    if max_harmonic < 2:
        raise ValueError("max_harmonic must be >= 2")
    if mutation is not None and mutation not in MUTATIONS:
        raise ValueError(f"unknown mutation {mutation!r}; choose from {sorted(MUTATIONS)}")
    workers = workers or worker_count()
    summary = FuzzSummary(count, seed, max_harmonic, tol, mutation)
    if workers <= 1 or count < 2 * workers:
        chunks = [(seed, 0, count, max_harmonic, tol, mutation, checks)]
        results = [_run_range(chunks[0])]
    else:
        bounds = np.linspace(0, count, workers + 1).astype(int)
        chunks = [(seed, int(a), int(b), max_harmonic, tol, mutation, checks) for a, b in zip(bounds[:-1], bounds[1:])]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_run_range, chunks))
    for ran, failures in results:
        for k, v in ran.items():
            summary.checks_run[k] = summary.checks_run.get(k, 0) + v
        summary.failures.extend(failures)
    summary.checks_run = {k: summary.checks_run.get(k, 0) for k in CHECKS if k in checks}
    return summary
