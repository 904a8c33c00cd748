"""Static SVG of a curve and its evolute."""

from __future__ import annotations

import numpy as np

from .support import SupportFourier, curve_points, evolute_points, uniform_angles

SAMPLES = 720
PADDING = 0.01


def _path(P: np.ndarray) -> str:
    head = f"M{P[0, 0]:.6g},{P[0, 1]:.6g}"
    rest = " ".join(f"L{x:.6g},{y:.6g}" for x, y in P[1:])
    return f"{head} {rest} Z"


def render_svg(c: SupportFourier, samples: int = SAMPLES, width: int = 600) -> str:
    """Curve gamma (black) and evolute beta (red) on one viewBox.

    The y axis is flipped so the picture has the usual orientation.
    """
    t = uniform_angles(samples)
    gamma = curve_points(c, t)
    beta = evolute_points(c, t)
    allp = np.vstack([gamma, beta])
    lo, hi = allp.min(axis=0), allp.max(axis=0)
    span = float(max(hi[0] - lo[0], hi[1] - lo[1], 1e-12))
    pad = PADDING * span
    x0, y0 = lo[0] - pad, -(hi[1] + pad)
    w, h = (hi[0] - lo[0]) + 2 * pad, (hi[1] - lo[1]) + 2 * pad
    stroke = span / 400
    height = int(round(width * h / w)) if w > 0 else width
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="{x0:.6g} {y0:.6g} {w:.6g} {h:.6g}">\n'
        f'<g transform="scale(1,-1)" fill="none" stroke-width="{stroke:.4g}">\n'
        f'<path id="curve" stroke="black" d="{_path(gamma)}"/>\n'
        f'<path id="evolute" stroke="red" d="{_path(beta)}"/>\n'
        "</g>\n</svg>\n"
    )
