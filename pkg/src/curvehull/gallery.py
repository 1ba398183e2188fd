"""Built-in curve gallery: named closed curves with exact derivatives.

Provides canonical witnesses for the volume formula and its hypotheses:

* saddle -- (cos t, sin t, cos 2t): convex, exactly 4 torsion sign changes.
* baseball(a, b, c) -- (a cos t + b cos 3t, a sin t - b sin 3t, c sin 2t):
  convex seam-like curve with 4 sign changes at the shipped defaults.
* ellipse(a, b) -- planar, routes to the area path.
* wobble(k) -- (cos t, sin t, sin kt), k odd >= 3: convex but with 2k sign
  changes, the standard counterexample to applying the formula blindly.
* trefoil -- non-convex knotted curve, for negative tests.

Entries are addressed by name with optional parameters,
e.g. "baseball:a=1,b=0.15,c=0.7" or "wobble:k=5".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .curves import AnalyticCurve, is_convex_curve, sample_uniform

TWO_PI = 2.0 * np.pi


@dataclass(eq=False)
class GalleryEntry:
    """A named curve plus the facts the suite promises about it."""

    name: str
    curve: AnalyticCurve
    params: dict
    expected_vertex_count: Optional[int]
    expected_convex: bool
    planar: bool
    description: str = ""

    @property
    def spec_string(self) -> str:
        if not self.params:
            return self.name
        args = ",".join(f"{k}={v:g}" for k, v in self.params.items())
        return f"{self.name}:{args}"


def _saddle() -> AnalyticCurve:
    def pos(t):
        return np.stack([np.cos(t), np.sin(t), np.cos(2 * t)], axis=-1)

    def d1(t):
        return np.stack([-np.sin(t), np.cos(t), -2 * np.sin(2 * t)], axis=-1)

    def d2(t):
        return np.stack([-np.cos(t), -np.sin(t), -4 * np.cos(2 * t)], axis=-1)

    def d3(t):
        return np.stack([np.sin(t), -np.cos(t), 8 * np.sin(2 * t)], axis=-1)

    return AnalyticCurve(pos, TWO_PI, d1, d2, d3, name="saddle")


def _baseball(a: float, b: float, c: float) -> AnalyticCurve:
    def pos(t):
        return np.stack(
            [
                a * np.cos(t) + b * np.cos(3 * t),
                a * np.sin(t) - b * np.sin(3 * t),
                c * np.sin(2 * t),
            ],
            axis=-1,
        )

    def d1(t):
        return np.stack(
            [
                -a * np.sin(t) - 3 * b * np.sin(3 * t),
                a * np.cos(t) - 3 * b * np.cos(3 * t),
                2 * c * np.cos(2 * t),
            ],
            axis=-1,
        )

    def d2(t):
        return np.stack(
            [
                -a * np.cos(t) - 9 * b * np.cos(3 * t),
                -a * np.sin(t) + 9 * b * np.sin(3 * t),
                -4 * c * np.sin(2 * t),
            ],
            axis=-1,
        )

    def d3(t):
        return np.stack(
            [
                a * np.sin(t) + 27 * b * np.sin(3 * t),
                -a * np.cos(t) + 27 * b * np.cos(3 * t),
                -8 * c * np.cos(2 * t),
            ],
            axis=-1,
        )

    return AnalyticCurve(pos, TWO_PI, d1, d2, d3, name="baseball")


def _ellipse(a: float, b: float) -> AnalyticCurve:
    def pos(t):
        return np.stack([a * np.cos(t), b * np.sin(t), np.zeros_like(t)], axis=-1)

    def d1(t):
        return np.stack([-a * np.sin(t), b * np.cos(t), np.zeros_like(t)], axis=-1)

    def d2(t):
        return np.stack([-a * np.cos(t), -b * np.sin(t), np.zeros_like(t)], axis=-1)

    def d3(t):
        return np.stack([a * np.sin(t), -b * np.cos(t), np.zeros_like(t)], axis=-1)

    return AnalyticCurve(pos, TWO_PI, d1, d2, d3, name="ellipse")


def _wobble(k: int) -> AnalyticCurve:
    if k < 3 or k % 2 == 0:
        raise ValueError(f"wobble frequency k must be odd and >= 3, got {k}")

    def pos(t):
        return np.stack([np.cos(t), np.sin(t), np.sin(k * t)], axis=-1)

    def d1(t):
        return np.stack([-np.sin(t), np.cos(t), k * np.cos(k * t)], axis=-1)

    def d2(t):
        return np.stack([-np.cos(t), -np.sin(t), -(k**2) * np.sin(k * t)], axis=-1)

    def d3(t):
        return np.stack([np.sin(t), -np.cos(t), -(k**3) * np.cos(k * t)], axis=-1)

    return AnalyticCurve(pos, TWO_PI, d1, d2, d3, name="wobble")


def _trefoil() -> AnalyticCurve:
    def pos(t):
        rho = 2 + np.cos(3 * t)
        return np.stack([rho * np.cos(2 * t), rho * np.sin(2 * t), np.sin(3 * t)], axis=-1)

    def d1(t):
        rho = 2 + np.cos(3 * t)
        dr = -3 * np.sin(3 * t)
        c2, s2 = np.cos(2 * t), np.sin(2 * t)
        return np.stack(
            [dr * c2 - 2 * rho * s2, dr * s2 + 2 * rho * c2, 3 * np.cos(3 * t)], axis=-1
        )

    def d2(t):
        rho = 2 + np.cos(3 * t)
        dr = -3 * np.sin(3 * t)
        ddr = -9 * np.cos(3 * t)
        c2, s2 = np.cos(2 * t), np.sin(2 * t)
        return np.stack(
            [
                ddr * c2 - 4 * dr * s2 - 4 * rho * c2,
                ddr * s2 + 4 * dr * c2 - 4 * rho * s2,
                -9 * np.sin(3 * t),
            ],
            axis=-1,
        )

    def d3(t):
        rho = 2 + np.cos(3 * t)
        dr = -3 * np.sin(3 * t)
        ddr = -9 * np.cos(3 * t)
        dddr = 27 * np.sin(3 * t)
        c2, s2 = np.cos(2 * t), np.sin(2 * t)
        return np.stack(
            [
                dddr * c2 - 6 * ddr * s2 - 12 * dr * c2 + 8 * rho * s2,
                dddr * s2 + 6 * ddr * c2 - 12 * dr * s2 - 8 * rho * c2,
                -27 * np.cos(3 * t),
            ],
            axis=-1,
        )

    return AnalyticCurve(pos, TWO_PI, d1, d2, d3, name="trefoil")


_DEFAULTS = {
    "saddle": {},
    "baseball": {"a": 1.0, "b": 0.15, "c": 0.7},
    "ellipse": {"a": 2.0, "b": 1.0},
    "wobble": {"k": 3},
    "trefoil": {},
}


def names() -> list:
    """Sorted gallery base names."""
    return sorted(_DEFAULTS)


def parse_curve_spec(spec: str):
    """Split "name:key=val,key=val" into a base name and a parameter dict."""
    base, _, tail = spec.partition(":")
    base = base.strip()
    if base not in _DEFAULTS:
        raise KeyError(f"unknown curve {base!r}; available: {', '.join(names())}")
    params = dict(_DEFAULTS[base])
    if tail.strip():
        for item in tail.split(","):
            key, sep, val = item.partition("=")
            key = key.strip()
            if not sep or key not in params:
                allowed = ", ".join(params) or "none"
                raise KeyError(
                    f"bad parameter {item.strip()!r} for {base!r} (allowed: {allowed})"
                )
            params[key] = type(params[key])(float(val))
    return base, params


def get(spec: str) -> GalleryEntry:
    """Build a gallery entry from a spec string like "wobble:k=5"."""
    base, params = parse_curve_spec(spec)
    if base == "saddle":
        return GalleryEntry(
            name=base,
            curve=_saddle(),
            params=params,
            expected_vertex_count=4,
            expected_convex=True,
            planar=False,
            description="circle lifted onto the saddle z = x^2 - y^2",
        )
    if base == "baseball":
        curve = _baseball(**params)
        default = params == _DEFAULTS[base]
        return GalleryEntry(
            name=base,
            curve=curve,
            params=params,
            expected_vertex_count=4 if default else None,
            expected_convex=default,
            planar=False,
            description="seam-like closed curve, 4 torsion sign changes at defaults",
        )
    if base == "ellipse":
        return GalleryEntry(
            name=base,
            curve=_ellipse(**params),
            params=params,
            expected_vertex_count=None,
            expected_convex=True,
            planar=True,
            description="planar ellipse, exercises the area path",
        )
    if base == "wobble":
        return GalleryEntry(
            name=base,
            curve=_wobble(**params),
            params=params,
            expected_vertex_count=2 * params["k"],
            expected_convex=True,
            planar=False,
            description="circle with z = sin(kt); 2k torsion sign changes",
        )
    return GalleryEntry(
        name="trefoil",
        curve=_trefoil(),
        params={},
        expected_vertex_count=None,
        expected_convex=False,
        planar=False,
        description="knotted curve with interior samples, fails the convexity gate",
    )


def verify_all_extreme(entry, n: int = 500) -> bool:
    """Sample the curve and check every sample is extreme in its hull."""
    if isinstance(entry, str):
        entry = get(entry)
    sampled = sample_uniform(entry.curve, n)
    return is_convex_curve(sampled).is_convex
