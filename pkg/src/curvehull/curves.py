"""Curve model: parameterized closed space curves, uniform arc-length sampling,
Frenet data (curvature/torsion), torsion sign-change counting, planarity and
convexity checks.

Curves come in two flavors. An AnalyticCurve wraps a position callback (and
optionally exact derivative callbacks) over a parameter interval [0, T].
A SampledCurve is a closed polygonal loop of points, normally produced by
sample_uniform so that edges are nearly equal in arc length.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import (
    DegenerateCurveError,
    NotClosedError,
)

# relative tolerances, all scaled by a curve-intrinsic length
CLOSURE_RTOL = 1e-6          # |r(0) - r(T)| vs total length
PLANARITY_RTOL = 1e-9        # plane deviation vs total length
TAU_HYSTERESIS_RTOL = 1e-7   # torsion sign hysteresis vs max |tau|
PLANAR_TAU_FLOOR = 1e-9      # max|tau| vs max kappa, below which torsion is noise
FD_STEP_RTOL = 1e-4          # finite-difference step vs period T
_CROSS_DEGENERATE_RTOL = 1e-10  # |r' x r''| floor vs its max, for torsion


def as_point_array(points) -> np.ndarray:
    """Coerce input to a contiguous (n, 3) float64 array of finite points."""
    arr = np.ascontiguousarray(points, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] != 3:
        raise ValueError(f"expected an (n, 3) point array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("point array contains non-finite values")
    return arr


@dataclass(eq=False)
class AnalyticCurve:
    """A parameterized space curve r(t) on [0, period].

    position must accept a scalar or 1-d array of parameters and return the
    corresponding points, shape (3,) or (n, 3). It should be evaluable in a
    small neighborhood of [0, period] (finite differencing steps slightly
    outside). d1/d2/d3 are optional exact derivative callbacks with the same
    calling convention; when present they are used instead of finite
    differences.
    """

    position: Callable[[np.ndarray], np.ndarray]
    period: float
    d1: Optional[Callable[[np.ndarray], np.ndarray]] = None
    d2: Optional[Callable[[np.ndarray], np.ndarray]] = None
    d3: Optional[Callable[[np.ndarray], np.ndarray]] = None
    name: str = ""

    def __post_init__(self):
        if not (np.isfinite(self.period) and self.period > 0):
            raise ValueError(f"period must be positive and finite, got {self.period}")

    def __call__(self, t):
        return np.asarray(self.position(np.asarray(t, dtype=np.float64)), dtype=np.float64)

    @property
    def has_derivatives(self) -> bool:
        return self.d1 is not None and self.d2 is not None and self.d3 is not None


@dataclass(eq=False)
class SampledCurve:
    """A closed polygonal loop: n points plus cumulative chord lengths.

    arc_lengths has n + 1 entries: arc_lengths[0] == 0 and arc_lengths[n]
    equals the total (chord) length. Edge i joins points[i] to
    points[(i + 1) % n].
    """

    points: np.ndarray
    arc_lengths: np.ndarray
    name: str = ""

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def total_length(self) -> float:
        return float(self.arc_lengths[-1])

    @property
    def edges(self) -> np.ndarray:
        """Edge vectors, edges[i] = points[i+1] - points[i] (cyclic)."""
        return np.roll(self.points, -1, axis=0) - self.points

    @classmethod
    def from_points(cls, points, name: str = "") -> "SampledCurve":
        """Build a closed loop from raw points (implicitly closed, first after last)."""
        pts = as_point_array(points)
        if len(pts) < 3:
            raise DegenerateCurveError(
                f"need at least 3 points for a closed loop, got {len(pts)}",
                n=len(pts),
            )
        seg = np.linalg.norm(np.diff(np.vstack([pts, pts[:1]]), axis=0), axis=1)
        scale = float(np.max(np.abs(pts))) or 1.0
        if np.min(seg) <= 1e-12 * scale:
            raise DegenerateCurveError(
                "consecutive points coincide (zero-length edge)",
                edge=int(np.argmin(seg)),
            )
        arc = np.concatenate([[0.0], np.cumsum(seg)])
        return cls(points=pts, arc_lengths=arc, name=name)

    def scaled(self, factor: float) -> "SampledCurve":
        return SampledCurve(
            points=self.points * factor,
            arc_lengths=self.arc_lengths * abs(factor),
            name=self.name,
        )

    def transformed(self, rotation=None, offset=None) -> "SampledCurve":
        """Apply a rigid motion p -> R p + c. Arc lengths are unchanged."""
        pts = self.points
        if rotation is not None:
            pts = pts @ np.asarray(rotation, dtype=np.float64).T
        if offset is not None:
            pts = pts + np.asarray(offset, dtype=np.float64)
        return SampledCurve(points=pts, arc_lengths=self.arc_lengths.copy(), name=self.name)


def sample_uniform(curve: AnalyticCurve, n: int, fine: int = 20) -> SampledCurve:
    """Sample a closed analytic curve at n points uniformly spaced in arc length.

    The arc-length function is tabulated on a fine grid (fine * n + 1 chords)
    and inverted by monotone interpolation, so edge lengths agree to high
    relative accuracy for smooth curves. Raises NotClosedError unless the
    endpoints meet within CLOSURE_RTOL of the total length.
    """
    if n < 4:
        raise ValueError(f"need n >= 4 samples, got {n}")
    tf = np.linspace(0.0, curve.period, fine * n + 1)
    pf = curve(tf)
    seg = np.linalg.norm(np.diff(pf, axis=0), axis=1)
    cum = np.concatenate([[0.0], np.cumsum(seg)])
    total = float(cum[-1])
    if not np.isfinite(total) or total <= 1e-12:
        raise DegenerateCurveError("curve has (near) zero length", length=total)
    gap = float(np.linalg.norm(pf[0] - pf[-1]))
    if gap > CLOSURE_RTOL * total:
        raise NotClosedError(
            f"curve endpoints differ by {gap:.3g} (> {CLOSURE_RTOL:g} of length {total:.6g})",
            gap=gap,
            length=total,
        )
    targets = np.arange(n) * (total / n)
    tt = np.interp(targets, cum, tf)
    return SampledCurve.from_points(curve(tt), name=curve.name)


def piecewise_linear(curve: SampledCurve) -> AnalyticCurve:
    """View a closed polygonal loop as an analytic curve parameterized by arc length.

    Useful for resampling a polyline at a different point count. No derivative
    callbacks are attached (a polygon has no continuous curvature).
    """
    s_knots = curve.arc_lengths
    pts = np.vstack([curve.points, curve.points[:1]])
    total = curve.total_length

    def position(s):
        s = np.mod(np.asarray(s, dtype=np.float64), total)
        return np.stack([np.interp(s, s_knots, pts[:, k]) for k in range(3)], axis=-1)

    return AnalyticCurve(position=position, period=total, name=curve.name)


# ----------------------------------------------------------------------------
# Frenet data


@dataclass(eq=False)
class FrenetProfile:
    """Curvature and torsion sampled along a curve.

    params holds the parameter (or arc length) of each sample; degenerate
    marks samples where |r' x r''| was too small to define torsion (tau is
    forced to 0 there).
    """

    params: np.ndarray
    kappa: np.ndarray
    tau: np.ndarray
    degenerate: np.ndarray

    @property
    def n(self) -> int:
        return len(self.params)


def _frenet_from_derivatives(params, v1, v2, v3) -> FrenetProfile:
    cr = np.cross(v1, v2)
    cr_norm = np.linalg.norm(cr, axis=1)
    speed = np.linalg.norm(v1, axis=1)
    if np.min(speed) <= 0.0:
        raise DegenerateCurveError("zero speed sample, curve is not regular")
    kappa = cr_norm / speed**3
    floor = _CROSS_DEGENERATE_RTOL * float(np.max(cr_norm))
    degenerate = cr_norm <= floor
    det = np.einsum("ij,ij->i", cr, v3)
    denom = np.where(degenerate, 1.0, cr_norm**2)
    tau = np.where(degenerate, 0.0, det / denom)
    return FrenetProfile(params=params, kappa=kappa, tau=tau, degenerate=degenerate)


def frenet_profile(curve: AnalyticCurve, n: int) -> FrenetProfile:
    """Sample curvature and torsion at n uniform parameter values.

    kappa = |r' x r''| / |r'|^3 and tau = [r', r'', r'''] / |r' x r''|^2.
    Exact derivative callbacks are used when the curve carries them; otherwise
    fourth-order central differences with step h = period * FD_STEP_RTOL.
    The finite-difference route resolves torsion to roughly 5e-6 in absolute
    terms (third-derivative roundoff), ample for sign counting.
    """
    if n < 4:
        raise ValueError(f"need n >= 4 samples, got {n}")
    t = np.arange(n) * (curve.period / n)
    if curve.has_derivatives:
        v1 = np.asarray(curve.d1(t), dtype=np.float64)
        v2 = np.asarray(curve.d2(t), dtype=np.float64)
        v3 = np.asarray(curve.d3(t), dtype=np.float64)
    else:
        h = curve.period * FD_STEP_RTOL
        f = {k: curve(t + k * h) for k in (-3, -2, -1, 1, 2, 3)}
        f[0] = curve(t)
        v1 = (f[-2] - 8 * f[-1] + 8 * f[1] - f[2]) / (12 * h)
        v2 = (-f[-2] + 16 * f[-1] - 30 * f[0] + 16 * f[1] - f[2]) / (12 * h**2)
        v3 = (f[-3] - 8 * f[-2] + 13 * f[-1] - 13 * f[1] + 8 * f[2] - f[3]) / (8 * h**3)
    return _frenet_from_derivatives(t, v1, v2, v3)


def discrete_frenet_profile(curve: SampledCurve) -> FrenetProfile:
    """Frenet data from a uniformly sampled loop, by cyclic central differences.

    Treats the samples as equally spaced in arc length with step
    h = total_length / n. Accuracy is fourth order in h for points lying on a
    smooth curve. params holds arc-length values i * h.
    """
    p = curve.points
    n = len(p)
    if n < 8:
        raise ValueError(f"need n >= 8 samples for the cyclic stencils, got {n}")
    h = curve.total_length / n

    def sh(k):
        return np.roll(p, -k, axis=0)

    v1 = (sh(-2) - 8 * sh(-1) + 8 * sh(1) - sh(2)) / (12 * h)
    v2 = (-sh(-2) + 16 * sh(-1) - 30 * p + 16 * sh(1) - sh(2)) / (12 * h**2)
    v3 = (sh(-3) - 8 * sh(-2) + 13 * sh(-1) - 13 * sh(1) + 8 * sh(2) - sh(3)) / (8 * h**3)
    params = np.arange(n) * h
    return _frenet_from_derivatives(params, v1, v2, v3)


# ----------------------------------------------------------------------------
# Torsion sign changes ("vertices" of the curve)


@dataclass(eq=False)
class VertexReport:
    """Result of counting torsion sign changes around a closed curve."""

    vertex_count: int
    vertex_params: list
    is_planar: bool
    min_kappa: float
    max_abs_tau: float
    degenerate_samples: int

    def as_dict(self) -> dict:
        return {
            "vertex_count": self.vertex_count,
            "vertex_params": [float(v) for v in self.vertex_params],
            "is_planar": self.is_planar,
            "min_kappa": self.min_kappa,
            "max_abs_tau": self.max_abs_tau,
            "degenerate_samples": self.degenerate_samples,
        }


def count_vertices(profile: FrenetProfile) -> VertexReport:
    """Count sign changes of torsion around the loop, with hysteresis.

    A sample participates only if |tau| exceeds TAU_HYSTERESIS_RTOL times the
    profile's max |tau|; transitions are counted between consecutive
    participating samples (cyclically), so noise wiggle near a zero cannot
    register. If max |tau| is below PLANAR_TAU_FLOOR times max curvature the
    curve is reported planar and no count is attempted.

    Requires a reasonably dense profile (n >= 64).
    """
    if profile.n < 64:
        raise ValueError(f"need a profile with >= 64 samples, got {profile.n}")
    tau = profile.tau
    kappa = profile.kappa
    max_tau = float(np.max(np.abs(tau)))
    max_kappa = float(np.max(kappa))
    min_kappa = float(np.min(kappa))
    if max_tau < PLANAR_TAU_FLOOR * max_kappa:
        return VertexReport(
            vertex_count=0,
            vertex_params=[],
            is_planar=True,
            min_kappa=min_kappa,
            max_abs_tau=max_tau,
            degenerate_samples=int(np.sum(profile.degenerate)),
        )
    eps = TAU_HYSTERESIS_RTOL * max_tau
    idx = np.flatnonzero(np.abs(tau) > eps)
    signs = np.sign(tau[idx])
    flips = np.flatnonzero(signs != np.roll(signs, -1))
    period = float(profile.params[-1] + (profile.params[1] - profile.params[0]))
    params = []
    for k in flips:
        a = idx[k]
        b = idx[(k + 1) % len(idx)]
        ta, tb = profile.params[a], profile.params[b]
        if b < a:  # transition wraps past the end of the parameter interval
            tb = tb + period
        frac = tau[a] / (tau[a] - tau[b])
        params.append(float(ta + frac * (tb - ta)) % period)
    return VertexReport(
        vertex_count=len(flips),
        vertex_params=sorted(params),
        is_planar=False,
        min_kappa=min_kappa,
        max_abs_tau=max_tau,
        degenerate_samples=int(np.sum(profile.degenerate)),
    )


# ----------------------------------------------------------------------------
# Planarity and convex position


@dataclass(eq=False)
class PlanarityResult:
    is_planar: bool
    max_deviation: float
    rel_deviation: float
    normal: Optional[np.ndarray]
    centroid: np.ndarray

    def as_dict(self) -> dict:
        return {
            "is_planar": self.is_planar,
            "max_deviation": self.max_deviation,
            "rel_deviation": self.rel_deviation,
        }


def planarity_check(curve: SampledCurve) -> PlanarityResult:
    """Fit the best plane through the samples and measure the worst deviation.

    The plane normal is the least singular vector of the centered point cloud.
    Planar means max deviation below PLANARITY_RTOL times the loop length.
    """
    pts = curve.points
    centroid = pts.mean(axis=0)
    _, svals, vt = np.linalg.svd(pts - centroid, full_matrices=False)
    normal = vt[-1]
    dev = float(np.max(np.abs((pts - centroid) @ normal)))
    rel = dev / curve.total_length
    return PlanarityResult(
        is_planar=rel < PLANARITY_RTOL,
        max_deviation=dev,
        rel_deviation=rel,
        normal=normal,
        centroid=centroid,
    )


@dataclass(eq=False)
class ConvexityResult:
    is_convex: bool
    non_extreme: list
    n: int

    def as_dict(self) -> dict:
        return {
            "is_convex": self.is_convex,
            "non_extreme": [int(i) for i in self.non_extreme],
            "non_extreme_count": len(self.non_extreme),
        }


def is_convex_curve(curve: SampledCurve, hull=None) -> ConvexityResult:
    """Check that every sample is an extreme point of the hull of the samples.

    A sample that is not a hull vertex still counts as extreme if it lies
    within the hull tolerance of the boundary (collinear or coplanar runs);
    only points buried strictly inside are flagged. Planar loops are handled
    through a 2-d hull in the fitted plane. Pass a prebuilt HullMesh to skip
    rebuilding.
    """
    from . import hull as _hull  # local import: hull builds on scipy

    pts = curve.points
    n = len(pts)
    if hull is not None:
        vertex_idx = set(int(v) for v in hull.vertex_indices)
        buried = [
            i
            for i in range(n)
            if i not in vertex_idx
            and _hull.signed_distance(hull, pts[i]) < -hull.eps
        ]
        return ConvexityResult(is_convex=not buried, non_extreme=buried, n=n)

    flat = planarity_check(curve)
    if flat.is_planar:
        from scipy.spatial import ConvexHull as _CH

        basis = _plane_basis(flat.normal)
        uv = (pts - flat.centroid) @ basis.T
        ch = _CH(uv)
        eps = 1e-9 * float(np.linalg.norm(uv.max(axis=0) - uv.min(axis=0)))
        vertex_idx = set(int(v) for v in ch.vertices)
        dist = uv @ ch.equations[:, :2].T + ch.equations[:, 2]
        inner = dist.max(axis=1)  # signed distance to the boundary, <= 0 inside
        buried = [i for i in range(n) if i not in vertex_idx and inner[i] < -eps]
        return ConvexityResult(is_convex=not buried, non_extreme=buried, n=n)

    mesh = _hull.build_hull(pts)
    return is_convex_curve(curve, hull=mesh)


def _plane_basis(normal: np.ndarray) -> np.ndarray:
    """Two orthonormal vectors spanning the plane with the given normal."""
    a = np.zeros(3)
    a[np.argmin(np.abs(normal))] = 1.0
    u = np.cross(normal, a)
    u /= np.linalg.norm(u)
    v = np.cross(normal, u)
    return np.vstack([u, v])
