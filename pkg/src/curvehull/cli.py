"""Command-line front end.

Subcommands: volume, area, converge, diagnose, export-mesh, gallery-list.
Reports go to stdout as JSON (CSV for converge); timings go to stderr so
that stdout is byte-identical across repeated runs and thread counts.
Exit codes: 0 success, 1 validity gate failed, 2 I/O or parse error.

Curves are given either as gallery specs ("saddle", "wobble:k=5") or as
paths to polyline files: plain text, one "x y z" triple per line, '#'
comments, loop closed implicitly. Probe sampling uses numpy's default_rng
(PCG64) seeded by --seed, so diagnostics are reproducible.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

import numpy as np

from . import gallery, hull, quadrature
from .curves import (
    SampledCurve,
    count_vertices,
    discrete_frenet_profile,
    frenet_profile,
    is_convex_curve,
    piecewise_linear,
    planarity_check,
    sample_uniform,
)
from .errors import CurveHullError, GateError, NonPlanarCurveError, PlanarCurveError
from .quadrature import hull_volume, planar_area_integral, tetra_volume_matrix

ORACLE_SAMPLES = 200_000   # hull oracle resolution for --verify and converge
PROBE_MARGIN_RTOL = 0.01   # min probe clearance vs loop length in diagnose
_GATE_PROFILE_MIN = 512    # min sample count for the analytic vertex gate


def _json_safe(obj):
    if isinstance(obj, dict):
        return {str(k): _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return [_json_safe(v) for v in obj.tolist()]
    return obj


def _emit(report: dict) -> None:
    print(json.dumps(_json_safe(report), indent=2, sort_keys=True))


def _stderr_timing(phases: dict) -> None:
    rounded = {k: round(v * 1000.0, 3) for k, v in phases.items()}
    print(f"# timing_ms {json.dumps(rounded, sort_keys=True)}", file=sys.stderr)


def load_polyline(path) -> SampledCurve:
    """Read a closed loop from a text file of "x y z" lines."""
    rows = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            text = raw.split("#", 1)[0].strip()
            if not text:
                continue
            parts = text.split()
            if len(parts) != 3:
                raise ValueError(f"{path}:{lineno}: expected three numbers, got {raw!r}")
            try:
                rows.append([float(p) for p in parts])
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
    if not rows:
        raise ValueError(f"{path}: no points found")
    pts = np.asarray(rows)
    scale = float(np.max(np.abs(pts))) or 1.0
    if len(pts) > 1 and np.linalg.norm(pts[-1] - pts[0]) <= 1e-12 * scale:
        pts = pts[:-1]  # tolerate an explicitly repeated first point
    return SampledCurve.from_points(pts, name=os.path.basename(str(path)))


class _ResolvedCurve:
    """A curve argument resolved to working samples plus gate inputs.

    For gallery curves the vertex gate runs on an analytic Frenet profile
    and the working samples come from uniform resampling at n. For polyline
    files the gates run on the file's own points (they lie on the underlying
    curve; resampled points sit on chords and would blur torsion), while the
    double sum runs on the resampled loop when n is given.
    """

    def __init__(self, spec: str, n):
        self.spec = spec
        looks_like_path = os.sep in spec or spec.endswith((".txt", ".xyz", ".poly"))
        if os.path.exists(spec) or looks_like_path:
            self.entry = None
            self.gate_curve = load_polyline(spec)
            self.name = self.gate_curve.name
            if n is not None and n != self.gate_curve.n:
                self.samples = sample_uniform(piecewise_linear(self.gate_curve), n)
            else:
                self.samples = self.gate_curve
        else:
            try:
                self.entry = gallery.get(spec)
            except KeyError:
                raise KeyError(
                    f"{spec!r} is neither an existing polyline file nor a gallery "
                    f"curve (available: {', '.join(gallery.names())})"
                ) from None
            self.name = self.entry.name
            self.gate_curve = None
            self.samples = sample_uniform(self.entry.curve, n if n is not None else 1000)

    def vertex_gate_profile(self):
        if self.entry is not None:
            m = max(self.samples.n, _GATE_PROFILE_MIN)
            return frenet_profile(self.entry.curve, m)
        return discrete_frenet_profile(self.gate_curve)

    def convexity_samples(self) -> SampledCurve:
        return self.gate_curve if self.entry is None else self.samples

    def oracle_volume(self) -> float:
        """Reference hull volume from a dense, fixed-resolution point set."""
        if self.entry is not None:
            dense = sample_uniform(self.entry.curve, ORACLE_SAMPLES)
            return hull.mesh_volume(hull.build_hull(dense.points))
        # a polyline's hull is the hull of its vertices; resampling adds nothing
        return hull.mesh_volume(hull.build_hull(self.gate_curve.points))


def _gate_planarity(samples: SampledCurve):
    flat = planarity_check(samples)
    if flat.is_planar:
        raise PlanarCurveError(
            "curve is planar, its hull has zero volume; use the `area` command",
            rel_deviation=flat.rel_deviation,
            suggestion="area",
        )
    return flat


def _gate_vertices(resolved: _ResolvedCurve, expected: int):
    report = count_vertices(resolved.vertex_gate_profile())
    if report.is_planar:
        raise PlanarCurveError(
            "torsion vanishes identically, curve is planar; use the `area` command",
            suggestion="area",
        )
    if report.vertex_count != expected:
        from .errors import VertexCountError

        raise VertexCountError(
            f"torsion changes sign {report.vertex_count} times, expected "
            f"{expected}; rerun with --force to compute anyway",
            vertex_count=report.vertex_count,
            expected=expected,
        )
    return report


def _gate_convexity(samples: SampledCurve):
    conv = is_convex_curve(samples)
    if not conv.is_convex:
        from .errors import NonConvexCurveError

        shown = conv.non_extreme[:10]
        raise NonConvexCurveError(
            f"{len(conv.non_extreme)} of {conv.n} samples are not extreme points "
            f"of the hull (first indices: {shown}); the volume formula assumes a "
            "convex curve",
            non_extreme_count=len(conv.non_extreme),
            non_extreme_head=[int(i) for i in shown],
        )
    return conv


def cmd_volume(args) -> int:
    phases = {}
    t0 = time.perf_counter()
    resolved = _ResolvedCurve(args.curve, args.n)
    samples = resolved.samples
    phases["sample"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    flat = _gate_planarity(samples)
    vertex_report = None
    if not args.force:
        vertex_report = _gate_vertices(resolved, args.m)
    convexity = None
    if not args.skip_convexity:
        convexity = _gate_convexity(resolved.convexity_samples())
    phases["gates"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    result = hull_volume(
        samples,
        multiplicity=args.m,
        threads=args.threads,
        force=True,  # gates already ran above (or were skipped on request)
        with_error_estimate=True,
    )
    phases["volume"] = time.perf_counter() - t0

    oracle = gap = None
    if args.verify:
        t0 = time.perf_counter()
        oracle = resolved.oracle_volume()
        gap = abs(result.volume - oracle) / oracle if oracle > 0 else None
        phases["oracle"] = time.perf_counter() - t0

    report = {
        "schema": 1,
        "command": "volume",
        "curve_name": resolved.name,
        "n": samples.n,
        "multiplicity_m": args.m,
        "planarity": flat.as_dict(),
        "vertex_report": vertex_report.as_dict() if vertex_report else None,
        "convexity": convexity.is_convex if convexity else None,
        "non_extreme_count": len(convexity.non_extreme) if convexity else None,
        "formula_volume": result.as_dict(),
        "oracle_volume": oracle,
        "relative_gap": gap,
        "unverified_hypothesis": bool(args.force),
    }
    _emit(report)
    _stderr_timing(phases)
    return 0


def cmd_area(args) -> int:
    phases = {}
    t0 = time.perf_counter()
    resolved = _ResolvedCurve(args.curve, args.n)
    samples = resolved.samples
    flat = planarity_check(samples)
    if not flat.is_planar:
        raise NonPlanarCurveError(
            f"curve leaves its best-fit plane by {flat.rel_deviation:.3g} of its "
            "length; the area path needs a planar curve",
            rel_deviation=flat.rel_deviation,
        )
    area = planar_area_integral(samples)
    phases["total"] = time.perf_counter() - t0
    _emit(
        {
            "schema": 1,
            "command": "area",
            "curve_name": resolved.name,
            "n": samples.n,
            "planarity": flat.as_dict(),
            "area": area,
        }
    )
    _stderr_timing(phases)
    return 0


def cmd_converge(args) -> int:
    try:
        ns = [int(x) for x in args.ns.split(",") if x.strip()]
    except ValueError as exc:
        raise ValueError(f"bad --ns list {args.ns!r}: {exc}") from None
    if not ns:
        raise ValueError("--ns list is empty")

    resolved = _ResolvedCurve(args.curve, max(ns))
    _gate_planarity(resolved.samples)
    if not args.force:
        _gate_vertices(resolved, args.m)
    oracle = resolved.oracle_volume()

    rows = []
    for n in ns:
        samples = (
            sample_uniform(resolved.entry.curve, n)
            if resolved.entry is not None
            else sample_uniform(piecewise_linear(resolved.gate_curve), n)
        )
        t0 = time.perf_counter()
        result = hull_volume(samples, multiplicity=args.m, threads=args.threads, force=True)
        seconds = time.perf_counter() - t0
        gap = abs(result.volume - oracle) / oracle
        rows.append((n, result.volume, oracle, gap, seconds))

    if args.json:
        _emit(
            {
                "schema": 1,
                "command": "converge",
                "curve_name": resolved.name,
                "oracle_samples": ORACLE_SAMPLES if resolved.entry is not None else None,
                "rows": [
                    {
                        "n": n,
                        "formula_volume": v,
                        "oracle_volume": o,
                        "relative_gap": g,
                        "seconds": round(s, 3),
                    }
                    for n, v, o, g, s in rows
                ],
            }
        )
    else:
        print("n,formula_volume,oracle_volume,relative_gap,seconds")
        for n, v, o, g, s in rows:
            print(f"{n},{v:.17g},{o:.17g},{g:.6g},{s:.3f}")
    return 0


def cmd_diagnose(args) -> int:
    phases = {}
    t0 = time.perf_counter()
    resolved = _ResolvedCurve(args.curve, args.n)
    samples = resolved.samples
    mesh = hull.build_hull(samples.points)  # planar input rejects here
    phases["hull"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    vertex_report = count_vertices(resolved.vertex_gate_profile())
    convexity = is_convex_curve(resolved.convexity_samples())
    support = hull.support_polygons(mesh)
    inequality = hull.four_vertex_inequality_report(
        vertex_count=vertex_report.vertex_count,
        support_count=support.count,
    )
    phases["structure"] = time.perf_counter() - t0

    # sign classification over a subsampled index grid
    t0 = time.perf_counter()
    n = samples.n
    stride = max(1, n // 64)
    grid = np.arange(0, n, stride)
    vmat = tetra_volume_matrix(samples)
    v1 = vmat[np.ix_(grid, grid)]
    v2 = vmat[np.ix_((grid + 1) % n, grid)]
    floor = quadrature.DEGENERACY_RTOL * samples.total_length**3
    off_diag = grid[:, None] != grid[None, :]
    degen = ((np.abs(v1) <= floor) | (np.abs(v2) <= floor)) & off_diag
    same = ((v1 > 0) == (v2 > 0)) & ~degen & off_diag
    classification = {
        "grid_stride": int(stride),
        "pairs": int(off_diag.sum()),
        "interior": int(same.sum()),
        "boundary": int((off_diag & ~degen & ~same).sum()),
        "degenerate": int(degen.sum()),
    }
    phases["classify"] = time.perf_counter() - t0

    # covering multiplicity over seeded random interior probes
    t0 = time.perf_counter()
    rng = np.random.default_rng(args.seed)
    lo = samples.points.min(axis=0)
    hi = samples.points.max(axis=0)
    margin = PROBE_MARGIN_RTOL * samples.total_length
    histogram = {}
    outside = near_boundary = chord_failures = evaluated = attempts = 0
    cap = args.probes * 1000
    while evaluated < args.probes and attempts < cap:
        attempts += 1
        p = rng.uniform(lo, hi)
        sd = hull.signed_distance(mesh, p)
        if sd >= -mesh.eps:
            outside += 1
            continue
        if sd > -margin:
            near_boundary += 1
            continue
        evaluated += 1
        try:
            m = quadrature.estimate_covering_multiplicity(samples, p, mesh=mesh)
        except CurveHullError:
            chord_failures += 1
            continue
        histogram[m] = histogram.get(m, 0) + 1
    phases["probes"] = time.perf_counter() - t0

    _emit(
        {
            "schema": 1,
            "command": "diagnose",
            "curve_name": resolved.name,
            "n": samples.n,
            "seed": args.seed,
            "vertex_report": vertex_report.as_dict(),
            "convexity": convexity.is_convex,
            "non_extreme_count": len(convexity.non_extreme),
            "support_polygons": support.as_dict(),
            "inequality": inequality.as_dict(),
            "pair_classification": classification,
            "multiplicity_histogram": {str(k): histogram[k] for k in sorted(histogram)},
            "probes": {
                "requested": args.probes,
                "evaluated": evaluated,
                "rejected_outside": outside,
                "rejected_near_boundary": near_boundary,
                "chord_failures": chord_failures,
            },
        }
    )
    _stderr_timing(phases)
    return 0


def cmd_export_mesh(args) -> int:
    resolved = _ResolvedCurve(args.curve, args.n)
    mesh = hull.build_hull(resolved.samples.points)
    hull.save_obj(mesh, args.path)
    _emit(
        {
            "schema": 1,
            "command": "export-mesh",
            "curve_name": resolved.name,
            "path": str(args.path),
            "v_lines": int(len(mesh.points)),
            "f_lines": int(mesh.n_facets),
            "hull_vertices": int(mesh.n_vertices),
        }
    )
    return 0


def cmd_gallery_list(args) -> int:
    entries = [gallery.get(name) for name in gallery.names()]
    if args.json:
        _emit(
            {
                "schema": 1,
                "command": "gallery-list",
                "curves": [
                    {
                        "name": e.name,
                        "defaults": e.params,
                        "expected_vertex_count": e.expected_vertex_count,
                        "expected_convex": e.expected_convex,
                        "planar": e.planar,
                        "description": e.description,
                    }
                    for e in entries
                ],
            }
        )
    else:
        for e in entries:
            label = e.spec_string
            print(f"{label:32s} {e.description}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curvehull",
        description="Convex hull volume of closed space curves by chord-pair summation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("curve", help="gallery spec (e.g. saddle, wobble:k=5) or polyline file")
        p.add_argument(
            "--n",
            type=int,
            default=None,
            help="number of samples (default: 1000 for gallery curves, file as-is for polylines)",
        )

    p = sub.add_parser("volume", help="hull volume by the double-sum formula, with gates")
    add_common(p)
    p.add_argument("--m", type=int, default=4, help="covering multiplicity (default 4)")
    p.add_argument("--verify", action="store_true", help="cross-check against the hull oracle")
    p.add_argument("--force", action="store_true", help="skip the vertex-count gate")
    p.add_argument("--skip-convexity", action="store_true", help="skip the convexity gate")
    p.add_argument("--threads", type=int, default=1, help="worker threads for the double sum")
    p.add_argument("--json", action="store_true", help="JSON output (the default)")
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("area", help="enclosed area of a planar curve")
    add_common(p)
    p.add_argument("--json", action="store_true", help="JSON output (the default)")
    p.set_defaults(func=cmd_area)

    p = sub.add_parser("converge", help="formula-vs-oracle sweep over sample counts")
    p.add_argument("curve", help="gallery spec or polyline file")
    p.add_argument(
        "--ns",
        default="125,250,500,1000,2000",
        help="comma-separated sample counts (default 125,250,500,1000,2000)",
    )
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--force", action="store_true", help="skip the vertex-count gate")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--json", action="store_true", help="JSON instead of CSV")
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("diagnose", help="vertex count, convexity, multiplicity histogram")
    add_common(p)
    p.add_argument("--probes", type=int, default=100, help="random interior probes")
    p.add_argument("--seed", type=int, default=42, help="probe RNG seed (PCG64)")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--json", action="store_true", help="JSON output (the default)")
    p.set_defaults(func=cmd_diagnose)

    p = sub.add_parser("export-mesh", help="write the hull mesh as an OBJ file")
    p.add_argument("curve", help="gallery spec or polyline file")
    p.add_argument("path", help="output OBJ path")
    p.add_argument("--n", type=int, default=None, help="number of samples")
    p.set_defaults(func=cmd_export_mesh)

    p = sub.add_parser("gallery-list", help="list built-in curves")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_gallery_list)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GateError as exc:
        _emit(
            {
                "schema": 1,
                "command": args.command,
                "error": {
                    "gate": exc.gate,
                    "message": str(exc),
                    **_json_safe(exc.details),
                },
            }
        )
        return 1
    except (OSError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
