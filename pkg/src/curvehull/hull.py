"""Convex hull oracle: triangulated hull meshes, volume by tetra fan,
containment queries, coplanar support patches, and OBJ export.

The raw hull comes from scipy's qhull wrapper; everything downstream
(orientation repair, structural validation, volume, distances, patch
grouping) is computed here so results can be cross-checked against the
chord-sum formula independently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .curves import as_point_array
from .errors import CurveHullError, OutsideHullError, PlanarCurveError

HULL_EPS_RTOL = 1e-9  # containment tolerance vs bounding-box diagonal
_COPLANAR_NORMAL_COS = np.cos(1e-6)  # merge facets whose normals agree to 1e-6 rad


@dataclass(eq=False)
class HullMesh:
    """Triangulated boundary of the convex hull of a point set.

    facets index into points (the original input array) and are wound so
    that cross(b - a, c - a) points outward. normals/offsets describe the
    facet planes as normal . x + offset = 0 with normal outward, so the
    expression is negative inside. eps is the absolute containment
    tolerance, HULL_EPS_RTOL times the bounding-box diagonal.
    """

    points: np.ndarray
    facets: np.ndarray
    normals: np.ndarray
    offsets: np.ndarray
    vertex_indices: np.ndarray
    eps: float

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_indices)

    @property
    def n_facets(self) -> int:
        return len(self.facets)


def bbox_diagonal(points: np.ndarray) -> float:
    return float(np.linalg.norm(points.max(axis=0) - points.min(axis=0)))


def build_hull(points) -> HullMesh:
    """Construct a validated hull mesh from at least 4 points.

    Coplanar input has no 3-d hull and raises PlanarCurveError. The mesh is
    checked structurally before being returned: consistent outward winding,
    every edge shared by exactly two triangles, Euler characteristic 2, and
    every input point inside or on the boundary within eps.
    """
    pts = as_point_array(points)
    if len(pts) < 4:
        raise ValueError(f"need at least 4 points, got {len(pts)}")
    diag = bbox_diagonal(pts)
    if diag <= 0.0:
        raise ValueError("all points coincide")
    centered = pts - pts.mean(axis=0)
    svals = np.linalg.svd(centered, compute_uv=False)
    if svals[-1] <= 1e-9 * svals[0]:
        raise PlanarCurveError(
            "point set is (near) coplanar, its hull has no volume",
            thickness=float(svals[-1]),
        )
    try:
        ch = ConvexHull(pts)
    except QhullError as exc:
        raise PlanarCurveError(f"hull construction failed: {exc}") from exc

    facets = ch.simplices.copy()
    normals = ch.equations[:, :3].copy()
    offsets = ch.equations[:, 3].copy()
    # qhull's triangle winding is not tied to the plane orientation; repair it
    a, b, c = pts[facets[:, 0]], pts[facets[:, 1]], pts[facets[:, 2]]
    tri_normal = np.cross(b - a, c - a)
    flip = np.einsum("ij,ij->i", tri_normal, normals) < 0.0
    facets[flip] = facets[flip][:, [0, 2, 1]]

    mesh = HullMesh(
        points=pts,
        facets=facets,
        normals=normals,
        offsets=offsets,
        vertex_indices=ch.vertices.copy(),
        eps=HULL_EPS_RTOL * diag,
    )
    _validate(mesh)
    return mesh


def _validate(mesh: HullMesh) -> None:
    f = mesh.facets
    e = np.vstack([f[:, [0, 1]], f[:, [1, 2]], f[:, [2, 0]]])
    e.sort(axis=1)
    _, counts = np.unique(e, axis=0, return_counts=True)
    if np.any(counts != 2):
        raise CurveHullError("hull mesh is not watertight (edge shared != 2 times)")
    n_edges = len(counts)
    v = len(np.unique(f))
    if v - n_edges + len(f) != 2:
        raise CurveHullError("hull mesh violates the Euler formula")
    # vertices lie on their incident facets by construction; only points the
    # hull did not keep can possibly stick out
    inner = np.setdiff1d(np.arange(len(mesh.points)), mesh.vertex_indices)
    if len(inner):
        worst = float(np.max(signed_distance(mesh, mesh.points[inner])))
        if worst > mesh.eps:
            raise CurveHullError(f"input point lies {worst:.3g} outside its own hull")


def signed_distance(mesh: HullMesh, p) -> np.ndarray | float:
    """Largest signed plane distance, negative strictly inside the hull.

    For interior points this is (minus) the distance to the boundary; for
    exterior points it is a lower bound on the distance. Accepts a single
    point or an (n, 3) array.
    """
    p = np.asarray(p, dtype=np.float64)
    single = p.ndim == 1
    q = p.reshape(-1, 3)
    nf = len(mesh.normals)
    block = max(1, 20_000_000 // max(nf, 1))  # cap the dense distance table
    d = np.empty(len(q))
    for s in range(0, len(q), block):
        d[s : s + block] = np.max(
            q[s : s + block] @ mesh.normals.T + mesh.offsets, axis=1
        )
    return float(d[0]) if single else d


@dataclass(eq=False)
class Containment:
    """Where a point sits relative to a hull: inside, boundary, or outside."""

    location: str  # "inside" | "boundary" | "outside"
    margin: float  # unsigned distance to the nearest facet plane

    @property
    def is_inside(self) -> bool:
        return self.location == "inside"


def contains(mesh: HullMesh, p) -> Containment:
    """Classify a single point against the hull, with eps-thick boundary."""
    d = signed_distance(mesh, p)
    if abs(d) <= mesh.eps:
        return Containment("boundary", abs(d))
    return Containment("inside" if d < 0 else "outside", abs(d))


def mesh_volume(mesh: HullMesh) -> float:
    """Enclosed volume by summing signed tetra volumes against the centroid.

    Relies only on consistent outward winding, so it cross-checks the facet
    orientation repair done in build_hull.
    """
    ref = mesh.points[np.unique(mesh.facets)].mean(axis=0)
    a = mesh.points[mesh.facets[:, 0]] - ref
    b = mesh.points[mesh.facets[:, 1]] - ref
    c = mesh.points[mesh.facets[:, 2]] - ref
    return float(np.einsum("ij,ij->i", np.cross(a, b), c).sum() / 6.0)


# ----------------------------------------------------------------------------
# Coplanar support patches


@dataclass(eq=False)
class SupportPatch:
    """A maximal coplanar run of hull facets and the samples it touches."""

    facet_ids: list
    sample_ids: list
    normal: np.ndarray
    offset: float


@dataclass(eq=False)
class SupportPolygonReport:
    """Coplanar hull patches supported by three mutually distant samples.

    count is the number P of patches whose touched samples contain a triple
    with pairwise cyclic index distance above 2; those patches witness planes
    tangent to the curve at three separated arcs. coplanar_groups counts all
    multi-facet coplanar groups regardless of the distance rule.
    """

    count: int
    patches: list
    coplanar_groups: int

    def as_dict(self) -> dict:
        return {
            "count": self.count,
            "coplanar_groups": self.coplanar_groups,
            "patch_sample_ids": [sorted(p.sample_ids) for p in self.patches],
        }


def _cyclic_distance(i: int, j: int, n: int) -> int:
    d = abs(i - j) % n
    return min(d, n - d)


def _has_far_triple(ids, n: int) -> bool:
    ids = sorted(set(ids))
    m = len(ids)
    for a in range(m):
        for b in range(a + 1, m):
            if _cyclic_distance(ids[a], ids[b], n) <= 2:
                continue
            for c in range(b + 1, m):
                if (
                    _cyclic_distance(ids[a], ids[c], n) > 2
                    and _cyclic_distance(ids[b], ids[c], n) > 2
                ):
                    return True
    return False


def support_polygons(mesh: HullMesh) -> SupportPolygonReport:
    """Find hull patches lying in a single plane touched by distant samples.

    Adjacent facets are merged when their planes agree (normals within
    1e-6 rad, offsets within eps); each resulting patch counts
    toward P when the samples it touches admit three indices pairwise more
    than 2 apart around the sample cycle. Sample indices refer to positions
    along the input loop, so the distance rule excludes patches explained by
    consecutive samples alone.
    """
    n = len(mesh.points)
    f = mesh.facets
    parent = list(range(len(f)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    edges = {}
    for t, (i, j, k) in enumerate(f):
        for e in ((i, j), (j, k), (k, i)):
            key = (min(e), max(e))
            edges.setdefault(key, []).append(t)
    for pair in edges.values():
        if len(pair) != 2:
            continue
        t1, t2 = pair
        if (
            float(mesh.normals[t1] @ mesh.normals[t2]) >= _COPLANAR_NORMAL_COS
            and abs(mesh.offsets[t1] - mesh.offsets[t2]) <= mesh.eps
        ):
            union(t1, t2)

    groups = {}
    for t in range(len(f)):
        groups.setdefault(find(t), []).append(t)

    patches = []
    multi = 0
    for root in sorted(groups):
        members = groups[root]
        if len(members) > 1:
            multi += 1
        touched = sorted(set(int(x) for t in members for x in f[t]))
        if _has_far_triple(touched, n):
            patches.append(
                SupportPatch(
                    facet_ids=members,
                    sample_ids=touched,
                    normal=mesh.normals[members[0]].copy(),
                    offset=float(mesh.offsets[members[0]]),
                )
            )
    return SupportPolygonReport(count=len(patches), patches=patches, coplanar_groups=multi)


# ----------------------------------------------------------------------------
# Vertex inequality bookkeeping


@dataclass(eq=False)
class InequalityReport:
    """Check of V + 2K + 2d >= 4 + P for a sampled convex loop.

    V: torsion sign changes; K: kink count (corners with a tangent jump,
    zero for the smooth curves handled here); d: count of planes tangent
    along a whole arc, assumed 0 for curves in general position; P: support
    patches from support_polygons.
    """

    vertex_count: int
    kink_count: int
    support_count: int
    tangent_arc_count: int
    satisfied: bool
    slack: int

    def as_dict(self) -> dict:
        return {
            "vertex_count": self.vertex_count,
            "kink_count": self.kink_count,
            "support_count": self.support_count,
            "tangent_arc_count": self.tangent_arc_count,
            "satisfied": self.satisfied,
            "slack": self.slack,
        }


def four_vertex_inequality_report(
    vertex_count,
    support_count,
    kink_count: int = 0,
    tangent_arc_count: int = 0,
) -> InequalityReport:
    """Evaluate V + 2K + 2d - (4 + P); nonnegative slack means satisfied.

    vertex_count may be a plain integer or a VertexReport (planar reports
    are rejected: torsion sign counting is meaningless there). Likewise
    support_count may be an integer or a SupportPolygonReport.
    """
    if hasattr(vertex_count, "vertex_count"):
        if vertex_count.is_planar:
            raise PlanarCurveError(
                "vertex count undefined for a planar curve; no inequality to check"
            )
        vertex_count = vertex_count.vertex_count
    if hasattr(support_count, "count"):
        support_count = support_count.count
    slack = vertex_count + 2 * kink_count + 2 * tangent_arc_count - 4 - support_count
    return InequalityReport(
        vertex_count=vertex_count,
        kink_count=kink_count,
        support_count=support_count,
        tangent_arc_count=tangent_arc_count,
        satisfied=slack >= 0,
        slack=slack,
    )


# ----------------------------------------------------------------------------
# Export


def save_obj(mesh: HullMesh, path) -> None:
    """Write the mesh as a Wavefront OBJ file.

    All input points are emitted as v lines (17 significant digits), faces
    are 1-based triangles wound outward, and line endings are LF regardless
    of platform, so repeated exports are byte-identical.
    """
    lines = []
    for p in mesh.points:
        lines.append(f"v {p[0]:.17g} {p[1]:.17g} {p[2]:.17g}")
    for i, j, k in mesh.facets:
        lines.append(f"f {i + 1} {j + 1} {k + 1}")
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
