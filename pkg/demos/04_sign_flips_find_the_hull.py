"""
Sign flips locate the hull boundary
===================================

The summand of the volume formula is a signed tetra volume V_ij. Sliding the
first edge by one step and watching the sign of V_ij flip is a hull detector:
a flip means the swept triangle {r_{i+1}, r_j, r_{j+1}} sits on the hull
boundary, equal signs mean the chord pair stays interior. Here we classify
every pair on a saddle loop and verify both claims against quickhull.
"""

import numpy as np

from curvehull import build_hull, classify_adjacent_pair, gallery, sample_uniform, signed_distance

n = 201  # odd on purpose: perfect antipodal symmetry at even n makes every
# flip exactly degenerate and the boundary class empty
sc = sample_uniform(gallery.get("saddle").curve, n)
mesh = build_hull(sc.points)

counts = {"interior": 0, "boundary": 0, "degenerate": 0}
boundary_triangles = []
for i in range(n):
    for j in range(n):
        if j in (i, (i + 1) % n):
            continue
        cls = classify_adjacent_pair(sc, i, j)
        counts[cls.label] += 1
        if cls.label == "boundary":
            boundary_triangles.append(cls.triangle)

print(f"n = {n}: {counts}")

# boundary triangles: every corner and centroid must lie on the hull surface
worst = 0.0
for tri in boundary_triangles:
    centroid = sc.points[list(tri)].mean(axis=0)
    worst = max(worst, abs(signed_distance(mesh, centroid)))
print(f"{len(boundary_triangles)} boundary triangles, worst centroid "
      f"|signed distance| = {worst:.2e} (hull eps = {mesh.eps:.2e})")

# interior spot check: a few interior-labelled pairs give strictly inside
# centroids
rng = np.random.default_rng(0)
inside = 0
for _ in range(200):
    i, j = rng.integers(0, n, size=2)
    if j == i or j == (i + 1) % n:
        continue
    cls = classify_adjacent_pair(sc, int(i), int(j))
    if cls.label != "interior":
        continue
    tri = [(int(i) + 1) % n, int(j), (int(j) + 1) % n]
    if signed_distance(mesh, sc.points[tri].mean(axis=0)) < -mesh.eps:
        inside += 1
print(f"interior spot check: {inside} sampled interior centroids strictly inside")
