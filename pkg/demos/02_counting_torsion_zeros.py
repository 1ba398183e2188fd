"""
Counting torsion sign changes
=============================

The volume identity needs a curve whose torsion changes sign exactly four
times. This script watches the counter on curves where the answer is known:
the saddle (4), the baseball seam (4), and the wobble family (2k), plus a
planar ellipse where torsion counting is meaningless and says so.
"""

import numpy as np

from curvehull import count_vertices, frenet_profile, gallery

for spec in ("saddle", "baseball", "wobble:k=3", "wobble:k=5", "wobble:k=7"):
    entry = gallery.get(spec)
    rep = count_vertices(frenet_profile(entry.curve, 4096))
    params = ", ".join(f"{t / np.pi:.3f} pi" for t in sorted(rep.vertex_params))
    print(f"{spec:12s} sign changes: {rep.vertex_count}   at t = {params}")

print()

# the saddle's four zeros sit exactly on the quarter turns
rep = count_vertices(frenet_profile(gallery.get("saddle").curve, 4096))
print("saddle zeros vs multiples of pi/2:",
      np.allclose(sorted(rep.vertex_params), [0, np.pi / 2, np.pi, 3 * np.pi / 2],
                  atol=1e-3))

# torsion magnitude profile: the counter also reports the scale it worked at
rep = count_vertices(frenet_profile(gallery.get("baseball").curve, 4096))
print(f"baseball max |tau| = {rep.max_abs_tau:.3f}, min kappa = {rep.min_kappa:.3f}")

print()

# a planar curve has |tau| at the noise floor; the report flags it instead of
# counting garbage crossings
rep = count_vertices(frenet_profile(gallery.get("ellipse").curve, 1024))
print(f"ellipse: is_planar={rep.is_planar}, max |tau| = {rep.max_abs_tau:.2e}")
