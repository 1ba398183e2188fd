"""
Convex hull volume from chords alone
====================================

The headline identity: for a closed convex curve with exactly four torsion
sign changes, summing |signed tetra volume| over every ordered pair of edges
and dividing by 4 gives the volume of the convex hull. No hull is built on
the formula side of the comparison; the hull only appears as the referee.
"""

import time

import numpy as np

from curvehull import build_hull, gallery, hull_volume, mesh_volume, sample_uniform

curve = gallery.get("saddle").curve

# referee: quickhull over a dense sampling
dense = sample_uniform(curve, 200_000)
oracle = mesh_volume(build_hull(dense.points))
print(f"oracle volume (200k-point hull): {oracle:.10f}")
print()

print(" n      formula          rel gap    seconds")
for n in (125, 250, 500, 1000, 2000):
    sc = sample_uniform(curve, n)
    t0 = time.perf_counter()
    res = hull_volume(sc)
    dt = time.perf_counter() - t0
    gap = abs(res.volume - oracle) / oracle
    print(f"{n:5d}  {res.volume:.10f}  {gap:9.3e}  {dt:7.3f}")

print()
print("the gap falls roughly like 1/n^2: doubling n buys a factor ~4")
print(f"the limit is exactly pi ({np.pi:.10f}): the hull is pinched between")
print("the parabolic sheets z = 1 - 2y^2 and z = 2x^2 - 1, whose gap")
print("integrates to pi over the unit disk")

# the built-in half-resolution error estimate tracks the true gap
sc = sample_uniform(curve, 1000)
res = hull_volume(sc, with_error_estimate=True)
print(f"self-estimate at n=1000: {res.error_estimate:.3e} "
      f"(true gap {abs(res.volume - oracle) / oracle * oracle:.3e})")
