"""
Dynamics on S^3 x S^6 x S^8: degrees, Birkhoff averages, density
================================================================

Floating-point harness for the maps whose algebraic invariants the rest
of the library computes: Monte Carlo mapping degrees per factor, running
Birkhoff averages against the geometric-sum envelope, and an epsilon-net
certificate that a finite orbit fills its predicted closure.

Run with `python demos/dynamics_simulation.py`.
"""

import math

import numpy as np

from spherecross import (
    DynamicsMap,
    ProductPoint,
    birkhoff_averages,
    estimate_degree,
    orbit,
    orbit_density_check,
)
from spherecross.dynamics import random_points

SQRT2_MINUS_1 = math.sqrt(2.0) - 1.0
GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0

##############################################################################
# The maps
# --------
#
# A map is a rotation angle (in turns) on the S^3 factor plus optional
# antipodal flips on S^6 and S^8. The alpha-like map below rotates by
# sqrt(2) - 1 and flips S^6.

f = DynamicsMap(angle=SQRT2_MINUS_1, flip_s6=True)
print("map:", f)
print("group law sanity: f o f^-1 =", f.compose(f.inverse()))

x0 = ProductPoint.base()
xs = list(orbit(f, x0, 5))
print("distance from start along the orbit:",
      [round(x0.distance_to(x), 3) for x in xs])

##############################################################################
# Mapping degrees by sampled orientation
# --------------------------------------
#
# For each factor map, sample points uniformly on the factor sphere and
# compare the orientation of a tangent frame before and after the map.
# The rotation preserves orientation on S^3 (degree +1); the antipodal
# map on an even sphere reverses it (degree -1). The estimates are
# reproducible: they depend on (seed, samples) only, not on chunking.

flips = DynamicsMap(angle=0.0, flip_s6=True, flip_s8=True)
for factor, dmap in (("s3", f), ("s6", flips), ("s8", flips)):
    est = estimate_degree(dmap, factor, samples=20_000, seed=0)
    print(f"  {factor}: degree {est.degree}, raw mean {est.raw_mean:+.4f}, "
          f"ci [{est.ci_low:+.4f}, {est.ci_high:+.4f}]")

##############################################################################
# Birkhoff averages against the exact envelope
# --------------------------------------------
#
# For the character observable x -> a2/|a2| the orbit sums are geometric
# series, so |A_n| <= 2 / (n |1 - lambda|) with lambda = e^(2 pi i t).
# The measured averages hug that envelope without ever crossing it.

horizon = 2000
points = random_points(3, seed=11)
run = birkhoff_averages(f, points, horizon, "s3_character")
n = np.arange(1, horizon + 1, dtype=float)
bound = 2.0 / (n * abs(1.0 - f.phase))
worst = float(np.max(np.abs(run.averages) / bound))
print(f"max |A_n| * n |1 - lambda| / 2 over {horizon} steps "
      f"and 3 points: {worst:.12f} (stays below 1)")
print(f"uniformity: max pairwise deviation at n = {horizon}: "
      f"{run.max_pairwise_deviation[-1]:.2e}")

##############################################################################
# A flipped observable cancels exactly on even steps
# --------------------------------------------------
#
# The first S^6 coordinate changes sign at every step of the flip map,
# so consecutive terms cancel and every even-step average is exactly 0.0
# in floating point, not merely small.

flip_run = birkhoff_averages(flips, points[:1], 64, "s6_first_coord")
evens = flip_run.averages[0][1::2]
print("even-step averages all exactly zero:", bool(np.all(evens == 0.0)))

##############################################################################
# Orbit density at a finite horizon
# ---------------------------------
#
# The orbit closure of a generic point is parametrized by a rotation
# parameter on one or two sheets (two when a flip is present). The check
# projects the first 10^4 orbit points to that parameter and measures
# how much of an epsilon-grid they cover. The golden ratio is the
# worst-case irrational, and still covers everything at eps = 0.01.

g = DynamicsMap(angle=GOLDEN, flip_s6=True, flip_s8=True)
result = orbit_density_check(g, x0, horizon=10_000, epsilon=0.01)
print(f"sheets: {result.sheets}, grid: {result.grid_size}, "
      f"coverage: {result.coverage}, max gap: {result.max_gap:.2e}")

rational = DynamicsMap(angle=0.25)
try:
    orbit_density_check(rational, x0, horizon=100, epsilon=0.05)
except ValueError as exc:
    print("rational angles are refused:", exc)
