"""
Where the segment ends up: the limiting centre follows an arcsine law.

Three samplers give it: the direct chain run for many steps, the thinned
chain, and the signed stick-breaking series.

Run:  python demos/03_center_arcsine.py
"""

import numpy as np

from segproc import core, stats
from segproc.rng import RngStream

arcsine = stats.TranslatedArcsine()

#%% Forced draws: halving every stick with alternating signs lands on 1/6

print(core.center_series_with([0.5] * 60, [(-1.0) ** i for i in range(60)], 1e-15))

#%% Three samplers, one law

series = stats.center_sample(100_000, 1e-12, RngStream(1, 2), "series")
thinned = stats.center_sample(100_000, 1e-12, RngStream(1, 6), "thinned")
direct = stats.center_sample(20_000, 1e-12, RngStream(1, 1), "direct", n=10_000)
for s in (series, thinned, direct):
    print(f"{s.meta['method']:8s} KS to arcsine {stats.ks_distance(s, arcsine):.4f}  mean {s.mean():+.4f}")

#%% Histogram against the density 1 / (pi sqrt(1/4 - x^2))

counts, edges = np.histogram(series.values, bins=10, range=(-0.5, 0.5))
expected = np.diff(arcsine.cdf(edges)) * len(series)
for a, c, e in zip(edges, counts, expected):
    print(f"[{a:+.1f}, {a + 0.1:+.1f})  {c:6d}  expected {e:8.1f}")

#%% The fixed-point identity, and a control that should break it

print(stats.fixed_point_check(100_000, RngStream(1, 3)))
print(stats.fixed_point_check(100_000, RngStream(1, 3), control=True))

#%% GEM weights and their decreasing rearrangement

g = core.sample_gem(8, RngStream(5))
print("GEM   ", np.round(g.weights, 4), "residual", round(g.residual, 6))
print("sorted", np.round(core.to_poisson_dirichlet(g).weights, 4))
