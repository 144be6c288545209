"""
The radius settles at 1/2 at rate 1/n, with an exponential fluctuation.

Run:  python demos/02_radius_limit.py
"""

from math import comb, factorial
from fractions import Fraction

import numpy as np

from segproc import core, density, stats
from segproc.rng import RngStream

#%% A single trajectory

traj = core.run_direct(12, RngStream(7))
for s in traj:
    print(f"step {s.step:2d}  [{s.segment.lo:+.5f}, {s.segment.hi:+.5f}]  radius {s.segment.radius:.5f}")

#%% n (radius_n - 1/2) against Exp(4)

n, N = 10_000, 20_000
sample = stats.scaled_radius_sample(n, N, RngStream(1, 1))
print("KS to Exp(4):", stats.ks_distance(sample, stats.Exponential(4.0)))
for k in (1, 2, 3):
    print(f"k={k}  empirical {np.mean(sample.values ** k):.5f}  limit {factorial(k) / 4 ** k:.5f}")

#%% At moderate n the exact moments are available from the coefficient rows

n = 70
row = density.coefficient_table(n, 1e-12).row(n)
m = [density.moment_s(row, p) for p in range(4)]
lo, hi = core.simulate_direct(n, 200_000, RngStream(3))
x = n * (0.5 * (hi - lo) - 0.5)
for k in (1, 2, 3):
    exact = sum(comb(k, j) * Fraction(1, 2) ** (k - j) * (-1) ** j * m[j] for j in range(k + 1)) * n ** k
    print(f"k={k}  exact {float(exact):.5f}  simulated {np.mean(x ** k):.5f}")
