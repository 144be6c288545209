"""
The comparison device: maxima of uniforms near 1/2.

Run:  python demos/04_max_uniform_device.py
"""

from segproc import stats
from segproc.rng import RngStream

#%% n (1/2 - M_n) approaches Exp(4 / (1 + 2 alpha)); distances are exact

for alpha in (0.0, 0.25, 0.5):
    print(alpha, [f"{stats.maxconv_distance(n, alpha):.2e}" for n in (10, 100, 1000, 10_000)])

#%% M_n stochastically dominates S_n

print(stats.domination_check(100, 100_000, RngStream(1, 5)))
print(stats.domination_check(1, 100_000, RngStream(1, 5), swapped=True))
print("n = 1 in exact arithmetic (forward, reverse):", stats.domination_closed_form_n1())
