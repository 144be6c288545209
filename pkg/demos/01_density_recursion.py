"""
Exact expectations of the shrinkage S_n from the Taylor-coefficient recursion.

Run:  python demos/01_density_recursion.py
"""

from fractions import Fraction

from segproc import density
from segproc.svg import scatter_svg

#%% The first rows, exactly

row = density.first_row(8)
for n in range(1, 4):
    print(f"f_{n}:", [str(c) for c in row])
    row = density.next_coefficient_row(row, 8)

#%% E S_n with a certified truncation bound
#
# Coefficients are nonnegative, so the mass the truncated series misses
# bounds the error in E S_n (times 1/2).

table = density.density_table(70, Fraction(1, 10 ** 10))
for r in table[:5] + table[-3:]:
    print(f"n={r.n:3d}  E S_n={float(r.es):.12f}  n(1/2 - E S_n)={float(r.figure_value):.6f}  "
          f"tail<={float(r.tail_bound):.1e}")

#%% The sequence peaks at n = 3 and then creeps down to 1/4

values = [float(r.figure_value) for r in table]
peak = max(range(len(values)), key=values.__getitem__)
print("peak at n =", peak + 1, "value", round(values[peak], 6))

#%% Cross-check against the quadrature oracle, which iterates the integral recursion

for n in (2, 5, 10):
    print(n, float(table[n - 1].es), density.expectation_quadrature(n))

#%% Scatter plot of n (1/2 - E S_n)

with open("figure_values.svg", "w") as fh:
    fh.write(scatter_svg(range(1, 71), values, title="n (1/2 - E S_n)", xlabel="n",
                         ylabel="n (1/2 - E S_n)", ref_y=0.25))
print("wrote figure_values.svg")
