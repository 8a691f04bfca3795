"""The core of a max-min (fuzzy) matrix.

Run with ``python3 demos/06_maxmin.py``.
"""
# %%
# Over max-min, powers of a matrix become periodic after finitely many steps
# and the core is the column span of a power at the threshold.
from fractions import Fraction

from maxcore import MAX_MIN, TropicalMatrix, mat_power, maxmin_core, maxmin_fixed_point_check

F = Fraction
A = TropicalMatrix(
    [
        [0, F(1, 2), 0, 0],
        [0, 0, F(3, 4), 0],
        [F(1, 4), 0, 0, 1],
        [0, 0, F(1, 2), 0],
    ],
    MAX_MIN,
)
core = maxmin_core(A)
print("threshold", core.threshold, "period", core.period)
for v in core.extremals:
    print("  extremal", v)

# %%
# Each extremal is fixed by A^period.
print("fixed by A^p:", maxmin_fixed_point_check(core, A))
print(mat_power(A, core.threshold))
