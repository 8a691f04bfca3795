"""The core of a matrix and the permutation the matrix induces on it.

Run with ``python3 demos/02_core.py``.
"""
# %%
from maxcore import EPS, TropicalMatrix, core_action, core_basis, mat_power, span_membership

E = EPS
# Two cyclic classes: a 2-cycle on nodes 0,1 and a 3-cycle on nodes 2,3,4,
# with a connection from the second into the first.
A = TropicalMatrix(
    [
        [E, 0, E, E, E],
        [0, E, E, 1, E],
        [E, E, E, 1, E],
        [E, E, E, E, 1],
        [E, E, 1, E, E],
    ]
)
core = core_basis(A)
print("sigma_lambda:", core.sigma_lambda)
print("extremals of the core:")
for k, v in enumerate(core.extremals):
    print(f"  x{k} = {v}")

# %%
# A maps each extremal to a multiple of another extremal.  The map is a
# permutation, shown here with its cycles and the scalar picked up by A.
act = core_action(core)
for k, (img, g) in enumerate(zip(core.action, core.growth)):
    print(f"  A x{k} = {g} + x{img}")
print("cycles:", act.cycles)

# %%
# Every extremal lies in the column span of every power of A.
for t in range(1, 7):
    cols = mat_power(A, t).columns()
    assert all(span_membership(v, cols) for v in core.extremals)
print("extremals lie in span(A^t) for t = 1..6")
