"""Orbits of vectors: transient, ray period and growth.

Run with ``python3 demos/05_orbits.py``.
"""
# %%
from maxcore import EPS, TropicalMatrix, TropicalVector
from maxcore.oracle import matrix_power_periodicity, orbit_simulate

E = EPS
A = TropicalMatrix([[E, 2, E], [E, E, 1], [0, E, "1/2"]])

# %%
# The orbit x, Ax, A^2 x, ... is recorded normalized.  Once a normalized state
# repeats, the orbit is periodic as a ray: A^(t+p) x = g + A^t x.
tr = orbit_simulate(A, TropicalVector([0, 0, 0]), horizon=50)
p = tr.periodicity
print("ray period:", p.period, "growth per period:", p.growth, "transient:", p.defect)
for t, s in enumerate(tr.states[:6]):
    print(f"  t={t}: {s}")

# %%
# For an irreducible matrix the powers themselves are ultimately periodic,
# with period equal to the cyclicity of the critical graph.
info = matrix_power_periodicity(A)
print("powers: period", info.period, "growth", info.growth, "from t =", info.defect)
