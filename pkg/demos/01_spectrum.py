"""Spectral data of a reducible max-plus matrix.

Run with ``python3 demos/01_spectrum.py``.
"""
# %%
# A max-plus matrix is entered row by row; ``EPS`` is the additive zero
# (minus infinity).  Entries may be ints, Fractions or strings like "1/2".
from maxcore import EPS, TropicalMatrix, critical_graph, frobenius_normal_form, max_cycle_mean, spectrum

E = EPS
A = TropicalMatrix(
    [
        [1, 3, E, E],
        [-1, 0, E, E],
        [2, E, "1/2", E],
        [E, E, 0, 0],
    ]
)
print(A)

# %%
# The maximum cycle mean is the largest average weight over all cycles of the
# weighted digraph of A.  Its critical graph collects the cycles reaching it.
lam = max_cycle_mean(A)
cg = critical_graph(A)
print("max cycle mean:", lam)
print("critical nodes:", sorted(cg.nodes), "cyclicity:", cg.cyclicity)

# %%
# The Frobenius normal form orders the strongly connected classes so that the
# matrix becomes block lower triangular.  Each class has its own Perron root.
fnf = frobenius_normal_form(A)
for mu, nodes in enumerate(fnf.classes):
    print(f"class {mu}: nodes {sorted(nodes)}, root {fnf.class_rho[mu]}, spectral {fnf.is_spectral(mu)}")

# %%
# A root is an eigenvalue exactly when no class with a larger root accesses
# its class.  Each eigenvalue has a cyclicity, and sigma_lambda is their lcm.
spec = spectrum(A)
for rho in spec.eigenvalues:
    print("eigenvalue", rho, "cyclicity", spec.sigma(rho))
print("sigma_lambda =", spec.sigma_lambda)
