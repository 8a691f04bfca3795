"""When do the column spans of the powers reach the core in finite time?

Run with ``python3 demos/03_stabilization.py``.
"""
# %%
from maxcore import EPS, TropicalMatrix, finite_stabilization
from maxcore.oracle import span_chain

E = EPS

# Class {1} (root 0) accesses class {0} (root 1) but nothing with a larger
# root accesses class {1}, so every nontrivial class is spectral and the
# chain of column spans settles after one step.
A = TropicalMatrix([[1, E], [0, 0]])
print(finite_stabilization(A))
chain = span_chain(A)
print("chain:", chain.status, "at t =", chain.stabilized_at)

# %%
# Here the nontrivial class {1} (root 0) lies below the class {0} (root 1)
# and is not spectral, so the spans shrink forever.
B = TropicalMatrix([[0, E], [0, 1]])
print(finite_stabilization(B))
print("chain:", span_chain(B).status)

# %%
# Stabilization can happen late.  The small entry -20 delays it until t = 20;
# the far probe certifies the first stable step exactly.
C = TropicalMatrix([[0, -20], [0, -1]])
chain = span_chain(C)
print("chain:", chain.status, "at t =", chain.stabilized_at)
