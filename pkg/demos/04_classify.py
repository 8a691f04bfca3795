"""Periodicity classes of a few small matrices, with witnesses.

Run with ``python3 demos/04_classify.py``.
"""
# %%
from maxcore import EPS, TropicalMatrix, classify
from maxcore.oracle import brute_force_robust, collision_search

E = EPS
cases = {
    "reducible": TropicalMatrix([[1, E], [0, 0]]),
    "swap": TropicalMatrix([[E, 0], [0, E]]),
    "diagonal": TropicalMatrix([[1, E], [E, 0]]),
}

# %%
# Each verdict comes with a witness explaining a negative answer.
for name, A in cases.items():
    rep = classify(A, oracle=True)
    print(f"== {name}")
    for key, verdict in rep.verdicts.items():
        print(f"  {key:24s} {verdict.value!s:6s} {verdict.witness or ''}")

# %%
# The verdicts for robustness and orbit periodicity can be cross-checked by
# following orbits of many starting vectors.
for name, A in cases.items():
    bf = brute_force_robust(A)
    print(name, "simulated robust:", bf.robust, "orbit periodic:", bf.orbit_periodic)

# %%
# When A is not injective on its core, two distinct core vectors merge.
A = cases["reducible"]
hit = collision_search(A)
print("y =", hit.y, " y' =", hit.y_prime, " merge after t =", hit.t)
