"""
Checking the closed form against a numerical convex roof
========================================================

The closed form ``f_qs(C)`` can be tested independently. The convex roof
minimizes the average pure-state entanglement over all decompositions of a
mixed state, and every decomposition comes from an isometry applied to the
eigen-ensemble. A derivative-free search over unitaries therefore gives an
upper bound that should land on the closed form.
"""

import matplotlib.pyplot as plt
import numpy as np

from unifiedqs import concurrence, f_qs, random_mixed, roof_minimize, unified_measure

params = (2.5, 0.2)
states = [random_mixed((2, 2), rank, seed=seed) for seed in range(6) for rank in (2, 3, 4)]

closed, roof = [], []
for rho in states:
    closed.append(f_qs(concurrence(rho), params))
    res = roof_minimize(rho, unified_measure(params), m=4, restarts=10, patience=2, tol=1e-6, min_step=1e-3)
    roof.append(res.value)

closed, roof = np.array(closed), np.array(roof)
print("largest roof - closed form:", np.max(roof - closed))
print("smallest roof - closed form:", np.min(roof - closed))

# %%
# The two agree to optimizer precision.
fig, ax = plt.subplots()
ax.plot(closed, roof, "o")
lim = [0, max(closed.max(), roof.max()) * 1.05]
ax.plot(lim, lim, "k:")
ax.set_xlabel("f_qs(C)")
ax.set_ylabel("numerical roof")
ax.set_title(f"(q, s) = {params}")
plt.show()
