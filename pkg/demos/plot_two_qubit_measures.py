"""
Unified entanglement of two-qubit states
========================================

For two qubits the unified-(q,s) entanglement of any state is a function of
its concurrence alone, ``E = f_qs(C)``, as long as ``q >= 1``,
``0 <= s <= 1`` and ``q s <= 3``. We look at the bridge function and at the
Werner family.
"""

import matplotlib.pyplot as plt
import numpy as np

from unifiedqs import concurrence, f_qs, unified_ent_two_qubit
from unifiedqs.io import werner_state

# %%
# The bridge function
# -------------------
# At (2, 1) it is x^2/2, half the tangle; at q = 1 it is the entanglement of
# formation curve.
x = np.linspace(0, 1, 400)
fig, ax = plt.subplots()
for p in [(1, 1), (1.5, 1), (2, 1), (2, 0.5), (3, 1), (2, 0)]:
    ax.plot(x, f_qs(x, p), label=f"(q, s) = {p}")
ax.set_xlabel("concurrence")
ax.set_ylabel("f_qs")
ax.legend()

# %%
# Werner states
# -------------
# ``p |Phi+><Phi+| + (1 - p) I/4`` has concurrence ``max(0, (3p - 1)/2)``.
weights = np.linspace(0, 1, 101)
conc = [concurrence(werner_state(w)) for w in weights]
ent = [unified_ent_two_qubit(werner_state(w), (3, 0.5)) for w in weights]

fig, ax = plt.subplots()
ax.plot(weights, conc, label="concurrence")
ax.plot(weights, ent, label="E_{3, 1/2}")
ax.axvline(1 / 3, color="grey", ls=":")
ax.set_xlabel("Werner weight p")
ax.legend()
plt.show()

print("Werner p = 0.9, E_{2,1} =", unified_ent_two_qubit(werner_state(0.9), (2, 1)))
