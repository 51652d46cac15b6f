"""
The unified-(q,s) entropy family
================================

One two-parameter formula covers the Renyi entropies (s -> 0), the Tsallis
entropies (s = 1) and the von Neumann entropy (q -> 1). This script
evaluates the family on a single qubit state and checks the limits.
"""

import matplotlib.pyplot as plt
import numpy as np

from unifiedqs import DensityMatrix, renyi_entropy, tsallis_entropy, unified_entropy, von_neumann

rho = DensityMatrix(np.diag([0.75, 0.25]), (2,))

# %%
# Named members of the family
# ---------------------------
print("Renyi-2   ", renyi_entropy(rho, 2))
print("Tsallis-2 ", tsallis_entropy(rho, 2))
print("von Neumann", von_neumann(rho))

# %%
# Approaching the limits
# ----------------------
# As s shrinks the generic formula tends to the Renyi value; as q tends to 1
# it tends to the von Neumann value.
for s in (1e-2, 1e-4, 1e-6):
    print(f"s = {s:g}: {unified_entropy(rho, (2, s)) - renyi_entropy(rho, 2):+.2e}")
for dq in (1e-2, 1e-4, 1e-6):
    print(f"q = 1 + {dq:g}: {unified_entropy(rho, (1 + dq, 0.5)) - von_neumann(rho):+.2e}")

# %%
# The entropy over the (q, s) plane
# ---------------------------------
q = np.linspace(0.1, 5, 120)
s = np.linspace(0, 2, 80)
values = np.array([[unified_entropy(rho, (qq, ss)) for qq in q] for ss in s])

fig, ax = plt.subplots()
mesh = ax.pcolormesh(q, s, values, shading="auto")
fig.colorbar(mesh, ax=ax, label="S_{q,s}")
ax.set_xlabel("q")
ax.set_ylabel("s")
ax.set_title("diag(3/4, 1/4)")
plt.show()
