"""
Where does monogamy hold?
=========================

Sweep (q, s) over [0, 6] x [0, 2], record the minimum of
``h(x, y) = f(sqrt(x^2 + y^2)) - f(x) - f(y)`` on a polar grid, and shade the
cells by its sign. The region with a proof is bounded by q = 2, s = 1 and
q s = 3. The same sweep is available as ``unifiedqs sweep --plot out.svg``.
"""

import matplotlib.pyplot as plt
import numpy as np

from unifiedqs import domain_sweep

cells = domain_sweep((0, 6), (0, 2), 0.1, xy_grid_resolution=100, state_samples=100, seed=0)

q = np.array([c.q for c in cells])
s = np.array([c.s for c in cells])
mh = np.array([c.min_h for c in cells])
proved = np.array([c.in_proved_domain for c in cells])

print("cells:", len(cells), " proven:", proved.sum())
print("worst min h inside the proven region:", mh[proved].min())
print("cells with min h >= 0 outside it:", np.sum((mh >= -1e-10) & ~proved))

fig, ax = plt.subplots(figsize=(7, 3.5))
ax.scatter(q, s, c=np.sign(np.round(mh, 10)), cmap="coolwarm_r", marker="s", s=12)
qq = np.linspace(1.5, 6, 200)
ax.plot(qq, 3 / qq, "k-", label="qs = 3")
ax.axvline(2, color="k", ls="--", label="q = 2")
ax.axhline(1, color="k", ls="-.", label="s = 1")
ax.set_xlim(0, 6)
ax.set_ylim(0, 2)
ax.set_xlabel("q")
ax.set_ylabel("s")
ax.legend(loc="upper right")
plt.show()
