"""
Monogamy of unified entanglement
================================

For a pure three-qubit state the inequality
``E(A|BC) >= E(A|B) + E(A|C)`` holds whenever ``q >= 2``, ``0 <= s <= 1``
and ``q s <= 3``. W-class states saturate it at (2, 1). Just below q = 2 the
inequality already fails for some states.
"""

import matplotlib.pyplot as plt
import numpy as np

from unifiedqs import ckw_slack, monogamy_slack, violation_search, w_class_state
from unifiedqs.monogamy import batch_slack, haar_qubit_data, min_h

# %%
# W-class states sit exactly on the boundary
# ------------------------------------------
w = w_class_state(*(3**-0.5,) * 3)
print("CKW slack        ", ckw_slack(w).slack)
print("E_{2,1} slack    ", monogamy_slack(w, 0, (2, 1)).slack)
print("E_{3,1} slack    ", monogamy_slack(w, 0, (3, 1)).slack)

# %%
# Haar-random states
# ------------------
data = haar_qubit_data(3, 10_000, seed=0)
fig, ax = plt.subplots()
for p in [(2, 1), (3, 1), (2.5, 0.2), (1.5, 1)]:
    slack = batch_slack(data, p).slack.ravel()
    print(p, "min slack", slack.min())
    ax.hist(slack, bins=100, histtype="step", label=f"(q, s) = {p}")
ax.axvline(0, color="k", lw=0.8)
ax.set_xlabel("monogamy slack")
ax.legend()
plt.show()

# %%
# A violation at (1.5, 1)
# -----------------------
# The auxiliary function ``h(x, y) = f(sqrt(x^2 + y^2)) - f(x) - f(y)`` goes
# negative there, and a W-class state with pair concurrences (x, y) turns the
# negative point into an explicit counterexample.
h, x0, y0 = min_h((1.5, 1))
psi, report = violation_search((1.5, 1))
print(f"min h = {h:.4f} at ({x0:.3f}, {y0:.3f}); witness slack {report.slack:.4f}")
