"""SVG rendering of a (q, s) domain sweep."""

from __future__ import annotations

import numpy as np


def sweep_svg(cells, path, tol: float = 1e-10) -> None:
    """Shade sweep cells by the sign of min h and overlay the proven region.

    The proven region is bounded by q = 2, s = 1 and q s = 3; the three
    boundary curves carry the element ids ``boundary-q2``, ``boundary-s1``
    and ``boundary-qs3``. The SVG is self-contained and byte-stable for
    identical input.
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    matplotlib.rcParams["svg.hashsalt"] = "unifiedqs"
    matplotlib.rcParams["svg.fonttype"] = "path"

    q = np.array([c.q for c in cells])
    s = np.array([c.s for c in cells])
    ok = np.array([c.min_h >= -tol for c in cells])
    proved = np.array([c.in_proved_domain for c in cells])

    fig, ax = plt.subplots(figsize=(6.4, 3.6))
    ax.scatter(q[ok & ~proved], s[ok & ~proved], s=9, marker="s", c="#9ecae1", label="min h >= 0")
    ax.scatter(q[ok & proved], s[ok & proved], s=9, marker="s", c="#3182bd", label="min h >= 0, proven")
    ax.scatter(q[~ok], s[~ok], s=9, marker="s", c="#fc9272", label="min h < 0")

    qmax = max(q.max(), 3.0) if q.size else 6.0
    smax = max(s.max(), 1.0) if s.size else 2.0
    qq = np.linspace(1.5, qmax, 400)
    ax.plot(qq, 3.0 / qq, "k-", lw=1.2, label="qs = 3", gid="boundary-qs3")
    ax.plot([2, 2], [0, smax], "k--", lw=1.0, label="q = 2", gid="boundary-q2")
    ax.plot([0, qmax], [1, 1], "k-.", lw=1.0, label="s = 1", gid="boundary-s1")
    ax.set_xlim(0, qmax)
    ax.set_ylim(0, smax)
    ax.set_xlabel("q")
    ax.set_ylabel("s")
    ax.legend(loc="upper right", fontsize=6, framealpha=0.9)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
