"""Multi-qubit monogamy of unified-(q,s) entanglement.

Evaluation of the monogamy slack for pure n-qubit states (single states and
vectorized Monte Carlo batches), the CKW squared-concurrence variant, named
test states, the auxiliary functions used in the monogamy argument, the
(q, s) domain sweep and a violation search.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .concurrence import concurrence_from_lambdas, concurrence_pure, concurrence_wootters, wootters_lambdas
from .entropy import MeasureParams, as_params, unified_from_spectrum
from .linalg import DomainError, PureState, partial_trace, random_haar_batch
from .unified import (
    X_TOL,
    NonCertifiedWarning,
    check_formula_domain,
    f_qs,
    in_formula_domain,
    in_monogamy_domain,
    unified_ent_pure,
    unified_ent_two_qubit,
)

SLACK_TOL = 1e-9
HARD_VIOLATION = 1e-6


@dataclass(frozen=True)
class MonogamyReport:
    """One evaluation of ``lhs >= sum(rhs_terms)``.

    ``kind`` is ``"unified"`` for the unified-(q,s) inequality or ``"ckw"``
    for squared concurrence (then ``params`` is None).
    """

    lhs: float
    rhs_terms: tuple
    params: MeasureParams | None
    n: int
    focus: int = 0
    state_id: int | str | None = None
    kind: str = "unified"
    certified: bool = True
    slack: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "rhs_terms", tuple(float(t) for t in self.rhs_terms))
        object.__setattr__(self, "slack", float(self.lhs) - float(np.sum(self.rhs_terms)))

    @property
    def violated(self) -> bool:
        return self.slack < -SLACK_TOL

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "state_id": self.state_id,
            "n": self.n,
            "focus": self.focus,
            "q": None if self.params is None else self.params.q,
            "s": None if self.params is None else self.params.s,
            "lhs": self.lhs,
            "rhs_terms": list(self.rhs_terms),
            "slack": self.slack,
            "certified": self.certified,
        }


@dataclass(frozen=True)
class DomainCell:
    q: float
    s: float
    in_proved_domain: bool
    min_h: float
    min_slack: float


# --- named states -------------------------------------------------------


def w_class_state(a: complex, b: complex, c: complex) -> PureState:
    """``a|100> + b|001> + c|010>``."""
    norm = abs(a) ** 2 + abs(b) ** 2 + abs(c) ** 2
    if abs(norm - 1.0) > 1e-10:
        raise DomainError(f"|a|^2 + |b|^2 + |c|^2 = {norm}, expected 1")
    v = np.zeros(8, dtype=complex)
    v[0b100], v[0b001], v[0b010] = a, b, c
    return PureState.from_vector(v, (2, 2, 2))


def ghz_state(n: int) -> PureState:
    if n < 2:
        raise DomainError("GHZ state needs n >= 2")
    v = np.zeros(2**n, dtype=complex)
    v[0] = v[-1] = 1 / np.sqrt(2)
    return PureState(v, (2,) * n)


def w_state_for(x0: float, y0: float) -> PureState:
    """W-class state with pairwise concurrences ``C_AB = x0``, ``C_AC = y0``.

    For ``a|100> + b|001> + c|010>`` one has ``C_AB = 2|a||c|``,
    ``C_AC = 2|a||b|`` and ``C_A(BC)^2 = 4|a|^2 (1 - |a|^2)``, so every point
    of ``x0, y0 >= 0, x0^2 + y0^2 <= 1`` is reached with
    ``|a|^2 = (1 + sqrt(1 - x0^2 - y0^2)) / 2``.
    """
    r2 = x0 * x0 + y0 * y0
    if x0 < 0 or y0 < 0 or r2 > 1.0 + 1e-12:
        raise DomainError(f"no W-class state has pairwise concurrences ({x0}, {y0})")
    if r2 == 0:
        return w_class_state(1.0, 0.0, 0.0)
    a2 = 0.5 * (1.0 + np.sqrt(max(0.0, 1.0 - r2)))
    b2 = y0 * y0 / (4 * a2)
    c2 = x0 * x0 / (4 * a2)
    return w_class_state(np.sqrt(a2), np.sqrt(b2), np.sqrt(c2))


def _check_qubits(psi: PureState, focus: int):
    if any(d != 2 for d in psi.dims):
        raise DomainError(f"monogamy needs an all-qubit state, got dims {psi.dims}")
    if not 0 <= focus < len(psi.dims):
        raise DomainError(f"focus {focus} out of range")


# --- single-state slacks -------------------------------------------------


def monogamy_slack(psi: PureState, focus: int = 0, p=(2.0, 1.0), force: bool = False, state_id=None) -> MonogamyReport:
    """Unified-(q,s) monogamy slack of a pure multi-qubit state.

    The left side is the entropy of the focus qubit's reduced state; each
    right-hand term is the two-qubit closed form on the focus/partner pair.
    """
    _check_qubits(psi, focus)
    p = check_formula_domain(p, force)
    lhs = unified_ent_pure(psi, [focus], p)
    rhs = []
    for i in range(psi.n_subsystems):
        if i == focus:
            continue
        rhs.append(unified_ent_two_qubit(partial_trace(psi, {focus, i}), p, force=True))
    return MonogamyReport(lhs, tuple(rhs), p, psi.n_subsystems, focus, state_id, "unified", in_formula_domain(p.q, p.s))


def ckw_slack(psi: PureState, focus: int = 0, state_id=None) -> MonogamyReport:
    """Squared-concurrence (CKW) monogamy slack."""
    _check_qubits(psi, focus)
    lhs = concurrence_pure(psi, [focus]) ** 2
    rhs = [
        concurrence_wootters(partial_trace(psi, {focus, i})).value ** 2
        for i in range(psi.n_subsystems)
        if i != focus
    ]
    return MonogamyReport(lhs, tuple(rhs), None, psi.n_subsystems, focus, state_id, "ckw")


# --- vectorized Monte Carlo ---------------------------------------------


@dataclass(frozen=True, eq=False)
class QubitData:
    """Measure-independent data of a batch of pure n-qubit states.

    ``spectra[k, i]`` is the spectrum of qubit i's reduced state and
    ``pair_c[k, i, j]`` the concurrence of the (i, j) reduced state.
    """

    vectors: np.ndarray
    n: int
    spectra: np.ndarray
    pair_c: np.ndarray


def qubit_data(vectors: np.ndarray, n: int) -> QubitData:
    vectors = np.asarray(vectors, dtype=complex)
    count = vectors.shape[0]
    t = vectors.reshape((count,) + (2,) * n)
    spectra = np.empty((count, n, 2))
    pair_c = np.zeros((count, n, n))
    for i in range(n):
        m = np.moveaxis(t, 1 + i, 1).reshape(count, 2, -1)
        red = m @ np.conj(np.swapaxes(m, 1, 2))
        lam = np.linalg.eigvalsh(red)
        spectra[:, i] = np.where(lam < 1e-14, 0.0, lam)
    for i in range(n):
        for j in range(i + 1, n):
            m = np.moveaxis(t, (1 + i, 1 + j), (1, 2)).reshape(count, 4, -1)
            red = m @ np.conj(np.swapaxes(m, 1, 2))
            c = np.minimum(1.0, concurrence_from_lambdas(wootters_lambdas(red)))
            pair_c[:, i, j] = pair_c[:, j, i] = c
    return QubitData(vectors, n, spectra, pair_c)


def haar_qubit_data(n: int, samples: int, seed=0, chunk: int = 2000) -> QubitData:
    """Haar-random n-qubit states; chunk k is drawn from ``default_rng([seed, k])``."""
    parts = []
    for k, start in enumerate(range(0, samples, chunk)):
        count = min(chunk, samples - start)
        parts.append(random_haar_batch((2,) * n, count, np.random.default_rng([int(seed), k])))
    return qubit_data(np.concatenate(parts), n)


@dataclass(frozen=True, eq=False)
class SlackBatch:
    """Unified-(q,s) slacks for every state and focus of a QubitData batch.

    ``lhs`` and ``slack`` have shape (samples, n); ``rhs`` has shape
    (samples, n, n - 1) with partners in ascending order.
    """

    params: MeasureParams
    lhs: np.ndarray
    rhs: np.ndarray
    slack: np.ndarray
    certified: bool

    def report(self, k: int, focus: int = 0) -> MonogamyReport:
        return MonogamyReport(
            float(self.lhs[k, focus]), tuple(self.rhs[k, focus]), self.params,
            self.lhs.shape[1], focus, k, "unified", self.certified,
        )

    def argmin(self) -> tuple[int, int]:
        k, f = np.unravel_index(np.argmin(self.slack), self.slack.shape)
        return int(k), int(f)


def batch_slack(data: QubitData, p, force: bool = False) -> SlackBatch:
    p = check_formula_domain(p, force)
    n = data.n
    lhs = unified_from_spectrum(data.spectra, p)
    fc = f_qs(data.pair_c, p)
    off = ~np.eye(n, dtype=bool)
    rhs = fc[:, off].reshape(-1, n, n - 1)
    slack = lhs - rhs.sum(axis=2)
    return SlackBatch(p, lhs, rhs, slack, in_formula_domain(p.q, p.s))


def ckw_batch_slack(data: QubitData) -> np.ndarray:
    """CKW slack, shape (samples, n)."""
    lhs = 2.0 * (1.0 - np.sum(data.spectra**2, axis=2))
    return lhs - np.sum(data.pair_c**2, axis=2)


# --- auxiliary functions ---------------------------------------------------


def _theta_xi(x):
    t = np.sqrt(1.0 - x * x)
    return 1.0 + t, 1.0 - t, t


def _pow0(base, e):
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(base > 0, np.abs(base) ** e, 0.0)


def h_qs(x, y, p):
    """``f(sqrt(x^2 + y^2)) - f(x) - f(y)`` on ``x, y >= 0, x^2 + y^2 <= 1``."""
    p = as_params(p)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    r2 = x * x + y * y
    if np.any(x < -X_TOL) or np.any(y < -X_TOL) or np.any(r2 > 1.0 + X_TOL):
        raise DomainError("h_qs is defined for x, y >= 0 with x^2 + y^2 <= 1")
    return f_qs(np.sqrt(np.minimum(r2, 1.0)), p) - f_qs(x, p) - f_qs(y, p)


def _unit(x, closed: bool):
    x = np.asarray(x, dtype=float)
    bad = (x < 0) | (x > 1) if closed else (x <= 0) | (x >= 1)
    if np.any(bad):
        raise DomainError(f"argument must lie in {'[0, 1]' if closed else '(0, 1)'}")
    return x


def g_qs(x, p):
    p = as_params(p)
    th, xi, _ = _theta_xi(_unit(x, closed=False))
    return -((th**p.q + _pow0(xi, p.q)) ** p.s)


def n_qs(x, p):
    p = as_params(p)
    th, xi, t = _theta_xi(_unit(x, closed=False))
    q, s = p.q, p.s
    return q * s / t * (th**q + _pow0(xi, q)) ** (s - 1) * (th ** (q - 1) - _pow0(xi, q - 1))


def m_qs(x, p):
    p = as_params(p)
    x = _unit(x, closed=True)
    th, xi, _ = _theta_xi(x)
    q, s = p.q, p.s
    return (th**q + _pow0(xi, q)) ** s + ((1 + x) ** q + _pow0(1 - x, q)) ** s - 2.0**s - 2.0 ** (q * s)


def l_qs(x, p):
    """``h_qs(x, sqrt(1 - x^2))`` in closed form."""
    p = as_params(p)
    if p.s == 0 or p.q == 1:
        raise DomainError("l_qs needs q != 1 and s != 0")
    return m_qs(x, p) / ((p.q - 1) * p.s * 2.0 ** (p.q * p.s))


def b_fn(q, s):
    return 2.0 ** (np.asarray(q) * s - 1) - (np.asarray(q) - 1) * 2.0 ** np.asarray(s)


def lemma_fn(name: str, args, p=None):
    """Evaluate one of ``g, n, m, l`` at ``args`` (x values) or ``b`` at (q, s)."""
    table = {"g": g_qs, "n": n_qs, "m": m_qs, "l": l_qs}
    if name == "b":
        q, s = args
        return b_fn(q, s)
    if name not in table:
        raise DomainError(f"unknown function {name!r}")
    return table[name](args, p)


# --- sweeps and searches ---------------------------------------------------


def polar_grid(resolution: int = 200, max_radius: float = 1.0):
    """Points ``(r cos t, r sin t)``, r in (0, max_radius], t in [0, pi/2]."""
    r = max_radius * np.arange(1, resolution + 1) / resolution
    t = np.linspace(0.0, np.pi / 2, resolution)
    rr, tt = np.meshgrid(r, t, indexing="ij")
    x = np.clip(rr * np.cos(tt), 0.0, None)
    y = np.clip(rr * np.sin(tt), 0.0, None)
    return x, y


def min_h(p, resolution: int = 200, max_radius: float = 1.0):
    """Minimum of h_qs over the polar grid, with its location."""
    x, y = polar_grid(resolution, max_radius)
    h = h_qs(x, y, p)
    k = np.unravel_index(np.argmin(h), h.shape)
    return float(h[k]), float(x[k]), float(y[k])


def grid_values(lo: float, hi: float, res: float) -> np.ndarray:
    """``lo + k res`` for ``k = 1 .. round((hi - lo) / res)``."""
    count = int(round((hi - lo) / res))
    return np.round(lo + res * np.arange(1, count + 1), 10)


def domain_sweep(
    q_range=(0.0, 6.0),
    s_range=(0.0, 2.0),
    resolution: float = 0.1,
    xy_grid_resolution: int = 200,
    state_samples: int = 200,
    seed=0,
) -> list[DomainCell]:
    """Scan (q, s) cells for negativity of h_qs and of the monogamy slack.

    Cells sit at ``lo + k * resolution`` (k >= 1) on each axis. The slack uses
    the two-qubit closed form everywhere, so outside its proven region it is
    indicative only.
    """
    if resolution <= 0 or xy_grid_resolution <= 0 or state_samples < 0:
        raise DomainError("resolutions must be positive")
    data = haar_qubit_data(3, state_samples, seed) if state_samples else None
    x, y = polar_grid(xy_grid_resolution)
    cells = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NonCertifiedWarning)
        for q in grid_values(*q_range, resolution):
            for s in grid_values(*s_range, resolution):
                p = MeasureParams(q, s)
                mh = float(np.min(h_qs(x, y, p)))
                ms = float(np.min(batch_slack(data, p, force=True).slack)) if data is not None else float("nan")
                cells.append(DomainCell(float(q), float(s), in_monogamy_domain(q, s), mh, ms))
    return cells


def violation_search(p, attempts: int = 1000, seed=0, resolution: int = 200):
    """Look for a pure three-qubit state violating unified monogamy.

    First the most negative point of h_qs on the polar grid is turned into a
    W-class witness (W-class states realize every pair of pairwise
    concurrences in the domain); if h shows no violation, ``attempts``
    Haar-random states are tried.

    Returns
    -------
    (PureState, MonogamyReport) or None
    """
    p = as_params(p)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NonCertifiedWarning)
        h, x0, y0 = min_h(p, resolution)
        if h < -1e-8:
            psi = w_state_for(x0, y0)
            return psi, monogamy_slack(psi, 0, p, force=True, state_id="w-witness")
        if attempts <= 0:
            return None
        data = haar_qubit_data(3, attempts, seed)
        batch = batch_slack(data, p, force=True)
        k, focus = batch.argmin()
        if batch.slack[k, focus] < -SLACK_TOL:
            psi = PureState.from_vector(data.vectors[k], (2, 2, 2))
            return psi, monogamy_slack(psi, focus, p, force=True, state_id=k)
    return None


def mixed_monogamy_hunt(rho, focus: int = 0, p=(2.0, 1.0), force: bool = False, **roof_kwargs):
    """Monogamy check for a mixed multi-qubit state.

    The left side is a numerical roof (an upper bound), the right side is
    exact, so only ``slack < -1e-6`` is conclusive.

    Returns
    -------
    (MonogamyReport, bool)
        The report and whether it certifies a violation.
    """
    from .roof import roof_minimize, unified_measure

    if any(d != 2 for d in rho.dims):
        raise DomainError("monogamy needs an all-qubit state")
    p = check_formula_domain(p, force)
    n = len(rho.dims)
    roof = roof_minimize(rho, unified_measure(p, [focus]), **roof_kwargs)
    rhs = [
        unified_ent_two_qubit(partial_trace(rho, {focus, i}), p, force=True)
        for i in range(n)
        if i != focus
    ]
    rep = MonogamyReport(roof.value, tuple(rhs), p, n, focus, None, "unified-mixed", False)
    return rep, rep.slack < -HARD_VIOLATION
