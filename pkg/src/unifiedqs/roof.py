"""Numerical convex-roof extension of pure-state entanglement measures.

Every ensemble of ``m`` pure states realizing ``rho`` is obtained from the
eigen-ensemble through an ``m x r`` isometry (r = rank). The roof is
searched over ``m x m`` unitaries whose first ``r`` columns supply that
isometry, with derivative-free local searches started from Haar-random
points. The result is always an achievable ensemble average, hence an
upper bound on the true roof.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import minimize

from .entropy import as_params, unified_from_spectrum
from .linalg import (
    DensityMatrix,
    DomainError,
    PureState,
    _check_indices,
    as_density,
    herm_eig,
    random_unitary,
)

RANK_TOL = 1e-12
DROP_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class Ensemble:
    members: tuple  # of (probability, PureState)

    @property
    def probabilities(self) -> np.ndarray:
        return np.array([p for p, _ in self.members])

    def mixture(self) -> np.ndarray:
        d = self.members[0][1].amplitudes.size
        out = np.zeros((d, d), dtype=complex)
        for p, psi in self.members:
            out += p * np.outer(psi.amplitudes, psi.amplitudes.conj())
        return out

    def __len__(self):
        return len(self.members)


@dataclass(frozen=True, eq=False)
class RoofResult:
    value: float
    ensemble: Ensemble
    restarts_used: int
    converged: bool
    history: tuple = ()  # best value after each restart


class SpectralMeasure:
    """Pure-state functional of the reduced spectrum on ``side``.

    ``spectrum_fn`` maps an array of spectra (last axis) to values. The
    ``batch`` method evaluates many state vectors at once and is what the
    optimizer uses.
    """

    def __init__(self, spectrum_fn: Callable, side: Sequence[int] = (0,), name: str = ""):
        self.spectrum_fn = spectrum_fn
        self.side = tuple(side)
        self.name = name
        self._plans: dict = {}

    def _plan(self, dims):
        plan = self._plans.get(dims)
        if plan is None:
            side = _check_indices(self.side, len(dims))
            rest = [i for i in range(len(dims)) if i not in side]
            if not rest:
                raise DomainError("bipartition is trivial: one side is empty")
            ds = int(np.prod([dims[i] for i in side]))
            dr = int(np.prod([dims[i] for i in rest]))
            perm = [0] + [1 + i for i in side] + [1 + i for i in rest]
            plan = self._plans[dims] = (perm, ds, dr)
        return plan

    def batch(self, vectors: np.ndarray, dims) -> np.ndarray:
        dims = tuple(dims)
        perm, ds, dr = self._plan(dims)
        n = vectors.shape[0]
        t = np.transpose(vectors.reshape((n,) + dims), perm).reshape(n, ds, dr)
        if dr < ds:
            t = np.swapaxes(t, 1, 2)
            ds = dr
        if ds == 2:
            # closed-form spectrum of a 2x2 Hermitian matrix
            g = np.einsum("nir,njr->nij", t, t.conj())
            a, d = g[:, 0, 0].real, g[:, 1, 1].real
            disc = np.sqrt((a - d) ** 2 + 4 * np.abs(g[:, 0, 1]) ** 2)
            lam = np.empty((n, 2))
            lam[:, 0] = 0.5 * (a + d - disc)
            lam[:, 1] = 0.5 * (a + d + disc)
        else:
            lam = np.linalg.eigvalsh(t @ np.conj(np.swapaxes(t, 1, 2)))
        lam = np.where(lam < 1e-14, 0.0, lam)
        return np.asarray(self.spectrum_fn(lam), dtype=float)

    def __call__(self, psi: PureState) -> float:
        return float(self.batch(psi.amplitudes[None, :], psi.dims)[0])

    def __repr__(self):
        return f"SpectralMeasure({self.name or self.spectrum_fn!r}, side={self.side})"


def concurrence_measure(side=(0,)) -> SpectralMeasure:
    return SpectralMeasure(
        lambda lam: np.sqrt(np.maximum(0.0, 2.0 * (1.0 - (lam * lam).sum(axis=-1)))),
        side,
        "concurrence",
    )


def tangle_measure(side=(0,)) -> SpectralMeasure:
    return SpectralMeasure(
        lambda lam: np.maximum(0.0, 2.0 * (1.0 - (lam * lam).sum(axis=-1))),
        side,
        "tangle",
    )


def unified_measure(p, side=(0,)) -> SpectralMeasure:
    p = as_params(p)
    return SpectralMeasure(
        lambda lam: unified_from_spectrum(lam, p), side, f"unified({p.q:g},{p.s:g})"
    )


def _evaluate(measure, vectors: np.ndarray, dims) -> np.ndarray:
    if hasattr(measure, "batch"):
        return measure.batch(vectors, dims)
    return np.array([measure(PureState(v, dims)) for v in vectors])


def _eigen_basis(rho: DensityMatrix) -> np.ndarray:
    """Columns ``sqrt(lam_i) e_i`` for the numerically nonzero eigenvalues."""
    w, v = herm_eig(rho.matrix)
    r = int(np.sum(w > RANK_TOL))
    return v[:, :r] * np.sqrt(w[:r])


def _members(basis: np.ndarray, iso: np.ndarray):
    phi = iso @ basis.T
    p = np.einsum("ij,ij->i", phi.real, phi.real) + np.einsum("ij,ij->i", phi.imag, phi.imag)
    keep = p > DROP_TOL
    return p[keep], phi[keep] / np.sqrt(p[keep])[:, None]


def ensemble_from_isometry(rho, v) -> Ensemble:
    """Ensemble ``|phi_j> = sum_i v_ji sqrt(lam_i) |e_i>`` for an isometry ``v``.

    ``v`` has shape ``(m, r)`` with r the numerical rank of ``rho`` and
    orthonormal columns. Members of weight <= 1e-12 are dropped.
    """
    rho = as_density(rho)
    basis = _eigen_basis(rho)
    v = np.asarray(v, dtype=complex)
    r = basis.shape[1]
    if v.ndim != 2 or v.shape[1] != r or v.shape[0] < r:
        raise DomainError(f"isometry must have shape (m >= {r}, {r}), got {v.shape}")
    if np.max(np.abs(v.conj().T @ v - np.eye(r))) > 1e-9:
        raise DomainError("columns of v are not orthonormal")
    p, states = _members(basis, v)
    p = p / p.sum()
    return Ensemble(tuple((float(pj), PureState(s, rho.dims)) for pj, s in zip(p, states)))


_TRIU_CACHE: dict = {}


def _offdiag_generator(theta: np.ndarray, m: int) -> np.ndarray:
    """Hermitian matrix with zero diagonal from ``m(m-1)`` real parameters."""
    iu = _TRIU_CACHE.get(m)
    if iu is None:
        iu = _TRIU_CACHE[m] = np.triu_indices(m, 1)
    k = len(iu[0])
    h = np.zeros((m, m), dtype=complex)
    h[iu] = theta[:k] + 1j * theta[k:]
    return h + h.conj().T


def _expi(h: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(h)
    return (v * np.exp(1j * w)) @ v.conj().T


def _local_search(objective, u0, m, step, tol, max_evals, min_step):
    """Nelder-Mead in a moving chart ``U = exp(iH(theta)) U0``.

    After each simplex run the chart is recentred at the incumbent; the
    simplex size is shrunk when a run fails to improve by more than tol.
    Left-multiplication by diagonal phases leaves the ensemble invariant,
    so the generator has no diagonal.
    """
    u = u0
    best = objective(u)
    n = m * (m - 1)
    evals = 1
    while step > min_step and evals < max_evals:
        simplex = np.vstack([np.zeros(n), step * np.eye(n)])
        res = minimize(
            lambda th: objective(_expi(_offdiag_generator(th, m)) @ u),
            np.zeros(n),
            method="Nelder-Mead",
            options={
                "initial_simplex": simplex,
                "xatol": step * 1e-3,
                "fatol": tol * 0.1,
                "maxfev": min(200 * n, max_evals - evals),
            },
        )
        evals += res.nfev
        if res.fun < best - tol:
            u = _expi(_offdiag_generator(res.x, m)) @ u
            best = objective(u)
        else:
            if res.fun < best:
                u = _expi(_offdiag_generator(res.x, m)) @ u
                best = objective(u)
            step *= 0.2
    return u, best, step <= min_step


def roof_minimize(
    rho,
    measure,
    m: int | None = None,
    restarts: int = 20,
    tol: float = 1e-7,
    seed=0,
    patience: int | None = None,
    max_evals: int = 20000,
    min_step: float = 1e-6,
) -> RoofResult:
    """Upper bound on the convex roof of ``measure`` at ``rho``.

    Parameters
    ----------
    rho : DensityMatrix
    measure : callable
        Pure-state functional; a ``batch(vectors, dims)`` method is used when
        present (see :class:`SpectralMeasure`).
    m : int, optional
        Ensemble size, at least the rank. Defaults to ``rank**2``.
    restarts : int
        Maximum number of Haar-random starting points.
    tol : float
        Minimum decrease counted as progress.
    seed : int
        Restart ``k`` draws its start from ``default_rng([seed, k])``, so the
        best-so-far sequence is the same whatever ``restarts`` is.
    patience : int, optional
        Stop after this many consecutive restarts without progress.
    max_evals : int
        Objective-evaluation budget per restart.
    min_step : float
        A local search ends once its simplex size shrinks below this.
    """
    rho = as_density(rho)
    basis = _eigen_basis(rho)
    r = basis.shape[1]
    dims = rho.dims

    if r == 1:
        psi = PureState.from_vector(basis[:, 0], dims)
        val = float(_evaluate(measure, psi.amplitudes[None, :], dims)[0])
        return RoofResult(val, Ensemble(((1.0, psi),)), 0, True, (val,))

    m = r * r if m is None else int(m)
    if m < r:
        raise DomainError(f"ensemble size {m} is below the rank {r}")

    def objective(u):
        p, states = _members(basis, u[:, :r])
        return float(np.dot(p, _evaluate(measure, states, dims)))

    best_u, best_val, best_conv = None, np.inf, False
    history = []
    stale = 0
    used = 0
    for k in range(restarts):
        used = k + 1
        u0 = random_unitary(m, np.random.default_rng([int(seed), k]))
        u, val, conv = _local_search(objective, u0, m, 0.5, tol, max_evals, min_step)
        if val < best_val - tol:
            stale = 0
        else:
            stale += 1
        if val < best_val:
            best_u, best_val, best_conv = u, val, conv
        history.append(best_val)
        if patience is not None and stale >= patience:
            break

    p, states = _members(basis, best_u[:, :r])
    vals = _evaluate(measure, states, dims)
    value = float(np.dot(p, vals))
    ens = Ensemble(tuple((float(pj), PureState.from_vector(s, dims)) for pj, s in zip(p, states)))
    return RoofResult(value, ens, used, best_conv, tuple(history))
