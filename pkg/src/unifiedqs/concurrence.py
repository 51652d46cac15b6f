"""Concurrence, tangle and entanglement of formation for qubit systems."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .entropy import binary_entropy
from .linalg import (
    EIG_CLAMP,
    DensityMatrix,
    DomainError,
    PureState,
    _validate_cut,
    as_density,
    partial_trace,
)

SIGMA_Y = np.array([[0, -1j], [1j, 0]])
YY = np.kron(SIGMA_Y, SIGMA_Y)


@dataclass(frozen=True)
class ConcurrenceResult:
    value: float
    lambdas: tuple = field(default=())


def _two_qubit(rho) -> DensityMatrix:
    rho = as_density(rho)
    if rho.dim != 4 or rho.dims not in ((2, 2), (4,)):
        raise DomainError(f"expected a two-qubit state, got dims {rho.dims}")
    return rho


def concurrence_pure(psi: PureState, side=(0,)) -> float:
    """Concurrence ``sqrt(2 (1 - Tr rho_A^2))`` of a pure state.

    ``side`` lists the subsystems forming one half of the cut; one half must
    be a single qubit.
    """
    side, rest = _validate_cut(psi.dims, side)
    d_side = int(np.prod([psi.dims[i] for i in side]))
    d_rest = int(np.prod([psi.dims[i] for i in rest]))
    if d_side == 2:
        red = partial_trace(psi, side).matrix
    elif d_rest == 2:
        red = partial_trace(psi, rest).matrix
    else:
        raise DomainError("neither side of the cut is a single qubit")
    purity = np.real(np.trace(red @ red))
    return float(np.sqrt(max(0.0, 2.0 * (1.0 - purity))))


def spin_flip(rho) -> np.ndarray:
    """``(Y x Y) rho* (Y x Y)`` in the computational basis."""
    mat = _two_qubit(rho).matrix
    return YY @ mat.conj() @ YY


def wootters_lambdas(rhos: np.ndarray) -> np.ndarray:
    """Descending lambdas for a stack of 4x4 density matrices.

    With ``rho = X X^dagger`` (``X = V sqrt(w)`` from the eigendecomposition)
    the lambdas are the singular values of the complex symmetric matrix
    ``X^T (Y x Y) X``. This avoids square roots of eigenvalues that are zero
    up to rounding, which would otherwise cost about eight digits.
    """
    rhos = np.asarray(rhos, dtype=complex)
    w, v = np.linalg.eigh(rhos)
    x = v * np.sqrt(np.where(w < EIG_CLAMP, 0.0, w))[..., None, :]
    tau = np.swapaxes(x, -1, -2) @ YY @ x
    return np.linalg.svd(tau, compute_uv=False)


def concurrence_from_lambdas(lam: np.ndarray) -> np.ndarray:
    lam = np.asarray(lam)
    return np.maximum(0.0, lam[..., 0] - lam[..., 1] - lam[..., 2] - lam[..., 3])


def concurrence_wootters(rho) -> ConcurrenceResult:
    """Wootters' closed-form concurrence of a two-qubit state."""
    mat = _two_qubit(rho).matrix
    lam = wootters_lambdas(mat[None])[0]
    value = float(min(1.0, concurrence_from_lambdas(lam)))
    return ConcurrenceResult(value, tuple(float(x) for x in lam))


def concurrence(rho) -> float:
    """Concurrence of a two-qubit state (pure or mixed)."""
    return concurrence_wootters(rho).value


def tangle_two_qubit(rho) -> float:
    return concurrence_wootters(rho).value ** 2


def eof_from_concurrence(c) -> np.ndarray:
    """``H((1 - sqrt(1 - c^2)) / 2)`` in nats."""
    c = np.clip(np.asarray(c, dtype=float), 0.0, 1.0)
    return binary_entropy(0.5 * (1.0 - np.sqrt(1.0 - c * c)))


def eof_two_qubit(rho) -> float:
    return float(eof_from_concurrence(concurrence_wootters(rho).value))
