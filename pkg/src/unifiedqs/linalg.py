"""Dense complex linear algebra and quantum-state primitives.

Basis convention: subsystem 0 is the most significant digit of the flat
index, so ``|a_0 a_1 ... a_{n-1}>`` lives at ``sum_k a_k * prod_{j>k} d_j``.
This is the ordering produced by ``np.kron`` and by C-order reshapes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

NORM_TOL = 1e-12
HERMITIAN_TOL = 1e-10
PSD_TOL = 1e-10
TRACE_TOL = 1e-10
EIG_CLAMP = 1e-14


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of an operation."""


def _as_dims(dims) -> tuple[int, ...]:
    if np.isscalar(dims):
        dims = (int(dims),)
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 1 for d in dims):
        raise DomainError(f"invalid subsystem dimensions {dims}")
    return dims


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized state vector together with its subsystem dimensions."""

    amplitudes: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        dims = _as_dims(self.dims)
        if amps.size != int(np.prod(dims)):
            raise DomainError(
                f"{amps.size} amplitudes do not match dims {dims}"
            )
        norm = np.vdot(amps, amps).real
        if abs(norm - 1.0) > NORM_TOL:
            raise DomainError(f"state is not normalized (norm^2 = {norm!r})")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "dims", dims)

    @classmethod
    def from_vector(cls, vector, dims) -> "PureState":
        """Build a state from an arbitrary nonzero vector, normalizing it."""
        v = np.asarray(vector, dtype=complex).reshape(-1)
        n = np.linalg.norm(v)
        if n == 0:
            raise DomainError("zero vector cannot be normalized")
        return cls(v / n, dims)

    @property
    def n_subsystems(self) -> int:
        return len(self.dims)

    def density(self) -> "DensityMatrix":
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()), self.dims)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace matrix."""

    matrix: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=complex)
        dims = _as_dims(self.dims)
        d = int(np.prod(dims))
        if mat.shape != (d, d):
            raise DomainError(f"matrix shape {mat.shape} does not match dims {dims}")
        if np.max(np.abs(mat - mat.conj().T)) > HERMITIAN_TOL:
            raise DomainError("density matrix is not Hermitian")
        tr = np.trace(mat).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise DomainError(f"density matrix has trace {tr!r}")
        # symmetrize away the sub-tolerance antihermitian part
        mat = 0.5 * (mat + mat.conj().T)
        if np.linalg.eigvalsh(mat)[0] < -PSD_TOL:
            raise DomainError("density matrix is not positive semidefinite")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_subsystems(self) -> int:
        return len(self.dims)

    def eigvals(self) -> np.ndarray:
        return herm_eig(self.matrix)[0]


def as_density(state) -> DensityMatrix:
    """Promote a PureState to its projector; pass DensityMatrix through."""
    if isinstance(state, DensityMatrix):
        return state
    if isinstance(state, PureState):
        return state.density()
    raise TypeError(f"expected PureState or DensityMatrix, got {type(state).__name__}")


def kron(a, b) -> np.ndarray:
    """Kronecker product of two matrices."""
    return np.kron(np.asarray(a), np.asarray(b))


def kron_all(mats: Iterable) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for m in mats:
        out = np.kron(out, m)
    return out


def _check_indices(indices, n: int) -> tuple[int, ...]:
    idx = sorted({int(i) for i in indices})
    if not idx:
        raise DomainError("subsystem index set is empty")
    if idx[0] < 0 or idx[-1] >= n:
        raise DomainError(f"subsystem indices {idx} out of range for {n} subsystems")
    return tuple(idx)


def partial_trace(state, keep: Iterable[int]) -> DensityMatrix:
    """Reduced state on the subsystems listed in ``keep`` (0-based).

    The kept subsystems appear in ascending index order in the result.
    """
    dims = state.dims
    keep = _check_indices(keep, len(dims))
    traced = [i for i in range(len(dims)) if i not in keep]
    kdims = tuple(dims[i] for i in keep)
    dk = int(np.prod(kdims))

    if isinstance(state, PureState):
        # avoids forming the full projector
        psi = state.amplitudes.reshape(dims)
        psi = np.transpose(psi, list(keep) + traced).reshape(dk, -1)
        red = psi @ psi.conj().T
    else:
        n = len(dims)
        rho = as_density(state).matrix.reshape(dims + dims)
        perm = list(keep) + traced
        rho = np.transpose(rho, perm + [n + p for p in perm])
        dt = int(np.prod([dims[i] for i in traced])) if traced else 1
        rho = rho.reshape(dk, dt, dk, dt)
        red = np.einsum("ajbj->ab", rho)
    return DensityMatrix(red, kdims)


def herm_eig(h) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix, eigenvalues descending.

    Returns ``(w, v)`` with ``h = v @ diag(w) @ v.conj().T``.
    """
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {h.shape}")
    if np.max(np.abs(h - h.conj().T), initial=0.0) > HERMITIAN_TOL:
        raise DomainError("matrix is not Hermitian")
    w, v = np.linalg.eigh(0.5 * (h + h.conj().T))
    return w[::-1].copy(), v[:, ::-1].copy()


def mat_pow(rho, q: float) -> np.ndarray:
    """Fractional power of a PSD matrix, with tiny eigenvalues clamped to 0."""
    if q <= 0:
        raise DomainError(f"matrix power requires q > 0, got {q}")
    mat = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho)
    w, v = herm_eig(mat)
    w = np.where(w < EIG_CLAMP, 0.0, w)
    wq = np.zeros_like(w)
    pos = w > 0
    wq[pos] = w[pos] ** q
    return (v * wq) @ v.conj().T


def mat_sqrt(rho) -> np.ndarray:
    return mat_pow(rho, 0.5)


def _validate_cut(dims: Sequence[int], side) -> tuple[tuple[int, ...], tuple[int, ...]]:
    side = _check_indices(side, len(dims))
    rest = tuple(i for i in range(len(dims)) if i not in side)
    if not rest:
        raise DomainError("bipartition is trivial: one side is empty")
    return side, rest


def schmidt(psi: PureState, side: Iterable[int]) -> np.ndarray:
    """Squared Schmidt coefficients across ``side | rest``, descending.

    The returned vector has length ``min(d_side, d_rest)``.
    """
    side, rest = _validate_cut(psi.dims, side)
    d_side = int(np.prod([psi.dims[i] for i in side]))
    d_rest = int(np.prod([psi.dims[i] for i in rest]))
    small = side if d_side <= d_rest else rest
    lam = herm_eig(partial_trace(psi, small).matrix)[0]
    return np.clip(lam, 0.0, None)


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_haar_pure(dims, seed=None) -> PureState:
    """Haar-random pure state: normalized vector of i.i.d. complex Gaussians.

    ``seed`` may be an int (any 64-bit value), a sequence of ints, or a
    ``numpy.random.Generator``; integer seeds give reproducible output.
    """
    dims = _as_dims(dims)
    if any(d < 2 for d in dims):
        raise DomainError(f"each subsystem needs dimension >= 2, got {dims}")
    rng = _rng(seed)
    d = int(np.prod(dims))
    z = complex_gaussian(rng, (d,))
    return PureState.from_vector(z, dims)


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    """Standard complex Gaussians with real and imaginary parts interleaved.

    Interleaving makes a shorter draw a prefix of a longer one.
    """
    return rng.standard_normal(tuple(shape) + (2,)).view(complex)[..., 0]


def random_haar_batch(dims, count: int, seed=None) -> np.ndarray:
    """``count`` Haar-random state vectors as rows of a ``(count, d)`` array.

    Row k does not depend on ``count``.
    """
    dims = _as_dims(dims)
    rng = _rng(seed)
    d = int(np.prod(dims))
    z = complex_gaussian(rng, (count, d))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def random_unitary(dim: int, seed=None) -> np.ndarray:
    """Haar-random unitary via QR of a complex Ginibre matrix."""
    rng = _rng(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    qmat, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return qmat * ph


def random_mixed(dims, rank: int, seed=None) -> DensityMatrix:
    """Random density matrix of the given rank (induced measure).

    A Haar pure state on ``dim x rank`` is drawn and the rank-dimensional
    ancilla traced out.
    """
    dims = _as_dims(dims)
    d = int(np.prod(dims))
    if not 1 <= rank <= d:
        raise DomainError(f"rank must lie in [1, {d}], got {rank}")
    rng = _rng(seed)
    z = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    z /= np.linalg.norm(z)
    return DensityMatrix(z @ z.conj().T, dims)
