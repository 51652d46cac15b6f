import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unifiedqs import (
    DensityMatrix,
    DomainError,
    PureState,
    herm_eig,
    kron,
    mat_pow,
    mat_sqrt,
    partial_trace,
    random_haar_pure,
    random_mixed,
    random_unitary,
    schmidt,
    w_class_state,
)
from unifiedqs.linalg import random_haar_batch

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]])
PHI_PLUS = PureState(np.array([1, 0, 0, 1]) / np.sqrt(2), (2, 2))
W_SYM = w_class_state(*(3**-0.5,) * 3)

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def test_kron_identity_and_diagonal():
    np.testing.assert_array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))
    np.testing.assert_array_equal(kron(np.diag([1, 0]), np.diag([0, 1])), np.diag([0, 1, 0, 0]))


def test_kron_sigma_y():
    yy = kron(SY, SY)
    np.testing.assert_allclose(np.fliplr(yy).diagonal(), [-1, 1, 1, -1])
    np.testing.assert_allclose(yy - np.diag(np.fliplr(yy).diagonal())[:, ::-1], 0)


def test_basis_ordering_first_subsystem_most_significant():
    v = np.zeros(8)
    v[0b100] = 1
    rho_a = partial_trace(PureState(v, (2, 2, 2)), [0]).matrix
    np.testing.assert_allclose(rho_a, np.diag([0, 1]))


def test_partial_trace_bell_is_maximally_mixed():
    np.testing.assert_allclose(partial_trace(PHI_PLUS, [0]).matrix, np.eye(2) / 2, atol=1e-15)


def test_partial_trace_of_product():
    a = random_mixed((2,), 2, seed=1).matrix
    b = random_mixed((3,), 3, seed=2).matrix
    rho = DensityMatrix(np.kron(a, b), (2, 3))
    np.testing.assert_allclose(partial_trace(rho, [0]).matrix, a, atol=1e-14)
    np.testing.assert_allclose(partial_trace(rho, [1]).matrix, b, atol=1e-14)


def test_partial_trace_symmetric_w():
    np.testing.assert_allclose(partial_trace(W_SYM, [0]).matrix, np.diag([2 / 3, 1 / 3]), atol=1e-15)


def test_partial_trace_pure_and_mixed_paths_agree():
    psi = random_haar_pure((2, 3, 2), seed=5)
    for keep in ([0], [1], [2], [0, 2], [1, 2]):
        np.testing.assert_allclose(
            partial_trace(psi, keep).matrix, partial_trace(psi.density(), keep).matrix, atol=1e-14
        )


@pytest.mark.parametrize("keep", [[], [3], [-1]])
def test_partial_trace_rejects_bad_indices(keep):
    with pytest.raises(DomainError):
        partial_trace(random_haar_pure((2, 2, 2), seed=0), keep)


@settings(max_examples=40, deadline=None)
@given(seed=seeds, dims=st.lists(st.integers(2, 3), min_size=2, max_size=3), data=st.data())
def test_partial_trace_preserves_trace(seed, dims, data):
    rho = random_mixed(dims, data.draw(st.integers(1, 4)), seed=seed)
    keep = data.draw(st.sets(st.integers(0, len(dims) - 1), min_size=1))
    assert np.trace(partial_trace(rho, keep).matrix).real == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize(
    "h,expected",
    [(np.diag([0.25, 0.75]), [0.75, 0.25]), (np.eye(2) / 2, [0.5, 0.5]), (SX, [1, -1])],
)
def test_herm_eig_examples(h, expected):
    w, _ = herm_eig(h)
    np.testing.assert_allclose(w, expected, atol=1e-15)


@settings(max_examples=40, deadline=None)
@given(seed=seeds, n=st.integers(1, 16))
def test_herm_eig_reconstructs(seed, n):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    h = a + a.conj().T
    w, v = herm_eig(h)
    assert np.all(np.diff(w) <= 0)
    assert np.linalg.norm(v @ np.diag(w) @ v.conj().T - h) <= 1e-9


def test_herm_eig_rejects_non_hermitian():
    with pytest.raises(DomainError):
        herm_eig(np.array([[0, 1], [0, 0]]))


def test_mat_pow_examples():
    np.testing.assert_allclose(mat_pow(np.eye(2) / 2, 2), np.eye(2) / 4, atol=1e-15)
    np.testing.assert_allclose(mat_pow(np.diag([1.0, 0.0]), 0.5), np.diag([1, 0]), atol=1e-15)
    for lam, q in [(0.3, 2.5), (0.9, 0.7), (0.5, 3.0)]:
        tr = np.trace(mat_pow(np.diag([lam, 1 - lam]), q)).real
        assert tr == pytest.approx(lam**q + (1 - lam) ** q, rel=1e-13)


def test_mat_sqrt_examples():
    np.testing.assert_allclose(mat_sqrt(np.eye(2) / 4), np.eye(2) / 2, atol=1e-15)
    np.testing.assert_allclose(mat_sqrt(np.diag([0.0, 1.0])), np.diag([0, 1]), atol=1e-15)
    np.testing.assert_allclose(mat_sqrt(np.diag([0.36, 0.64])), np.diag([0.6, 0.8]), atol=1e-15)


@pytest.mark.parametrize("q", [0.0, -1.0])
def test_mat_pow_rejects_nonpositive_power(q):
    with pytest.raises(DomainError):
        mat_pow(np.eye(2) / 2, q)


@settings(max_examples=30, deadline=None)
@given(seed=seeds, rank=st.integers(1, 4))
def test_mat_pow_identities(seed, rank):
    rho = random_mixed((2, 2), rank, seed=seed)
    np.testing.assert_allclose(mat_pow(rho, 1), rho.matrix, atol=1e-12)
    r = mat_sqrt(rho)
    np.testing.assert_allclose(r @ r, rho.matrix, atol=1e-9)


def test_schmidt_examples():
    np.testing.assert_allclose(schmidt(PHI_PLUS, [0]), [0.5, 0.5], atol=1e-15)
    np.testing.assert_allclose(schmidt(PureState(np.array([1, 0, 0, 0]), (2, 2)), [0]), [1, 0], atol=1e-15)
    np.testing.assert_allclose(schmidt(W_SYM, [0]), [2 / 3, 1 / 3], atol=1e-15)


@pytest.mark.parametrize("side", [[], [0, 1]])
def test_schmidt_rejects_trivial_cut(side):
    with pytest.raises(DomainError):
        schmidt(PHI_PLUS, side)


@settings(max_examples=30, deadline=None)
@given(seed=seeds)
def test_schmidt_invariant_under_local_unitaries(seed):
    psi = random_haar_pure((2, 3), seed=seed)
    u = np.kron(random_unitary(2, seed=seed + 1), random_unitary(3, seed=seed + 2))
    moved = PureState.from_vector(u @ psi.amplitudes, (2, 3))
    np.testing.assert_allclose(schmidt(moved, [0]), schmidt(psi, [0]), atol=1e-10)
    assert schmidt(psi, [0]).sum() == pytest.approx(1.0, abs=1e-10)


def test_random_haar_pure_normalized_and_deterministic():
    a = random_haar_pure((2, 2, 2), seed=42)
    b = random_haar_pure((2, 2, 2), seed=42)
    np.testing.assert_array_equal(a.amplitudes, b.amplitudes)
    assert np.linalg.norm(a.amplitudes) == pytest.approx(1.0, abs=1e-12)
    assert not np.allclose(a.amplitudes, random_haar_pure((2, 2, 2), seed=43).amplitudes)


def test_haar_mean_purity():
    # For Haar states on d_A x d_B, E[Tr rho_A^2] = (d_A + d_B) / (d_A d_B + 1).
    vecs = random_haar_batch((2, 2), 100_000, seed=0).reshape(-1, 2, 2)
    red = vecs @ vecs.conj().transpose(0, 2, 1)
    purity = np.einsum("kij,kji->k", red, red).real
    assert purity.mean() == pytest.approx(4 / 5, abs=0.01)


def test_random_mixed_properties():
    assert herm_eig(random_mixed((2, 2), 1, seed=3).matrix)[0][0] == pytest.approx(1.0, abs=1e-10)
    for seed in range(100):
        assert random_mixed((2, 2), 4, seed=seed).eigvals().min() > 0


@pytest.mark.parametrize("rank", [0, 5])
def test_random_mixed_rejects_rank(rank):
    with pytest.raises(DomainError):
        random_mixed((2, 2), rank, seed=0)


def test_state_validation():
    with pytest.raises(DomainError):
        PureState(np.array([1.0, 1.0]), (2,))
    with pytest.raises(DomainError):
        DensityMatrix(np.diag([0.5, 0.6]), (2,))
    with pytest.raises(DomainError):
        DensityMatrix(np.diag([1.2, -0.2]), (2,))
    with pytest.raises(DomainError):
        DensityMatrix(np.array([[0.5, 0.1], [0.2, 0.5]]), (2,))
