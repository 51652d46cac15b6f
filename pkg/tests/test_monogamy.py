import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unifiedqs import (
    DomainError,
    MeasureParams,
    NonCertifiedWarning,
    OutOfDomainError,
    PureState,
    ckw_slack,
    concurrence,
    concurrence_pure,
    domain_sweep,
    f_qs,
    ghz_state,
    h_qs,
    lemma_fn,
    monogamy_slack,
    partial_trace,
    random_haar_pure,
    violation_search,
    w_class_state,
)
from unifiedqs.monogamy import (
    batch_slack,
    ckw_batch_slack,
    grid_values,
    haar_qubit_data,
    min_h,
    mixed_monogamy_hunt,
    qubit_data,
    w_state_for,
)

W_SYM = w_class_state(*(3**-0.5,) * 3)
seeds = st.integers(0, 2**32 - 1)


def random_w_coefficients(rng):
    z = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    return z / np.linalg.norm(z)


def test_w_class_layout():
    psi = w_class_state(0.6, 0.0, 0.8)
    np.testing.assert_allclose(psi.amplitudes[[0b100, 0b001, 0b010]], [0.6, 0.0, 0.8])
    np.testing.assert_array_equal(w_class_state(1, 0, 0).amplitudes, np.eye(8)[0b100])
    with pytest.raises(DomainError):
        w_class_state(1, 1, 0)


def test_w_class_concurrences():
    # a|100> + b|001> + c|010>: C_A(BC) = 2|a| sqrt(|b|^2 + |c|^2),
    # C_AB = 2|a||c| and C_AC = 2|a||b|.
    rng = np.random.default_rng(0)
    for _ in range(20):
        a, b, c = random_w_coefficients(rng)
        psi = w_class_state(a, b, c)
        assert concurrence_pure(psi, [0]) == pytest.approx(2 * abs(a) * np.hypot(abs(b), abs(c)), abs=1e-12)
        assert concurrence(partial_trace(psi, [0, 1])) == pytest.approx(2 * abs(a) * abs(c), abs=1e-12)
        assert concurrence(partial_trace(psi, [0, 2])) == pytest.approx(2 * abs(a) * abs(b), abs=1e-12)


def test_concurrence_itself_is_not_monogamous_on_w_class():
    rng = np.random.default_rng(1)
    for _ in range(50):
        a, b, c = random_w_coefficients(rng)
        psi = w_class_state(a, b, c)
        whole = concurrence_pure(psi, [0])
        pairs = concurrence(partial_trace(psi, [0, 1])) + concurrence(partial_trace(psi, [0, 2]))
        assert whole < pairs


@pytest.mark.parametrize("x0,y0", [(0.3, 0.4), (0.6, 0.8), (1.0, 0.0), (0.0, 0.5), (np.sqrt(0.5), np.sqrt(0.5))])
def test_w_state_for_hits_target_concurrences(x0, y0):
    psi = w_state_for(x0, y0)
    assert concurrence(partial_trace(psi, [0, 1])) == pytest.approx(x0, abs=1e-9)
    assert concurrence(partial_trace(psi, [0, 2])) == pytest.approx(y0, abs=1e-9)


def test_w_state_for_rejects_unreachable():
    with pytest.raises(DomainError):
        w_state_for(0.8, 0.8)


def test_ghz():
    np.testing.assert_allclose(ghz_state(2).amplitudes, [1 / np.sqrt(2), 0, 0, 1 / np.sqrt(2)])
    g = ghz_state(3)
    assert concurrence_pure(g, [0]) == pytest.approx(1.0, abs=1e-14)
    for pair in ([0, 1], [0, 2], [1, 2]):
        assert concurrence(partial_trace(g, pair)) == pytest.approx(0.0, abs=1e-14)
    with pytest.raises(DomainError):
        ghz_state(1)


def test_monogamy_examples():
    rep = monogamy_slack(ghz_state(3), 0, (2, 1))
    assert rep.lhs == pytest.approx(0.5, abs=1e-14)
    np.testing.assert_allclose(rep.rhs_terms, [0, 0], atol=1e-14)
    assert rep.slack == pytest.approx(0.5, abs=1e-14)
    assert monogamy_slack(W_SYM, 0, (2, 1)).slack == pytest.approx(0.0, abs=1e-10)
    product = PureState(np.eye(8)[0], (2, 2, 2))
    rep = monogamy_slack(product, 0, (2, 1))
    assert rep.lhs == 0.0 and rep.slack == pytest.approx(0.0, abs=1e-15)


def test_report_slack_recomputes():
    rep = monogamy_slack(random_haar_pure((2, 2, 2, 2), seed=4), 2, (3, 1), state_id=7)
    assert rep.slack == pytest.approx(rep.lhs - sum(rep.rhs_terms), abs=1e-12)
    assert len(rep.rhs_terms) == 3
    d = rep.as_dict()
    assert d["state_id"] == 7 and d["focus"] == 2 and d["q"] == 3.0


def test_monogamy_out_of_domain():
    with pytest.raises(OutOfDomainError):
        monogamy_slack(W_SYM, 0, (0.5, 2))
    with pytest.warns(NonCertifiedWarning):
        rep = monogamy_slack(W_SYM, 0, (0.5, 2), force=True)
    assert not rep.certified
    with pytest.raises(DomainError):
        monogamy_slack(random_haar_pure((2, 3), seed=0), 0, (2, 1))


def test_symmetric_w_concurrence_slack():
    # At (1/2, 2) the measure is the concurrence itself, so the slack is
    # C_A(BC) - C_AB - C_AC = 2 sqrt2 / 3 - 4 / 3.
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NonCertifiedWarning)
        rep = monogamy_slack(W_SYM, 0, (0.5, 2), force=True)
    assert rep.slack == pytest.approx(2 * np.sqrt(2) / 3 - 4 / 3, abs=1e-12)


def test_ckw_examples():
    assert ckw_slack(W_SYM).slack == pytest.approx(0.0, abs=1e-10)
    assert ckw_slack(ghz_state(3)).slack == pytest.approx(1.0, abs=1e-12)
    assert ckw_slack(W_SYM).params is None


def test_batch_matches_single_state_path():
    data = haar_qubit_data(4, 12, seed=3)
    for p in [(2, 1), (2, 0.5), (2.5, 0.2), (3, 1), (2, 0)]:
        batch = batch_slack(data, p)
        for k in (0, 5, 11):
            psi = PureState(data.vectors[k], (2, 2, 2, 2))
            for focus in range(4):
                single = monogamy_slack(psi, focus, p)
                assert batch.slack[k, focus] == pytest.approx(single.slack, abs=1e-10)
                np.testing.assert_allclose(batch.report(k, focus).rhs_terms, single.rhs_terms, atol=1e-10)
    ckw = ckw_batch_slack(data)
    psi = PureState(data.vectors[2], (2, 2, 2, 2))
    assert ckw[2, 1] == pytest.approx(ckw_slack(psi, 1).slack, abs=1e-10)


def test_haar_data_is_chunk_reproducible():
    a = haar_qubit_data(3, 50, seed=9, chunk=20)
    b = haar_qubit_data(3, 70, seed=9, chunk=20)
    np.testing.assert_array_equal(a.vectors, b.vectors[:50])


@pytest.mark.parametrize("q,s", [(2, 1), (2, 0.5), (2, 0), (3, 1), (2.5, 0.2)])
def test_monte_carlo_in_proved_region(q, s):
    slack3 = batch_slack(haar_qubit_data(3, 10_000, seed=11), (q, s)).slack
    slack4 = batch_slack(haar_qubit_data(4, 1_000, seed=12), (q, s)).slack
    assert slack3.min() >= -1e-9
    assert slack4.min() >= -1e-9


def test_monte_carlo_ckw():
    assert ckw_batch_slack(haar_qubit_data(3, 10_000, seed=13)).min() >= -1e-9


def test_monte_carlo_w_class_saturation():
    rng = np.random.default_rng(2)
    vecs = np.stack([w_class_state(*random_w_coefficients(rng)).amplitudes for _ in range(100)])
    data = qubit_data(vecs, 3)
    assert np.abs(ckw_batch_slack(data)).max() <= 1e-10
    assert np.abs(batch_slack(data, (2, 1)).slack).max() <= 1e-10


def test_violation_just_below_q_two():
    # (1.5, 1) lies inside the two-qubit formula region but outside the
    # proved monogamy region; W-class states violate the inequality there.
    h, x0, y0 = min_h((1.5, 1))
    assert h < -0.03
    psi, rep = violation_search((1.5, 1))
    assert rep.slack == pytest.approx(h, abs=1e-9)
    assert rep.violated and rep.certified


def test_h_examples():
    x = np.linspace(0, 1, 11)
    for p in [(2, 1), (3, 0.5), (1.5, 1), (0.5, 2)]:
        np.testing.assert_allclose(h_qs(x, 0 * x, p), 0, atol=1e-15)
    gx, gy = np.meshgrid(np.linspace(0, 0.7, 30), np.linspace(0, 0.7, 30))
    np.testing.assert_allclose(h_qs(gx, gy, (2, 1)), 0, atol=1e-15)
    r = np.sqrt(2) / 3
    assert h_qs(r, r, (0.5, 2)) == pytest.approx(2 / 3 - 2 * np.sqrt(2) / 3, abs=1e-14)
    with pytest.raises(DomainError):
        h_qs(0.8, 0.8, (2, 1))


def test_lemma_functions():
    x = np.linspace(0, 1, 101)
    xo = x[1:-1]
    for q, s in [(2, 1), (2, 0.5), (2.5, 1.2), (3, 1), (4, 0.75), (6, 0.5)]:
        p = (q, s)
        assert lemma_fn("m", 0.0, p) == pytest.approx(0.0, abs=1e-12)
        assert lemma_fn("m", 1.0, p) == pytest.approx(0.0, abs=1e-12)
        # l is h restricted to the boundary circle x^2 + y^2 = 1
        np.testing.assert_allclose(lemma_fn("l", x, p), h_qs(x, np.sqrt(1 - x**2), p), atol=1e-13)
        t = np.sqrt(1 - xo**2)
        np.testing.assert_allclose(lemma_fn("g", xo, p), -(((1 + t) ** q + (1 - t) ** q) ** s))
    for s in (0.1, 0.5, 1.0):
        np.testing.assert_allclose(lemma_fn("n", xo, (3, s)), 12 * s * (8 - 6 * xo**2) ** (s - 1), rtol=1e-12)
    assert lemma_fn("b", (2, 1)) == 0.0
    assert lemma_fn("b", (3, 1)) == 0.0
    assert lemma_fn("b", (4, 0.5)) < 0


def test_n_is_derivative_of_g():
    # n is the x-derivative of g divided by x.
    x = np.linspace(0.05, 0.95, 19)
    eps = 1e-6
    for p in [(2, 0.5), (3, 1), (2.5, 0.8)]:
        dg = (lemma_fn("g", x + eps, p) - lemma_fn("g", x - eps, p)) / (2 * eps)
        np.testing.assert_allclose(lemma_fn("n", x, p), dg / x, rtol=1e-6)


@pytest.mark.parametrize("name,arg", [("g", 0.0), ("n", 1.0), ("m", 1.2), ("l", -0.1), ("k", 0.5)])
def test_lemma_function_domains(name, arg):
    with pytest.raises(DomainError):
        lemma_fn(name, arg, (2, 1))


def test_grid_values():
    np.testing.assert_allclose(grid_values(0, 6, 0.1), np.round(np.arange(1, 61) * 0.1, 10))
    assert len(grid_values(0, 2, 0.1)) == 20


def test_domain_sweep_small():
    cells = domain_sweep((0, 3), (0, 2), 0.5, 60, 50, seed=0)
    assert len(cells) == 24
    by_qs = {(c.q, c.s): c for c in cells}
    assert by_qs[(2.0, 1.0)].min_h >= -1e-12 and by_qs[(2.0, 1.0)].in_proved_domain
    assert by_qs[(0.5, 2.0)].min_h < -0.1 and not by_qs[(0.5, 2.0)].in_proved_domain
    assert all(c.min_h >= -1e-10 for c in cells if c.in_proved_domain)


def test_violation_search():
    found = violation_search((0.5, 2))
    assert found is not None
    psi, rep = found
    assert rep.violated and not rep.certified
    assert rep.slack == pytest.approx(min_h((0.5, 2))[0], abs=1e-9)
    assert np.count_nonzero(np.abs(psi.amplitudes) > 1e-12) <= 3
    assert violation_search((2, 1), attempts=300) is None
    assert violation_search((3, 1), attempts=300) is None


@settings(max_examples=20, deadline=None)
@given(seed=seeds)
def test_unified_slack_nonnegative_at_quadratic_point(seed):
    psi = random_haar_pure((2, 2, 2), seed=seed)
    for focus in range(3):
        assert monogamy_slack(psi, focus, (2, 1)).slack >= -1e-9


def test_mixed_hunt_is_inconclusive_in_proved_region():
    rho = random_haar_pure((2, 2, 2), seed=0).density()
    mixed = 0.8 * rho.matrix + 0.2 * np.eye(8) / 8
    from unifiedqs import DensityMatrix

    rep, certified = mixed_monogamy_hunt(
        DensityMatrix(mixed, (2, 2, 2)), 0, (2, 1), m=8, restarts=2, tol=1e-6, min_step=1e-2
    )
    assert not certified
    assert rep.slack >= -1e-6
    assert rep.kind == "unified-mixed"
