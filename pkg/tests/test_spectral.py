import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from helpers import EX51, EX52, S7
from twodir_moments.discrete import discrete_moment_phi
from twodir_moments.errors import ConditionEError, EigenvalueError, SingularSystemError
from twodir_moments.masks import doubled_mask_at_one
from twodir_moments.spectral import condition_e, eigenvalues, fix_sign, solve, unit_eigvec

EX51_DOUBLED = np.array([[5 - S7, 3 + S7], [3 + S7, 5 - S7]]) / 8


def test_eigenvalues_example_5_1():
    lam = eigenvalues(EX51_DOUBLED)
    np.testing.assert_allclose(lam, EX51["eig"], atol=1e-12)
    assert lam[1].real == pytest.approx(-0.4114378, abs=1e-7)


def test_eigenvalues_identity():
    np.testing.assert_array_equal(eigenvalues(np.eye(3)), [1, 1, 1])


def test_eigenvalues_example_5_2(ex52):
    lam = eigenvalues(doubled_mask_at_one(ex52.scaling))
    np.testing.assert_allclose(lam, sorted(EX52["eig"], reverse=True), atol=1e-12)
    assert round(lam[2].real, 4) == -0.2057
    assert round(lam[3].real, 4) == -0.4114


def test_eigenvalues_rejects_bad_input():
    with pytest.raises(ValueError):
        eigenvalues(np.ones((2, 3)))
    with pytest.raises(ValueError):
        eigenvalues([[np.inf]])


def test_eigenvalue_failure_is_wrapped(monkeypatch):
    def boom(_):
        raise np.linalg.LinAlgError("Eigenvalues did not converge")

    monkeypatch.setattr(np.linalg, "eigvals", boom)
    with pytest.raises(EigenvalueError, match="converge"):
        eigenvalues(np.eye(2))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 6))
def test_eigenvalues_known_spectrum(seed, n):
    rng = np.random.default_rng(seed)
    spectrum = rng.uniform(-2, 2, n)
    spectrum[1:] += np.arange(1, n) * 1e-3  # keep eigenvalues apart
    while True:
        S = rng.normal(size=(n, n))
        if np.linalg.cond(S) < 50:
            break
    A = S @ np.diag(spectrum) @ np.linalg.inv(S)
    lam = eigenvalues(A)
    norm = np.linalg.norm(A, 2)
    for x in lam:
        smin = np.linalg.svd(A - x * np.eye(n), compute_uv=False)[-1]
        assert smin <= 1e-8 * norm
    np.testing.assert_allclose(np.sort(lam.real), np.sort(spectrum), atol=1e-8 * max(1, norm))


def test_condition_e_example_5_1():
    rep = condition_e(EX51_DOUBLED)
    assert rep.satisfied and rep.has_simple_one and rep.spectral_ok
    assert rep.tolerance_used == 1e-9


def test_condition_e_identity_not_simple():
    rep = condition_e(np.eye(2))
    assert not rep.satisfied and not rep.has_simple_one
    assert "not simple" in rep.describe()


def test_condition_e_no_one():
    rep = condition_e(0.5 * np.eye(2))
    assert not rep.satisfied and not rep.has_simple_one
    assert "no eigenvalue 1" in rep.describe()


def test_condition_e_other_on_unit_circle():
    rep = condition_e(np.diag([1.0, -1.0]))
    assert rep.has_simple_one and not rep.spectral_ok and not rep.satisfied


def test_unit_eigvec_example_5_1():
    np.testing.assert_allclose(unit_eigvec(EX51_DOUBLED), np.array([1, 1]) / np.sqrt(2), atol=1e-14)


def test_unit_eigvec_example_5_2(ex52):
    v = unit_eigvec(discrete_moment_phi(ex52.scaling, 0).total)
    np.testing.assert_allclose(v, [1, 0], atol=1e-14)


def test_unit_eigvec_diag():
    np.testing.assert_allclose(unit_eigvec(np.diag([1, 0.3])), [1, 0])
    np.testing.assert_allclose(unit_eigvec(-np.diag([-1, 0.3])), [1, 0])


def test_unit_eigvec_requires_simple_one():
    with pytest.raises(ConditionEError, match="Condition E prerequisite failed"):
        unit_eigvec(np.eye(2))
    with pytest.raises(ConditionEError, match="Condition E prerequisite failed"):
        unit_eigvec(0.5 * np.eye(2))


def test_fix_sign_ties_lowest_index():
    np.testing.assert_array_equal(fix_sign(np.array([-1.0, 1.0])), [1.0, -1.0])
    np.testing.assert_array_equal(fix_sign(np.array([0.2, -0.9])), [-0.2, 0.9])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 6))
def test_unit_eigvec_properties(seed, n):
    rng = np.random.default_rng(seed)
    mu = rng.uniform(-0.9, 0.9, n)
    mu[0] = 1.0
    S = rng.normal(size=(n, n)) + 3 * np.eye(n)
    A = S @ np.diag(mu) @ np.linalg.inv(S)
    v = unit_eigvec(A)
    assert np.linalg.norm(v) == pytest.approx(1.0, abs=1e-14)
    assert np.linalg.norm(A @ v - v) <= 1e-9
    top = np.abs(v).max()
    assert v[np.flatnonzero(np.abs(v) >= top * (1 - 1e-12))[0]] > 0


def test_solve_trivial():
    b = np.array([3.0, -1.0, 2.0])
    np.testing.assert_array_equal(solve(np.eye(3), b), b)
    np.testing.assert_allclose(solve([[2, 0], [0, 4]], [1, 1]), [0.5, 0.25])


def test_solve_example_5_1_first_moment(ex51):
    M1 = discrete_moment_phi(ex51.scaling, 1).doubled
    m0 = np.array([1.0, 1.0]) / np.sqrt(2)
    m1 = solve(2 * np.eye(2) - EX51_DOUBLED, M1 @ m0)
    np.testing.assert_allclose(m1, (7 * np.sqrt(2) - np.sqrt(14)) / 12 * np.array([1, -1]), atol=1e-14)


def test_solve_singular():
    with pytest.raises(SingularSystemError, match="singular system") as info:
        solve([[1.0, 2.0], [2.0, 4.0]], [1.0, 1.0])
    assert info.value.pivot < 1e-12
    with pytest.raises(SingularSystemError):
        solve(np.zeros((2, 2)), [1.0, 1.0])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 8))
def test_solve_residual(seed, n):
    rng = np.random.default_rng(seed)
    A = rng.normal(size=(n, n)) + n * np.eye(n)
    b = rng.normal(size=n)
    x = solve(A, b)
    assert np.linalg.norm(A @ x - b) <= 1e-10 * (np.linalg.norm(A) * np.linalg.norm(x) + np.linalg.norm(b))
