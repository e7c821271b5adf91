import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import linalg as sla

from wavefem.eigen import (GeneralizedEigenProblem, ModeSet, filter_modes,
                           householder_tridiagonalize, solve_gen_sym, symmetric_eig,
                           tridiagonal_ql)
from wavefem.errors import ConvergenceError, DefinitenessError


def random_pencil(n, seed):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((n, n))
    A = A + A.T
    R = rng.standard_normal((n, n))
    B = R @ R.T + n * np.eye(n)
    return A, B


def inertia_below(A, B, sigma):
    """Number of eigenvalues below sigma from the inertia of A - sigma B."""
    _, D, _ = sla.ldl(A - sigma * B)
    return int(np.sum(np.linalg.eigvalsh(D) < 0))


def test_diagonal_and_two_by_two():
    ms = solve_gen_sym(np.diag([3.0, 1.0, 2.0]), np.diag([1.0, 1.0, 2.0]))
    np.testing.assert_allclose(ms.lambdas, [1.0, 1.0, 3.0])
    ms = solve_gen_sym(np.array([[2.0, 1.0], [1.0, 2.0]]))
    np.testing.assert_allclose(ms.lambdas, [1.0, 3.0])
    assert len(solve_gen_sym(np.zeros((0, 0)))) == 0


def test_random_pencil_against_lapack_and_inertia():
    A, B = random_pencil(50, 0)
    ms = solve_gen_sym(A, B)
    ref = sla.eigh(A, B, eigvals_only=True)
    np.testing.assert_allclose(ms.lambdas, ref, atol=1e-12 * np.abs(ref).max())
    assert ms.residuals.max() < 1e-12
    V = ms.vectors
    np.testing.assert_allclose(V.T @ B @ V, np.eye(50), atol=1e-12)
    for k in (5, 20, 37):
        mid = 0.5 * (ms.lambdas[k] + ms.lambdas[k + 1])
        assert inertia_below(A, B, mid) == k + 1


def test_tridiagonalization_is_similarity():
    A, _ = random_pencil(12, 1)
    d, e, Q = householder_tridiagonalize(A)
    T = np.diag(d) + np.diag(e, 1) + np.diag(e, -1)
    np.testing.assert_allclose(Q @ T @ Q.T, A, atol=1e-12)
    np.testing.assert_allclose(Q.T @ Q, np.eye(12), atol=1e-13)


def test_ql_on_known_tridiagonal():
    n = 20
    w, _ = tridiagonal_ql(2 * np.ones(n), -np.ones(n - 1))
    exact = 2 - 2 * np.cos(np.arange(1, n + 1) * np.pi / (n + 1))
    np.testing.assert_allclose(np.sort(w), exact, atol=1e-13)


def test_ql_iteration_cap():
    with pytest.raises(ConvergenceError):
        tridiagonal_ql(np.arange(6.0), np.ones(5), max_iter=1)


def test_symmetric_eig_matches_eigh():
    A, _ = random_pencil(30, 2)
    w, Z = symmetric_eig(A)
    np.testing.assert_allclose(w, np.linalg.eigvalsh(A), atol=1e-12)
    np.testing.assert_allclose(A @ Z, Z * w, atol=1e-11)


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 25), st.integers(0, 10_000), st.floats(0.1, 10.0))
def test_permutation_and_scaling_invariance(n, seed, scale):
    A, B = random_pencil(n, seed)
    base = solve_gen_sym(A, B).lambdas
    p = np.random.default_rng(seed).permutation(n)
    perm = solve_gen_sym(A[np.ix_(p, p)], B[np.ix_(p, p)]).lambdas
    scaled = solve_gen_sym(scale * A, B).lambdas
    tol = 1e-11 * np.abs(base).max()
    np.testing.assert_allclose(perm, base, atol=tol)
    np.testing.assert_allclose(scaled, scale * base, atol=scale * tol)


def test_methods_agree():
    A, B = random_pencil(40, 5)
    a = solve_gen_sym(A, B)
    b = solve_gen_sym(A, B, method="lapack")
    np.testing.assert_allclose(a.lambdas, b.lambdas, atol=1e-12 * np.abs(a.lambdas).max())


def test_errors():
    A, _ = random_pencil(4, 3)
    with pytest.raises(DefinitenessError):
        solve_gen_sym(A, -np.eye(4))
    with pytest.raises(ValueError):
        GeneralizedEigenProblem(np.triu(np.ones((3, 3))), np.eye(3))
    with pytest.raises(ValueError):
        solve_gen_sym(A, np.eye(4), method="qr")


def _modes(lams):
    lam = np.array(lams, dtype=float)
    return ModeSet(lam, np.eye(len(lam)), np.zeros(len(lam)))


def test_filter_modes_examples():
    ms = _modes([1e-12, 2e-12, 4.0, 4.0000001, 9.0, 16.0])
    np.testing.assert_allclose(filter_modes(ms), [2.0, 3.0, 4.0], rtol=1e-7)
    assert filter_modes(ms, zero_cutoff=10.0) == [4.0]
    assert filter_modes(_modes([])) == []


def test_filter_modes_groups_by_first_member():
    ms = _modes(np.array([1.0, 1.00008, 1.00016]) ** 2)
    # the third value is 1.6e-4 from the first, so it starts a new group
    assert len(filter_modes(ms, zero_cutoff=0.0)) == 2
