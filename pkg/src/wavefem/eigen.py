"""Dense generalized symmetric-definite eigensolver and mode filtering.

``A v = lam B v`` is reduced to standard form with the Cholesky factor
``B = L L^T``; ``C = L^-1 A L^-T`` is brought to tridiagonal form with
Householder reflections and diagonalized by implicit-shift QL iteration.
Eigenvectors are mapped back with ``v = L^-T u`` and are therefore
B-orthonormal.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import linalg as sla

from .errors import ConvergenceError, DefinitenessError

METHODS = ("householder-ql", "lapack")


@dataclass(frozen=True)
class GeneralizedEigenProblem:
    A: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        A = np.asarray(self.A, dtype=float)
        B = np.asarray(self.B, dtype=float)
        if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape != B.shape:
            raise ValueError(f"A and B must be square and of equal shape, got {A.shape}, {B.shape}")
        for name, M in (("A", A), ("B", B)):
            scale = max(np.abs(M).max(initial=0.0), np.finfo(float).tiny)
            if np.abs(M - M.T).max(initial=0.0) > 1e-10 * scale:
                raise ValueError(f"{name} is not symmetric")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    @property
    def n(self) -> int:
        return self.A.shape[0]


@dataclass(frozen=True)
class ModeSet:
    """Solution of a generalized eigenproblem, eigenvalues ascending.

    ``residuals[i] = |A v - lam B v| / ((|A| + |lam| |B|) |v|)`` with matrix
    1-norms and vector 2-norms.
    """

    lambdas: np.ndarray
    vectors: np.ndarray
    residuals: np.ndarray
    cutoff: float = 0.0
    labels: dict = field(default_factory=dict)

    @property
    def k0(self) -> np.ndarray:
        """``sqrt(lambda)`` for eigenvalues above the cutoff."""
        lam = self.lambdas[self.lambdas > self.cutoff]
        return np.sqrt(lam)

    def __len__(self):
        return len(self.lambdas)


def householder_tridiagonalize(C: np.ndarray):
    """Reduce symmetric ``C`` to tridiagonal form ``C = Q T Q^T``.

    Returns ``(d, e, Q)`` with ``d`` the diagonal, ``e`` the sub-diagonal
    (length ``n - 1``) and ``Q`` orthogonal.
    """
    A = np.array(C, dtype=float)
    n = A.shape[0]
    Q = np.eye(n)
    for k in range(n - 2):
        x = A[k + 1:, k]
        tail = np.linalg.norm(x[1:])
        if tail == 0.0:
            continue
        alpha = -math.copysign(math.hypot(x[0], tail), x[0])
        v = x.copy()
        v[0] -= alpha
        v /= np.linalg.norm(v)
        S = A[k + 1:, k + 1:]
        p = S @ v
        w = p - (v @ p) * v
        S -= 2.0 * (np.outer(v, w) + np.outer(w, v))
        A[k + 1:, k] = 0.0
        A[k, k + 1:] = 0.0
        A[k + 1, k] = A[k, k + 1] = alpha
        Qs = Q[:, k + 1:]
        Qs -= 2.0 * np.outer(Qs @ v, v)
    d = np.diag(A).copy()
    e = np.diag(A, -1).copy()
    return d, e, Q


def tridiagonal_ql(d, e, Z=None, max_iter: int | None = None):
    """Implicit-shift QL iteration on a symmetric tridiagonal matrix.

    Parameters
    ----------
    d : (n,) diagonal
    e : (n-1,) sub-diagonal
    Z : (n, n) optional matrix whose columns are rotated along, normally
        the Householder ``Q`` so the result holds eigenvectors of the
        original matrix.
    max_iter : total QL sweeps allowed, default ``50 n``.

    Returns
    -------
    (w, Z) eigenvalues (unsorted) and rotated ``Z`` (or ``None``).
    """
    n = len(d)
    d = [float(v) for v in d]
    e = [float(v) for v in e] + [0.0]
    Zt = None if Z is None else np.array(Z, dtype=float).T.copy()
    max_iter = 50 * n if max_iter is None else max_iter
    eps = np.finfo(float).eps
    sweeps = 0
    for l in range(n):
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= eps * dd:
                    break
                m += 1
            if m == l:
                break
            sweeps += 1
            if sweeps > max_iter:
                raise ConvergenceError(f"QL iteration did not converge in {max_iter} sweeps")
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                if Zt is not None:
                    zi = Zt[i].copy()
                    Zt[i] *= c
                    Zt[i] -= s * Zt[i + 1]
                    Zt[i + 1] *= c
                    Zt[i + 1] += s * zi
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return np.array(d), (None if Zt is None else Zt.T)


def symmetric_eig(C: np.ndarray):
    """Eigen-decomposition of a symmetric matrix, eigenvalues ascending."""
    d, e, Q = householder_tridiagonalize(C)
    w, Z = tridiagonal_ql(d, e, Q)
    order = np.argsort(w, kind="stable")
    return w[order], Z[:, order]


def _residuals(A, B, lam, V):
    nA = np.abs(A).sum(axis=0).max(initial=0.0)
    nB = np.abs(B).sum(axis=0).max(initial=0.0)
    R = A @ V - (B @ V) * lam
    denom = (nA + np.abs(lam) * nB) * np.linalg.norm(V, axis=0)
    denom = np.where(denom > 0, denom, 1.0)
    return np.linalg.norm(R, axis=0) / denom


def solve_gen_sym(A, B=None, tol: float = 1e-9, method: str = "householder-ql") -> ModeSet:
    """All eigenpairs of ``A v = lam B v`` (``B`` SPD), ascending.

    Raises
    ------
    DefinitenessError
        If ``B`` has no Cholesky factorization.
    ConvergenceError
        If the QL iteration stalls or a residual exceeds ``tol``.
    """
    if isinstance(A, GeneralizedEigenProblem):
        prob = A
    else:
        prob = GeneralizedEigenProblem(A, np.eye(len(A)) if B is None else B)
    if method not in METHODS:
        raise ValueError(f"unknown eigensolver method {method!r}; expected one of {METHODS}")
    A, B = prob.A, prob.B
    if prob.n == 0:
        return ModeSet(np.zeros(0), np.zeros((0, 0)), np.zeros(0))
    try:
        L = np.linalg.cholesky(B)
    except np.linalg.LinAlgError:
        raise DefinitenessError("B is not positive definite (Cholesky failed)") from None

    if method == "lapack":
        lam, V = sla.eigh(A, B)
    else:
        X = sla.solve_triangular(L, A, lower=True)
        C = sla.solve_triangular(L, X.T, lower=True)
        C = 0.5 * (C + C.T)
        lam, U = symmetric_eig(C)
        V = sla.solve_triangular(L.T, U, lower=False)

    res = _residuals(A, B, lam, V)
    if np.any(res > tol):
        worst = int(np.argmax(res))
        raise ConvergenceError(
            f"eigenpair {worst} residual {res[worst]:.3e} exceeds tolerance {tol:g}")
    return ModeSet(lambdas=lam, vectors=V, residuals=res)


def default_cutoff(lambdas) -> float:
    lam = np.asarray(lambdas)
    return 1e-6 * float(lam.max()) if lam.size else 0.0


def filter_modes(modes: ModeSet, zero_cutoff: float | None = None,
                 merge_tol: float = 1e-4) -> list[float]:
    """Distinct ``k0`` values above the near-zero cluster.

    Eigenvalues ``<= zero_cutoff`` (default ``1e-6 * max(lambda)``) are
    dropped; the remaining ``k0 = sqrt(lambda)`` are grouped when each is
    within ``merge_tol`` (relative) of the group's first member, and each
    group is reported by its mean.
    """
    cutoff = default_cutoff(modes.lambdas) if zero_cutoff is None else zero_cutoff
    lam = np.sort(np.asarray(modes.lambdas))
    k = np.sqrt(lam[lam > cutoff])
    out: list[float] = []
    group: list[float] = []
    for val in k:
        if group and abs(val - group[0]) <= merge_tol * group[0]:
            group.append(float(val))
            continue
        if group:
            out.append(float(np.mean(group)))
        group = [float(val)]
    if group:
        out.append(float(np.mean(group)))
    return out


def divergence_ratios(modes: ModeSet, G: np.ndarray, A: np.ndarray) -> np.ndarray:
    """``v^T G v / v^T A v`` per mode; large values flag spurious modes.

    ``G`` is a divergence Gram matrix (see
    :func:`wavefem.assembly.assemble_divergence`).
    """
    V = modes.vectors
    num = np.einsum("ij,ij->j", V, G @ V)
    den = np.einsum("ij,ij->j", V, A @ V)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(den > 0, num / np.where(den > 0, den, 1.0), np.inf)
    return out


__all__ = ["GeneralizedEigenProblem", "METHODS", "ModeSet", "default_cutoff",
           "divergence_ratios", "filter_modes", "householder_tridiagonalize",
           "solve_gen_sym", "symmetric_eig", "tridiagonal_ql"]
