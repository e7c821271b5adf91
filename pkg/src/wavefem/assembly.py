"""Global matrix assembly for the scalar and vector magnetic-field problems.

The vector unknowns are ordered ``[Hx (N) | Hy (N) | hz (N)]`` where
``hz = -j Hz``, which keeps the whole system real and symmetric even for
gyrotropic permeability

    mu_r = [[mu, 0, j kappa], [0, mu_y, 0], [-j kappa, 0, mu]].

Substituting ``Hz = j hz`` into ``H^* mu_r H`` gives the real quadratic form
``mu Hx^2 + mu_y Hy^2 + mu hz^2 - 2 kappa Hx hz``, i.e. a symmetric coupling
block ``-kappa * M`` between the Hx and hz unknowns.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .element import ElementMatrices, element_matrices
from .errors import ConfigurationError, MaterialError
from .mesh import TriMesh, element_geometry


@dataclass(frozen=True)
class MaterialSpec:
    """Relative permittivity and (optionally gyrotropic) permeability."""

    eps_r: float = 1.0
    mu: float = 1.0
    mu_y: float | None = None
    kappa: float = 0.0

    def __post_init__(self):
        if self.mu_y is None:
            object.__setattr__(self, "mu_y", self.mu)
        vals = (self.eps_r, self.mu, self.mu_y, self.kappa)
        if not all(np.isfinite(v) for v in vals):
            raise MaterialError(f"material parameters must be finite: {self}")
        if self.eps_r <= 0:
            raise MaterialError(f"eps_r must be positive, got {self.eps_r}")
        if self.mu_y <= 0 or self.mu <= abs(self.kappa):
            raise MaterialError(
                f"need mu > |kappa| and mu_y > 0 for a definite mass matrix "
                f"(mu={self.mu}, mu_y={self.mu_y}, kappa={self.kappa})")

    @property
    def is_isotropic(self) -> bool:
        return self.kappa == 0 and self.mu == self.mu_y

    def tensor(self) -> np.ndarray:
        """The complex 3x3 relative permeability tensor."""
        k = self.kappa
        return np.array([[self.mu, 0, 1j * k], [0, self.mu_y, 0], [-1j * k, 0, self.mu]])


@dataclass(frozen=True)
class ScalarSystem:
    """``K = A + beta-weighted mass``, plus stiffness ``A`` and mass ``M`` separately."""

    K: np.ndarray
    A: np.ndarray
    M: np.ndarray


@dataclass(frozen=True)
class VectorSystem:
    """Real symmetric 3N x 3N pencil ``(A, B)`` with ``A v = k0**2 B v``."""

    A: np.ndarray
    B: np.ndarray
    n_nodes: int
    kz: float

    def block(self, which: str, row: int, col: int) -> np.ndarray:
        """Sub-block of ``A`` or ``B``; 0, 1, 2 select Hx, Hy, hz."""
        M = {"A": self.A, "B": self.B}[which]
        N = self.n_nodes
        return M[row * N:(row + 1) * N, col * N:(col + 1) * N]


def scatter_add(global_matrix: np.ndarray, element_nodes, local: np.ndarray,
                block_row: int = 0, block_col: int = 0, block_size: int | None = None):
    """Accumulate ``local`` into ``global_matrix`` in place and return it.

    ``block_row``/``block_col`` select a block of size ``block_size`` (the
    node count by default, inferred as ``global.shape[0]`` for a scalar
    system).
    """
    nodes = np.asarray(element_nodes, dtype=int)
    size = global_matrix.shape[0] if block_size is None else block_size
    if nodes.size and (nodes.min() < 0 or nodes.max() >= size):
        raise IndexError(f"element nodes {nodes.tolist()} out of range for block size {size}")
    rows = block_row * size + nodes
    cols = block_col * size + nodes
    if rows.max(initial=-1) >= global_matrix.shape[0] or cols.max(initial=-1) >= global_matrix.shape[1]:
        raise IndexError("block offset exceeds global matrix dimensions")
    global_matrix[np.ix_(rows, cols)] += local
    return global_matrix


def _per_region(value, tag, name):
    if isinstance(value, Mapping):
        try:
            return value[tag]
        except KeyError:
            raise ConfigurationError(f"no {name} value for region {tag!r}") from None
    return value


def local_matrices(mesh: TriMesh) -> list[ElementMatrices]:
    """Elemental matrices of every element, in element order."""
    return [element_matrices(element_geometry(mesh, e), mesh.order)
            for e in range(mesh.n_elements)]


def assemble_scalar(mesh: TriMesh, alpha_x=1.0, alpha_y=1.0, beta=0.0,
                    mass_weight=1.0) -> ScalarSystem:
    """Assemble ``-d/dx(ax du/dx) - d/dy(ay du/dy) + beta u`` with natural BCs.

    Each coefficient is either a scalar or a mapping from region tag to
    value.  ``M`` carries ``mass_weight`` (default 1); ``K = A + beta M0``
    where ``M0`` is the unweighted mass.
    """
    N = mesh.n_nodes
    K, A, M = np.zeros((N, N)), np.zeros((N, N)), np.zeros((N, N))
    for e, em in enumerate(local_matrices(mesh)):
        tag = mesh.region_id[e]
        ax = _per_region(alpha_x, tag, "alpha_x")
        ay = _per_region(alpha_y, tag, "alpha_y")
        bt = _per_region(beta, tag, "beta")
        w = _per_region(mass_weight, tag, "mass_weight")
        nodes = mesh.element_nodes[e]
        stiff = ax * em.Ax + ay * em.Ay
        scatter_add(A, nodes, stiff)
        scatter_add(K, nodes, stiff + bt * em.B)
        scatter_add(M, nodes, w * em.B)
    return ScalarSystem(K=K, A=A, M=M)


def _material(materials, tag) -> MaterialSpec:
    if isinstance(materials, MaterialSpec):
        return materials
    try:
        mat = materials[tag]
    except KeyError:
        raise ConfigurationError(f"no material for region {tag!r}") from None
    if not isinstance(mat, MaterialSpec):
        mat = MaterialSpec(**mat)
    return mat


def assemble_vector(mesh: TriMesh, materials, kz: float = 0.0) -> VectorSystem:
    """Assemble the ``[Hx, Hy, hz]`` system for propagation constant ``kz``.

    ``materials`` is a :class:`MaterialSpec` for a homogeneous guide or a
    mapping from region tag to :class:`MaterialSpec`.
    """
    if not np.isfinite(kz) or kz < 0:
        raise ValueError(f"kz must be a finite non-negative number, got {kz}")
    N = mesh.n_nodes
    A = np.zeros((3 * N, 3 * N))
    B = np.zeros((3 * N, 3 * N))
    kz2 = kz * kz
    X, Y, Z = 0, 1, 2
    for e, em in enumerate(local_matrices(mesh)):
        mat = _material(materials, mesh.region_id[e])
        nodes = mesh.element_nodes[e]
        s = 1.0 / mat.eps_r

        def add(M, r, c, local):
            scatter_add(M, nodes, local, r, c, N)

        add(A, X, X, s * (em.Ay + kz2 * em.B))
        add(A, Y, Y, s * (em.Ax + kz2 * em.B))
        add(A, Z, Z, s * (em.Ax + em.Ay))
        axy = -s * em.Cxy.T
        add(A, X, Y, axy)
        add(A, Y, X, axy.T)
        if kz:
            ayz = (kz * s) * em.Dy
            add(A, Y, Z, ayz)
            add(A, Z, Y, ayz.T)
            azx = (kz * s) * em.Dx.T
            add(A, Z, X, azx)
            add(A, X, Z, azx.T)

        add(B, X, X, mat.mu * em.B)
        add(B, Y, Y, mat.mu_y * em.B)
        add(B, Z, Z, mat.mu * em.B)
        if mat.kappa:
            add(B, X, Z, -mat.kappa * em.B)
            add(B, Z, X, -mat.kappa * em.B)
    return VectorSystem(A=A, B=B, n_nodes=N, kz=float(kz))


def assemble_divergence(mesh: TriMesh, materials, kz: float = 0.0) -> np.ndarray:
    """Gram matrix ``G`` with ``v^T G v = int (div mu_r H)^2``.

    With ``Hz = j hz`` the divergence of ``mu_r H`` for a ``exp(-j kz z)``
    field is real:
    ``d/dx(mu Hx - kappa hz) + d/dy(mu_y Hy) + kz (mu hz - kappa Hx)``.
    Used to flag spurious (non-solenoidal) eigenvectors.
    """
    N = mesh.n_nodes
    G = np.zeros((3 * N, 3 * N))
    for e, em in enumerate(local_matrices(mesh)):
        mat = _material(materials, mesh.region_id[e])
        nodes = mesh.element_nodes[e]
        # per unknown: coefficients of (d/dx, d/dy, value)
        ops = ((mat.mu, 0.0, -kz * mat.kappa),
               (0.0, mat.mu_y, 0.0),
               (-mat.kappa, 0.0, kz * mat.mu))
        for p, (ap, bp, gp) in enumerate(ops):
            for q, (aq, bq, gq) in enumerate(ops):
                local = (ap * aq * em.Ax + bp * bq * em.Ay + gp * gq * em.B
                         + ap * bq * em.Cxy + bp * aq * em.Cxy.T
                         + ap * gq * em.Dx.T + gp * aq * em.Dx
                         + bp * gq * em.Dy.T + gp * bq * em.Dy)
                scatter_add(G, nodes, local, p, q, N)
    return G


__all__ = ["MaterialSpec", "ScalarSystem", "VectorSystem", "assemble_divergence",
           "assemble_scalar", "assemble_vector", "local_matrices", "scatter_add"]
