"""Quadratic and cubic Lagrange shape functions on triangles.

Local node numbering (counterclockwise, as used throughout the package):

order 3 (10 nodes)
    1-3  vertices
    4, 5 on edge 1-2 (4 nearer vertex 1)
    6, 7 on edge 2-3 (6 nearer vertex 2)
    8, 9 on edge 3-1 (8 nearer vertex 3)
    10   centroid (bubble)

order 2 (6 nodes)
    1-3 vertices, then the midpoints of edges 1-2, 2-3 and 3-1.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

ORDERS = (2, 3)

# Cubic edge functions have the form 9/2 La Lb (3 La - 1): (a, b) per node 4..9.
_CUBIC_EDGE = ((0, 1), (1, 0), (1, 2), (2, 1), (2, 0), (0, 2))
_QUAD_EDGE = ((0, 1), (1, 2), (2, 0))


def n_nodes(order: int) -> int:
    check_order(order)
    return (order + 1) * (order + 2) // 2


def check_order(order: int) -> None:
    if order not in ORDERS:
        raise ValueError(f"element order must be 2 or 3, got {order!r}")


@lru_cache(maxsize=None)
def _node_pattern(order: int) -> np.ndarray:
    rows = list(np.eye(3))
    if order == 3:
        for a, b in _CUBIC_EDGE:
            L = np.zeros(3)
            L[a], L[b] = 2.0 / 3.0, 1.0 / 3.0
            rows.append(L)
        rows.append(np.full(3, 1.0 / 3.0))
    else:
        for a, b in _QUAD_EDGE:
            L = np.zeros(3)
            L[a] = L[b] = 0.5
            rows.append(L)
    out = np.array(rows)
    out.setflags(write=False)
    return out


def node_barycentric(order: int) -> np.ndarray:
    """Area coordinates of the local nodes, shape ``(n, 3)``."""
    check_order(order)
    return _node_pattern(order)


def node_lattice(order: int) -> np.ndarray:
    """Integer lattice form ``order * L`` of the local nodes."""
    return np.rint(node_barycentric(order) * order).astype(int)


def shape_values(order: int, L) -> np.ndarray:
    """Evaluate ``N_1..N_n`` at area coordinates ``L``.

    ``L`` has shape ``(3,)`` or ``(m, 3)``; the result has shape ``(n,)`` or
    ``(m, n)``.
    """
    check_order(order)
    L = np.asarray(L, dtype=float)
    L1, L2, L3 = L[..., 0], L[..., 1], L[..., 2]
    if order == 3:
        cols = [0.5 * Li * (3 * Li - 1) * (3 * Li - 2) for Li in (L1, L2, L3)]
        for a, b in _CUBIC_EDGE:
            La, Lb = L[..., a], L[..., b]
            cols.append(4.5 * La * Lb * (3 * La - 1))
        cols.append(27.0 * L1 * L2 * L3)
    else:
        cols = [Li * (2 * Li - 1) for Li in (L1, L2, L3)]
        cols += [4.0 * L[..., a] * L[..., b] for a, b in _QUAD_EDGE]
    return np.stack(cols, axis=-1)


def shape_derivatives(order: int, L) -> np.ndarray:
    """Partial derivatives ``dN_i/dL_k``, shape ``(..., n, 3)``.

    The three area coordinates are treated as independent variables.
    """
    check_order(order)
    L = np.asarray(L, dtype=float)
    n = n_nodes(order)
    out = np.zeros(L.shape[:-1] + (n, 3))
    if order == 3:
        for i in range(3):
            Li = L[..., i]
            out[..., i, i] = 0.5 * (27 * Li ** 2 - 18 * Li + 2)
        for node, (a, b) in enumerate(_CUBIC_EDGE, start=3):
            La, Lb = L[..., a], L[..., b]
            out[..., node, a] = 4.5 * Lb * (6 * La - 1)
            out[..., node, b] = 4.5 * La * (3 * La - 1)
        out[..., 9, 0] = 27.0 * L[..., 1] * L[..., 2]
        out[..., 9, 1] = 27.0 * L[..., 0] * L[..., 2]
        out[..., 9, 2] = 27.0 * L[..., 0] * L[..., 1]
    else:
        for i in range(3):
            out[..., i, i] = 4 * L[..., i] - 1
        for node, (a, b) in enumerate(_QUAD_EDGE, start=3):
            out[..., node, a] = 4.0 * L[..., b]
            out[..., node, b] = 4.0 * L[..., a]
    return out


def shape_gradients(order: int, geom, L) -> np.ndarray:
    """Cartesian gradients of the shape functions, shape ``(..., n, 2)``.

    Uses ``dL_k/dx = b_k / (2 area)`` and ``dL_k/dy = c_k / (2 area)``.
    """
    dN = shape_derivatives(order, L)
    J = np.column_stack([geom.b, geom.c]) / (2.0 * geom.area)  # (3, 2)
    return dN @ J
