"""Triangular Lagrange elements: basis, exact integration and elemental matrices."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import (
    ORDERS,
    n_nodes,
    node_barycentric,
    node_lattice,
    shape_derivatives,
    shape_gradients,
    shape_values,
)
from .geometry import ElementGeometry, area_coordinates
from .quadrature import (
    KINDS,
    elemental_by_quadrature,
    integrate_monomial,
    triangle_gauss_rule,
)
from .tables import (
    elemental_Ax,
    elemental_Ay,
    elemental_B,
    elemental_Cxy,
    elemental_Dx,
    elemental_Dy,
)


@dataclass(frozen=True)
class ElementMatrices:
    """The six local matrices of one element.

    ``B``, ``Ax``, ``Ay`` are symmetric; ``Cxy``, ``Dx``, ``Dy`` are not.
    """

    B: np.ndarray
    Ax: np.ndarray
    Ay: np.ndarray
    Cxy: np.ndarray
    Dx: np.ndarray
    Dy: np.ndarray

    def __getitem__(self, kind: str) -> np.ndarray:
        if kind not in KINDS:
            raise KeyError(kind)
        return getattr(self, kind)


def element_matrices(geom: ElementGeometry, order: int = 3) -> ElementMatrices:
    return ElementMatrices(
        B=elemental_B(geom, order),
        Ax=elemental_Ax(geom, order),
        Ay=elemental_Ay(geom, order),
        Cxy=elemental_Cxy(geom, order),
        Dx=elemental_Dx(geom, order),
        Dy=elemental_Dy(geom, order),
    )


__all__ = [
    "ORDERS", "KINDS", "ElementGeometry", "ElementMatrices", "area_coordinates",
    "element_matrices", "elemental_Ax", "elemental_Ay", "elemental_B",
    "elemental_Cxy", "elemental_Dx", "elemental_Dy", "elemental_by_quadrature",
    "integrate_monomial", "n_nodes", "node_barycentric", "node_lattice",
    "shape_derivatives", "shape_gradients", "shape_values", "triangle_gauss_rule",
]
