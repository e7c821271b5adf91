"""Triangle coefficients and area (barycentric) coordinates."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DegenerateElementError

# Relative area threshold below which a triangle is treated as degenerate.
DEGENERATE_RTOL = 1e-14


@dataclass(frozen=True)
class ElementGeometry:
    """Linear-interpolation coefficients of one triangle.

    ``L_j = (a_j + b_j x + c_j y) / (2 area)`` for ``j = 1, 2, 3``.
    """

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    area: float

    @classmethod
    def from_vertices(cls, vertices) -> "ElementGeometry":
        """Build the coefficients from three counterclockwise vertices.

        Raises
        ------
        DegenerateElementError
            If the signed area is not positive, or is below
            ``1e-14 * (longest edge)**2``.
        """
        xy = np.asarray(vertices, dtype=float)
        if xy.shape != (3, 2):
            raise ValueError(f"expected 3 vertices of shape (3, 2), got {xy.shape}")
        x, y = xy[:, 0], xy[:, 1]
        a = np.array([x[1] * y[2] - y[1] * x[2],
                      x[2] * y[0] - y[2] * x[0],
                      x[0] * y[1] - y[0] * x[1]])
        b = np.array([y[1] - y[2], y[2] - y[0], y[0] - y[1]])
        c = np.array([x[2] - x[1], x[0] - x[2], x[1] - x[0]])
        area = 0.5 * (b[0] * c[1] - b[1] * c[0])
        longest = max(float(b[j] ** 2 + c[j] ** 2) for j in range(3))
        if not np.isfinite(area) or area <= DEGENERATE_RTOL * longest:
            raise DegenerateElementError(
                f"triangle {xy.tolist()} has area {area:g}; vertices must be "
                "distinct, non-collinear and counterclockwise")
        for arr in (a, b, c):
            arr.setflags(write=False)
        return cls(a=a, b=b, c=c, area=float(area))

    @property
    def vertices(self) -> np.ndarray:
        """Recover the vertex coordinates (3, 2) from the coefficients."""
        # vertex k is where L = e_k; solve the 3x3 linear system once
        M = np.column_stack([self.a, self.b, self.c]) / (2.0 * self.area)
        rhs = np.eye(3)
        sol = np.linalg.solve(M, rhs)  # columns: (1, x, y) of each vertex
        return sol[1:, :].T

    @property
    def diameter(self) -> float:
        return float(np.sqrt(np.max(self.b ** 2 + self.c ** 2)))


def area_coordinates(geom: ElementGeometry, p) -> np.ndarray:
    """Area coordinates ``(L1, L2, L3)`` of point(s) ``p``.

    ``p`` may be a single ``(x, y)`` pair or an array of shape ``(m, 2)``.
    """
    p = np.asarray(p, dtype=float)
    x, y = p[..., 0], p[..., 1]
    L = (geom.a + np.multiply.outer(x, geom.b) + np.multiply.outer(y, geom.c))
    return L / (2.0 * geom.area)
