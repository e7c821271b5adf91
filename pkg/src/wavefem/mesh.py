"""Structured triangular meshes of rectangles with order-2/3 node numbering."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Sequence

import numpy as np

from .element import ElementGeometry, area_coordinates, n_nodes, node_barycentric, node_lattice
from .element.basis import check_order
from .errors import InvalidArgumentError

DIAGONALS = ("up", "down")


@dataclass(frozen=True, eq=False)
class TriMesh:
    """Triangulated rectangle with global numbering of the Lagrange nodes.

    Attributes
    ----------
    order : int
        Element order, 2 or 3.
    vertices : ndarray, shape (nv, 2)
        Cell-corner coordinates.
    triangles : ndarray, shape (ne, 3)
        Counterclockwise vertex indices into ``vertices``.
    region_id : tuple
        One region tag per triangle.
    element_nodes : ndarray, shape (ne, n)
        Global node indices in local order (vertices, edge nodes, bubble).
    node_coords : ndarray, shape (N, 2)
    boundary_node : ndarray of bool, shape (N,)
        True on the rectangle perimeter.
    """

    order: int
    vertices: np.ndarray
    triangles: np.ndarray
    region_id: tuple
    element_nodes: np.ndarray
    node_coords: np.ndarray
    boundary_node: np.ndarray
    shape: tuple = ()           # (nx, ny) cells
    extent: tuple = ()          # (x0, y0, width, height)
    diagonal: str = "up"

    @property
    def n_elements(self) -> int:
        return len(self.triangles)

    @property
    def n_nodes(self) -> int:
        return len(self.node_coords)

    @property
    def regions(self) -> list:
        """Distinct region tags in first-appearance order."""
        return list(dict.fromkeys(self.region_id))

    def element_vertices(self, e: int) -> np.ndarray:
        return self.vertices[self.triangles[e]]

    def geometry(self, e: int) -> ElementGeometry:
        return element_geometry(self, e)


def _uniform_region(_x, _y):
    return 0


def generate_rect_mesh(width: float, height: float, nx: int, ny: int, order: int = 3,
                       region_fn: Callable[[float, float], Hashable] | None = None,
                       origin: Sequence[float] = (0.0, 0.0),
                       diagonal: str = "up") -> TriMesh:
    """Uniform one-directional triangulation of a rectangle.

    Each of the ``nx * ny`` cells is cut along the same diagonal
    (``"up"``: bottom-left to top-right, ``"down"``: bottom-right to
    top-left).  Global nodes sit on the fine grid obtained by subdividing each
    cell ``order`` times per direction and are numbered row-major (x fastest).

    ``region_fn(xc, yc)`` receives the centroid of each cell and returns the
    tag shared by both triangles of that cell.
    """
    check_order(order)
    if not (np.isfinite(width) and np.isfinite(height)) or width <= 0 or height <= 0:
        raise InvalidArgumentError(f"rectangle dimensions must be positive, got {width} x {height}")
    if int(nx) != nx or int(ny) != ny or nx < 1 or ny < 1:
        raise InvalidArgumentError(f"cell counts must be integers >= 1, got nx={nx}, ny={ny}")
    if diagonal not in DIAGONALS:
        raise InvalidArgumentError(f"diagonal must be one of {DIAGONALS}, got {diagonal!r}")
    nx, ny = int(nx), int(ny)
    region_fn = region_fn or _uniform_region
    x0, y0 = (float(v) for v in origin)
    hx, hy = width / nx, height / ny

    vx = x0 + hx * np.arange(nx + 1)
    vy = y0 + hy * np.arange(ny + 1)
    vertices = np.array([(x, y) for y in vy for x in vx])

    def vid(i, j):
        return j * (nx + 1) + i

    triangles, regions, corner_ints = [], [], []
    for j in range(ny):
        for i in range(nx):
            tag = region_fn(x0 + (i + 0.5) * hx, y0 + (j + 0.5) * hy)
            bl, br, tl, tr = (i, j), (i + 1, j), (i, j + 1), (i + 1, j + 1)
            if diagonal == "up":
                tris = ((bl, br, tr), (bl, tr, tl))
            else:
                tris = ((bl, br, tl), (br, tr, tl))
            for tri in tris:
                triangles.append([vid(*v) for v in tri])
                corner_ints.append(tri)
                regions.append(tag)
    triangles = np.array(triangles, dtype=int)

    # local -> global through integer fine-grid coordinates
    lattice = node_lattice(order)               # (n, 3), entries sum to order
    fnx = order * nx + 1
    corners = np.array(corner_ints, dtype=int)  # (ne, 3, 2) in cell units
    fine = np.einsum("nk,ekd->end", lattice, corners)  # order * L . vertex
    element_nodes = fine[..., 1] * fnx + fine[..., 0]

    fi, fj = np.meshgrid(np.arange(fnx), np.arange(order * ny + 1), indexing="xy")
    fi, fj = fi.ravel(), fj.ravel()
    node_coords = np.column_stack([x0 + fi * (hx / order), y0 + fj * (hy / order)])
    boundary = (fi == 0) | (fi == fnx - 1) | (fj == 0) | (fj == order * ny)

    for arr in (vertices, triangles, element_nodes, node_coords, boundary):
        arr.setflags(write=False)
    return TriMesh(order=order, vertices=vertices, triangles=triangles,
                   region_id=tuple(regions), element_nodes=element_nodes,
                   node_coords=node_coords, boundary_node=boundary,
                   shape=(nx, ny), extent=(x0, y0, float(width), float(height)),
                   diagonal=diagonal)


def element_geometry(mesh: TriMesh, e: int) -> ElementGeometry:
    """Coefficients ``a, b, c`` and area of element ``e``."""
    if not 0 <= e < mesh.n_elements:
        raise IndexError(f"element index {e} out of range [0, {mesh.n_elements})")
    return ElementGeometry.from_vertices(mesh.element_vertices(e))


def element_node_coords(geom: ElementGeometry, vertices, order: int = 3) -> np.ndarray:
    """Cartesian positions of the local nodes, shape ``(n, 2)``."""
    del geom  # validated by construction; positions follow from the vertices
    return node_barycentric(order) @ np.asarray(vertices, dtype=float)


def locate(mesh: TriMesh, points, tol: float = 1e-12):
    """Element index and area coordinates for each point.

    Points outside the mesh get element ``-1``.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    elem = np.full(len(pts), -1, dtype=int)
    L = np.zeros((len(pts), 3))
    for e in range(mesh.n_elements):
        Le = area_coordinates(mesh.geometry(e), pts)
        inside = (Le.min(axis=1) >= -tol) & (elem < 0)
        elem[inside] = e
        L[inside] = Le[inside]
    return elem, L


__all__ = ["DIAGONALS", "TriMesh", "element_geometry", "element_node_coords",
           "generate_rect_mesh", "locate", "n_nodes"]
