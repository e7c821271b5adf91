import numpy as np
import pytest

from wavefem.element import node_barycentric
from wavefem.errors import InvalidArgumentError
from wavefem.mesh import element_geometry, element_node_coords, generate_rect_mesh, locate


@pytest.mark.parametrize("args, order, ne, nn", [
    ((1, 1, 3, 3), 3, 18, 100),
    ((2, 1, 3, 3), 2, 18, 49),
    ((1, 1, 4, 3), 2, 24, 63),
    ((1, 1, 1, 1), 3, 2, 16),
])
def test_counts(args, order, ne, nn):
    m = generate_rect_mesh(*args, order=order)
    assert (m.n_elements, m.n_nodes) == (ne, nn)


@pytest.mark.parametrize("diagonal", ["up", "down"])
@pytest.mark.parametrize("order", [2, 3])
def test_mesh_invariants(order, diagonal):
    m = generate_rect_mesh(2.0, 1.0, 3, 2, order=order, origin=(-1, 0.5), diagonal=diagonal)
    areas = [element_geometry(m, e).area for e in range(m.n_elements)]
    assert min(areas) > 0
    assert sum(areas) == pytest.approx(2.0)
    for e in range(m.n_elements):
        expect = element_node_coords(m.geometry(e), m.element_vertices(e), order)
        np.testing.assert_allclose(m.node_coords[m.element_nodes[e]], expect, atol=1e-14)
    # every node used, vertex numbering consistent
    assert set(m.element_nodes.ravel()) == set(range(m.n_nodes))
    x, y = m.node_coords.T
    on_edge = np.isclose(x, -1) | np.isclose(x, 1) | np.isclose(y, 0.5) | np.isclose(y, 1.5)
    np.testing.assert_array_equal(m.boundary_node, on_edge)


def test_shared_edge_nodes_agree():
    m = generate_rect_mesh(1, 1, 2, 2, order=3)
    count = np.bincount(m.element_nodes.ravel(), minlength=m.n_nodes)
    bubble = m.element_nodes[:, 9]
    assert np.all(count[bubble] == 1)
    edge = m.element_nodes[:, 3:9].ravel()
    assert set(count[edge]) <= {1, 2}
    assert np.all(count[edge][~m.boundary_node[edge]] == 2)


def test_regions_follow_cells():
    m = generate_rect_mesh(1, 1, 3, 4, region_fn=lambda x, y: "d" if y < 0.5 else "a")
    assert m.region_id.count("d") == 12
    assert m.regions == ["d", "a"]


def test_deterministic():
    a = generate_rect_mesh(1, 1, 3, 3)
    b = generate_rect_mesh(1, 1, 3, 3)
    np.testing.assert_array_equal(a.element_nodes, b.element_nodes)
    np.testing.assert_array_equal(a.node_coords, b.node_coords)


@pytest.mark.parametrize("args", [(0, 1, 3, 3), (1, -1, 3, 3), (1, 1, 0, 3), (1, 1, 3, 1.5)])
def test_bad_input(args):
    with pytest.raises(InvalidArgumentError):
        generate_rect_mesh(*args)


def test_bad_order_and_index():
    with pytest.raises(ValueError):
        generate_rect_mesh(1, 1, 1, 1, order=4)
    m = generate_rect_mesh(1, 1, 1, 1)
    with pytest.raises(IndexError):
        element_geometry(m, 2)


def test_locate():
    m = generate_rect_mesh(1, 1, 2, 2)
    pts = [(0.1, 0.2), (0.99, 0.99), (1.5, 0.5)]
    elem, L = locate(m, pts)
    assert elem[2] == -1
    for p, e, l in zip(pts[:2], elem[:2], L[:2]):
        np.testing.assert_allclose(l @ m.element_vertices(e), p, atol=1e-14)


def test_node_pattern_order2():
    np.testing.assert_allclose(node_barycentric(2)[3:], [[.5, .5, 0], [0, .5, .5], [.5, 0, .5]])
