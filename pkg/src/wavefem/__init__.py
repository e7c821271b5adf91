"""Waveguide cutoff analysis with cubic triangular finite elements."""
from .assembly import MaterialSpec, assemble_scalar, assemble_vector
from .eigen import ModeSet, filter_modes, solve_gen_sym
from .element import ElementGeometry, ElementMatrices, element_matrices
from .errors import WavefemError
from .mesh import TriMesh, generate_rect_mesh
from .scenarios import (Scenario, analytic_modes, compare_orders, dielectric_loaded,
                        ferrite_filled, hollow_square, make_scenario, run_scenario)

__version__ = "0.1.0"

__all__ = [
    "ElementGeometry", "ElementMatrices", "MaterialSpec", "ModeSet", "Scenario", "TriMesh",
    "WavefemError", "analytic_modes", "assemble_scalar", "assemble_vector", "compare_orders",
    "dielectric_loaded", "element_matrices", "ferrite_filled", "filter_modes",
    "generate_rect_mesh", "hollow_square", "make_scenario", "run_scenario", "solve_gen_sym",
]
