"""Independent integration routes for elemental matrices.

Two routes are provided and are deliberately unrelated:

* ``"monomial"``: shape functions are expanded exactly into monomials of the
  area coordinates with rational coefficients and integrated with the
  factorial formula for ``L1**i L2**j L3**k``.  All arithmetic before the final
  conversion to float is exact.
* ``"gauss"``: a collapsed (Duffy) tensor Gauss-Legendre rule on the
  triangle, applied to the floating-point shape function evaluations of
  :mod:`wavefem.element.basis`.  Exact for total degree up to 8.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

import numpy as np

from .basis import _CUBIC_EDGE, _QUAD_EDGE, check_order, n_nodes, shape_gradients, shape_values

KINDS = ("B", "Ax", "Ay", "Cxy", "Dx", "Dy")


def integrate_monomial(i: int, j: int, k: int, area: float) -> float:
    """Integral of ``L1**i * L2**j * L3**k`` over a triangle of the given area."""
    return float(monomial_weight(i, j, k)) * 2.0 * area


@lru_cache(maxsize=None)
def monomial_weight(i: int, j: int, k: int) -> Fraction:
    """``i! j! k! / (i + j + k + 2)!`` as an exact fraction."""
    if min(i, j, k) < 0:
        raise ValueError("monomial exponents must be non-negative")
    return Fraction(factorial(i) * factorial(j) * factorial(k), factorial(i + j + k + 2))


# -- exact polynomials in (L1, L2, L3): {(i, j, k): Fraction} ---------------

def _var(a):
    e = [0, 0, 0]
    e[a] = 1
    return {tuple(e): Fraction(1)}


def _const(v):
    return {(0, 0, 0): Fraction(v)}


def _add(p, q):
    out = dict(p)
    for m, c in q.items():
        out[m] = out.get(m, 0) + c
    return {m: c for m, c in out.items() if c != 0}


def _scale(p, s):
    return {m: c * s for m, c in p.items() if c * s != 0}


def _mul(p, q):
    out = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
            out[m] = out.get(m, 0) + c1 * c2
    return {m: c for m, c in out.items() if c != 0}


def _diff(p, a):
    out = {}
    for m, c in p.items():
        if m[a]:
            e = list(m)
            e[a] -= 1
            out[tuple(e)] = out.get(tuple(e), 0) + c * m[a]
    return out


def _integral(p):
    return sum((c * monomial_weight(*m) for m, c in p.items()), Fraction(0))


@lru_cache(maxsize=None)
def shape_polynomials(order: int):
    """Exact monomial expansions of the shape functions."""
    check_order(order)
    L = [_var(a) for a in range(3)]

    def affine(s, a, t):  # s * L_a + t
        return _add(_scale(L[a], s), _const(t))

    polys = []
    if order == 3:
        for a in range(3):
            p = _mul(_mul(L[a], affine(3, a, -1)), affine(3, a, -2))
            polys.append(_scale(p, Fraction(1, 2)))
        for a, b in _CUBIC_EDGE:
            polys.append(_scale(_mul(_mul(L[a], L[b]), affine(3, a, -1)), Fraction(9, 2)))
        polys.append(_scale(_mul(_mul(L[0], L[1]), L[2]), 27))
    else:
        for a in range(3):
            polys.append(_mul(L[a], affine(2, a, -1)))
        for a, b in _QUAD_EDGE:
            polys.append(_scale(_mul(L[a], L[b]), 4))
    return tuple(polys)


@lru_cache(maxsize=None)
def exact_tensors(order: int):
    """Geometry-free rational integrals, divided by ``2 * area``.

    Returns ``(mass, grad, mixed)`` as nested lists of :class:`Fraction`:

    * ``mass[i][j]``        = int N_i N_j
    * ``grad[k][l][i][j]``  = int dN_i/dL_k dN_j/dL_l
    * ``mixed[l][i][j]``    = int N_i dN_j/dL_l
    """
    N = shape_polynomials(order)
    n = len(N)
    dN = [[_diff(p, k) for k in range(3)] for p in N]
    mass = [[_integral(_mul(N[i], N[j])) for j in range(n)] for i in range(n)]
    grad = [[[[_integral(_mul(dN[i][k], dN[j][l])) for j in range(n)] for i in range(n)]
             for l in range(3)] for k in range(3)]
    mixed = [[[_integral(_mul(N[i], dN[j][l])) for j in range(n)] for i in range(n)]
             for l in range(3)]
    return mass, grad, mixed


@lru_cache(maxsize=None)
def _float_tensors(order: int):
    mass, grad, mixed = exact_tensors(order)
    out = tuple(np.array(t, dtype=float) for t in (mass, grad, mixed))
    for arr in out:
        arr.setflags(write=False)
    return out


def _monomial_route(geom, order, kind):
    mass, grad, mixed = _float_tensors(order)
    two_area = 2.0 * geom.area
    b, c = np.asarray(geom.b), np.asarray(geom.c)
    if kind == "B":
        return two_area * mass
    if kind == "Ax":
        return np.einsum("klij,k,l->ij", grad, b, b) / two_area
    if kind == "Ay":
        return np.einsum("klij,k,l->ij", grad, c, c) / two_area
    if kind == "Cxy":
        return np.einsum("klij,k,l->ij", grad, b, c) / two_area
    if kind == "Dx":
        return np.einsum("lij,l->ij", mixed, b)
    return np.einsum("lij,l->ij", mixed, c)


@lru_cache(maxsize=None)
def triangle_gauss_rule(npts: int = 5):
    """Collapsed Gauss-Legendre rule on the triangle.

    Returns area coordinates ``(m, 3)`` and weights summing to 1, so that
    ``int_T f = area * sum(w * f(L))``.  Exact to total degree ``2*npts - 2``.
    """
    x, w = np.polynomial.legendre.leggauss(npts)
    x = 0.5 * (x + 1.0)
    w = 0.5 * w
    u, v = np.meshgrid(x, x, indexing="ij")
    wu, wv = np.meshgrid(w, w, indexing="ij")
    L1 = u.ravel()
    L2 = ((1.0 - u) * v).ravel()
    L = np.column_stack([L1, L2, 1.0 - L1 - L2])
    weights = (2.0 * wu * wv * (1.0 - u)).ravel()
    L.setflags(write=False)
    weights.setflags(write=False)
    return L, weights


def _gauss_route(geom, order, kind):
    L, w = triangle_gauss_rule()
    N = shape_values(order, L)                 # (m, n)
    G = shape_gradients(order, geom, L)        # (m, n, 2)
    wa = w * geom.area
    if kind == "B":
        return np.einsum("q,qi,qj->ij", wa, N, N)
    if kind == "Ax":
        return np.einsum("q,qi,qj->ij", wa, G[..., 0], G[..., 0])
    if kind == "Ay":
        return np.einsum("q,qi,qj->ij", wa, G[..., 1], G[..., 1])
    if kind == "Cxy":
        return np.einsum("q,qi,qj->ij", wa, G[..., 0], G[..., 1])
    if kind == "Dx":
        return np.einsum("q,qi,qj->ij", wa, N, G[..., 0])
    return np.einsum("q,qi,qj->ij", wa, N, G[..., 1])


def elemental_by_quadrature(geom, order: int, kind: str, method: str = "monomial") -> np.ndarray:
    """Elemental matrix ``kind`` computed without the closed-form tables.

    Parameters
    ----------
    geom : ElementGeometry
    order : {2, 3}
    kind : {"B", "Ax", "Ay", "Cxy", "Dx", "Dy"}
    method : {"monomial", "gauss"}
    """
    check_order(order)
    if kind not in KINDS:
        raise ValueError(f"unknown matrix kind {kind!r}; expected one of {KINDS}")
    if method == "monomial":
        return _monomial_route(geom, order, kind)
    if method == "gauss":
        return _gauss_route(geom, order, kind)
    raise ValueError(f"unknown quadrature method {method!r}")


__all__ = [
    "KINDS",
    "elemental_by_quadrature",
    "exact_tensors",
    "integrate_monomial",
    "monomial_weight",
    "n_nodes",
    "shape_polynomials",
    "triangle_gauss_rule",
]
