"""Closed-form elemental matrices of the ten-node cubic triangle.

Every entry is stored as an exact rational combination of coefficient
products and converted to floating point once, at import time:

* ``B   = (3 area / 2240)  * TABLE_B``
* ``Ax  = (81 / (8 area))  * sum_kl TABLE_AX[i, j, k, l] b_k b_l``   (Ay: b -> c)
* ``Cxy = (81 / (16 area)) * sum_kl TABLE_CXY[i, j, k, l] b_k c_l``
* ``Dx  = (27 / 140)       * sum_k  TABLE_DX[i, j, k] b_k``           (Dy: b -> c)

Entry strings use ``bkl = b_k b_l``, ``pkl = b_k c_l`` and ``bk = b_k``.
Quadratic (six-node) elements have no tables here; they are integrated by
:func:`wavefem.element.quadrature.elemental_by_quadrature`.
"""
from __future__ import annotations

import re
from fractions import Fraction

import numpy as np

from .basis import check_order
from .quadrature import elemental_by_quadrature

_F = Fraction

_B_ROWS = (
    (_F(76, 9), _F(11, 9), _F(11, 9), 2, 0, 3, 3, 0, 2, 4),
    (_F(11, 9), _F(76, 9), _F(11, 9), 0, 2, 2, 0, 3, 3, 4),
    (_F(11, 9), _F(11, 9), _F(76, 9), 3, 3, 0, 2, 2, 0, 4),
    (2, 0, 3, 60, -21, -15, -6, -15, 30, 18),
    (0, 2, 3, -21, 60, 30, -15, -6, -15, 18),
    (3, 2, 0, -15, 30, 60, -21, -15, -6, 18),
    (3, 0, 2, -6, -15, -21, 60, 30, -15, 18),
    (0, 3, 2, -15, -6, -15, 30, 60, -21, 18),
    (2, 3, 0, 30, -15, -6, -15, -21, 60, 18),
    (4, 4, 4, 18, 18, 18, 18, 18, 18, 216),
)

# upper triangle, 1-based (i, j)
_AX_UPPER = {
    (1, 1): "17b11/810", (1, 2): "7b12/1620", (1, 3): "7b13/1620",
    (1, 4): "(18b12-b13)/540", (1, 5): "(-b13-9b12)/540", (1, 6): "-b11/540",
    (1, 7): "-b11/540", (1, 8): "(-b12-9b13)/540", (1, 9): "(18b13-b12)/540",
    (1, 10): "0",
    (2, 2): "17b22/810", (2, 3): "7b23/1620", (2, 4): "(-b23-9b12)/540",
    (2, 5): "(18b12-b23)/540", (2, 6): "(18b23-b12)/540", (2, 7): "(-b12-9b23)/540",
    (2, 8): "-b22/540", (2, 9): "-b22/540", (2, 10): "0",
    (3, 3): "17b33/810", (3, 4): "-b33/540", (3, 5): "-b33/540",
    (3, 6): "(-b13-9b23)/540", (3, 7): "(18b23-b13)/540", (3, 8): "(18b13-b23)/540",
    (3, 9): "(-b23-9b13)/540", (3, 10): "0",
    (4, 4): "(b33-b12)/12", (4, 5): "(-b11+2b12-b22)/60", (4, 6): "-b13/60",
    (4, 7): "-b13/60", (4, 8): "-b23/60", (4, 9): "b23/12", (4, 10): "b13/10",
    (5, 5): "(b33-b12)/12", (5, 6): "b13/12", (5, 7): "-b13/60", (5, 8): "-b23/60",
    (5, 9): "-b23/60", (5, 10): "b23/10",
    (6, 6): "(b11-b23)/12", (6, 7): "(-b22+2b23-b33)/60", (6, 8): "-b12/60",
    (6, 9): "-b12/60", (6, 10): "b12/10",
    (7, 7): "(b11-b23)/12", (7, 8): "b12/12", (7, 9): "-b12/60", (7, 10): "b13/10",
    (8, 8): "(b22-b13)/12", (8, 9): "(-b11+2b13-b33)/60", (8, 10): "b23/10",
    (9, 9): "(b22-b13)/12", (9, 10): "b12/10",
    (10, 10): "(b11-b23)/5",
}

_CXY_ROWS = (
    ("17p11/405", "7p12/810", "7p13/810", "(18p12-p13)/270", "(-p13-9p12)/270",
     "-p11/270", "-p11/270", "(-p12-9p13)/270", "(18p13-p12)/270", "0"),
    ("7p21/810", "17p22/405", "7p23/810", "(-p23-9p21)/270", "(18p21-p23)/270",
     "(18p23-p21)/270", "(-p21-9p23)/270", "-p22/270", "-p22/270", "0"),
    ("7p31/810", "7p32/810", "17p33/405", "-p33/270", "-p33/270",
     "(-p31-9p32)/270", "(18p32-p31)/270", "(18p31-p32)/270", "(-p32-9p31)/270", "0"),
    ("(18p21-p31)/270", "(-p32-9p12)/270", "-p33/270", "(p11+p22+p33)/12",
     "(5p12-p21-2p11-2p22)/60", "(-p13-p31)/60", "(-p13-p31)/60", "(-p23-p32)/60",
     "(p23+p32)/12", "(p13+p31)/10"),
    ("(-p31-9p21)/270", "(18p12-p32)/270", "-p33/270", "(5p21-p12-2p11-2p22)/60",
     "(p11+p22+p33)/12", "(p13+p31)/12", "(-p13-p31)/60", "(-p23-p32)/60",
     "(-p23-p32)/60", "(p23+p32)/10"),
    ("-p11/270", "(18p32-p12)/270", "(-p13-9p23)/270", "(-p13-p31)/60",
     "(p13+p31)/12", "(p11+p22+p33)/12", "(5p23-p32-2p22-2p33)/60", "(-p12-p21)/60",
     "(-p12-p21)/60", "(p12+p21)/10"),
    ("-p11/270", "(-p12-9p32)/270", "(18p23-p13)/270", "(-p13-p31)/60",
     "(-p13-p31)/60", "(5p32-p23-2p22-2p33)/60", "(p11+p22+p33)/12", "(p12+p21)/12",
     "(-p12-p21)/60", "(p13+p31)/10"),
    ("(-p21-9p31)/270", "-p22/270", "(18p13-p23)/270", "(-p23-p32)/60",
     "(-p23-p32)/60", "(-p12-p21)/60", "(p12+p21)/12", "(p11+p22+p33)/12",
     "(5p31-p13-2p11-2p33)/60", "(p23+p32)/10"),
    ("(18p31-p21)/270", "-p22/270", "(-p23-9p13)/270", "(p23+p32)/12",
     "(-p23-p32)/60", "(-p12-p21)/60", "(-p12-p21)/60", "(5p13-p31-2p11-2p33)/60",
     "(p11+p22+p33)/12", "(p12+p21)/10"),
    ("0", "0", "0", "(p13+p31)/10", "(p23+p32)/10", "(p12+p21)/10", "(p13+p31)/10",
     "(p23+p32)/10", "(p12+p21)/10", "(p11+p22+p33)/5"),
)

_DX_ROWS = (
    ("16b1/81", "19b2/324", "19b3/324", "(22b2-b1)/72", "(5b1-8b2)/72", "-5b1/72",
     "-5b1/72", "(5b1-8b3)/72", "(22b3-b1)/72", "b1/12"),
    ("19b1/324", "16b2/81", "19b3/324", "(5b2-8b1)/72", "(22b1-b2)/72", "(22b3-b2)/72",
     "(5b2-8b3)/72", "-5b2/72", "-5b2/72", "b2/12"),
    ("19b1/324", "19b2/324", "16b3/81", "-5b3/72", "-5b3/72", "(5b3-8b2)/72",
     "(22b2-b3)/72", "(22b1-b3)/72", "(5b3-8b1)/72", "b3/12"),
    ("23b1/72", "-13b2/72", "5b3/72", "-b3", "(b2-3b1)/8", "(2b1-b3)/8", "(b1-b3)/8",
     "(b2-2b3)/8", "(b3-b2)/2", "(2b3-3b1)/4"),
    ("-13b1/72", "23b2/72", "5b3/72", "(b1-3b2)/8", "-b3", "(b3-b1)/2", "(b1-2b3)/8",
     "(b2-b3)/8", "(2b2-b3)/8", "(2b3-3b2)/4"),
    ("5b1/72", "23b2/72", "-13b3/72", "(b3-2b1)/8", "(b1-b3)/2", "-b1", "(b3-3b2)/8",
     "(2b2-b1)/8", "(b2-b1)/8", "(2b1-3b2)/4"),
    ("5b1/72", "-13b2/72", "23b3/72", "(b3-b1)/8", "(2b3-b1)/8", "(b2-3b3)/8", "-b1",
     "(b1-b2)/2", "(b2-2b1)/8", "(2b1-3b3)/4"),
    ("-13b1/72", "5b2/72", "23b3/72", "(2b3-b2)/8", "(b3-b2)/8", "(b1-2b2)/8",
     "(b2-b1)/2", "-b2", "(b1-3b3)/8", "(2b2-3b3)/4"),
    ("23b1/72", "5b2/72", "-13b3/72", "(b2-b3)/2", "(b3-2b2)/8", "(b1-b2)/8",
     "(2b1-b2)/8", "(b3-3b1)/8", "-b2", "(2b2-3b1)/4"),
    ("-b1/12", "-b2/12", "-b3/12", "(3b1-2b3)/4", "(3b2-2b3)/4", "(3b2-2b1)/4",
     "(3b3-2b1)/4", "(3b3-2b2)/4", "(3b1-2b2)/4", "0"),
)

_TERM = re.compile(r"([+-]?)(\d*)([bp])(\d+)")


def parse_entry(text: str) -> dict:
    """Parse ``"(18b12-b13)/540"`` into ``{(0, 1): 18/540, (0, 2): -1/540}``.

    Keys are zero-based index tuples of the coefficient product.
    """
    s = text.replace(" ", "")
    den = 1
    if "/" in s:
        s, d = s.rsplit("/", 1)
        den = int(d)
    s = s.strip("()")
    if s in ("", "0"):
        return {}
    out: dict = {}
    pos = 0
    for m in _TERM.finditer(s):
        if m.start() != pos:
            raise ValueError(f"cannot parse table entry {text!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        num = int(m.group(2)) if m.group(2) else 1
        key = tuple(int(ch) - 1 for ch in m.group(4))
        out[key] = out.get(key, Fraction(0)) + Fraction(sign * num, den)
    if pos != len(s):
        raise ValueError(f"cannot parse table entry {text!r}")
    return out


def _coefficient_array(entries, rank):
    shape = (10, 10) + (3,) * rank
    arr = np.empty(shape, dtype=object)
    arr[...] = Fraction(0)
    for (i, j), text in entries.items():
        for key, val in parse_entry(text).items():
            if len(key) != rank:
                raise ValueError(f"entry {text!r} has wrong product rank")
            arr[(i, j) + key] += val
    return arr


def _exact_tables():
    B = np.array([[Fraction(v) for v in row] for row in _B_ROWS], dtype=object)
    upper = {(i - 1, j - 1): t for (i, j), t in _AX_UPPER.items()}
    full = dict(upper)
    full.update({(j, i): t for (i, j), t in upper.items()})
    AX = _coefficient_array(full, 2)
    CXY = _coefficient_array({(i, j): t for i, row in enumerate(_CXY_ROWS)
                              for j, t in enumerate(row)}, 2)
    DX = _coefficient_array({(i, j): t for i, row in enumerate(_DX_ROWS)
                             for j, t in enumerate(row)}, 1)
    return B, AX, CXY, DX


TABLE_B, TABLE_AX, TABLE_CXY, TABLE_DX = _exact_tables()

# float forms with the table prefactors folded in (area handled at call time)
_B = (TABLE_B * Fraction(3, 2240)).astype(float)
_AX = (TABLE_AX * Fraction(81, 8)).astype(float)
_CXY = (TABLE_CXY * Fraction(81, 16)).astype(float)
_DX = (TABLE_DX * Fraction(27, 140)).astype(float)
for _arr in (_B, _AX, _CXY, _DX):
    _arr.setflags(write=False)


def elemental_B(geom, order: int = 3) -> np.ndarray:
    """Mass matrix ``int N_i N_j``."""
    check_order(order)
    if order == 2:
        return elemental_by_quadrature(geom, 2, "B")
    return _B * geom.area


def _stiffness(u, v, area):
    return np.einsum("ijkl,k,l->ij", _AX, u, v) / area


def elemental_Ax(geom, order: int = 3) -> np.ndarray:
    """``int dN_i/dx dN_j/dx``."""
    check_order(order)
    if order == 2:
        return elemental_by_quadrature(geom, 2, "Ax")
    return _stiffness(geom.b, geom.b, geom.area)


def elemental_Ay(geom, order: int = 3) -> np.ndarray:
    """``int dN_i/dy dN_j/dy``; the x-table with ``b`` replaced by ``c``."""
    check_order(order)
    if order == 2:
        return elemental_by_quadrature(geom, 2, "Ay")
    return _stiffness(geom.c, geom.c, geom.area)


def elemental_Cxy(geom, order: int = 3) -> np.ndarray:
    """``int dN_i/dx dN_j/dy``.  Not symmetric; ``Cyx = Cxy.T``."""
    check_order(order)
    if order == 2:
        return elemental_by_quadrature(geom, 2, "Cxy")
    return np.einsum("ijkl,k,l->ij", _CXY, geom.b, geom.c) / geom.area


def elemental_Dx(geom, order: int = 3) -> np.ndarray:
    """``int N_i dN_j/dx``."""
    check_order(order)
    if order == 2:
        return elemental_by_quadrature(geom, 2, "Dx")
    return np.einsum("ijk,k->ij", _DX, geom.b)


def elemental_Dy(geom, order: int = 3) -> np.ndarray:
    """``int N_i dN_j/dy``."""
    check_order(order)
    if order == 2:
        return elemental_by_quadrature(geom, 2, "Dy")
    return np.einsum("ijk,k->ij", _DX, geom.c)
