"""Benchmark waveguides, their analytic cutoff wavenumbers, and the runner.

Three guides are defined:

``hollow_square``
    1 x 1 cm empty guide centred on the origin, 3 x 3 cells.
``dielectric_loaded``
    1 x 1 cm guide with an ``eps_r = 6`` rectangle (default: the lower half,
    ``y < 0.5``), 3 x 4 cells.
``ferrite_filled``
    2 x 1 cm guide filled with ``eps_r = 2`` and the gyrotropic tensor
    ``mu = 3, mu_y = 1, kappa = 0.8``, 3 x 3 cells.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .assembly import MaterialSpec, VectorSystem, assemble_divergence, assemble_vector
from .eigen import ModeSet, default_cutoff, divergence_ratios, solve_gen_sym
from .element import shape_values
from .errors import InvalidArgumentError, UnsupportedScenarioError
from .mesh import TriMesh, generate_rect_mesh, locate

SCENARIOS = ("hollow_square", "dielectric_loaded", "ferrite_filled")

FERRITE = MaterialSpec(eps_r=2.0, mu=3.0, mu_y=1.0, kappa=0.8)
LOADED_EPS_R = 6.0
DEFAULT_FILL = (0.0, 1.0, 0.0, 0.5)

# spurious-mode flag: div(mu H) energy relative to curl energy
SUSPECT_RATIO = 0.1
MATCH_RTOL = 0.05


@dataclass(frozen=True)
class Scenario:
    name: str
    width: float
    height: float
    nx: int
    ny: int
    order: int = 3
    kz: float = 0.0
    materials: dict = field(default_factory=dict)
    fill: tuple | None = None        # (x0, x1, y0, y1) in guide coordinates
    origin: tuple = (0.0, 0.0)
    diagonal: str = "up"

    def __post_init__(self):
        if self.order not in (2, 3):
            raise InvalidArgumentError(f"order must be 2 or 3, got {self.order}")
        if self.width <= 0 or self.height <= 0:
            raise InvalidArgumentError("guide dimensions must be positive")
        if int(self.nx) != self.nx or int(self.ny) != self.ny or self.nx < 1 or self.ny < 1:
            raise InvalidArgumentError(f"cell counts must be integers >= 1, got {self.nx}, {self.ny}")
        if not math.isfinite(self.kz) or self.kz < 0:
            raise InvalidArgumentError(f"kz must be non-negative, got {self.kz}")
        if self.fill is not None:
            x0, x1, y0, y1 = self.fill
            if not (0 <= x0 < x1 <= self.width and 0 <= y0 < y1 <= self.height):
                raise InvalidArgumentError(f"fill {self.fill} outside the {self.width} x {self.height} guide")
            hx, hy = self.width / self.nx, self.height / self.ny
            for v, h in ((x0, hx), (x1, hx), (y0, hy), (y1, hy)):
                if abs(v / h - round(v / h)) > 1e-9:
                    raise InvalidArgumentError(
                        f"fill {self.fill} is not aligned with the {self.nx} x {self.ny} cell grid")

    def region(self, x: float, y: float) -> str:
        if self.fill is None:
            return "fill"
        x0, x1, y0, y1 = self.fill
        u, v = x - self.origin[0], y - self.origin[1]
        return "fill" if (x0 < u < x1 and y0 < v < y1) else "air"

    def mesh(self) -> TriMesh:
        return generate_rect_mesh(self.width, self.height, self.nx, self.ny, self.order,
                                  region_fn=self.region, origin=self.origin,
                                  diagonal=self.diagonal)


def hollow_square(order: int = 3, nx: int = 3, ny: int = 3, kz: float = 0.0, **kw) -> Scenario:
    return Scenario("hollow_square", 1.0, 1.0, nx, ny, order, kz,
                    materials={"fill": MaterialSpec()}, origin=(-0.5, -0.5), **kw)


def dielectric_loaded(order: int = 3, nx: int = 3, ny: int = 4, kz: float = 0.0,
                      fill: Sequence[float] = DEFAULT_FILL, eps_r: float = LOADED_EPS_R,
                      **kw) -> Scenario:
    return Scenario("dielectric_loaded", 1.0, 1.0, nx, ny, order, kz,
                    materials={"fill": MaterialSpec(eps_r=eps_r), "air": MaterialSpec()},
                    fill=tuple(float(v) for v in fill), **kw)


def ferrite_filled(order: int = 3, nx: int = 3, ny: int = 3, kz: float = 0.0, **kw) -> Scenario:
    return Scenario("ferrite_filled", 2.0, 1.0, nx, ny, order, kz,
                    materials={"fill": FERRITE}, **kw)


def make_scenario(name: str, **overrides) -> Scenario:
    """Build a named scenario; ``None`` overrides are ignored."""
    builders = {"hollow_square": hollow_square, "dielectric_loaded": dielectric_loaded,
                "ferrite_filled": ferrite_filled}
    if name not in builders:
        raise UnsupportedScenarioError(f"unknown scenario {name!r}; expected one of {SCENARIOS}")
    kw = {k: v for k, v in overrides.items() if v is not None}
    if name != "dielectric_loaded":
        if "fill" in kw:
            raise InvalidArgumentError("a fill rectangle only applies to dielectric_loaded")
        kw.pop("eps_r", None)
    return builders[name](**kw)


# -- analytic references -----------------------------------------------------

def _distinct(values, count, rtol=1e-9):
    out = []
    for v in sorted(values):
        if not out or v - out[-1] > rtol * max(v, 1.0):
            out.append(v)
    return out[:count]


def analytic_hollow_modes(a: float, b: float, count: int = 3, kz: float = 0.0) -> list[float]:
    """Distinct ``k0 = sqrt((m pi/a)^2 + (n pi/b)^2 + kz^2)``, ascending.

    TE modes need ``m + n > 0``, TM modes ``m, n >= 1``; the TM cutoffs
    coincide with TE ones, so the distinct list is the TE list.
    """
    if a <= 0 or b <= 0:
        raise InvalidArgumentError("guide dimensions must be positive")
    if count <= 0:
        return []
    mmax = count + 1
    vals = [math.sqrt((m * math.pi / a) ** 2 + (n * math.pi / b) ** 2 + kz * kz)
            for m in range(mmax + 1) for n in range(mmax + 1) if m or n]
    return _distinct(vals, count)


def analytic_ferrite_modes(kz: float = 0.0, count: int = 3, width: float = 2.0,
                           material: MaterialSpec = FERRITE) -> list[float]:
    """TE_n0 wavenumbers of a guide filled with a transversely magnetized ferrite.

    ``k_n^2 = mu / (eps_r (mu^2 - kappa^2)) * (kz^2 + (n pi / width)^2)``;
    for the default material the prefactor is ``3 / 16.72``.
    """
    if kz < 0:
        raise InvalidArgumentError("kz must be non-negative")
    pref = material.mu / (material.eps_r * (material.mu ** 2 - material.kappa ** 2))
    return [math.sqrt(pref * (kz * kz + (n * math.pi / width) ** 2)) for n in range(1, count + 1)]


def _S(s, t):
    if s > 0:
        r = math.sqrt(s)
        return math.sin(r * t) / r
    if s < 0:
        r = math.sqrt(-s)
        return math.sinh(r * t) / r
    return t


def _C(s, t):
    if s > 0:
        return math.cos(math.sqrt(s) * t)
    if s < 0:
        return math.cosh(math.sqrt(-s) * t)
    return 1.0


def slab_residual(k0: float, layers, kt2: float, kind: str) -> float:
    """Transverse-resonance residual of a PEC-bounded layered guide.

    ``layers`` is a sequence of ``(eps_r, thickness)`` across the guide;
    ``kt2`` the squared wavenumber along the layers (lateral plus ``kz``).
    ``kind`` is ``"LSE"`` (potential vanishes on the walls, potential and
    derivative continuous) or ``"LSM"`` (derivative vanishes on the walls,
    potential and derivative / eps continuous).  Zero at a mode.
    """
    if kind == "LSE":
        psi, q = 0.0, 1.0
    else:
        psi, q = 1.0, 0.0
    for eps, t in layers:
        s = k0 * k0 * eps - kt2
        w = 1.0 if kind == "LSE" else eps
        c, sn = _C(s, t), _S(s, t)
        psi, q = c * psi + w * sn * q, -s * sn * psi / w + c * q
    return psi if kind == "LSE" else q


def _bisect(f, lo, hi, flo, xtol=1e-13):
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0 or hi - lo < xtol:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def fill_layers(fill, width: float, height: float, eps_r: float):
    """Describe a fill rectangle as a layered guide.

    Returns ``(layers, lateral)`` where ``layers`` runs across the
    stratification direction and ``lateral`` is the guide dimension along
    the layers.
    """
    x0, x1, y0, y1 = fill
    full_x = x0 <= 0 and x1 >= width
    full_y = y0 <= 0 and y1 >= height
    if full_x:
        cuts, span, lateral = (y0, y1), height, width
    elif full_y:
        cuts, span, lateral = (x0, x1), width, height
    else:
        raise UnsupportedScenarioError(
            f"fill {tuple(fill)} does not span the guide in either direction; "
            "only slab fills have a closed dispersion relation")
    lo, hi = cuts
    layers = [(1.0, lo), (eps_r, hi - lo), (1.0, span - hi)]
    return [(e, t) for e, t in layers if t > 0], lateral


def analytic_loaded_modes(fill=DEFAULT_FILL, eps_r: float = LOADED_EPS_R, kz: float = 0.0,
                          count: int = 3, width: float = 1.0, height: float = 1.0,
                          step: float = 0.01) -> list[float]:
    """Cutoff wavenumbers of a slab-loaded rectangular guide.

    Roots of the LSE and LSM transverse-resonance relations, bracketed by sign
    changes on a ``k0`` grid of spacing ``step`` and refined by bisection.
    """
    layers, lateral = fill_layers(fill, width, height, eps_r)
    if count <= 0:
        return []
    eps_max = max(e for e, _ in layers)
    kmax = 2.0
    while True:
        roots = []
        mmax = int(lateral * kmax * math.sqrt(eps_max) / math.pi) + 1
        grid = np.arange(step / 2, kmax, step)
        for m in range(mmax + 1):
            kt2 = (m * math.pi / lateral) ** 2 + kz * kz
            for kind in ("LSE", "LSM"):
                if kind == "LSM" and m == 0:
                    continue

                def f(k, kt2=kt2, kind=kind):
                    return slab_residual(k, layers, kt2, kind)

                vals = [f(k) for k in grid]
                for i in range(len(grid) - 1):
                    if vals[i] == 0.0:
                        roots.append(float(grid[i]))
                    elif vals[i] * vals[i + 1] < 0:
                        roots.append(float(_bisect(f, grid[i], grid[i + 1], vals[i])))
        found = _distinct(roots, count)
        if len(found) >= count or kmax > 1e3:
            return found
        kmax *= 2


def analytic_modes(s: Scenario, count: int) -> list[float]:
    if s.name == "hollow_square":
        return analytic_hollow_modes(s.width, s.height, count, s.kz)
    if s.name == "ferrite_filled":
        return analytic_ferrite_modes(s.kz, count, s.width, s.materials["fill"])
    if s.name == "dielectric_loaded":
        return analytic_loaded_modes(s.fill, s.materials["fill"].eps_r, s.kz, count,
                                     s.width, s.height)
    raise UnsupportedScenarioError(f"no analytic solution for {s.name!r}")


# -- solving and comparison --------------------------------------------------

@dataclass(frozen=True)
class ComputedMode:
    k0: float
    divergence: float
    index: int          # column of the first eigenvector in the group

    @property
    def suspect(self) -> bool:
        return self.divergence > SUSPECT_RATIO


@dataclass(frozen=True)
class Solution:
    scenario: Scenario
    mesh: TriMesh
    system: VectorSystem
    modes: ModeSet
    distinct: tuple  # of ComputedMode, ascending k0

    @property
    def k0(self) -> list[float]:
        return [m.k0 for m in self.distinct]


def group_modes(modes: ModeSet, ratios, zero_cutoff=None, merge_tol=1e-4) -> list[ComputedMode]:
    """Group eigenvalues into distinct ``k0`` the same way as ``filter_modes``."""
    cutoff = default_cutoff(modes.lambdas) if zero_cutoff is None else zero_cutoff
    out, group = [], []

    def close(g):
        ks = [modes.lambdas[i] ** 0.5 for i in g]
        out.append(ComputedMode(float(np.mean(ks)), float(min(ratios[i] for i in g)), g[0]))

    for i in np.argsort(modes.lambdas, kind="stable"):
        lam = modes.lambdas[i]
        if lam <= cutoff:
            continue
        k = math.sqrt(lam)
        if group and abs(k - math.sqrt(modes.lambdas[group[0]])) <= merge_tol * math.sqrt(modes.lambdas[group[0]]):
            group.append(int(i))
            continue
        if group:
            close(group)
        group = [int(i)]
    if group:
        close(group)
    return out


def solve_scenario(s: Scenario, zero_cutoff=None, merge_tol: float = 1e-4,
                   method: str = "householder-ql") -> Solution:
    mesh = s.mesh()
    system = assemble_vector(mesh, s.materials, s.kz)
    modes = solve_gen_sym(system.A, system.B, method=method)
    G = assemble_divergence(mesh, s.materials, s.kz)
    ratios = divergence_ratios(modes, G, system.A)
    distinct = group_modes(modes, ratios, zero_cutoff, merge_tol)
    cutoff = default_cutoff(modes.lambdas) if zero_cutoff is None else zero_cutoff
    modes = replace(modes, cutoff=cutoff)
    return Solution(s, mesh, system, modes, tuple(distinct))


@dataclass(frozen=True)
class ModeComparison:
    mode: int
    analytic: float
    computed: float
    match: ComputedMode | None = None

    @property
    def abs_err(self) -> float:
        return abs(self.computed - self.analytic)

    @property
    def rel_err(self) -> float:
        return self.abs_err / abs(self.analytic)


@dataclass(frozen=True)
class ComparisonReport:
    scenario: Scenario
    rows: tuple
    solution: Solution | None = field(default=None, repr=False, compare=False)

    @property
    def computed(self) -> list[float]:
        return [r.computed for r in self.rows]

    @property
    def analytic(self) -> list[float]:
        return [r.analytic for r in self.rows]


def align(analytic: Sequence[float], computed: Sequence[ComputedMode],
          rtol: float = MATCH_RTOL) -> list[ComputedMode | None]:
    """Greedy nearest match of each analytic value to an unused computed mode.

    Modes not flagged as spurious are preferred; a flagged mode is used only
    when no unflagged one lies within ``rtol``.
    """
    used: set[int] = set()
    out = []
    for a in analytic:
        pick = None
        for pool in ([c for c in computed if not c.suspect], list(computed)):
            best = None
            for c in pool:
                if id(c) in used or abs(c.k0 - a) > rtol * abs(a):
                    continue
                if best is None or abs(c.k0 - a) < abs(best.k0 - a):
                    best = c
            if best is not None:
                pick = best
                break
        if pick is not None:
            used.add(id(pick))
        out.append(pick)
    return out


def run_scenario(s: Scenario, modes: int = 3, zero_cutoff=None, merge_tol: float = 1e-4,
                 method: str = "householder-ql") -> ComparisonReport:
    """Solve ``s`` and line the computed spectrum up with the analytic one."""
    if modes < 0:
        raise InvalidArgumentError("mode count must be non-negative")
    sol = solve_scenario(s, zero_cutoff, merge_tol, method)
    ref = analytic_modes(s, modes)
    rows = []
    for i, (a, c) in enumerate(zip(ref, align(ref, sol.distinct)), start=1):
        rows.append(ModeComparison(i, a, float("nan") if c is None else c.k0, c))
    return ComparisonReport(s, tuple(rows), sol)


def compare_orders(s: Scenario, modes: int = 3, **kw) -> dict[int, ComparisonReport]:
    """Run ``s`` with second- and third-order elements on the same cells."""
    return {order: run_scenario(replace(s, order=order), modes, **kw) for order in (2, 3)}


def sample_field(solution: Solution, column: int, samples: int = 21):
    """Evaluate ``(Hx, Hy, hz)`` of eigenvector ``column`` on a uniform grid.

    The field is scaled so its largest-magnitude sample is ``+1``.
    Returns ``(points (m, 2), values (m, 3))``.
    """
    mesh = solution.mesh
    x0, y0, w, h = mesh.extent
    xs = x0 + np.linspace(0.0, w, samples)
    ys = y0 + np.linspace(0.0, h, samples)
    pts = np.array([(x, y) for y in ys for x in xs])
    elem, L = locate(mesh, pts)
    N = mesh.n_nodes
    v = solution.modes.vectors[:, column]
    comps = v[:N], v[N:2 * N], v[2 * N:]
    vals = np.zeros((len(pts), 3))
    for p, (e, Lp) in enumerate(zip(elem, L)):
        phi = shape_values(mesh.order, Lp)
        nodes = mesh.element_nodes[e]
        vals[p] = [phi @ c[nodes] for c in comps]
    flat = vals.ravel()
    peak = flat[np.argmax(np.abs(flat))]
    if peak != 0:
        vals = vals / peak
    return pts, vals


__all__ = [
    "ComparisonReport", "ComputedMode", "FERRITE", "ModeComparison", "SCENARIOS",
    "Scenario", "Solution", "align", "analytic_ferrite_modes", "analytic_hollow_modes",
    "analytic_loaded_modes", "analytic_modes", "compare_orders", "dielectric_loaded",
    "ferrite_filled", "fill_layers", "group_modes", "hollow_square", "make_scenario",
    "run_scenario", "sample_field", "slab_residual", "solve_scenario",
]
