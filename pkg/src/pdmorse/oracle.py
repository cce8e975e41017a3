"""Independent numerical eigensolver for the position-space equation.

Solves -(hbar^2 / 2 m(x)) phi'' + U_eff(x) phi = E phi on a finite grid with
Dirichlet ends by shooting: a fixed-step 4th-order integrator propagates the
solution, node counts locate the Sturm staircase, and bisection pins the
eigenvalue.  Node counting uses a full left-to-right sweep (the interior
node count of the one-sided solution is exactly the number of eigenvalues
below E); the boundary defect reported alongside comes from integrating from
both ends and matching log-derivatives at the potential minimum.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ConfigError, NoBracket, NonConvergence
from .model import AmbiguityOrdering, MassModel, MoleculeSpec, potential_value
from .units import HBAR2_EV_AMU_A2

MAX_BISECTIONS = 200
SINGULARITY_MARGIN = 0.01  # Angstrom


@dataclass(frozen=True)
class GridSpec:
    """Uniform solver grid; production constraints: >= 501 points, h < 0.01 A."""

    x_min: float
    x_max: float
    points: int

    def __post_init__(self):
        if self.x_max <= self.x_min:
            raise ConfigError("x_max must exceed x_min")
        if self.points < 501:
            raise ConfigError(f"need at least 501 grid points, got {self.points}")
        if self.h >= 0.01:
            raise ConfigError(f"grid spacing {self.h:.4g} A too coarse; need h < 0.01 A")

    @property
    def h(self) -> float:
        return (self.x_max - self.x_min) / (self.points - 1)

    def xs(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.points)

    def validate_against_mass(self, mm: MassModel) -> None:
        xs = mm.singularity_x
        if xs is not None and self.x_min <= xs + SINGULARITY_MARGIN:
            raise ConfigError(
                f"x_min = {self.x_min} must stay right of the mass singularity "
                f"at {xs:.4f} + {SINGULARITY_MARGIN} A margin")


@dataclass(frozen=True)
class ShootingResult:
    """One converged shot: energy (eV), node count, boundary defect."""

    E: float
    nodes: int
    mismatch: float


def u_ordering(mm: MassModel, ordering: AmbiguityOrdering, x):
    """Ordering-dependent kinetic term (eV).

    -hbar^2/[4 m^3 (a+1)] [(alpha+gamma-a) m m'' + 2 (a - alpha gamma - alpha
    - gamma) m'^2], with the analytic mass derivatives.
    """
    m = mm.mass(x)
    m1 = mm.mass_d1(x)
    m2 = mm.mass_d2(x)
    c_mm = ordering.alpha + ordering.gamma - ordering.a
    c_m1 = ordering.a - ordering.alpha * ordering.gamma - ordering.alpha - ordering.gamma
    return -HBAR2_EV_AMU_A2 / (4.0 * m**3 * (ordering.a + 1.0)) * (
        c_mm * m * m2 + 2.0 * c_m1 * m1**2)


def u_eff(mm: MassModel, ordering: AmbiguityOrdering, mol: MoleculeSpec, x):
    """Effective potential: ordering term + V(x) + wavefunction-redefinition term."""
    m = mm.mass(x)
    m1 = mm.mass_d1(x)
    m2 = mm.mass_d2(x)
    redef = HBAR2_EV_AMU_A2 / (4.0 * m**2) * (1.5 * m1**2 / m - m2)
    return u_ordering(mm, ordering, x) + potential_value(mol, x) + redef


def physical_psi(mm: MassModel, x, phi_values):
    """psi(x) = sqrt(m(x)) * phi(x), pointwise."""
    return np.sqrt(mm.mass(x)) * np.asarray(phi_values, dtype=float)


class _ShootingEngine:
    """Precomputed coefficient tables for repeated energy evaluations."""

    def __init__(self, u_fn, m_fn, grid: GridSpec):
        self.xs = grid.xs()
        self.h = grid.h
        xm = 0.5 * (self.xs[:-1] + self.xs[1:])
        self.u_nodes = np.asarray(u_fn(self.xs), dtype=float)
        self.u_mids = np.asarray(u_fn(xm), dtype=float)
        m_nodes = np.asarray(m_fn(self.xs), dtype=float)
        m_mids = np.asarray(m_fn(xm), dtype=float)
        self.p_nodes = 2.0 * m_nodes / HBAR2_EV_AMU_A2
        self.p_mids = 2.0 * m_mids / HBAR2_EV_AMU_A2
        npts = self.xs.size
        im = int(np.argmin(self.u_nodes))
        pad = max(2, npts // 50)
        self.i_match = min(max(im, pad), npts - pad - 1)

    def _q(self, E: float):
        return (self.p_nodes * (self.u_nodes - E), self.p_mids * (self.u_mids - E))

    def count_nodes(self, E: float) -> int:
        qn, qm = self._q(E)
        props = kernels.rk4_propagators(qn, qm, self.h)
        _, _, nodes = kernels.sweep(*props, 0.0, 1.0)
        return nodes

    def mismatch(self, E: float) -> float:
        """Normalized log-derivative defect at the matching point."""
        qn, qm = self._q(E)
        im = self.i_match
        left = kernels.rk4_propagators(qn[:im + 1], qm[:im], self.h)
        pl, dl, _ = kernels.sweep(*left, 0.0, 1.0)
        right = kernels.rk4_propagators(qn[im:][::-1], qm[im:][::-1], -self.h)
        pr, dr, _ = kernels.sweep(*right, 0.0, -1.0)
        if pl == 0.0 or pr == 0.0:
            return 0.0
        ld_l = dl / pl
        ld_r = dr / pr
        denom = abs(ld_l) + abs(ld_r)
        return (ld_l - ld_r) / denom if denom > 0 else 0.0

    def solve(self, n: int, e_lo: float, e_hi: float, tol_ev: float) -> ShootingResult:
        n_lo = self.count_nodes(e_lo)
        n_hi = self.count_nodes(e_hi)
        if not (n_lo <= n < n_hi):
            raise NoBracket(
                f"state n={n} not bracketed: nodes({e_lo:.6g})={n_lo}, "
                f"nodes({e_hi:.6g})={n_hi}")
        lo, hi = e_lo, e_hi
        iterations = 0
        while hi - lo > tol_ev:
            if iterations >= MAX_BISECTIONS:
                raise NonConvergence(
                    f"no convergence to {tol_ev} eV in {MAX_BISECTIONS} bisections")
            mid = 0.5 * (lo + hi)
            if self.count_nodes(mid) >= n + 1:
                hi = mid
            else:
                lo = mid
            iterations += 1
        e = 0.5 * (lo + hi)
        return ShootingResult(E=e, nodes=self.count_nodes(e), mismatch=self.mismatch(e))


def solve_on_grid(u_fn, m_fn, grid: GridSpec, n_list, e_window, tol_ev: float = 1e-7):
    """Generic driver over an arbitrary potential/mass pair.

    Returns a list of (n, ShootingResult) in the order requested.
    """
    engine = _ShootingEngine(u_fn, m_fn, grid)
    return [(n, engine.solve(n, e_window[0], e_window[1], tol_ev)) for n in n_list]


def scan_nodes(u_fn, m_fn, grid: GridSpec, energies) -> list[int]:
    """Node counts along an energy scan (Sturm staircase diagnostic)."""
    engine = _ShootingEngine(u_fn, m_fn, grid)
    return [engine.count_nodes(float(e)) for e in energies]


def solve_states(mm: MassModel, ordering: AmbiguityOrdering, mol: MoleculeSpec,
                 grid: GridSpec, n_list, e_window: tuple[float, float] | None = None,
                 tol_ev: float = 1e-7) -> list[tuple[int, float]]:
    """Eigenvalues of the effective-potential problem for the requested levels.

    The default energy window spans (min U_eff, 0); pass e_window explicitly
    for wells whose continuum threshold is not at zero.
    """
    grid.validate_against_mass(mm)
    engine = _ShootingEngine(lambda x: u_eff(mm, ordering, mol, x), mm.mass, grid)
    if e_window is None:
        e_floor = float(np.min(engine.u_nodes))
        e_window = (e_floor + abs(e_floor) * 1e-12, 0.0)
    return [(n, engine.solve(n, e_window[0], e_window[1], tol_ev).E) for n in n_list]


def shoot_state(mm: MassModel, ordering: AmbiguityOrdering, mol: MoleculeSpec,
                grid: GridSpec, n: int, e_window: tuple[float, float] | None = None,
                tol_ev: float = 1e-7) -> ShootingResult:
    """Full shooting record (energy, node count, matching defect) for one level."""
    grid.validate_against_mass(mm)
    engine = _ShootingEngine(lambda x: u_eff(mm, ordering, mol, x), mm.mass, grid)
    if e_window is None:
        e_floor = float(np.min(engine.u_nodes))
        e_window = (e_floor + abs(e_floor) * 1e-12, 0.0)
    return engine.solve(n, e_window[0], e_window[1], tol_ev)


def default_domain(mol: MoleculeSpec, eta: float, e_floor_ev: float | None = None,
                   left: str = "physical") -> tuple[float, float]:
    """Suggested solver domain.

    left='physical' anchors x_min at -0.95 r0 (eta = 0) or max(-0.95 r0,
    singularity + margin); left='boundary' uses x_min = 0; left='singular'
    hugs the mass singularity.  x_max is placed where |V| has dropped to
    e_floor/1000 (default e_floor: 1% of the well depth).
    """
    if e_floor_ev is None:
        e_floor_ev = 0.01 * mol.D
    x_max = math.log(1000.0 * mol.V2 / e_floor_ev) / mol.beta
    if left == "boundary":
        x_min = 0.0
    elif left == "singular":
        if eta == 0.0:
            raise ConfigError("no singularity at eta = 0")
        x_min = math.log(eta) / mol.beta + 5 * SINGULARITY_MARGIN
    elif left == "physical":
        x_min = -0.95 * mol.r0
        if eta > 0.0:
            x_min = max(x_min, math.log(eta) / mol.beta + 5 * SINGULARITY_MARGIN)
    else:
        raise ConfigError(f"unknown domain anchor {left!r}")
    return (x_min, x_max)
