"""Physical parameters, ordering parameters, and the dimensionless reduction.

The potential is V(x) = V1 exp(-2 beta x) - V2 exp(-beta x) with x = r - r0
and beta = alpha'/r0; the coordinate-dependent mass is
m(x) = m0 / (1 - eta exp(-beta x))^2 with 0 <= eta < 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, MassSingularity
from .units import energy_scale_ev

# Relative tolerance guarding transcription errors between a stored E0 and
# the value recomputed from physical constants.
E0_CONSISTENCY_RTOL = 5e-3


@dataclass(frozen=True)
class MoleculeSpec:
    """Physical parameters of a diatomic molecule.

    D is the dissociation energy (eV), r0 the equilibrium separation
    (Angstrom), m0 the reduced mass (amu) and alpha_prime the dimensionless
    range parameter.  E0 = hbar^2/(m0 r0^2) (eV) may be supplied (it is then
    checked against the recomputed value to 0.5% relative) or left None to be
    computed.  V1/V2 default to D and 2D; explicit values allow synthetic
    wells.
    """

    name: str
    D: float
    r0: float
    m0: float
    alpha_prime: float
    E0: float | None = None
    V1: float | None = None
    V2: float | None = None

    def __post_init__(self):
        for label, value in (("D", self.D), ("r0", self.r0), ("m0", self.m0),
                             ("alpha_prime", self.alpha_prime)):
            if not value > 0:
                raise ConfigError(f"{label} must be positive, got {value}")
        e0_ref = energy_scale_ev(self.m0, self.r0)
        if self.E0 is None:
            object.__setattr__(self, "E0", e0_ref)
        else:
            if not self.E0 > 0:
                raise ConfigError(f"E0 must be positive, got {self.E0}")
            if abs(self.E0 - e0_ref) / self.E0 > E0_CONSISTENCY_RTOL:
                raise ConfigError(
                    f"E0={self.E0} inconsistent with hbar^2/(m0 r0^2)={e0_ref:.6e} "
                    f"beyond {E0_CONSISTENCY_RTOL:.1%}")
        if self.V1 is None:
            object.__setattr__(self, "V1", self.D)
        if self.V2 is None:
            object.__setattr__(self, "V2", 2.0 * self.D)

    @property
    def beta(self) -> float:
        """Inverse length alpha'/r0 (1/Angstrom)."""
        return self.alpha_prime / self.r0


@dataclass(frozen=True)
class AmbiguityOrdering:
    """Kinetic-operator ordering parameters (a, alpha, gamma).

    beta_order is fixed by the constraint alpha + beta_order + gamma = -1.
    """

    a: float
    alpha: float
    gamma: float
    beta_order: float = field(init=False)

    def __post_init__(self):
        if self.a == -1.0:
            raise ConfigError("ordering parameter a = -1 is singular (1+a divides)")
        object.__setattr__(self, "beta_order", -1.0 - self.alpha - self.gamma)
        # exact by construction up to float re-association
        assert abs(self.alpha + self.beta_order + self.gamma + 1.0) <= 1e-12

    @property
    def c_ord(self) -> float:
        """(a - 2*alpha*gamma - alpha - gamma) / (2 (1+a))."""
        return (self.a - 2 * self.alpha * self.gamma - self.alpha - self.gamma) / (2 * (1 + self.a))

    @property
    def c2_ord(self) -> float:
        """(alpha + gamma + 1) / (1+a)."""
        return (self.alpha + self.gamma + 1) / (1 + self.a)

    @property
    def A1(self) -> float:
        return (self.a - self.alpha * self.gamma - self.alpha - self.gamma) / (1 + self.a) - 0.75

    @property
    def A2(self) -> float:
        return (self.alpha + self.gamma - self.a) / (2 * (1 + self.a)) + 0.5


WEYL = AmbiguityOrdering(a=1.0, alpha=0.0, gamma=0.0)
LI_KUHN = AmbiguityOrdering(a=0.0, alpha=0.0, gamma=-0.5)

_ORDERING_PRESETS = {"weyl": WEYL, "likuhn": LI_KUHN, "li-kuhn": LI_KUHN}


def parse_ordering(text: str) -> AmbiguityOrdering:
    """Parse 'weyl', 'likuhn', or an explicit 'a,alpha,gamma' triple."""
    key = text.strip().lower()
    if key in _ORDERING_PRESETS:
        return _ORDERING_PRESETS[key]
    parts = key.split(",")
    if len(parts) != 3:
        raise ConfigError(f"unknown ordering {text!r}; expected weyl, likuhn or a,alpha,gamma")
    try:
        a, alpha, gamma = (float(p) for p in parts)
    except ValueError as exc:
        raise ConfigError(f"malformed ordering triple {text!r}") from exc
    return AmbiguityOrdering(a=a, alpha=alpha, gamma=gamma)


def ordering_label(ordering: AmbiguityOrdering) -> str:
    if ordering == WEYL:
        return "weyl"
    if ordering == LI_KUHN:
        return "likuhn"
    return f"{ordering.a:g},{ordering.alpha:g},{ordering.gamma:g}"


@dataclass(frozen=True)
class MassModel:
    """Coordinate-dependent mass m(x) = m0 / (1 - eta exp(-beta x))^2."""

    m0: float
    eta: float
    beta: float

    def __post_init__(self):
        if not 0.0 <= self.eta < 1.0:
            raise ConfigError(f"eta out of range: {self.eta} (require 0 <= eta < 1)")
        if not (self.m0 > 0 and self.beta > 0):
            raise ConfigError("m0 and beta must be positive")

    @classmethod
    def for_molecule(cls, mol: MoleculeSpec, eta: float) -> "MassModel":
        return cls(m0=mol.m0, eta=eta, beta=mol.beta)

    @property
    def singularity_x(self) -> float | None:
        """Position of the mass singularity, or None for eta = 0 (always < 0)."""
        if self.eta == 0.0:
            return None
        return math.log(self.eta) / self.beta

    def _u(self, x):
        return 1.0 - self.eta * np.exp(-self.beta * np.asarray(x, dtype=float))

    def mass(self, x):
        """m(x) in amu; raises MassSingularity within 1e-12 of the pole."""
        u = self._u(x)
        if np.any(np.abs(u) < 1e-12):
            raise MassSingularity(f"mass singular at x = {self.singularity_x}")
        return self.m0 / u**2

    def mass_d1(self, x):
        """dm/dx (amu / Angstrom)."""
        w = np.exp(-self.beta * np.asarray(x, dtype=float))
        u = 1.0 - self.eta * w
        if np.any(np.abs(u) < 1e-12):
            raise MassSingularity(f"mass singular at x = {self.singularity_x}")
        return -2.0 * self.m0 * self.eta * self.beta * w / u**3

    def mass_d2(self, x):
        """d2m/dx2 (amu / Angstrom^2)."""
        w = np.exp(-self.beta * np.asarray(x, dtype=float))
        u = 1.0 - self.eta * w
        if np.any(np.abs(u) < 1e-12):
            raise MassSingularity(f"mass singular at x = {self.singularity_x}")
        return 2.0 * self.m0 * self.eta * self.beta**2 * w * (1.0 + 2.0 * self.eta * w) / u**4


def mass_value(mm: MassModel, x):
    """m(x) for a mass model; see MassModel.mass."""
    return mm.mass(x)


def potential_value(mol: MoleculeSpec, x):
    """V(x) = V1 exp(-2 beta x) - V2 exp(-beta x) in eV (defined for all real x)."""
    w = np.exp(-mol.beta * np.asarray(x, dtype=float))
    out = mol.V1 * w**2 - mol.V2 * w
    return float(out) if np.isscalar(x) or np.ndim(x) == 0 else out


@dataclass(frozen=True)
class ReducedSystem:
    """Dimensionless problem after unit reduction.

    eps1 = v1 - 4 eta^2 (c_ord - 1/4), eps2 = -eta c2_ord - v2, and energies
    map back through E = -e_scale * eps with e_scale = beta^2 hbar^2 / (2 m0)
    = alpha'^2 E0 / 2 (eV).
    """

    v1: float
    v2: float
    eta: float
    c_ord: float
    c2_ord: float
    A1: float
    A2: float
    eps1: float
    eps2: float
    e_scale: float

    def __post_init__(self):
        if not (self.v1 > 0 and self.v2 > 0):
            raise ConfigError("v1 and v2 must be positive")
        if not self.e_scale > 0:
            raise ConfigError("e_scale must be positive")
        if not 0.0 <= self.eta < 1.0:
            raise ConfigError(f"eta out of range: {self.eta} (require 0 <= eta < 1)")


def reduce(mol: MoleculeSpec, eta: float, ordering: AmbiguityOrdering,
           V1: float | None = None, V2: float | None = None) -> ReducedSystem:
    """Reduce physical parameters to the dimensionless system.

    Optional V1/V2 (eV) override the molecule's well for synthetic tests.
    2 m0/(beta^2 hbar^2) equals 2/(alpha'^2 E0), so v1 = 2 V1/(alpha'^2 E0).
    """
    if not 0.0 <= eta < 1.0:
        raise ConfigError(f"eta out of range: {eta} (require 0 <= eta < 1)")
    v1_e = mol.V1 if V1 is None else V1
    v2_e = mol.V2 if V2 is None else V2
    scale = mol.alpha_prime**2 * mol.E0
    v1 = 2.0 * v1_e / scale
    v2 = 2.0 * v2_e / scale
    c_ord = ordering.c_ord
    c2_ord = ordering.c2_ord
    eps1 = v1 - 4.0 * eta**2 * (c_ord - 0.25)
    eps2 = -eta * c2_ord - v2
    sys = ReducedSystem(v1=v1, v2=v2, eta=eta, c_ord=c_ord, c2_ord=c2_ord,
                        A1=ordering.A1, A2=ordering.A2, eps1=eps1, eps2=eps2,
                        e_scale=scale / 2.0)
    # Algebraic identity linking the ordering combinations to the eps1 bracket.
    assert abs(sys.A1 + sys.A2 - (c_ord - 0.25)) <= 1e-12 * max(1.0, abs(c_ord))
    return sys
