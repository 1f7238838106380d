"""Material and discretization parameters shared by all solver components."""

import math
from dataclasses import dataclass, fields


class ValidationError(ValueError):
    """A parameter or configuration value violates one of its invariants."""


@dataclass(frozen=True)
class ModelParams:
    """Parameters of the morpho-visco-poroelastic model.

    Attributes
    ----------
    rho : float
        Material density.
    mu, lam : float
        Lame parameters of the elastic stress 2*mu*eps + lam*tr(eps)*I.
    mu1, mu2 : float
        Viscosity coefficients of mu1*sym(grad w) + mu2*tr(sym(grad w))*I.
    kappa : float
        Permeability over fluid viscosity (Darcy coefficient).
    alpha : float
        Strain relaxation rate of the growth law G = alpha*eps.  May be
        negative in stability probes.
    beta : float
        Pressure stabilization parameter; 0 disables stabilization.
    dt : float
        Time step.
    p0 : float
        Ambient pressure prescribed on the traction boundary.
    """

    rho: float = 1.0
    mu: float = 0.5
    lam: float = 1.0
    mu1: float = 1.0
    mu2: float = 1.0
    kappa: float = 1e-2
    alpha: float = 1.0
    beta: float = 0.0
    dt: float = 0.1
    p0: float = 0.0

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                raise ValidationError(f"{f.name} must be a finite number, got {value!r}")
        checks = [
            ("rho > 0", self.rho > 0),
            ("mu > 0", self.mu > 0),
            ("lam >= 0", self.lam >= 0),
            ("mu1 >= 0", self.mu1 >= 0),
            ("mu2 >= 0", self.mu2 >= 0),
            ("kappa > 0", self.kappa > 0),
            ("dt > 0", self.dt > 0),
            ("beta >= 0", self.beta >= 0),
        ]
        for name, ok in checks:
            if not ok:
                raise ValidationError(f"parameter invariant violated: {name}")

    @property
    def E(self):
        """Uniaxial stiffness 2*mu + lam, recomputed on every access."""
        return 2.0 * self.mu + self.lam

    @property
    def mu_vis(self):
        """Total viscosity mu1 + mu2, recomputed on every access."""
        return self.mu1 + self.mu2
