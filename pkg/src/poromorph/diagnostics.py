"""Solution-quality measures: total variation, oscillation counts, symmetry.

The pressure diagnostics work on the nodal lattice underlying the
structured triangulation (the triangles share its nodes), with grid
weights dx = dy = 1/n.
"""

from dataclasses import dataclass, replace

import numpy as np

from . import timestepper
from .linsolve import SingularMatrix
from .mesh import ElementInversion, unit_square_mesh
from .scenarios import get_scenario


@dataclass(frozen=True)
class GridField:
    """Scalar samples on a structured nx-by-ny lattice, row-major in y."""

    nx: int
    ny: int
    dx: float
    dy: float
    values: np.ndarray

    def __post_init__(self):
        if self.nx < 1 or self.ny < 1:
            raise ValueError(f"bad lattice shape {self.nx} x {self.ny}")
        if not (self.dx > 0.0 and self.dy > 0.0):
            raise ValueError(f"bad spacings dx={self.dx}, dy={self.dy}")
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != (self.nx * self.ny,):
            raise ValueError(
                f"values has shape {vals.shape}, expected ({self.nx * self.ny},)")
        object.__setattr__(self, "values", vals)

    def grid(self):
        return self.values.reshape(self.ny, self.nx)


def pressure_grid(state):
    """The pressure field of a structured-mesh state as a GridField."""
    mesh = state.mesh
    if mesh.dim != 2 or mesh.grid_n is None:
        raise ValueError("pressure_grid needs a structured 2D lattice mesh")
    n = mesh.grid_n
    return GridField(nx=n + 1, ny=n + 1, dx=1.0 / n, dy=1.0 / n,
                     values=state.p.copy())


def total_variation(field):
    """Anisotropic total variation of the lattice field.

    Sum of dy-weighted absolute x-differences and dx-weighted absolute
    y-differences over all neighbor pairs.
    """
    if field.nx < 2 or field.ny < 2:
        raise ValueError("total variation needs at least a 2 x 2 lattice")
    v = field.grid()
    tv_x = np.sum(np.abs(np.diff(v, axis=1)))
    tv_y = np.sum(np.abs(np.diff(v, axis=0)))
    return float(field.dy * tv_x + field.dx * tv_y)


def oscillation_indicator(field):
    """Fraction of interior nodes that are strict 1D extrema both ways.

    A node counts when it is a strict local extremum along its x grid line
    and along its y grid line; checkerboards score 1, monotone fields 0,
    and a single smooth interior bump scores only its peak.
    """
    if field.nx < 3 or field.ny < 3:
        raise ValueError("oscillation indicator needs interior nodes")
    v = field.grid()
    c = v[1:-1, 1:-1]
    along_x = ((c - v[1:-1, :-2]) * (c - v[1:-1, 2:])) > 0.0
    along_y = ((c - v[:-2, 1:-1]) * (c - v[2:, 1:-1])) > 0.0
    hits = np.logical_and(along_x, along_y)
    return float(np.count_nonzero(hits)) / hits.size


def symmetry_norm(state):
    """Max nodal Frobenius norm of eps - eps^T.

    Exactly zero for the structural 3-slot strain; for the redundant
    4-slot representation it measures how far the two off-diagonal slots
    have drifted apart.
    """
    if state.eps21 is None:
        return 0.0
    nv = state.mesh.n_vertices
    gap = state.eps[nv:2 * nv] - state.eps21
    return float(np.sqrt(2.0) * np.max(np.abs(gap))) if gap.size else 0.0


def tv_sweep(params, beta_list, scenario, mesh=None, n_steps=1):
    """One run per beta, returning [(beta, TV of the final pressure)].

    beta_list must be ascending (ties allowed).  scenario is a preset name
    or a Sources bundle; the default mesh is the 20-subdivision unit
    square of the pressure experiments.
    """
    betas = [float(b) for b in beta_list]
    if any(b > a for a, b in zip(betas[1:], betas)):
        raise ValueError("beta_list must be ascending")
    if isinstance(scenario, str):
        scenario = get_scenario(scenario)
    if mesh is None:
        mesh = unit_square_mesh(20)
    rows = []
    for beta in betas:
        run_params = replace(params, beta=beta)
        state = timestepper.zero_state(mesh, p_value=run_params.p0)
        try:
            result = timestepper.run(state, run_params, scenario,
                                     n_steps=n_steps)
        except (timestepper.NonConvergence, SingularMatrix,
                ElementInversion) as exc:
            wrapped = type(exc)(f"beta={beta:g}: {exc}")
            wrapped.report = getattr(exc, "report", None)
            raise wrapped from exc
        rows.append((beta, total_variation(pressure_grid(result.state))))
    return rows
