"""Backward-Euler time stepping of the coupled velocity-strain-pressure system.

Each step solves one monolithic sparse system per fixed-point pass, with the
strain-velocity product load lagged to the previous iterate.  The system
matrix does not change between passes (the lagged terms sit on the right-hand
side), so it is factorized once per step and, on a fixed mesh, reused across
steps.

Unknown layout for the monolithic solve, with nv vertices:
    2D: [w1, w2 | e11, e12, e22 | p], each block of length nv
    1D: [w | e | p]
A state carrying a fourth strain slot (eps21 not None) switches to the
redundant layout [w | e11, e12, e22 | e21 | p], which integrates both
off-diagonal slots independently; with symmetric data their rows stay
identical, which is what the symmetry-propagation checks exercise.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.sparse as sp

from . import assembly
from .linsolve import Factorization, SingularMatrix
from .mesh import ElementInversion, move_vertices

FIXED_POINT_TOL = 1e-10
FIXED_POINT_CAP = 50


class NonConvergence(RuntimeError):
    """Fixed-point iteration hit the cap without meeting tolerance."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


@dataclass
class State:
    """Nodal fields at one time level.

    w and u are component-stacked (dim*nv), eps slot-stacked (11, 12, 22
    in 2D), p plain nodal.  eps21 activates the redundant 4-slot path.
    """

    t: float
    w: np.ndarray
    eps: np.ndarray
    p: np.ndarray
    u: np.ndarray
    mesh: object
    eps21: Optional[np.ndarray] = None

    def __post_init__(self):
        nv = self.mesh.n_vertices
        dim = self.mesh.dim
        n_slots = 3 if dim == 2 else 1
        for name, arr, size in (("w", self.w, dim * nv),
                                ("eps", self.eps, n_slots * nv),
                                ("p", self.p, nv),
                                ("u", self.u, dim * nv)):
            if arr.shape != (size,):
                raise ValueError(
                    f"{name} has shape {arr.shape}, expected ({size},)")
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"{name} contains non-finite entries")
        if self.eps21 is not None:
            if self.mesh.dim != 2:
                raise ValueError("the redundant strain slot is 2D-only")
            if self.eps21.shape != (nv,):
                raise ValueError(
                    f"eps21 has shape {self.eps21.shape}, expected ({nv},)")
            if not np.all(np.isfinite(self.eps21)):
                raise ValueError("eps21 contains non-finite entries")

    def strain_tensor(self, vertex):
        """The reconstructed strain tensor at one vertex."""
        nv = self.mesh.n_vertices
        if self.mesh.dim == 1:
            return np.array([[self.eps[vertex]]])
        e11 = self.eps[vertex]
        e12 = self.eps[nv + vertex]
        e22 = self.eps[2 * nv + vertex]
        e21 = e12 if self.eps21 is None else self.eps21[vertex]
        return np.array([[e11, e12], [e21, e22]])


@dataclass
class StepReport:
    fixed_point_iters: int
    final_update_norm: float
    converged: bool


@dataclass
class RunResult:
    state: State
    reports: list

    @property
    def n_steps(self):
        return len(self.reports)


def zero_state(mesh, p_value=0.0, four_slot=False):
    """Quiescent state at t = 0 with uniform pressure p_value."""
    nv = mesh.n_vertices
    dim = mesh.dim
    n_slots = 3 if dim == 2 else 1
    eps21 = np.zeros(nv) if (four_slot and dim == 2) else None
    return State(t=0.0, w=np.zeros(dim * nv), eps=np.zeros(n_slots * nv),
                 p=np.full(nv, float(p_value)), u=np.zeros(dim * nv),
                 mesh=mesh, eps21=eps21)


class _StepOperators:
    """Everything about one (mesh, params, layout) that survives a step.

    Holds the constrained factorized matrix, the Dirichlet lift data, and
    the pieces needed to build right-hand sides.
    """

    def __init__(self, mesh, params, four_slot):
        self.mesh = mesh
        self.params = params
        self.four_slot = four_slot
        nv = mesh.n_vertices
        dim = mesh.dim
        dt = params.dt

        self.m_scalar = assembly.assemble_mass(mesh)
        self.laplace = assembly.assemble_laplace(mesh)
        div = assembly.assemble_divergence(mesh)
        s_el = assembly.assemble_elastic(mesh, params)
        s_vis = assembly.assemble_viscous(mesh, params)
        b_mat = assembly.assemble_strain_coupling(mesh)
        self.geom = assembly.geometry(mesh) if dim == 2 else None

        m_w = assembly.assemble_mass(mesh, dim)
        m_eps = assembly.assemble_mass(mesh, 3 if dim == 2 else 1)
        w_block = params.rho * m_w + dt * s_vis
        relax = 1.0 + params.alpha * dt
        perm = (params.kappa + params.beta) * self.laplace

        if four_slot:
            c12 = s_el[:, nv:2 * nv]
            s_el_main = sp.hstack(
                [s_el[:, :nv], 0.5 * c12, s_el[:, 2 * nv:]], format="csr")
            blocks = [
                [w_block, dt * s_el_main, dt * 0.5 * c12, -dt * div.T],
                [-dt * b_mat, relax * m_eps, None, None],
                [-dt * b_mat[nv:2 * nv, :], None, relax * self.m_scalar, None],
                [div, None, None, perm],
            ]
            n_eps = 4
        else:
            blocks = [
                [w_block, dt * s_el, -dt * div.T],
                [-dt * b_mat, relax * m_eps, None],
                [div, None, perm],
            ]
            n_eps = 3 if dim == 2 else 1
        matrix = sp.bmat(blocks, format="csr")

        dofs, values = assembly.coupled_dirichlet(mesh, params, n_eps)
        self.bc_dofs = dofs
        self.bc_values = values
        lift = np.zeros(matrix.shape[0])
        lift[dofs] = values
        self.bc_shift = matrix @ lift
        keep = np.ones(matrix.shape[0])
        keep[dofs] = 0.0
        free = sp.diags(keep)
        constrained = (free @ matrix @ free + sp.diags(1.0 - keep)).tocsr()
        self.factor = Factorization(constrained)

    def matches(self, mesh, params, four_slot):
        return (self.mesh is mesh and self.params == params
                and self.four_slot == four_slot)

    def rhs(self, state, sources, t_new):
        """Time-level part of the right-hand side (lagged terms excluded)."""
        mesh = self.mesh
        params = self.params
        nv = mesh.n_vertices
        dim = mesh.dim
        dt = params.dt
        kw = {} if sources is None else {
            "f_u": sources.f_u, "f_p": sources.f_p,
            "g_N": sources.g_N, "f_b": sources.f_b}
        b_w, b_p = assembly.assemble_loads(mesh, params, t_new, **kw)

        m = self.m_scalar
        rw = np.concatenate(
            [params.rho * (m @ state.w[c * nv:(c + 1) * nv])
             for c in range(dim)]) + dt * b_w
        n_slots = 3 if dim == 2 else 1
        reps = np.concatenate(
            [m @ state.eps[s * nv:(s + 1) * nv] for s in range(n_slots)])
        rp = params.beta * (self.laplace @ state.p) + b_p
        if self.four_slot:
            r21 = m @ state.eps21
            return np.concatenate([rw, reps, r21, rp])
        return np.concatenate([rw, reps, rp])

    def lagged_load(self, w, eps, eps21):
        """The strain product load at the current iterate, in row order."""
        mesh = self.mesh
        nv = mesh.n_vertices
        if mesh.dim == 1:
            return None
        e11 = np.ascontiguousarray(eps[:nv])
        e12 = np.ascontiguousarray(eps[nv:2 * nv])
        e22 = np.ascontiguousarray(eps[2 * nv:])
        e21 = e12 if eps21 is None else np.ascontiguousarray(eps21)
        w = np.ascontiguousarray(w)
        n11, n12, n21, n22 = assembly.strain_product_slots(
            mesh, self.geom, w, e11, e12, e21, e22)
        if self.four_slot:
            return np.concatenate([n11, n12, n22, n21])
        return np.concatenate([n11, n12, n22])


_cache = []


def _operators(mesh, params, four_slot):
    if _cache and _cache[0].matches(mesh, params, four_slot):
        return _cache[0]
    ops = _StepOperators(mesh, params, four_slot)
    _cache[:] = [ops]
    return ops


def step(state, params, sources=None, domain_mode="fixed"):
    """Advance one backward-Euler step; returns (new_state, report).

    The strain nonlinearity is resolved by fixed-point iteration seeded
    from the previous time level; each pass reuses the same factorized
    matrix.  In moving mode the converged velocity then displaces the
    mesh vertices.
    """
    if domain_mode not in ("fixed", "moving"):
        raise ValueError(f"unknown domain mode {domain_mode!r}")
    mesh = state.mesh
    nv = mesh.n_vertices
    dim = mesh.dim
    dt = params.dt
    four_slot = state.eps21 is not None
    t_new = state.t + dt

    ops = _operators(mesh, params, four_slot)
    base = ops.rhs(state, sources, t_new)

    nw = dim * nv
    neps = (3 if dim == 2 else 1) * nv
    w_k = state.w
    eps_k = state.eps
    eps21_k = state.eps21
    prev = np.concatenate(
        [state.w, state.eps, state.p] if not four_slot
        else [state.w, state.eps, state.eps21, state.p])

    norm = np.inf
    iters = 0
    x = prev
    while iters < FIXED_POINT_CAP:
        iters += 1
        rhs = base.copy()
        lag = ops.lagged_load(w_k, eps_k, eps21_k)
        if lag is not None:
            rhs[nw:nw + lag.size] -= dt * lag
        rhs -= ops.bc_shift
        rhs[ops.bc_dofs] = ops.bc_values
        x = ops.factor.solve(rhs)
        scale = float(np.max(np.abs(x)))
        norm = float(np.max(np.abs(x - prev))) / (scale if scale > 0.0 else 1.0)
        w_k = x[:nw]
        eps_k = x[nw:nw + neps]
        if four_slot:
            eps21_k = x[nw + neps:nw + neps + nv]
        prev = x
        if norm <= FIXED_POINT_TOL:
            break
    converged = norm <= FIXED_POINT_TOL
    report = StepReport(fixed_point_iters=iters, final_update_norm=norm,
                        converged=converged)
    if not converged:
        raise NonConvergence(
            f"fixed point stalled at update {norm:.3e} after {iters} passes",
            report=report)

    p_new = x[-nv:]
    u_new = state.u + dt * w_k
    new_mesh = mesh
    if domain_mode == "moving":
        new_mesh = move_vertices(mesh, w_k, dt)
    new_state = State(t=t_new, w=w_k, eps=eps_k, p=p_new, u=u_new,
                      mesh=new_mesh, eps21=eps21_k)
    return new_state, report


def run(initial, params, sources=None, n_steps=1, observers=(),
        domain_mode="fixed"):
    """Apply step n_steps times; observers see each completed state."""
    if n_steps < 1:
        raise ValueError(f"need n_steps >= 1, got {n_steps}")
    state = initial
    reports = []
    for k in range(1, n_steps + 1):
        try:
            state, report = step(state, params, sources,
                                 domain_mode=domain_mode)
        except (NonConvergence, SingularMatrix, ElementInversion) as exc:
            wrapped = type(exc)(f"step {k}: {exc}")
            wrapped.report = getattr(exc, "report", None)
            raise wrapped from exc
        reports.append(report)
        for obs in observers:
            obs(state)
    return RunResult(state=state, reports=reports)
