"""Finite-element assembly on P1 nodal bases.

Velocity carries dim components per node, strain three symmetric slots
(11, 12, 22), pressure one.  Degrees of freedom are component-major:
component c of vertex j sits at c*nv + j within its field block.  All
integrands here are polynomial in P1 data, and the element kernels
integrate them exactly, so oracle comparisons are tight.

On 1D meshes every operator degenerates to its scalar analogue (one
velocity component, one strain slot) and the strain product load vanishes
identically.
"""

import numpy as np
import scipy.sparse as sp

from . import _kernels
from .linsolve import LinearSystem
from .mesh import GAMMA1, GAMMA2, boundary_vertices

SparseMatrix = sp.csr_matrix


def _finalize(rows, cols, vals, shape):
    mat = sp.coo_matrix((vals, (rows, cols)), shape=shape).tocsr()
    mat.sum_duplicates()
    mat.eliminate_zeros()
    return mat


def geometry(mesh):
    """Per-element (areas, basis gradients) for a 2D mesh, from the kernels."""
    return _kernels.p1_geometry(mesh.vertices, mesh.elements)


def _lengths_1d(mesh):
    x = mesh.vertices[:, 0]
    return x[mesh.elements[:, 1]] - x[mesh.elements[:, 0]]


def _pair_triplets_1d(mesh, vaa, vab, vba, vbb):
    """Spread per-element 2x2 blocks (a,b are element endpoints) to COO."""
    a = mesh.elements[:, 0]
    b = mesh.elements[:, 1]
    rows = np.concatenate([a, a, b, b])
    cols = np.concatenate([a, b, a, b])
    vals = np.concatenate([vaa, vab, vba, vbb])
    return rows, cols, vals


def _mass_scalar(mesh):
    nv = mesh.n_vertices
    if mesh.dim == 1:
        ell = _lengths_1d(mesh)
        rows, cols, vals = _pair_triplets_1d(
            mesh, ell / 3.0, ell / 6.0, ell / 6.0, ell / 3.0)
    else:
        areas, _ = geometry(mesh)
        rows, cols, vals = _kernels.mass_triplets(mesh.elements, areas)
    return _finalize(rows, cols, vals, (nv, nv))


def assemble_mass(mesh, n_components=1):
    """Block-diagonal consistent mass matrix, one block per component."""
    m = _mass_scalar(mesh)
    if n_components == 1:
        return m
    return sp.kron(sp.identity(n_components), m, format="csr")


def assemble_laplace(mesh):
    """Scalar stiffness matrix of the ∇ψ_j·∇ψ_i pairing."""
    nv = mesh.n_vertices
    if mesh.dim == 1:
        ell = _lengths_1d(mesh)
        inv = 1.0 / ell
        rows, cols, vals = _pair_triplets_1d(mesh, inv, -inv, -inv, inv)
    else:
        areas, grads = geometry(mesh)
        rows, cols, vals = _kernels.stiffness_triplets(
            mesh.elements, areas, grads)
    return _finalize(rows, cols, vals, (nv, nv))


def assemble_divergence(mesh):
    """D: stacked nodal velocity -> pressure test-space loads of div w."""
    nv = mesh.n_vertices
    if mesh.dim == 1:
        half = np.full(mesh.n_elements, 0.5)
        rows, cols, vals = _pair_triplets_1d(mesh, -half, half, -half, half)
        return _finalize(rows, cols, vals, (nv, nv))
    areas, grads = geometry(mesh)
    rows, cols, vals = _kernels.divergence_triplets(
        mesh.elements, areas, grads, nv)
    return _finalize(rows, cols, vals, (nv, 2 * nv))


def assemble_elastic(mesh, params):
    """S_el: stacked nodal strain -> velocity test-space loads of sigma_el.

    The middle (12) column block carries 2*mu for both off-diagonal stress
    slots; in 1D this is E times the transposed divergence matrix.
    """
    nv = mesh.n_vertices
    if mesh.dim == 1:
        return SparseMatrix(params.E * assemble_divergence(mesh).T)
    areas, grads = geometry(mesh)
    rows, cols, vals = _kernels.elastic_triplets(
        mesh.elements, areas, grads, nv, params.mu, params.lam)
    return _finalize(rows, cols, vals, (2 * nv, 3 * nv))


def assemble_viscous(mesh, params):
    """S_vis on stacked velocities; symmetric, PSD before boundary conditions."""
    nv = mesh.n_vertices
    if mesh.dim == 1:
        return SparseMatrix(params.mu_vis * assemble_laplace(mesh))
    areas, grads = geometry(mesh)
    rows, cols, vals = _kernels.viscous_triplets(
        mesh.elements, areas, grads, nv, params.mu1, params.mu2)
    return _finalize(rows, cols, vals, (2 * nv, 2 * nv))


def assemble_strain_coupling(mesh):
    """B: stacked velocity -> strain test-space loads of sym(grad w)."""
    nv = mesh.n_vertices
    if mesh.dim == 1:
        return assemble_divergence(mesh)
    areas, grads = geometry(mesh)
    rows, cols, vals = _kernels.strain_coupling_triplets(
        mesh.elements, areas, grads, nv)
    return _finalize(rows, cols, vals, (3 * nv, 2 * nv))


def _as_flat(name, field_arr, size):
    arr = np.ascontiguousarray(field_arr, dtype=float).ravel()
    if arr.size != size:
        raise ValueError(f"{name} has {arr.size} entries, expected {size}")
    return arr


def strain_product_slots(mesh, geom, w, e11, e12, e21, e22):
    """All four slot loads of the strain-velocity product terms.

    geom is the (areas, grads) pair from geometry(mesh); callers stepping
    in time pass a cached one.  Symmetric strain uses e21 = e12, which
    makes the 12 and 21 outputs identical.
    """
    areas, grads = geom
    return _kernels.strain_nonlinear(
        mesh.elements, areas, grads, mesh.n_vertices, w, e11, e12, e21, e22)


def assemble_strain_nonlinear(mesh, w, eps):
    """N(w, eps) for symmetric 3-slot strain, stacked (11, 12, 22)."""
    nv = mesh.n_vertices
    if mesh.dim == 1:
        _as_flat("w", w, nv)
        _as_flat("eps", eps, nv)
        return np.zeros(nv)
    w = _as_flat("w", w, 2 * nv)
    eps = _as_flat("eps", eps, 3 * nv)
    e11 = eps[:nv]
    e12 = eps[nv:2 * nv]
    e22 = eps[2 * nv:]
    n11, n12, _, n22 = strain_product_slots(
        mesh, geometry(mesh), w, e11, e12, e12, e22)
    return np.concatenate([n11, n12, n22])


def _eval_vector(f, verts, t, dim):
    out = np.zeros((verts.shape[0], dim))
    if f is None:
        return out
    for k in range(verts.shape[0]):
        out[k] = np.asarray(f(verts[k], t), dtype=float)
    return out


def _eval_scalar(f, verts, t):
    out = np.zeros(verts.shape[0])
    if f is None:
        return out
    for k in range(verts.shape[0]):
        out[k] = float(f(verts[k], t))
    return out


def assemble_loads(mesh, params, t, f_u=None, f_p=None, g_N=None, f_b=None):
    """Load vectors (b_w, b_p) at time t.

    Volume sources are interpolated nodally and hit with the mass matrix
    (exact for P1 data).  Boundary terms: traction f_b and the ambient
    pressure p0 enter b_w along the outflow boundary, the flux g_N is
    subtracted from b_p along the clamped boundary.
    """
    nv = mesh.n_vertices
    dim = mesh.dim
    verts = mesh.vertices

    m = _mass_scalar(mesh)
    fu = _eval_vector(f_u, verts, t, dim)
    b_w = np.concatenate([m @ fu[:, c] for c in range(dim)])
    b_p = m @ _eval_scalar(f_p, verts, t)

    if dim == 1:
        for (v,), tag in mesh.boundary_edges:
            if tag == GAMMA2:
                fb = _eval_vector(f_b, verts[v:v + 1], t, 1)[0, 0]
                normal = 1.0 if verts[v, 0] > 0.5 else -1.0
                b_w[v] += fb - params.p0 * normal
            else:
                b_p[v] -= _eval_scalar(g_N, verts[v:v + 1], t)[0]
        return b_w, b_p

    for (a, b), tag in mesh.boundary_edges:
        tang = verts[b] - verts[a]
        ell = float(np.hypot(tang[0], tang[1]))
        # CCW edge ordering puts the outward normal at (t_y, -t_x)/|t|
        normal = np.array([tang[1], -tang[0]]) / ell
        if tag == GAMMA2:
            fb = _eval_vector(f_b, verts[[a, b]], t, 2)
            for c in range(2):
                b_w[c * nv + a] += ell * (2.0 * fb[0, c] + fb[1, c]) / 6.0
                b_w[c * nv + b] += ell * (fb[0, c] + 2.0 * fb[1, c]) / 6.0
                b_w[c * nv + a] -= params.p0 * normal[c] * ell / 2.0
                b_w[c * nv + b] -= params.p0 * normal[c] * ell / 2.0
        else:
            gn = _eval_scalar(g_N, verts[[a, b]], t)
            b_p[a] -= ell * (2.0 * gn[0] + gn[1]) / 6.0
            b_p[b] -= ell * (gn[0] + 2.0 * gn[1]) / 6.0
    return b_w, b_p


def constrain_system(matrix, rhs, dofs, values):
    """Symmetric Dirichlet elimination.

    Zeroes the constrained rows and columns, puts 1 on their diagonal,
    moves the column contribution to the right-hand side, and pins the
    prescribed values.
    """
    n = matrix.shape[0]
    dofs = np.asarray(dofs, dtype=np.int64)
    values = np.asarray(values, dtype=float)
    keep = np.ones(n)
    keep[dofs] = 0.0
    lift = np.zeros(n)
    lift[dofs] = values
    free = sp.diags(keep)
    new_rhs = rhs - matrix @ lift
    new_mat = (free @ matrix @ free + sp.diags(1.0 - keep)).tocsr()
    new_mat.sum_duplicates()
    new_mat.eliminate_zeros()
    new_rhs[dofs] = values
    return new_mat, new_rhs


def coupled_dirichlet(mesh, params, n_eps_slots):
    """Dirichlet dof/value arrays for the monolithic (w, eps, p) layout.

    Velocity vanishes on every vertex of a clamped-boundary edge; pressure
    is pinned to p0 on every vertex of an outflow edge (closures included,
    so the two shared corner vertices carry both constraints).
    """
    nv = mesh.n_vertices
    dim = mesh.dim
    dofs = []
    values = []
    for v in boundary_vertices(mesh, GAMMA1):
        for c in range(dim):
            dofs.append(c * nv + v)
            values.append(0.0)
    p_base = (dim + n_eps_slots) * nv
    for v in boundary_vertices(mesh, GAMMA2):
        dofs.append(p_base + v)
        values.append(params.p0)
    return np.array(dofs, dtype=np.int64), np.array(values)


def apply_essential_bcs(system, mesh, params):
    """Pin the essential values of the monolithic system.

    The strain block width is inferred from the system size, so the
    4-slot variant passes through the same path.
    """
    n = system.matrix.shape[0]
    nv = mesh.n_vertices
    if n % nv:
        raise ValueError(f"system size {n} is not a multiple of {nv} vertices")
    n_eps = n // nv - mesh.dim - 1
    if n_eps < 0:
        raise ValueError(f"system size {n} is too small for this mesh")
    dofs, values = coupled_dirichlet(mesh, params, n_eps)
    matrix, rhs = constrain_system(system.matrix, system.rhs, dofs, values)
    return LinearSystem(matrix, rhs)
