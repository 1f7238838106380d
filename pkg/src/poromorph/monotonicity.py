"""Monotonicity analysis of the 1D pressure Schur complement.

After eliminating velocity, the pressure solves A p = rhs with
A = kappa*L + dt*D P^{-1} D^T and P = rho*M + dt*mu_vis*L.  P^{-1} is
approximated by the fundamental solution of rho*u - dt*mu_vis*u'' with a
natural end at x = 0 and a pinned end at x = 1; its row and column for
the pinned vertex vanish, so the analysis lives on the first n of the
n+1 nodes and every retained entry is positive.  Leading order in h turns
A into a tridiagonal whose off-diagonal sign flips exactly at the critical
mesh size, which is where the M-matrix certificates below get their bite.
"""

from dataclasses import dataclass, replace
import math

import numpy as np
import scipy.sparse as sp

from . import assembly
from .linsolve import SingularMatrix

NU_OVERFLOW = 700.0
ZERO_RTOL = 1e-14


def _require_1d(mesh):
    if mesh.dim != 1:
        raise ValueError("this analysis is one-dimensional")


def nu_coefficient(params):
    """nu = sqrt(rho / (dt * mu_vis)), the fundamental-solution rate."""
    if params.mu_vis <= 0.0:
        raise ValueError("need mu_vis > 0 for the fundamental solution")
    return math.sqrt(params.rho / (params.dt * params.mu_vis))


def approx_p_inverse(mesh, params):
    """Fundamental-solution approximation of P^{-1} on the free nodes.

    Returns the dense symmetric matrix over nodes x_0 .. x_{n-1}; the
    pinned node x_n = 1 carries a vanishing row and is dropped.  Entry
    (i, j) is nu/(2 rho cosh nu) * [sinh(nu(1 - xmax + xmin))
    + sinh(nu(1 - xmax - xmin))] with xmin/xmax the ordered pair
    (x_i, x_j); for nu beyond the overflow range an exponent-shifted
    rearrangement evaluates the same quantity.
    """
    _require_1d(mesh)
    nu = nu_coefficient(params)
    x = mesh.vertices[:-1, 0]
    xmin = np.minimum.outer(x, x)
    xmax = np.maximum.outer(x, x)
    rho = params.rho
    if nu <= NU_OVERFLOW:
        return nu / (2.0 * rho * math.cosh(nu)) * (
            np.sinh(nu * (1.0 - xmax + xmin))
            + np.sinh(nu * (1.0 - xmax - xmin)))
    # sinh(a+b) + sinh(a-b) = 2 sinh(a) cosh(b) with a = nu(1-xmax),
    # b = nu*xmin; pull the dominant exponentials out front
    a = nu * (1.0 - xmax)
    b = nu * xmin
    return (nu / rho) * np.exp(a + b - nu) \
        * (1.0 - np.exp(-2.0 * a)) * (1.0 + np.exp(-2.0 * b)) \
        / (2.0 * (1.0 + math.exp(-2.0 * nu)))


def schur_row_coefficients(h, params):
    """Leading-order interior-row coefficients of the stabilized Schur matrix.

    off_diag = h/(4 mu_vis) - (kappa + beta)/h
    diag     = 2 (h/(4 mu_vis) + (kappa + beta)/h)
    beta = 0 in params recovers the unstabilized matrix.
    """
    if h <= 0.0:
        raise ValueError(f"need h > 0, got {h}")
    s = h / (4.0 * params.mu_vis)
    t = (params.kappa + params.beta) / h
    return s - t, 2.0 * (s + t)


def leading_order_schur(n, h, params):
    """The n x n tridiagonal built from schur_row_coefficients."""
    if n < 2:
        raise ValueError(f"need n >= 2 rows, got {n}")
    off, diag = schur_row_coefficients(h, params)
    return sp.diags([off * np.ones(n - 1), diag * np.ones(n),
                     off * np.ones(n - 1)], [-1, 0, 1], format="csr")


def is_m_matrix(a):
    """Sufficient M-matrix certificate.

    True iff every off-diagonal entry is at most 1e-14*||A||_inf, every
    diagonal entry is positive, and the matrix is weakly diagonally
    dominant with at least one strictly dominant row.
    """
    dense = np.asarray(a.toarray() if sp.issparse(a) else a, dtype=float)
    m, n = dense.shape
    if m != n:
        raise ValueError(f"matrix is {m}x{n}, not square")
    norm = float(np.max(np.sum(np.abs(dense), axis=1))) if n else 0.0
    tol = ZERO_RTOL * norm
    diag = np.diag(dense)
    if np.any(diag <= 0.0):
        return False
    off = dense - np.diag(diag)
    if np.any(off > tol):
        return False
    margin = diag - np.sum(np.abs(off), axis=1)
    if np.any(margin < -tol):
        return False
    return bool(np.any(margin > tol))


def critical_h(params):
    """Largest mesh size keeping the unstabilized Schur matrix monotone."""
    return 2.0 * math.sqrt(params.mu_vis * params.kappa)


def beta_star(h, params):
    """Stabilization threshold h^2/(4 mu_vis) - kappa; negative means none needed."""
    if h <= 0.0:
        raise ValueError(f"need h > 0, got {h}")
    return h * h / (4.0 * params.mu_vis) - params.kappa


def _reduced_operators(mesh):
    """(L, D) restricted to the free nodes x_0 .. x_{n-1}."""
    n = mesh.n_vertices - 1
    lap = assembly.assemble_laplace(mesh).tocsr()[:n, :n]
    div = assembly.assemble_divergence(mesh).tocsr()[:n, :n]
    return lap, div


def assemble_exact_schur(mesh, params):
    """kappa*L + dt*D P^{-1} D^T with the exact dense inverse of P.

    Everything is restricted to the free-node set of approx_p_inverse so
    the two matrices are directly comparable.
    """
    _require_1d(mesh)
    n = mesh.n_vertices - 1
    lap, div = _reduced_operators(mesh)
    mass = assembly.assemble_mass(mesh).tocsr()[:n, :n]
    p_mat = (params.rho * mass + params.dt * params.mu_vis * lap).toarray()
    try:
        x = np.linalg.solve(p_mat, div.T.toarray())
    except np.linalg.LinAlgError as exc:
        raise SingularMatrix(f"velocity operator is singular: {exc}") from exc
    schur = params.kappa * lap.toarray() + params.dt * (div.toarray() @ x)
    return sp.csr_matrix(schur)


def assemble_approx_schur(mesh, params):
    """(kappa+beta)*L + dt*D P~^{-1} D^T on the free-node set."""
    _require_1d(mesh)
    lap, div = _reduced_operators(mesh)
    pinv = approx_p_inverse(mesh, params)
    schur = (params.kappa + params.beta) * lap.toarray() \
        + params.dt * (div.toarray() @ pinv @ div.T.toarray())
    return sp.csr_matrix(schur)


@dataclass
class SchurAnalysis:
    h: float
    nu: float
    A: sp.csr_matrix
    B: sp.csr_matrix
    is_A_m_matrix: bool
    is_B_m_matrix: bool
    h_critical: float
    beta_star: float


def analyze_schur(mesh, params):
    """Assembled Schur matrices plus monotonicity verdicts and thresholds.

    A is the unstabilized matrix (beta forced to 0), B includes
    params.beta.  The verdict flags test the interior principal submatrix:
    boundary rows of the assembled matrices are reported inside A and B
    but the certificate is about interior-row structure.
    """
    _require_1d(mesh)
    a_params = replace(params, beta=0.0)
    a_mat = assemble_approx_schur(mesh, a_params)
    b_mat = assemble_approx_schur(mesh, params)
    a_dense = a_mat.toarray()
    b_dense = b_mat.toarray()
    return SchurAnalysis(
        h=mesh.h,
        nu=nu_coefficient(params),
        A=a_mat,
        B=b_mat,
        is_A_m_matrix=is_m_matrix(a_dense[1:-1, 1:-1]),
        is_B_m_matrix=is_m_matrix(b_dense[1:-1, 1:-1]),
        h_critical=critical_h(params),
        beta_star=beta_star(mesh.h, params),
    )
