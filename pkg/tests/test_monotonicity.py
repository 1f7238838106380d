"""Pressure Schur-complement monotonicity: thresholds and certificates."""

import math

import numpy as np
import pytest
import scipy.sparse as sp

import oracles
from poromorph import monotonicity
from poromorph.mesh import interval_mesh
from poromorph.monotonicity import (
    analyze_schur,
    approx_p_inverse,
    assemble_approx_schur,
    assemble_exact_schur,
    beta_star,
    critical_h,
    is_m_matrix,
    leading_order_schur,
    nu_coefficient,
    schur_row_coefficients,
)
from poromorph.params import ModelParams

BASE = ModelParams()  # mu_vis = 2, dt = 0.1, rho = 1


def test_nu_value():
    assert nu_coefficient(BASE) == pytest.approx(math.sqrt(5.0), rel=1e-15)
    assert nu_coefficient(BASE) == pytest.approx(2.23607, abs=1e-5)


def test_approx_inverse_symmetric_positive():
    mesh = interval_mesh(16)
    pinv = approx_p_inverse(mesh, BASE)
    assert pinv.shape == (16, 16)
    assert np.abs(pinv - pinv.T).max() < 1e-14
    assert pinv.min() > 0.0


def test_approx_inverse_overflow_branch_matches_direct():
    # Force the exponent-shifted branch at a moderate nu where the direct
    # formula is still finite; both must agree to near machine precision.
    mesh = interval_mesh(12)
    p = ModelParams(rho=250.0, dt=0.1, mu1=1.0, mu2=0.0)
    nu = nu_coefficient(p)
    assert 40.0 < nu < monotonicity.NU_OVERFLOW
    direct = approx_p_inverse(mesh, p)
    saved = monotonicity.NU_OVERFLOW
    try:
        monotonicity.NU_OVERFLOW = 1.0
        shifted = approx_p_inverse(mesh, p)
    finally:
        monotonicity.NU_OVERFLOW = saved
    scale = direct.max()
    assert np.abs(direct - shifted).max() < 1e-12 * scale


def test_approx_inverse_extreme_rate_is_finite():
    # nu ~ 2.2e5 overflows every plain sinh; the guarded branch must stay
    # finite, positive on the diagonal, and symmetric.
    mesh = interval_mesh(8)
    p = ModelParams(rho=1e8, dt=1e-3, mu1=1.0, mu2=1.0)
    assert nu_coefficient(p) > monotonicity.NU_OVERFLOW
    pinv = approx_p_inverse(mesh, p)
    assert np.all(np.isfinite(pinv))
    assert np.abs(pinv - pinv.T).max() <= 1e-12 * pinv.max()
    assert np.all(np.diag(pinv) > 0.0)


def test_schur_row_coefficients_examples():
    # h = 0.1, kappa = 1e-6: off-diagonal 0.1/8 - 1e-6/0.1 = 0.01249 > 0,
    # so no discrete maximum principle on that grid.
    off0, _ = schur_row_coefficients(0.1, ModelParams(kappa=1e-6))
    assert off0 == pytest.approx(0.01249, abs=1e-8)
    # h = 0.14 likewise positive
    off, diag = schur_row_coefficients(0.14, ModelParams(kappa=1e-6))
    assert off == pytest.approx(0.0174929, abs=1e-6)
    assert diag > 0.0
    # same h, kappa = 1e-2: off-diagonal goes negative
    off2, _ = schur_row_coefficients(0.14, ModelParams(kappa=1e-2))
    assert off2 < 0.0
    # on the fine grid, beta at the threshold pushes it negative
    off3, _ = schur_row_coefficients(
        math.sqrt(2.0) / 20.0, ModelParams(kappa=1e-6, beta=6.25e-4))
    assert off3 < 0.0


def test_is_m_matrix_examples():
    assert is_m_matrix(np.eye(4))
    tri = sp.diags([-np.ones(4), 2.0 * np.ones(5), -np.ones(4)],
                   [-1, 0, 1]).toarray()
    assert is_m_matrix(tri)
    assert not is_m_matrix(np.array([[1.0, 0.5], [0.5, 1.0]]))
    assert not is_m_matrix(np.array([[-1.0, 0.0], [0.0, 1.0]]))
    with pytest.raises(ValueError):
        is_m_matrix(np.ones((2, 3)))


def test_critical_h_values():
    assert critical_h(ModelParams(kappa=1e-6)) == pytest.approx(0.00283, abs=1e-4)
    assert critical_h(ModelParams(kappa=1e-2)) == pytest.approx(0.28284, abs=1e-4)


def test_beta_star_values():
    p = ModelParams(kappa=1e-6)
    bs = beta_star(math.sqrt(2.0) / 20.0, p)
    assert 6.1e-4 < bs < 6.3e-4
    assert bs == pytest.approx(6.24e-4, abs=1e-6)
    # kappa at or above h^2/(4 mu_vis) means no stabilization needed
    assert beta_star(0.14, ModelParams(kappa=1e-2)) < 0.0
    assert beta_star(2.0 * math.sqrt(2e-6), p) == pytest.approx(0.0, abs=1e-18)
    with pytest.raises(ValueError):
        beta_star(0.0, p)


def test_leading_order_schur_structure():
    a = leading_order_schur(5, 0.1, BASE).toarray()
    off, diag = schur_row_coefficients(0.1, BASE)
    assert a.shape == (5, 5)
    assert np.allclose(np.diag(a), diag)
    assert np.allclose(np.diag(a, 1), off)
    assert np.allclose(np.diag(a, -1), off)
    assert np.abs(np.triu(a, 2)).max() == 0.0


def test_exact_schur_symmetric_and_matches_construction():
    mesh = interval_mesh(10)
    p = ModelParams(kappa=1e-3)
    a = assemble_exact_schur(mesh, p).toarray()
    assert np.abs(a - a.T).max() < 1e-12 * np.abs(a).max()
    # independent dense construction from the oracle operators
    nv = mesh.n_vertices
    mass = oracles._dense_mass_1d(mesh)[:nv - 1, :nv - 1]
    lap = oracles._dense_stiffness_1d(mesh)[:nv - 1, :nv - 1]
    div = oracles._dense_divergence_1d(mesh)[:nv - 1, :nv - 1]
    p_mat = p.rho * mass + p.dt * p.mu_vis * lap
    ref = p.kappa * lap + p.dt * div @ np.linalg.solve(p_mat, div.T)
    assert np.abs(a - ref).max() < 1e-12 * np.abs(ref).max()


def test_analyze_schur_baseline_verdicts():
    # coarse grid, kappa = 1e-2: below critical h, monotone without help
    coarse = analyze_schur(interval_mesh(7), ModelParams(kappa=1e-2))
    assert coarse.h == pytest.approx(1.0 / 7.0)
    assert coarse.h < coarse.h_critical
    assert coarse.is_A_m_matrix
    assert coarse.beta_star < 0.0

    # fine grid, kappa = 1e-6: far above critical h, loses monotonicity
    fine = analyze_schur(interval_mesh(14), ModelParams(kappa=1e-6))
    assert fine.h > fine.h_critical
    assert not fine.is_A_m_matrix

    # adding beta >= beta_star restores it
    p_stab = ModelParams(kappa=1e-6, beta=float(fine.beta_star) * 1.01)
    fixed = analyze_schur(interval_mesh(14), p_stab)
    assert fixed.is_B_m_matrix
    assert not fixed.is_A_m_matrix


def test_analysis_requires_1d_mesh():
    from poromorph.mesh import unit_square_mesh
    with pytest.raises(ValueError):
        analyze_schur(unit_square_mesh(4), BASE)


def test_tridiagonal_and_assembled_verdicts_agree():
    # The assembled approximate Schur matrix carries corrections beyond the
    # leading-order tridiagonal that grow with nu*h, so the comparison stays
    # in the asymptotic regime (moderate viscosity, fine grid) and away from
    # the sign-change threshold (kappa factors well off 1).
    rng = np.random.default_rng(61)
    for _ in range(20):
        n = int(rng.integers(12, 25))
        mesh = interval_mesh(n)
        mu_vis = float(10.0 ** rng.uniform(0.0, 1.5))
        kappa_crit = mesh.h ** 2 / (4.0 * mu_vis)
        for factor in (0.3, 0.5, 2.0, 5.0):
            p = ModelParams(mu1=mu_vis, mu2=0.0, kappa=kappa_crit * factor)
            tri_verdict = is_m_matrix(
                leading_order_schur(n - 1, mesh.h, p).toarray()[1:-1, 1:-1])
            full = analyze_schur(mesh, p)
            assert tri_verdict == (factor >= 1.0)
            assert full.is_B_m_matrix == tri_verdict


def test_stabilization_monotone_in_beta():
    # once B(beta1) is an M-matrix, so is B(beta2) for beta2 >= beta1:
    # the off-diagonal coefficient decreases with beta.
    mesh = interval_mesh(14)
    p = ModelParams(kappa=1e-6)
    bs = beta_star(mesh.h, p)
    betas = [bs * f for f in (1.05, 2.0, 10.0)]
    verdicts = [
        analyze_schur(mesh, ModelParams(kappa=1e-6, beta=float(b))).is_B_m_matrix
        for b in betas]
    assert verdicts == [True, True, True]
    below = analyze_schur(mesh, ModelParams(kappa=1e-6, beta=float(bs) / 10.0))
    assert not below.is_B_m_matrix
