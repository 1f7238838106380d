"""Fourier-mode stability: continuous and grid symbols, consistency."""

import math

import numpy as np
import pytest

from poromorph.params import ModelParams
from poromorph.stability import (
    DegenerateMode,
    consistency_check,
    continuous_criteria,
    semidiscrete_symbol,
)

BASE = ModelParams()  # kappa = 1e-2, E = 2, mu_vis = 2, alpha = rho = 1


def test_continuous_baseline_values():
    c1, c2, stable = continuous_criteria(1, BASE)
    assert c1 == pytest.approx(16.0 * math.pi ** 2 + 100.0, rel=1e-12)
    assert c2 == pytest.approx(8.0 * math.pi ** 2 + 101.0, rel=1e-12)
    assert c1 == pytest.approx(257.91, abs=5e-3)
    assert c2 == pytest.approx(179.96, abs=5e-3)
    assert stable


def test_continuous_zero_relaxation_is_stable():
    p = ModelParams(alpha=0.0)
    for l in range(1, 11):
        c1, c2, stable = continuous_criteria(l, p)
        assert c1 >= 0.0 and c2 > 0.0 and stable


def test_continuous_negative_relaxation_counterexample():
    # alpha = -1 with mu_vis = E = 2 cancels the l^2 term of the first
    # criterion exactly; the tiny negative alpha/kappa remainder flips it.
    p = ModelParams(mu=1.0, lam=0.0, mu1=2.0, mu2=0.0,
                    kappa=1e6, alpha=-1.0)
    c1, c2, stable = continuous_criteria(1, p)
    assert c1 == pytest.approx(-1e-6, rel=1e-6)
    assert not stable


def test_continuous_rejects_bad_mode():
    with pytest.raises(ValueError):
        continuous_criteria(0, BASE)
    with pytest.raises(ValueError):
        continuous_criteria(-2, BASE)


def test_semidiscrete_baseline_all_modes_stable():
    for n in (10, 20):
        for l in range(1, n):
            rep = semidiscrete_symbol(l, n, BASE)
            assert rep.stable
            assert rep.criterion1 >= 0.0
            assert rep.criterion2 >= 0.0


def test_semidiscrete_half_grid_mode_decouples():
    # l = n/2 makes sin(2 pi l h) = 0: the symbol is diagonal and the
    # eigenvalues are exactly its diagonal entries.
    n = 8
    rep = semidiscrete_symbol(4, n, BASE)
    assert abs(rep.symbol[0, 1]) < 1e-13
    assert abs(rep.symbol[1, 0]) < 1e-13
    h = 1.0 / n
    s11 = 4.0 * BASE.mu_vis / (h * h * BASE.rho)  # cos^2 term vanishes
    assert rep.symbol[0, 0].real == pytest.approx(s11, rel=1e-12)
    assert sorted(rep.eig_real_parts) == pytest.approx(
        sorted((s11, BASE.alpha)), rel=1e-12)


def test_semidiscrete_eigenvalues_match_dense_solver():
    rng = np.random.default_rng(51)
    for _ in range(25):
        n = int(rng.integers(4, 40))
        l = int(rng.integers(1, n))
        if l % n == 0:
            continue
        p = ModelParams(
            rho=float(10.0 ** rng.uniform(-2, 2)),
            mu=float(10.0 ** rng.uniform(-2, 2)),
            lam=0.0,
            mu1=float(10.0 ** rng.uniform(-2, 2)),
            mu2=0.0,
            kappa=float(10.0 ** rng.uniform(-4, 2)),
            alpha=float(rng.uniform(-2.0, 4.0)),
        )
        rep = semidiscrete_symbol(l, n, p)
        eigs = np.linalg.eigvals(rep.symbol)
        got = sorted(rep.eig_real_parts)
        ref = sorted(eigs.real)
        scale = max(abs(ref[0]), abs(ref[1]), 1.0)
        assert abs(got[0] - ref[0]) < 1e-9 * scale
        assert abs(got[1] - ref[1]) < 1e-9 * scale


def test_semidiscrete_negative_relaxation_counterexample():
    p = ModelParams(kappa=1e3, alpha=-0.5)
    verdicts = [semidiscrete_symbol(l, 20, p).stable for l in range(1, 20)]
    assert not all(verdicts)


def test_semidiscrete_degenerate_and_range_errors():
    with pytest.raises(DegenerateMode):
        semidiscrete_symbol(0, 20, BASE)
    with pytest.raises(DegenerateMode):
        semidiscrete_symbol(20, 20, BASE)
    with pytest.raises(DegenerateMode):
        semidiscrete_symbol(40, 20, BASE)
    with pytest.raises(ValueError):
        semidiscrete_symbol(22, 20, BASE)
    with pytest.raises(ValueError):
        semidiscrete_symbol(3, 1, BASE)
    # DegenerateMode is itself a ValueError so callers can catch broadly
    assert issubclass(DegenerateMode, ValueError)


def test_consistency_small_h_tiny_gap():
    table = consistency_check(1, [1e-3])
    h, discrete, exact, gap = table[0]
    assert exact == pytest.approx(4.0 * math.pi ** 2, rel=1e-15)
    assert abs(gap) <= 1e-5


def test_consistency_second_order_in_h():
    table = consistency_check(1, [0.1, 0.05, 0.025])
    gaps = [row[3] for row in table]
    assert gaps[0] > gaps[1] > gaps[2] > 0.0
    assert gaps[0] / gaps[1] == pytest.approx(4.0, abs=0.2)
    assert gaps[1] / gaps[2] == pytest.approx(4.0, abs=0.1)


def test_consistency_coarse_high_mode_gap():
    # l = 2 on h = 0.1: 4 sin^2(0.2 pi)/h^2 vs 16 pi^2 leaves a 12.5% gap.
    table = consistency_check(2, [0.1])
    _, discrete, exact, gap = table[0]
    assert discrete == pytest.approx(400.0 * math.sin(0.2 * math.pi) ** 2, rel=1e-12)
    assert gap == pytest.approx(0.1248598, abs=1e-6)


def test_consistency_validation():
    with pytest.raises(ValueError):
        consistency_check(0, [0.01])
    with pytest.raises(ValueError):
        consistency_check(1, [])
    with pytest.raises(ValueError):
        consistency_check(1, [0.6])      # above 1/(2l)
    with pytest.raises(ValueError):
        consistency_check(2, [0.3])      # above 1/(2l) for l = 2
    with pytest.raises(ValueError):
        consistency_check(1, [0.05, 0.1])  # not decreasing
    with pytest.raises(ValueError):
        consistency_check(1, [0.1, 0.1])   # not strictly decreasing
