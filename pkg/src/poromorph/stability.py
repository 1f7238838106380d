"""Linear stability analysis of the 1D model by Fourier modes.

The pressure amplitude of each mode is eliminated analytically, leaving a
2x2 system d/dt (w_l, e_l) + S (w_l, e_l) = 0 per wavenumber l.  Both
stability criteria are scaled characteristic-polynomial coefficients of S:
the first is rho times its determinant, the second rho times its trace,
so nonnegativity of both is equivalent to nonnegative eigenvalue real
parts.  Eigenvalues come from the closed-form quadratic, not a general
eigensolver.
"""

from dataclasses import dataclass
import math

import numpy as np

STABLE_TOL = 1e-12


class DegenerateMode(ValueError):
    """sin(pi*l*h) = 0: the pressure elimination divides by it."""


@dataclass
class ModeReport:
    l: int
    h: float
    symbol: np.ndarray
    eig_real_parts: tuple
    criterion1: float
    criterion2: float
    stable: bool


def continuous_criteria(l, params):
    """Both continuous-mode stability expressions and their joint verdict.

    c1 = 4 pi^2 l^2 (alpha mu_vis + E) + alpha/kappa
    c2 = 4 pi^2 l^2 mu_vis + 1/kappa + alpha rho
    """
    if l < 1:
        raise ValueError(f"need mode index l >= 1, got {l}")
    four_pi2_l2 = 4.0 * math.pi ** 2 * l * l
    c1 = four_pi2_l2 * (params.alpha * params.mu_vis + params.E) \
        + params.alpha / params.kappa
    c2 = four_pi2_l2 * params.mu_vis + 1.0 / params.kappa \
        + params.alpha * params.rho
    return c1, c2, bool(c1 >= 0.0 and c2 >= 0.0)


def _quadratic_real_parts(tr, det):
    """Real parts of the roots of x^2 - tr*x + det with real coefficients."""
    disc = tr * tr - 4.0 * det
    if disc < 0.0:
        re = 0.5 * tr
        return re, re
    root = math.sqrt(disc)
    big = 0.5 * (tr + root) if tr >= 0.0 else 0.5 * (tr - root)
    if big == 0.0:
        return 0.0, 0.0
    return big, det / big


def semidiscrete_symbol(l, n, params):
    """Mode report for wavenumber l on a uniform grid of n cells.

    Modes with sin(pi*l*h) = 0 (l a multiple of n) raise DegenerateMode:
    the cotangent in the eliminated pressure amplitude blows up there.
    """
    if n < 2:
        raise ValueError(f"need n >= 2 cells, got {n}")
    if l % n == 0:
        raise DegenerateMode(
            f"mode l = {l} is degenerate on an n = {n} grid")
    if not 1 <= l <= n - 1:
        raise ValueError(f"need 1 <= l <= {n - 1}, got l = {l}")
    h = 1.0 / n
    rho = params.rho
    mu_v = params.mu_vis
    sin2 = math.sin(math.pi * l * h) ** 2
    cos2 = math.cos(math.pi * l * h) ** 2
    sin_2x = math.sin(2.0 * math.pi * l * h)

    s11 = 4.0 * mu_v / (h * h * rho) * sin2 + cos2 / (params.kappa * rho)
    s12 = 1j * params.E / (h * rho) * sin_2x
    s21 = 1j / h * sin_2x
    symbol = np.array([[s11, s12], [s21, params.alpha]])

    c1 = (4.0 * sin2 / (h * h)) * (mu_v * params.alpha + params.E * cos2) \
        + (params.alpha / params.kappa) * cos2
    c2 = 4.0 * mu_v / (h * h) * sin2 + cos2 / params.kappa \
        + params.alpha * rho

    tr = s11 + params.alpha
    det = params.alpha * s11 + params.E * sin_2x * sin_2x / (h * h * rho)
    re1, re2 = _quadratic_real_parts(tr, det)
    stable = bool(re1 >= -STABLE_TOL and re2 >= -STABLE_TOL)
    return ModeReport(l=int(l), h=h, symbol=symbol,
                      eig_real_parts=(re1, re2),
                      criterion1=c1, criterion2=c2, stable=stable)


def consistency_check(l, h_list):
    """Discrete-vs-continuous frequency table along a refinement sequence.

    Rows are (h, 4 sin^2(pi l h)/h^2, 4 pi^2 l^2, relative gap); on the
    admissible range h < 1/(2l) the gap shrinks monotonically with h.
    """
    if l < 1:
        raise ValueError(f"need mode index l >= 1, got {l}")
    hs = [float(h) for h in h_list]
    if not hs:
        raise ValueError("h_list is empty")
    bound = 1.0 / (2.0 * l)
    for h in hs:
        if not 0.0 < h < bound:
            raise ValueError(f"need 0 < h < {bound}, got h = {h}")
    if any(b >= a for a, b in zip(hs, hs[1:])):
        raise ValueError("h_list must be strictly decreasing")
    exact = 4.0 * math.pi ** 2 * l * l
    table = []
    for h in hs:
        discrete = 4.0 * math.sin(math.pi * l * h) ** 2 / (h * h)
        table.append((h, discrete, exact, (exact - discrete) / exact))
    return table
