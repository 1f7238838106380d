"""Small dense-tensor algebra for d x d tensors (d = 1 or 2).

Used for the strain evolution right-hand side, for the reference solvers in
the tests, and wherever a pointwise tensor identity is needed.  All functions
are pure and operate on plain numpy arrays.
"""

import numpy as np


def _as_square(a, name="tensor"):
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{name} must be a square matrix, got shape {a.shape}")
    return a


def sym(a):
    """Symmetric part (A + A^T)/2."""
    a = _as_square(a)
    return 0.5 * (a + a.T)


def skw(a):
    """Skew-symmetric part (A - A^T)/2."""
    a = _as_square(a)
    return 0.5 * (a - a.T)


def tensor_dot(a, b):
    """Tensor scalar product A : B = sum_ij A_ij B_ij (= trace(A^T B))."""
    a = _as_square(a, "first operand")
    b = _as_square(b, "second operand")
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return float(np.sum(a * b))


def strain_rhs(eps, gradw, alpha):
    """Material strain rate for the evolution law with growth G = alpha*eps.

    Returns
        -[eps*skw(grad w) - skw(grad w)*eps + (tr(eps) - 1)*sym(grad w)] - alpha*eps

    which is D(eps)/Dt at a material point.  In 1D all skew terms vanish.
    """
    eps = _as_square(eps, "eps")
    gradw = _as_square(gradw, "gradw")
    if eps.shape != gradw.shape:
        raise ValueError(f"dimension mismatch: {eps.shape} vs {gradw.shape}")
    if not (np.all(np.isfinite(eps)) and np.all(np.isfinite(gradw)) and np.isfinite(alpha)):
        raise ValueError("strain_rhs requires finite input")
    s = skw(gradw)
    bracket = eps @ s - s @ eps + (np.trace(eps) - 1.0) * sym(gradw)
    return -bracket - alpha * eps
