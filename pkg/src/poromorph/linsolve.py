"""Direct sparse solves for the per-iteration linear systems.

Desk-scale problems get an exact LU factorization; iterative solvers are
deliberately out of scope because the matrix-monotonicity checks need
inverse entries free of iteration error.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

PIVOT_RTOL = 1e-14


class SingularMatrix(RuntimeError):
    """The factorization hit a pivot indistinguishable from zero."""


@dataclass
class LinearSystem:
    """A square sparse system A x = b; solution is filled in by solve."""

    matrix: sp.spmatrix
    rhs: np.ndarray
    solution: Optional[np.ndarray] = field(default=None)

    def __post_init__(self):
        m, n = self.matrix.shape
        if m != n:
            raise ValueError(f"matrix is {m}x{n}, not square")
        if np.shape(self.rhs) != (n,):
            raise ValueError(
                f"rhs has shape {np.shape(self.rhs)}, expected ({n},)")


class Factorization:
    """Sparse LU of one matrix, reusable across right-hand sides.

    Raises SingularMatrix if any diagonal entry of U falls at or below
    PIVOT_RTOL times the infinity norm of the matrix.
    """

    def __init__(self, matrix):
        mat = sp.csc_matrix(matrix)
        self.norm = spla.norm(mat, np.inf) if mat.nnz else 0.0
        try:
            self._lu = spla.splu(mat)
        except RuntimeError as exc:
            raise SingularMatrix(str(exc)) from exc
        pivots = np.abs(self._lu.U.diagonal())
        smallest = float(pivots.min()) if pivots.size else 0.0
        if smallest <= PIVOT_RTOL * self.norm:
            raise SingularMatrix(
                f"pivot {smallest:.3e} at or below "
                f"{PIVOT_RTOL:g} * ||A||_inf = {PIVOT_RTOL * self.norm:.3e}")

    def solve(self, rhs):
        x = self._lu.solve(np.asarray(rhs, dtype=float))
        if not np.all(np.isfinite(x)):
            raise SingularMatrix("solve produced non-finite entries")
        return x


def solve(system):
    """Solve the system in place and return the solution vector."""
    x = Factorization(system.matrix).solve(system.rhs)
    system.solution = x
    return x
