"""Computational meshes: uniform interval grids and structured unit-square
triangulations with boundary tagging, plus vertex motion for the
moving-domain mode.

Boundary conventions
--------------------
Gamma1 is the clamped / no-normal-flow part ({x = 0}), Gamma2 the rest of
the boundary.  2D boundary edges are stored with counterclockwise
orientation around the domain, so the outward normal of an edge with
tangent t = b - a is (t_y, -t_x)/|t|.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

GAMMA1 = "Gamma1"
GAMMA2 = "Gamma2"


class ElementInversion(RuntimeError):
    """A vertex update collapsed or inverted at least one element."""


@dataclass(frozen=True)
class Mesh:
    """Immutable simplicial mesh.

    vertices : (n_v, dim) float array
    elements : (n_e, dim+1) int array, counterclockwise in 2D
    boundary_edges : tuple of (vertex-index tuple, tag); in 1D the "edges"
        are single boundary vertices
    h : characteristic element diameter (longest edge)
    grid_n : subdivisions per side for structured lattices, else None
    """

    dim: int
    vertices: np.ndarray
    elements: np.ndarray
    boundary_edges: tuple
    h: float
    grid_n: Optional[int] = None

    def __post_init__(self):
        self.vertices.setflags(write=False)
        self.elements.setflags(write=False)

    @property
    def n_vertices(self):
        return self.vertices.shape[0]

    @property
    def n_elements(self):
        return self.elements.shape[0]


def _element_measures(dim, vertices, elements):
    """Signed lengths (1D) or signed areas (2D), one per element."""
    if dim == 1:
        return vertices[elements[:, 1], 0] - vertices[elements[:, 0], 0]
    p0 = vertices[elements[:, 0]]
    p1 = vertices[elements[:, 1]]
    p2 = vertices[elements[:, 2]]
    return 0.5 * ((p1[:, 0] - p0[:, 0]) * (p2[:, 1] - p0[:, 1])
                  - (p2[:, 0] - p0[:, 0]) * (p1[:, 1] - p0[:, 1]))


def _max_diameter(dim, vertices, elements):
    if dim == 1:
        return float(np.max(np.abs(_element_measures(dim, vertices, elements))))
    best = 0.0
    for a, b in ((0, 1), (1, 2), (2, 0)):
        d = vertices[elements[:, a]] - vertices[elements[:, b]]
        best = max(best, float(np.max(np.hypot(d[:, 0], d[:, 1]))))
    return best


def _validated(dim, vertices, elements, boundary_edges, grid_n=None):
    measures = _element_measures(dim, vertices, elements)
    if np.any(measures <= 0.0):
        bad = int(np.argmin(measures))
        raise ElementInversion(
            f"element {bad} has non-positive measure {measures[bad]:.3e}")
    h = _max_diameter(dim, vertices, elements)
    return Mesh(dim, vertices, elements, tuple(boundary_edges), h, grid_n)


def unit_square_mesh(n):
    """Structured triangulation of [0,1]^2 with n subdivisions per side.

    (n+1)^2 vertices at (i/n, j/n) with index i + j*(n+1), 2*n^2 triangles
    split along the lower-left to upper-right diagonal of each cell, and
    h = sqrt(2)/n.  Gamma1 is the x = 0 side, Gamma2 the remaining three.
    """
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise ValueError(f"need n >= 2 subdivisions, got {n!r}")
    n = int(n)
    ticks = np.arange(n + 1) / n
    xx, yy = np.meshgrid(ticks, ticks, indexing="xy")
    vertices = np.column_stack([xx.ravel(), yy.ravel()])

    elements = np.empty((2 * n * n, 3), dtype=np.int64)
    k = 0
    for j in range(n):
        for i in range(n):
            v00 = i + j * (n + 1)
            v10 = v00 + 1
            v01 = v00 + (n + 1)
            v11 = v01 + 1
            elements[k] = (v00, v10, v11)
            elements[k + 1] = (v00, v11, v01)
            k += 2

    edges = []
    for i in range(n):                      # bottom, left to right
        edges.append(((i, i + 1), GAMMA2))
    for j in range(n):                      # right, bottom to top
        edges.append(((n + j * (n + 1), n + (j + 1) * (n + 1)), GAMMA2))
    for i in range(n, 0, -1):               # top, right to left
        edges.append(((i + n * (n + 1), i - 1 + n * (n + 1)), GAMMA2))
    for j in range(n, 0, -1):               # left, top to bottom
        edges.append(((j * (n + 1), (j - 1) * (n + 1)), GAMMA1))

    return _validated(2, vertices, elements, edges, grid_n=n)


def interval_mesh(n):
    """Uniform grid on (0, 1) with n elements; node 0 is Gamma1, node n Gamma2."""
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise ValueError(f"need n >= 2 subdivisions, got {n!r}")
    n = int(n)
    vertices = (np.arange(n + 1) / n).reshape(-1, 1)
    elements = np.column_stack([np.arange(n), np.arange(1, n + 1)]).astype(np.int64)
    edges = (((0,), GAMMA1), ((n,), GAMMA2))
    return _validated(1, vertices, elements, edges, grid_n=n)


def move_vertices(mesh, w, dt):
    """Return a copy of the mesh with vertices displaced by dt*w.

    w is a nodal velocity field, either (n_v, dim) or component-stacked flat
    of length dim*n_v.  Raises ElementInversion if any element measure
    becomes non-positive; h is recomputed.
    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    w = np.asarray(w, dtype=float)
    nv = mesh.n_vertices
    if w.ndim == 1:
        if w.size != mesh.dim * nv:
            raise ValueError(f"velocity has {w.size} entries, expected {mesh.dim * nv}")
        w = np.column_stack([w[c * nv:(c + 1) * nv] for c in range(mesh.dim)])
    elif w.shape != (nv, mesh.dim):
        raise ValueError(f"velocity has shape {w.shape}, expected ({nv}, {mesh.dim})")
    vertices = mesh.vertices + dt * w
    return _validated(mesh.dim, vertices, mesh.elements.copy(),
                      mesh.boundary_edges, grid_n=mesh.grid_n)


def boundary_vertices(mesh, tag):
    """Sorted vertex indices that lie on at least one boundary edge with this tag."""
    found = set()
    for verts, t in mesh.boundary_edges:
        if t == tag:
            found.update(int(v) for v in verts)
    return sorted(found)
