"""Field serialization: CSV tables and legacy ASCII VTK.

Both writers emit full double precision (17 significant digits) with
fixed row ordering, so identical states produce byte-identical files.
"""

import csv

import numpy as np

from .diagnostics import GridField

CSV_HEADER = ("x", "y", "p", "w1", "w2",
              "eps11", "eps12", "eps22", "u1", "u2")


def _fmt(value):
    return format(float(value), ".17g")


def write_field_csv(state, path):
    """One row per node, sorted by (y, x), header fixed by CSV_HEADER."""
    mesh = state.mesh
    if mesh.dim != 2:
        raise ValueError("the field CSV layout is two-dimensional")
    nv = mesh.n_vertices
    x = mesh.vertices[:, 0]
    y = mesh.vertices[:, 1]
    order = np.lexsort((x, y))
    cols = (x, y, state.p,
            state.w[:nv], state.w[nv:],
            state.eps[:nv], state.eps[nv:2 * nv], state.eps[2 * nv:],
            state.u[:nv], state.u[nv:])
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(CSV_HEADER) + "\n")
        for i in order:
            fh.write(",".join(_fmt(c[i]) for c in cols) + "\n")


def read_field_csv(path):
    """Columns of a field CSV as a name -> array dict."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty file") from None
        rows = [[float(cell) for cell in row] for row in reader if row]
    if tuple(header) != CSV_HEADER:
        raise ValueError(
            f"{path}: unexpected header {header!r}")
    if not rows:
        raise ValueError(f"{path}: no data rows")
    data = np.array(rows)
    if data.shape[1] != len(CSV_HEADER):
        raise ValueError(
            f"{path}: rows have {data.shape[1]} columns, "
            f"expected {len(CSV_HEADER)}")
    return {name: data[:, k] for k, name in enumerate(CSV_HEADER)}


def grid_from_csv(path, column="p"):
    """Rebuild a GridField from a field CSV on a uniform lattice.

    The rows must cover a full nx-by-ny tensor grid with uniform spacing;
    anything else (a moved mesh, missing nodes) is rejected.
    """
    table = read_field_csv(path)
    if column not in table:
        raise ValueError(f"{path}: no column {column!r}")
    x = table["x"]
    y = table["y"]
    xs = np.unique(x)
    ys = np.unique(y)
    nx, ny = xs.size, ys.size
    if nx < 2 or ny < 2 or nx * ny != x.size:
        raise ValueError(
            f"{path}: {x.size} rows do not form a {nx} x {ny} lattice")

    def spacing(ticks, axis):
        gaps = np.diff(ticks)
        d = float(gaps.mean())
        if d <= 0.0 or np.max(np.abs(gaps - d)) > 1e-9 * (ticks[-1] - ticks[0]):
            raise ValueError(f"{path}: non-uniform {axis} spacing")
        return d

    dx = spacing(xs, "x")
    dy = spacing(ys, "y")
    order = np.lexsort((x, y))
    xi = np.searchsorted(xs, x[order])
    yi = np.searchsorted(ys, y[order])
    expect = np.arange(x.size)
    if np.any(yi * nx + xi != expect):
        raise ValueError(f"{path}: rows do not tile the lattice")
    return GridField(nx=nx, ny=ny, dx=dx, dy=dy,
                     values=table[column][order])


def write_field_vtk(state, path):
    """Legacy ASCII unstructured-grid file with the nodal fields.

    POINTS (z = 0), triangle CELLS, then POINT_DATA: scalars p, eps11,
    eps12, eps22 and vectors w, u.
    """
    mesh = state.mesh
    if mesh.dim != 2:
        raise ValueError("the VTK writer is two-dimensional")
    nv = mesh.n_vertices
    ne = mesh.n_elements
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("# vtk DataFile Version 3.0\n")
        fh.write(f"coupled tissue fields t={_fmt(state.t)}\n")
        fh.write("ASCII\n")
        fh.write("DATASET UNSTRUCTURED_GRID\n")
        fh.write(f"POINTS {nv} double\n")
        for i in range(nv):
            fh.write(f"{_fmt(mesh.vertices[i, 0])} "
                     f"{_fmt(mesh.vertices[i, 1])} 0\n")
        fh.write(f"CELLS {ne} {4 * ne}\n")
        for t in range(ne):
            a, b, c = mesh.elements[t]
            fh.write(f"3 {a} {b} {c}\n")
        fh.write(f"CELL_TYPES {ne}\n")
        for _ in range(ne):
            fh.write("5\n")
        fh.write(f"POINT_DATA {nv}\n")
        for name, vals in (("p", state.p),
                           ("eps11", state.eps[:nv]),
                           ("eps12", state.eps[nv:2 * nv]),
                           ("eps22", state.eps[2 * nv:])):
            fh.write(f"SCALARS {name} double 1\n")
            fh.write("LOOKUP_TABLE default\n")
            for v in vals:
                fh.write(_fmt(v) + "\n")
        for name, vals in (("w", state.w), ("u", state.u)):
            fh.write(f"VECTORS {name} double\n")
            for i in range(nv):
                fh.write(f"{_fmt(vals[i])} {_fmt(vals[nv + i])} 0\n")
