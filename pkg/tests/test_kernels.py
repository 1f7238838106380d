"""Element kernel backends: geometry values and compiled/Python parity."""

import os
import subprocess
import sys

import numpy as np
import pytest

from poromorph import _kernels
from poromorph._kernels import _core_py
from poromorph.mesh import unit_square_mesh

try:
    from poromorph._kernels import _core
except ImportError:
    _core = None

needs_compiled = pytest.mark.skipif(_core is None, reason="compiled core not built")


def test_backend_flags_consistent():
    assert _kernels.BACKEND in ("core", "core_py")
    assert _kernels.COMPILED == (_kernels.BACKEND == "core")


def test_geometry_reference_triangle():
    verts = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    tris = np.array([[0, 1, 2]], dtype=np.int64)
    areas, grads = _core_py.p1_geometry(verts, tris)
    assert areas[0] == pytest.approx(0.5)
    assert np.allclose(grads[0], [[-1.0, -1.0], [1.0, 0.0], [0.0, 1.0]])


def test_geometry_gradients_sum_to_zero():
    m = unit_square_mesh(4)
    areas, grads = _core_py.p1_geometry(m.vertices, m.elements)
    assert np.all(areas > 0.0)
    assert np.abs(grads.sum(axis=1)).max() < 1e-13
    # phi_k(v_j) = delta_kj once reconstructed from the gradient:
    # phi_k(x) = 1 + grad phi_k . (x - v_k)
    for t in range(m.n_elements):
        tri = m.elements[t]
        for k in range(3):
            for j in range(3):
                d = m.vertices[tri[j]] - m.vertices[tri[k]]
                val = 1.0 + grads[t, k] @ d
                assert val == pytest.approx(1.0 if j == k else 0.0, abs=1e-12)


def _random_inputs(seed=77, n=5):
    m = unit_square_mesh(n)
    nv = m.n_vertices
    areas, grads = _core_py.p1_geometry(m.vertices, m.elements)
    rng = np.random.default_rng(seed)
    w = rng.standard_normal(2 * nv)
    fields = [rng.standard_normal(nv) for _ in range(4)]
    return m, areas, grads, nv, w, fields


@needs_compiled
def test_compiled_matches_python_bitwise():
    m, areas, grads, nv, w, (e11, e12, e21, e22) = _random_inputs()
    tris = m.elements

    a_c, g_c = _core.p1_geometry(m.vertices, tris)
    a_p, g_p = _core_py.p1_geometry(m.vertices, tris)
    assert np.array_equal(a_c, a_p)
    assert np.array_equal(g_c, g_p)

    pairs = [
        (_core.mass_triplets(tris, areas), _core_py.mass_triplets(tris, areas)),
        (_core.stiffness_triplets(tris, areas, grads),
         _core_py.stiffness_triplets(tris, areas, grads)),
        (_core.divergence_triplets(tris, areas, grads, nv),
         _core_py.divergence_triplets(tris, areas, grads, nv)),
        (_core.elastic_triplets(tris, areas, grads, nv, 0.5, 1.0),
         _core_py.elastic_triplets(tris, areas, grads, nv, 0.5, 1.0)),
        (_core.viscous_triplets(tris, areas, grads, nv, 1.0, 1.0),
         _core_py.viscous_triplets(tris, areas, grads, nv, 1.0, 1.0)),
        (_core.strain_coupling_triplets(tris, areas, grads, nv),
         _core_py.strain_coupling_triplets(tris, areas, grads, nv)),
    ]
    for compiled, fallback in pairs:
        for arr_c, arr_p in zip(compiled, fallback):
            assert np.array_equal(np.asarray(arr_c), np.asarray(arr_p))

    n_c = _core.strain_nonlinear(tris, areas, grads, nv, w, e11, e12, e21, e22)
    n_p = _core_py.strain_nonlinear(tris, areas, grads, nv, w, e11, e12, e21, e22)
    for slot_c, slot_p in zip(n_c, n_p):
        assert np.array_equal(np.asarray(slot_c), np.asarray(slot_p))


def test_force_python_env_switch():
    code = "import poromorph; print(poromorph.BACKEND, poromorph.COMPILED)"
    out = subprocess.run(
        [sys.executable, "-c", code],
        capture_output=True, text=True, check=True,
        env={**os.environ, "POROMORPH_FORCE_PYTHON": "1"},
    )
    assert out.stdout.split() == ["core_py", "False"]


def test_triplet_dtypes_and_shapes():
    m, areas, grads, nv, w, fields = _random_inputs(seed=3, n=3)
    rows, cols, vals = _core_py.mass_triplets(m.elements, areas)
    assert len(rows) == len(cols) == len(vals) == 9 * m.n_elements
    slots = _core_py.strain_nonlinear(m.elements, areas, grads, nv, w, *fields)
    assert len(slots) == 4
    for s in slots:
        assert np.asarray(s).shape == (nv,)
