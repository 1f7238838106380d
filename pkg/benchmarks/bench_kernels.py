"""Timing comparison of the compiled element kernels vs the Python fallback.

Run directly:  python3 benchmarks/bench_kernels.py [n]

Assembles every kernel on an n-subdivision unit square (default 40, about
3200 triangles) with both backends and reports per-call times and the
speedup.  Also cross-checks that the outputs are bitwise identical, which
is the contract that lets the fallback stand in for the extension.
"""

import sys
import time

import numpy as np

from poromorph._kernels import _core_py
from poromorph.mesh import unit_square_mesh

try:
    from poromorph._kernels import _core
except ImportError:
    _core = None


def best_of(fn, repeats=5):
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def main():
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 40
    mesh = unit_square_mesh(n)
    nv = mesh.n_vertices
    tris = mesh.elements
    areas, grads = _core_py.p1_geometry(mesh.vertices, tris)
    rng = np.random.default_rng(0)
    w = rng.standard_normal(2 * nv)
    e11, e12, e21, e22 = (rng.standard_normal(nv) for _ in range(4))

    cases = [
        ("p1_geometry", lambda m: m.p1_geometry(mesh.vertices, tris)),
        ("mass_triplets", lambda m: m.mass_triplets(tris, areas)),
        ("stiffness_triplets", lambda m: m.stiffness_triplets(tris, areas, grads)),
        ("divergence_triplets", lambda m: m.divergence_triplets(tris, areas, grads, nv)),
        ("elastic_triplets", lambda m: m.elastic_triplets(tris, areas, grads, nv, 0.5, 1.0)),
        ("viscous_triplets", lambda m: m.viscous_triplets(tris, areas, grads, nv, 1.0, 1.0)),
        ("strain_coupling_triplets", lambda m: m.strain_coupling_triplets(tris, areas, grads, nv)),
        ("strain_nonlinear", lambda m: m.strain_nonlinear(tris, areas, grads, nv, w, e11, e12, e21, e22)),
    ]

    print(f"mesh: {n} x {n} unit square, {mesh.n_elements} triangles, {nv} vertices")
    if _core is None:
        print("compiled core not available; timing the Python fallback only\n")
        print(f"{'kernel':<26} {'python':>10}")
        for name, call in cases:
            t_py, _ = best_of(lambda: call(_core_py))
            print(f"{name:<26} {t_py * 1e3:9.2f}ms")
        return

    print(f"{'kernel':<26} {'python':>10} {'compiled':>10} {'speedup':>8}  match")
    for name, call in cases:
        t_py, r_py = best_of(lambda: call(_core_py))
        t_c, r_c = best_of(lambda: call(_core))
        ok = "yes" if same(r_py, r_c) else "NO"
        print(f"{name:<26} {t_py * 1e3:9.2f}ms {t_c * 1e3:9.2f}ms "
              f"{t_py / t_c:7.1f}x  {ok}")


if __name__ == "__main__":
    main()
