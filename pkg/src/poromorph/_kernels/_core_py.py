"""Pure-Python element kernels, the fallback for the compiled core.

The loop structure and operation order mirror _core.pyx exactly (and the
extension is compiled without FP contraction), so both backends produce
bitwise-identical triplets.  All functions take raw mesh arrays; degree-of-
freedom layout is component-major: component c of vertex j is c*nv + j.

Local P1 basis on a CCW triangle with vertices (x0,y0),(x1,y1),(x2,y2):
grad phi_k = (b_k, c_k) / (2A) with b_0 = y1 - y2, c_0 = x2 - x1 (cyclic).
"""

import numpy as np


def p1_geometry(verts, tris):
    """Per-triangle areas and basis gradients.

    Returns (areas (nt,), grads (nt, 3, 2)) with grads[t, k] = grad phi_k.
    """
    nt = tris.shape[0]
    areas = np.empty(nt)
    grads = np.empty((nt, 3, 2))
    for t in range(nt):
        v0, v1, v2 = tris[t, 0], tris[t, 1], tris[t, 2]
        x0, y0 = verts[v0, 0], verts[v0, 1]
        x1, y1 = verts[v1, 0], verts[v1, 1]
        x2, y2 = verts[v2, 0], verts[v2, 1]
        two_a = (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0)
        areas[t] = 0.5 * two_a
        grads[t, 0, 0] = (y1 - y2) / two_a
        grads[t, 0, 1] = (x2 - x1) / two_a
        grads[t, 1, 0] = (y2 - y0) / two_a
        grads[t, 1, 1] = (x0 - x2) / two_a
        grads[t, 2, 0] = (y0 - y1) / two_a
        grads[t, 2, 1] = (x1 - x0) / two_a
    return areas, grads


def mass_triplets(tris, areas):
    """COO triplets of the scalar consistent P1 mass matrix."""
    nt = tris.shape[0]
    rows = np.empty(9 * nt, dtype=np.int64)
    cols = np.empty(9 * nt, dtype=np.int64)
    vals = np.empty(9 * nt)
    k = 0
    for t in range(nt):
        a12 = areas[t] / 12.0
        for i in range(3):
            for j in range(3):
                rows[k] = tris[t, i]
                cols[k] = tris[t, j]
                vals[k] = 2.0 * a12 if i == j else a12
                k += 1
    return rows, cols, vals


def stiffness_triplets(tris, areas, grads):
    """COO triplets of the scalar stiffness (Laplace) matrix."""
    nt = tris.shape[0]
    rows = np.empty(9 * nt, dtype=np.int64)
    cols = np.empty(9 * nt, dtype=np.int64)
    vals = np.empty(9 * nt)
    k = 0
    for t in range(nt):
        a = areas[t]
        for i in range(3):
            for j in range(3):
                rows[k] = tris[t, i]
                cols[k] = tris[t, j]
                vals[k] = a * (grads[t, i, 0] * grads[t, j, 0]
                               + grads[t, i, 1] * grads[t, j, 1])
                k += 1
    return rows, cols, vals


def divergence_triplets(tris, areas, grads, nv):
    """Triplets of D: pressure test row i, velocity column (c*nv + j)."""
    nt = tris.shape[0]
    rows = np.empty(18 * nt, dtype=np.int64)
    cols = np.empty(18 * nt, dtype=np.int64)
    vals = np.empty(18 * nt)
    k = 0
    for t in range(nt):
        a3 = areas[t] / 3.0
        for i in range(3):
            for j in range(3):
                for c in range(2):
                    rows[k] = tris[t, i]
                    cols[k] = c * nv + tris[t, j]
                    vals[k] = a3 * grads[t, j, c]
                    k += 1
    return rows, cols, vals


def elastic_triplets(tris, areas, grads, nv, mu, lam):
    """Triplets of S_el: velocity test row (c*nv + i), strain column (s*nv + j).

    Columns are the nodal strain slots s = 0,1,2 for eps11, eps12, eps22;
    the eps12 column carries the 2*mu factor of both off-diagonal stress
    slots.
    """
    nt = tris.shape[0]
    e2 = 2.0 * mu + lam
    rows = np.empty(54 * nt, dtype=np.int64)
    cols = np.empty(54 * nt, dtype=np.int64)
    vals = np.empty(54 * nt)
    k = 0
    for t in range(nt):
        a3 = areas[t] / 3.0
        for i in range(3):
            gx = grads[t, i, 0]
            gy = grads[t, i, 1]
            for j in range(3):
                vj = tris[t, j]
                ri = tris[t, i]
                # test component 1: sigma11*gx + sigma12*gy
                rows[k] = ri;      cols[k] = vj;            vals[k] = a3 * e2 * gx
                rows[k + 1] = ri;  cols[k + 1] = nv + vj;   vals[k + 1] = a3 * 2.0 * mu * gy
                rows[k + 2] = ri;  cols[k + 2] = 2 * nv + vj; vals[k + 2] = a3 * lam * gx
                # test component 2: sigma12*gx + sigma22*gy
                rows[k + 3] = nv + ri; cols[k + 3] = vj;    vals[k + 3] = a3 * lam * gy
                rows[k + 4] = nv + ri; cols[k + 4] = nv + vj; vals[k + 4] = a3 * 2.0 * mu * gx
                rows[k + 5] = nv + ri; cols[k + 5] = 2 * nv + vj; vals[k + 5] = a3 * e2 * gy
                k += 6
    return rows, cols, vals


def viscous_triplets(tris, areas, grads, nv, mu1, mu2):
    """Triplets of the symmetric viscous stiffness S_vis on stacked velocities."""
    nt = tris.shape[0]
    rows = np.empty(36 * nt, dtype=np.int64)
    cols = np.empty(36 * nt, dtype=np.int64)
    vals = np.empty(36 * nt)
    k = 0
    for t in range(nt):
        a = areas[t]
        for i in range(3):
            gxi = grads[t, i, 0]
            gyi = grads[t, i, 1]
            for j in range(3):
                gxj = grads[t, j, 0]
                gyj = grads[t, j, 1]
                dot = gxj * gxi + gyj * gyi
                ri = tris[t, i]
                vj = tris[t, j]
                # entry[(i,c),(j,d)] = A*(mu1/2*(dc_d*(gj.gi) + g_c*G_d) + mu2*g_d*G_c)
                rows[k] = ri;     cols[k] = vj
                vals[k] = a * (0.5 * mu1 * (dot + gxj * gxi) + mu2 * gxj * gxi)
                rows[k + 1] = ri; cols[k + 1] = nv + vj
                vals[k + 1] = a * (0.5 * mu1 * gxj * gyi + mu2 * gyj * gxi)
                rows[k + 2] = nv + ri; cols[k + 2] = vj
                vals[k + 2] = a * (0.5 * mu1 * gyj * gxi + mu2 * gxj * gyi)
                rows[k + 3] = nv + ri; cols[k + 3] = nv + vj
                vals[k + 3] = a * (0.5 * mu1 * (dot + gyj * gyi) + mu2 * gyj * gyi)
                k += 4
    return rows, cols, vals


def strain_coupling_triplets(tris, areas, grads, nv):
    """Triplets of B: strain test row (s*nv + i), velocity column (c*nv + j).

    B*w is the slotwise load of sym(grad w): slot 11 tests d(w1)/dx,
    slot 12 tests (d(w1)/dy + d(w2)/dx)/2, slot 22 tests d(w2)/dy.
    """
    nt = tris.shape[0]
    rows = np.empty(36 * nt, dtype=np.int64)
    cols = np.empty(36 * nt, dtype=np.int64)
    vals = np.empty(36 * nt)
    k = 0
    for t in range(nt):
        a3 = areas[t] / 3.0
        for i in range(3):
            ri = tris[t, i]
            for j in range(3):
                vj = tris[t, j]
                gxj = grads[t, j, 0]
                gyj = grads[t, j, 1]
                rows[k] = ri;          cols[k] = vj;      vals[k] = a3 * gxj
                rows[k + 1] = nv + ri; cols[k + 1] = vj;  vals[k + 1] = 0.5 * a3 * gyj
                rows[k + 2] = nv + ri; cols[k + 2] = nv + vj; vals[k + 2] = 0.5 * a3 * gxj
                rows[k + 3] = 2 * nv + ri; cols[k + 3] = nv + vj; vals[k + 3] = a3 * gyj
                k += 4
    return rows, cols, vals


def strain_nonlinear(tris, areas, grads, nv, w, e11, e12, e21, e22):
    """Galerkin load of the strain-velocity product terms, all four slots.

    Per element the velocity gradient is constant and each bracket is linear
    in the nodal strain values, so the slot coefficient at node j times the
    element mass matrix gives the exact integral.  Symmetric callers pass
    e21 = e12 and use slots (11, 12, 22).
    """
    nt = tris.shape[0]
    n11 = np.zeros(nv)
    n12 = np.zeros(nv)
    n21 = np.zeros(nv)
    n22 = np.zeros(nv)
    for t in range(nt):
        v0, v1, v2 = tris[t, 0], tris[t, 1], tris[t, 2]
        w1x = (w[v0] * grads[t, 0, 0] + w[v1] * grads[t, 1, 0]
               + w[v2] * grads[t, 2, 0])
        w1y = (w[v0] * grads[t, 0, 1] + w[v1] * grads[t, 1, 1]
               + w[v2] * grads[t, 2, 1])
        w2x = (w[nv + v0] * grads[t, 0, 0] + w[nv + v1] * grads[t, 1, 0]
               + w[nv + v2] * grads[t, 2, 0])
        w2y = (w[nv + v0] * grads[t, 0, 1] + w[nv + v1] * grads[t, 1, 1]
               + w[nv + v2] * grads[t, 2, 1])
        s = 0.5 * (w1y - w2x)
        m = 0.5 * (w1y + w2x)
        div = w1x + w2y
        am = areas[t] / 12.0
        c11 = [0.0, 0.0, 0.0]
        c12 = [0.0, 0.0, 0.0]
        c21 = [0.0, 0.0, 0.0]
        c22 = [0.0, 0.0, 0.0]
        for j in range(3):
            vj = tris[t, j]
            f11 = e11[vj]
            f12 = e12[vj]
            f21 = e21[vj]
            f22 = e22[vj]
            tr = f11 + f22
            c11[j] = -s * (f12 + f21) + tr * w1x - div * f11
            c12[j] = s * (f11 - f22) + tr * m - div * f12
            c21[j] = s * (f11 - f22) + tr * m - div * f21
            c22[j] = s * (f12 + f21) + tr * w2y - div * f22
        for i in range(3):
            ri = tris[t, i]
            acc11 = 0.0
            acc12 = 0.0
            acc21 = 0.0
            acc22 = 0.0
            for j in range(3):
                mij = 2.0 * am if i == j else am
                acc11 += mij * c11[j]
                acc12 += mij * c12[j]
                acc21 += mij * c21[j]
                acc22 += mij * c22[j]
            n11[ri] += acc11
            n12[ri] += acc12
            n21[ri] += acc21
            n22[ri] += acc22
    return n11, n12, n21, n22
