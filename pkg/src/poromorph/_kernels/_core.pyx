# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
# cython: cdivision=True
"""Compiled element kernels.

Operation order matches _core_py.py line for line and the extension is built
with floating-point contraction disabled, so results are bitwise identical
to the pure-Python backend.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def p1_geometry(const double[:, ::1] verts, const long[:, ::1] tris):
    cdef Py_ssize_t nt = tris.shape[0]
    areas_arr = np.empty(nt)
    grads_arr = np.empty((nt, 3, 2))
    cdef double[::1] areas = areas_arr
    cdef double[:, :, ::1] grads = grads_arr
    cdef Py_ssize_t t, v0, v1, v2
    cdef double x0, y0, x1, y1, x2, y2, two_a
    for t in range(nt):
        v0 = tris[t, 0]; v1 = tris[t, 1]; v2 = tris[t, 2]
        x0 = verts[v0, 0]; y0 = verts[v0, 1]
        x1 = verts[v1, 0]; y1 = verts[v1, 1]
        x2 = verts[v2, 0]; y2 = verts[v2, 1]
        two_a = (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0)
        areas[t] = 0.5 * two_a
        grads[t, 0, 0] = (y1 - y2) / two_a
        grads[t, 0, 1] = (x2 - x1) / two_a
        grads[t, 1, 0] = (y2 - y0) / two_a
        grads[t, 1, 1] = (x0 - x2) / two_a
        grads[t, 2, 0] = (y0 - y1) / two_a
        grads[t, 2, 1] = (x1 - x0) / two_a
    return areas_arr, grads_arr


def mass_triplets(const long[:, ::1] tris, const double[::1] areas):
    cdef Py_ssize_t nt = tris.shape[0]
    rows_arr = np.empty(9 * nt, dtype=np.int64)
    cols_arr = np.empty(9 * nt, dtype=np.int64)
    vals_arr = np.empty(9 * nt)
    cdef long[::1] rows = rows_arr
    cdef long[::1] cols = cols_arr
    cdef double[::1] vals = vals_arr
    cdef Py_ssize_t t, i, j, k = 0
    cdef double a12
    for t in range(nt):
        a12 = areas[t] / 12.0
        for i in range(3):
            for j in range(3):
                rows[k] = tris[t, i]
                cols[k] = tris[t, j]
                vals[k] = 2.0 * a12 if i == j else a12
                k += 1
    return rows_arr, cols_arr, vals_arr


def stiffness_triplets(const long[:, ::1] tris, const double[::1] areas,
                       const double[:, :, ::1] grads):
    cdef Py_ssize_t nt = tris.shape[0]
    rows_arr = np.empty(9 * nt, dtype=np.int64)
    cols_arr = np.empty(9 * nt, dtype=np.int64)
    vals_arr = np.empty(9 * nt)
    cdef long[::1] rows = rows_arr
    cdef long[::1] cols = cols_arr
    cdef double[::1] vals = vals_arr
    cdef Py_ssize_t t, i, j, k = 0
    cdef double a
    for t in range(nt):
        a = areas[t]
        for i in range(3):
            for j in range(3):
                rows[k] = tris[t, i]
                cols[k] = tris[t, j]
                vals[k] = a * (grads[t, i, 0] * grads[t, j, 0]
                               + grads[t, i, 1] * grads[t, j, 1])
                k += 1
    return rows_arr, cols_arr, vals_arr


def divergence_triplets(const long[:, ::1] tris, const double[::1] areas,
                        const double[:, :, ::1] grads, Py_ssize_t nv):
    cdef Py_ssize_t nt = tris.shape[0]
    rows_arr = np.empty(18 * nt, dtype=np.int64)
    cols_arr = np.empty(18 * nt, dtype=np.int64)
    vals_arr = np.empty(18 * nt)
    cdef long[::1] rows = rows_arr
    cdef long[::1] cols = cols_arr
    cdef double[::1] vals = vals_arr
    cdef Py_ssize_t t, i, j, c, k = 0
    cdef double a3
    for t in range(nt):
        a3 = areas[t] / 3.0
        for i in range(3):
            for j in range(3):
                for c in range(2):
                    rows[k] = tris[t, i]
                    cols[k] = c * nv + tris[t, j]
                    vals[k] = a3 * grads[t, j, c]
                    k += 1
    return rows_arr, cols_arr, vals_arr


def elastic_triplets(const long[:, ::1] tris, const double[::1] areas,
                     const double[:, :, ::1] grads, Py_ssize_t nv,
                     double mu, double lam):
    cdef Py_ssize_t nt = tris.shape[0]
    cdef double e2 = 2.0 * mu + lam
    rows_arr = np.empty(54 * nt, dtype=np.int64)
    cols_arr = np.empty(54 * nt, dtype=np.int64)
    vals_arr = np.empty(54 * nt)
    cdef long[::1] rows = rows_arr
    cdef long[::1] cols = cols_arr
    cdef double[::1] vals = vals_arr
    cdef Py_ssize_t t, i, j, k = 0, ri, vj
    cdef double a3, gx, gy
    for t in range(nt):
        a3 = areas[t] / 3.0
        for i in range(3):
            gx = grads[t, i, 0]
            gy = grads[t, i, 1]
            for j in range(3):
                vj = tris[t, j]
                ri = tris[t, i]
                rows[k] = ri;      cols[k] = vj;            vals[k] = a3 * e2 * gx
                rows[k + 1] = ri;  cols[k + 1] = nv + vj;   vals[k + 1] = a3 * 2.0 * mu * gy
                rows[k + 2] = ri;  cols[k + 2] = 2 * nv + vj; vals[k + 2] = a3 * lam * gx
                rows[k + 3] = nv + ri; cols[k + 3] = vj;    vals[k + 3] = a3 * lam * gy
                rows[k + 4] = nv + ri; cols[k + 4] = nv + vj; vals[k + 4] = a3 * 2.0 * mu * gx
                rows[k + 5] = nv + ri; cols[k + 5] = 2 * nv + vj; vals[k + 5] = a3 * e2 * gy
                k += 6
    return rows_arr, cols_arr, vals_arr


def viscous_triplets(const long[:, ::1] tris, const double[::1] areas,
                     const double[:, :, ::1] grads, Py_ssize_t nv,
                     double mu1, double mu2):
    cdef Py_ssize_t nt = tris.shape[0]
    rows_arr = np.empty(36 * nt, dtype=np.int64)
    cols_arr = np.empty(36 * nt, dtype=np.int64)
    vals_arr = np.empty(36 * nt)
    cdef long[::1] rows = rows_arr
    cdef long[::1] cols = cols_arr
    cdef double[::1] vals = vals_arr
    cdef Py_ssize_t t, i, j, k = 0, ri, vj
    cdef double a, gxi, gyi, gxj, gyj, dot
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
                rows[k] = ri;     cols[k] = vj
                vals[k] = a * (0.5 * mu1 * (dot + gxj * gxi) + mu2 * gxj * gxi)
                rows[k + 1] = ri; cols[k + 1] = nv + vj
                vals[k + 1] = a * (0.5 * mu1 * gxj * gyi + mu2 * gyj * gxi)
                rows[k + 2] = nv + ri; cols[k + 2] = vj
                vals[k + 2] = a * (0.5 * mu1 * gyj * gxi + mu2 * gxj * gyi)
                rows[k + 3] = nv + ri; cols[k + 3] = nv + vj
                vals[k + 3] = a * (0.5 * mu1 * (dot + gyj * gyi) + mu2 * gyj * gyi)
                k += 4
    return rows_arr, cols_arr, vals_arr


def strain_coupling_triplets(const long[:, ::1] tris, const double[::1] areas,
                             const double[:, :, ::1] grads, Py_ssize_t nv):
    cdef Py_ssize_t nt = tris.shape[0]
    rows_arr = np.empty(36 * nt, dtype=np.int64)
    cols_arr = np.empty(36 * nt, dtype=np.int64)
    vals_arr = np.empty(36 * nt)
    cdef long[::1] rows = rows_arr
    cdef long[::1] cols = cols_arr
    cdef double[::1] vals = vals_arr
    cdef Py_ssize_t t, i, j, k = 0, ri, vj
    cdef double a3, gxj, gyj
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
    return rows_arr, cols_arr, vals_arr


def strain_nonlinear(const long[:, ::1] tris, const double[::1] areas,
                     const double[:, :, ::1] grads, Py_ssize_t nv,
                     const double[::1] w, const double[::1] e11, const double[::1] e12,
                     const double[::1] e21, const double[::1] e22):
    cdef Py_ssize_t nt = tris.shape[0]
    n11_arr = np.zeros(nv)
    n12_arr = np.zeros(nv)
    n21_arr = np.zeros(nv)
    n22_arr = np.zeros(nv)
    cdef double[::1] n11 = n11_arr
    cdef double[::1] n12 = n12_arr
    cdef double[::1] n21 = n21_arr
    cdef double[::1] n22 = n22_arr
    cdef Py_ssize_t t, i, j, v0, v1, v2, vj, ri
    cdef double w1x, w1y, w2x, w2y, s, m, div, am
    cdef double f11, f12, f21, f22, tr, mij
    cdef double acc11, acc12, acc21, acc22
    cdef double c11[3]
    cdef double c12[3]
    cdef double c21[3]
    cdef double c22[3]
    for t in range(nt):
        v0 = tris[t, 0]; v1 = tris[t, 1]; v2 = tris[t, 2]
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
    return n11_arr, n12_arr, n21_arr, n22_arr
