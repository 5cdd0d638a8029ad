# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: batched Hermitian Jacobi and Nelder-Mead for the scalar distance.

Same contract as ``_kernels_py.eigh_batch``; each matrix in the stack
converges independently. Matrices are walked as interleaved (re, im)
doubles so every update is plain real arithmetic.
"""

import numpy as np

from libc.math cimport sqrt, fabs, fmax, cos, sin

# pivots below this fraction of the Frobenius norm are left alone; rotating
# them only manufactures subnormals
cdef double NEGLIGIBLE = 1e-18


cdef int _jacobi_one(double* A, double* V, Py_ssize_t n,
                     double tol, int max_sweeps) noexcept nogil:
    # V may be NULL when eigenvectors are not wanted
    # A[2*(i*n + j)] is Re A_ij, A[2*(i*n + j) + 1] is Im A_ij
    cdef Py_ssize_t i, p, q, ip, iq
    cdef double scale = 0.0, off, g, zeta, t, c, s
    cdef double ur, ui, pr, pi, qr, qi, sur, sui, cur, cui
    cdef int sweep

    for i in range(2 * n * n):
        scale += A[i] * A[i]
    scale = sqrt(scale)
    if scale == 0.0:
        return 0

    for sweep in range(max_sweeps + 1):
        off = 0.0
        for p in range(n):
            for q in range(n):
                if p != q:
                    ip = 2 * (p * n + q)
                    off += A[ip] * A[ip] + A[ip + 1] * A[ip + 1]
        if sqrt(off) <= tol * scale:
            return sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                ip = 2 * (p * n + q)
                g = sqrt(A[ip] * A[ip] + A[ip + 1] * A[ip + 1])
                if g <= NEGLIGIBLE * scale:
                    continue
                ur = A[ip] / g
                ui = A[ip + 1] / g
                zeta = (A[2 * (q * n + q)] - A[2 * (p * n + p)]) / (2.0 * g)
                if zeta >= 0.0:
                    t = 1.0 / (zeta + sqrt(zeta * zeta + 1.0))
                else:
                    t = -1.0 / (-zeta + sqrt(zeta * zeta + 1.0))
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                # rows: row_p <- c row_p - s u row_q ; row_q <- s row_p + c u row_q
                sur = s * ur
                sui = s * ui
                cur = c * ur
                cui = c * ui
                for i in range(n):
                    ip = 2 * (p * n + i)
                    iq = 2 * (q * n + i)
                    pr = A[ip]
                    pi = A[ip + 1]
                    qr = A[iq]
                    qi = A[iq + 1]
                    A[ip] = c * pr - (sur * qr - sui * qi)
                    A[ip + 1] = c * pi - (sur * qi + sui * qr)
                    A[iq] = s * pr + (cur * qr - cui * qi)
                    A[iq + 1] = s * pi + (cur * qi + cui * qr)
                # columns: col_p <- c col_p - s conj(u) col_q ; col_q <- s col_p + c conj(u) col_q
                for i in range(n):
                    ip = 2 * (i * n + p)
                    iq = 2 * (i * n + q)
                    pr = A[ip]
                    pi = A[ip + 1]
                    qr = A[iq]
                    qi = A[iq + 1]
                    A[ip] = c * pr - (sur * qr + sui * qi)
                    A[ip + 1] = c * pi - (sur * qi - sui * qr)
                    A[iq] = s * pr + (cur * qr + cui * qi)
                    A[iq + 1] = s * pi + (cur * qi - cui * qr)
                for i in range(n if V != NULL else 0):
                    ip = 2 * (i * n + p)
                    iq = 2 * (i * n + q)
                    pr = V[ip]
                    pi = V[ip + 1]
                    qr = V[iq]
                    qi = V[iq + 1]
                    V[ip] = c * pr - (sur * qr + sui * qi)
                    V[ip + 1] = c * pi - (sur * qi - sui * qr)
                    V[iq] = s * pr + (cur * qr + cui * qi)
                    V[iq + 1] = s * pi + (cur * qi - cui * qr)
                ip = 2 * (p * n + q)
                A[ip] = 0.0
                A[ip + 1] = 0.0
                iq = 2 * (q * n + p)
                A[iq] = 0.0
                A[iq + 1] = 0.0
                A[2 * (p * n + p) + 1] = 0.0
                A[2 * (q * n + q) + 1] = 0.0
    return -1


def eigh_batch(H, double tol=1e-14, int max_sweeps=100):
    """Diagonalize a stack of Hermitian matrices by cyclic complex Jacobi.

    Returns ``(values, vectors, sweeps)`` exactly like the numpy fallback.
    """
    A_arr = np.array(H, dtype=np.complex128, order="C", copy=True)
    cdef Py_ssize_t m = A_arr.shape[0]
    cdef Py_ssize_t n = A_arr.shape[1]
    V_arr = np.zeros((m, n, n), dtype=np.complex128)
    V_arr[:, np.arange(n), np.arange(n)] = 1.0
    sweeps = np.empty(m, dtype=np.int64)
    cdef double[::1] A = A_arr.reshape(-1).view(np.float64)
    cdef double[::1] V = V_arr.reshape(-1).view(np.float64)
    cdef long long[::1] sw = sweeps
    cdef Py_ssize_t k, stride = 2 * n * n
    if m == 0:
        return np.empty((0, n)), V_arr, sweeps
    with nogil:
        for k in range(m):
            sw[k] = _jacobi_one(&A[k * stride], &V[k * stride], n, tol, max_sweeps)
    values = np.real(np.diagonal(A_arr, axis1=1, axis2=2)).copy()
    return values, V_arr, sweeps


cdef double _shift_norm(const double* A, Py_ssize_t n, double x, double y,
                        double* G) noexcept nogil:
    # G = (A - z I)^* (A - z I) with z = x + iy, then sqrt(lambda_max(G))
    cdef Py_ssize_t i, j, k, ij
    cdef double mr, mi, nr, ni, sr, si, top
    for i in range(n):
        for j in range(n):
            sr = 0.0
            si = 0.0
            for k in range(n):
                # conj(M[k, i]) * M[k, j]
                mr = A[2 * (k * n + i)]
                mi = A[2 * (k * n + i) + 1]
                if k == i:
                    mr -= x
                    mi -= y
                nr = A[2 * (k * n + j)]
                ni = A[2 * (k * n + j) + 1]
                if k == j:
                    nr -= x
                    ni -= y
                sr += mr * nr + mi * ni
                si += mr * ni - mi * nr
            ij = 2 * (i * n + j)
            G[ij] = sr
            G[ij + 1] = si
    _jacobi_one(G, NULL, n, 1e-14, 100)
    top = G[0]
    for i in range(1, n):
        if G[2 * (i * n + i)] > top:
            top = G[2 * (i * n + i)]
    return sqrt(top) if top > 0.0 else 0.0


def shift_distance_nm(A, double x0, double y0, double step, double xatol=1e-10,
                      double fatol=1e-10, int max_iter=4000):
    """Nelder-Mead on ``z -> ||A - z I||`` over the plane.

    Returns ``(x, y, fmin, iterations, converged)``.
    """
    A_arr = np.ascontiguousarray(A, dtype=np.complex128)
    cdef Py_ssize_t n = A_arr.shape[0]
    cdef const double[::1] Av = A_arr.reshape(-1).view(np.float64)
    G_arr = np.empty(2 * n * n)
    cdef double[::1] G = G_arr
    cdef double sx[3]
    cdef double sy[3]
    cdef double fs[3]
    cdef double bx, by, xr, yr, fr, xe, ye, fe, xc, yc, fc, tx, ty, tf, dev
    cdef int it = 0, i, j, converged = 0, shrink
    cdef const double* Ap = &Av[0]
    cdef double* Gp = &G[0]
    with nogil:
        sx[0] = x0
        sy[0] = y0
        sx[1] = x0 + step
        sy[1] = y0
        sx[2] = x0
        sy[2] = y0 + step
        for i in range(3):
            fs[i] = _shift_norm(Ap, n, sx[i], sy[i], Gp)
        while True:
            # insertion sort by value, stable
            for i in range(1, 3):
                j = i
                while j > 0 and fs[j] < fs[j - 1]:
                    tx = sx[j]; sx[j] = sx[j - 1]; sx[j - 1] = tx
                    ty = sy[j]; sy[j] = sy[j - 1]; sy[j - 1] = ty
                    tf = fs[j]; fs[j] = fs[j - 1]; fs[j - 1] = tf
                    j -= 1
            dev = 0.0
            for i in range(1, 3):
                dev = fmax(dev, fmax(fabs(sx[i] - sx[0]), fabs(sy[i] - sy[0])))
            if dev <= xatol and fmax(fabs(fs[1] - fs[0]), fabs(fs[2] - fs[0])) <= fatol:
                converged = 1
                break
            if it >= max_iter:
                break
            it += 1
            bx = (sx[0] + sx[1]) / 2
            by = (sy[0] + sy[1]) / 2
            xr = 2 * bx - sx[2]
            yr = 2 * by - sy[2]
            fr = _shift_norm(Ap, n, xr, yr, Gp)
            shrink = 0
            if fr < fs[0]:
                xe = 3 * bx - 2 * sx[2]
                ye = 3 * by - 2 * sy[2]
                fe = _shift_norm(Ap, n, xe, ye, Gp)
                if fe < fr:
                    sx[2] = xe; sy[2] = ye; fs[2] = fe
                else:
                    sx[2] = xr; sy[2] = yr; fs[2] = fr
            elif fr < fs[1]:
                sx[2] = xr; sy[2] = yr; fs[2] = fr
            elif fr < fs[2]:
                xc = 1.5 * bx - 0.5 * sx[2]
                yc = 1.5 * by - 0.5 * sy[2]
                fc = _shift_norm(Ap, n, xc, yc, Gp)
                if fc <= fr:
                    sx[2] = xc; sy[2] = yc; fs[2] = fc
                else:
                    shrink = 1
            else:
                xc = 0.5 * bx + 0.5 * sx[2]
                yc = 0.5 * by + 0.5 * sy[2]
                fc = _shift_norm(Ap, n, xc, yc, Gp)
                if fc < fs[2]:
                    sx[2] = xc; sy[2] = yc; fs[2] = fc
                else:
                    shrink = 1
            if shrink:
                for i in range(1, 3):
                    sx[i] = sx[0] + 0.5 * (sx[i] - sx[0])
                    sy[i] = sy[0] + 0.5 * (sy[i] - sy[0])
                    fs[i] = _shift_norm(Ap, n, sx[i], sy[i], Gp)
    return sx[0], sy[0], fs[0], it, bool(converged)



cdef void _rotated_real_part(const double* A, Py_ssize_t n, double phi,
                             double* G) noexcept nogil:
    # G_ij = (e^{i phi} A_ij + conj(e^{i phi} A_ji)) / 2
    cdef Py_ssize_t i, j, ij, ji
    cdef double c = cos(phi), s = sin(phi), ar, ai, br, bi
    for i in range(n):
        for j in range(n):
            ij = 2 * (i * n + j)
            ji = 2 * (j * n + i)
            ar = c * A[ij] - s * A[ij + 1]
            ai = s * A[ij] + c * A[ij + 1]
            br = c * A[ji] - s * A[ji + 1]
            bi = s * A[ji] + c * A[ji + 1]
            G[ij] = 0.5 * (ar + br)
            G[ij + 1] = 0.5 * (ai - bi)


def rotated_extremes(A, phis, double tol=1e-14, int max_sweeps=100):
    """Smallest and largest eigenvalue of ``Re(e^{i phi} A)`` for every ``phi``.

    Returns ``(lo, hi, sweeps)``; ``sweeps`` is -1 where Jacobi hit its cap.
    """
    A_arr = np.ascontiguousarray(A, dtype=np.complex128)
    phi_arr = np.ascontiguousarray(phis, dtype=np.float64).reshape(-1)
    cdef Py_ssize_t n = A_arr.shape[0]
    cdef Py_ssize_t m = phi_arr.shape[0]
    cdef const double[::1] Av = A_arr.reshape(-1).view(np.float64)
    cdef const double[::1] ph = phi_arr
    lo = np.empty(m)
    hi = np.empty(m)
    sweeps = np.empty(m, dtype=np.int64)
    G_arr = np.empty(2 * n * n)
    cdef double[::1] lov = lo
    cdef double[::1] hiv = hi
    cdef long long[::1] sw = sweeps
    cdef double[::1] G = G_arr
    cdef Py_ssize_t k, i
    cdef double d, dmin, dmax
    if m == 0 or n == 0:
        return lo, hi, sweeps
    with nogil:
        for k in range(m):
            _rotated_real_part(&Av[0], n, ph[k], &G[0])
            sw[k] = _jacobi_one(&G[0], NULL, n, tol, max_sweeps)
            dmin = G[0]
            dmax = G[0]
            for i in range(1, n):
                d = G[2 * (i * n + i)]
                if d < dmin:
                    dmin = d
                if d > dmax:
                    dmax = d
            lov[k] = dmin
            hiv[k] = dmax
    return lo, hi, sweeps


def rotated_boundary(A, phis, double tol=1e-14, int max_sweeps=100):
    """Extremes of ``Re(e^{i phi} A)`` plus ``x* A x`` for a top eigenvector ``x``.

    Returns ``(lo, hi, points, sweeps)``. Among tied top eigenvalues the
    first diagonal position wins.
    """
    A_arr = np.ascontiguousarray(A, dtype=np.complex128)
    phi_arr = np.ascontiguousarray(phis, dtype=np.float64).reshape(-1)
    cdef Py_ssize_t n = A_arr.shape[0]
    cdef Py_ssize_t m = phi_arr.shape[0]
    cdef const double[::1] Av = A_arr.reshape(-1).view(np.float64)
    cdef const double[::1] ph = phi_arr
    lo = np.empty(m)
    hi = np.empty(m)
    points = np.empty(m, dtype=np.complex128)
    sweeps = np.empty(m, dtype=np.int64)
    G_arr = np.empty(2 * n * n)
    V_arr = np.empty(2 * n * n)
    cdef double[::1] lov = lo
    cdef double[::1] hiv = hi
    cdef double[::1] pv = points.view(np.float64)
    cdef long long[::1] sw = sweeps
    cdef double[::1] G = G_arr
    cdef double[::1] V = V_arr
    cdef Py_ssize_t k, i, j, top, ij
    cdef double d, dmin, dmax, xr, xi, yr, yi, ar, ai, zr, zi
    if m == 0 or n == 0:
        return lo, hi, points, sweeps
    with nogil:
        for k in range(m):
            _rotated_real_part(&Av[0], n, ph[k], &G[0])
            for i in range(2 * n * n):
                V[i] = 0.0
            for i in range(n):
                V[2 * (i * n + i)] = 1.0
            sw[k] = _jacobi_one(&G[0], &V[0], n, tol, max_sweeps)
            dmin = G[0]
            dmax = G[0]
            top = 0
            for i in range(1, n):
                d = G[2 * (i * n + i)]
                if d < dmin:
                    dmin = d
                if d > dmax:
                    dmax = d
                    top = i
            lov[k] = dmin
            hiv[k] = dmax
            # z = sum_ij conj(x_i) A_ij x_j with x = column `top` of V
            zr = 0.0
            zi = 0.0
            for i in range(n):
                yr = 0.0
                yi = 0.0
                for j in range(n):
                    ij = 2 * (i * n + j)
                    ar = Av[ij]
                    ai = Av[ij + 1]
                    xr = V[2 * (j * n + top)]
                    xi = V[2 * (j * n + top) + 1]
                    yr += ar * xr - ai * xi
                    yi += ar * xi + ai * xr
                xr = V[2 * (i * n + top)]
                xi = V[2 * (i * n + top) + 1]
                zr += xr * yr + xi * yi
                zi += xr * yi - xi * yr
            pv[2 * k] = zr
            pv[2 * k + 1] = zi
    return lo, hi, points, sweeps
