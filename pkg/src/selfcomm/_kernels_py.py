"""Pure numpy fallback for the batched Hermitian Jacobi eigensolver.

Rotations are applied to every matrix of the stack at once, one (p, q)
pair at a time, so the Python-level loop only runs over index pairs and
sweeps, never over the batch.
"""

import numpy as np

# pivots below this fraction of the Frobenius norm are left alone; rotating
# them only manufactures subnormals
_NEGLIGIBLE = 1e-18


def eigh_batch(H, tol=1e-14, max_sweeps=100):
    """Diagonalize a stack of Hermitian matrices by cyclic complex Jacobi.

    Parameters
    ----------
    H : (m, n, n) complex array
        Hermitian matrices. Only used as input; a copy is rotated.
    tol : float
        Stop once the off-diagonal Frobenius mass of every matrix is at most
        ``tol`` times its Frobenius norm.
    max_sweeps : int
        Sweep cap.

    Returns
    -------
    values : (m, n) float array, unsorted diagonal after convergence
    vectors : (m, n, n) complex array, columns are eigenvectors
    sweeps : (m,) int array, sweeps used per matrix (-1 where the cap was hit)
    """
    A = np.array(H, dtype=np.complex128, copy=True)
    m, n, _ = A.shape
    V = np.broadcast_to(np.eye(n, dtype=np.complex128), (m, n, n)).copy()
    if n == 1:
        return A[:, :, 0].real.copy(), V, np.zeros(m, dtype=np.int64)

    scale = np.sqrt(np.sum(np.abs(A) ** 2, axis=(1, 2)))
    limit = tol * scale
    offmask = ~np.eye(n, dtype=bool)

    sweeps = np.full(m, -1, dtype=np.int64)
    for sweep in range(max_sweeps + 1):
        off = np.sqrt(np.sum(np.abs(A[:, offmask]) ** 2, axis=1))
        done = off <= limit
        sweeps[done & (sweeps < 0)] = sweep
        if np.all(done) or sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                h = A[:, p, q]
                g = np.abs(h)
                active = g > _NEGLIGIBLE * scale
                if not np.any(active):
                    continue
                gsafe = np.where(active, g, 1.0)
                u = np.where(active, h / gsafe, 1.0)
                zeta = (A[:, q, q].real - A[:, p, p].real) / (2.0 * gsafe)
                # smaller root of t^2 + 2 zeta t - 1 = 0 keeps the rotation angle below pi/4
                t = np.copysign(1.0, zeta) / (np.abs(zeta) + np.sqrt(zeta * zeta + 1.0))
                c = np.where(active, 1.0 / np.sqrt(t * t + 1.0), 1.0)
                s = np.where(active, t * c, 0.0)
                su = (s * u)[:, None]
                suc = (s * np.conj(u))[:, None]
                cu = (c * u)[:, None]
                cuc = (c * np.conj(u))[:, None]
                cc = c[:, None]
                ss = s[:, None]
                # rows: G* A
                rp = A[:, p, :].copy()
                rq = A[:, q, :].copy()
                A[:, p, :] = cc * rp - su * rq
                A[:, q, :] = ss * rp + cu * rq
                # columns: (G* A) G
                cp = A[:, :, p].copy()
                cq = A[:, :, q].copy()
                A[:, :, p] = cc * cp - suc * cq
                A[:, :, q] = ss * cp + cuc * cq
                A[:, p, q] = 0.0
                A[:, q, p] = 0.0
                A[:, p, p] = A[:, p, p].real
                A[:, q, q] = A[:, q, q].real
                vp = V[:, :, p].copy()
                vq = V[:, :, q].copy()
                V[:, :, p] = cc * vp - suc * vq
                V[:, :, q] = ss * vp + cuc * vq
    return np.real(np.diagonal(A, axis1=1, axis2=2)).copy(), V, sweeps


def _shift_norm(A, x, y):
    n = A.shape[0]
    M = A - complex(x, y) * np.eye(n)
    G = M.conj().T @ M
    top = eigh_batch(G[None])[0].max()
    return float(np.sqrt(top)) if top > 0.0 else 0.0


def nelder_mead_2d(f, x0, y0, step, xatol=1e-10, fatol=1e-10, max_iter=4000):
    """Plain Nelder-Mead in the plane (reflect 1, expand 2, contract and shrink 1/2).

    Returns ``(x, y, fmin, iterations, converged)``.
    """
    sim = [[x0, y0], [x0 + step, y0], [x0, y0 + step]]
    fs = [f(*p) for p in sim]
    it = 0
    while True:
        order = sorted(range(3), key=lambda i: fs[i])
        sim = [sim[i] for i in order]
        fs = [fs[i] for i in order]
        dev = max(max(abs(sim[i][0] - sim[0][0]), abs(sim[i][1] - sim[0][1])) for i in (1, 2))
        if dev <= xatol and max(abs(fs[1] - fs[0]), abs(fs[2] - fs[0])) <= fatol:
            return sim[0][0], sim[0][1], fs[0], it, True
        if it >= max_iter:
            return sim[0][0], sim[0][1], fs[0], it, False
        it += 1
        bx = (sim[0][0] + sim[1][0]) / 2
        by = (sim[0][1] + sim[1][1]) / 2
        wx, wy = sim[2]
        xr, yr = 2 * bx - wx, 2 * by - wy
        fr = f(xr, yr)
        shrink = False
        if fr < fs[0]:
            xe, ye = 3 * bx - 2 * wx, 3 * by - 2 * wy
            fe = f(xe, ye)
            sim[2], fs[2] = ([xe, ye], fe) if fe < fr else ([xr, yr], fr)
        elif fr < fs[1]:
            sim[2], fs[2] = [xr, yr], fr
        elif fr < fs[2]:
            xc, yc = 1.5 * bx - 0.5 * wx, 1.5 * by - 0.5 * wy
            fc = f(xc, yc)
            if fc <= fr:
                sim[2], fs[2] = [xc, yc], fc
            else:
                shrink = True
        else:
            xc, yc = 0.5 * bx + 0.5 * wx, 0.5 * by + 0.5 * wy
            fc = f(xc, yc)
            if fc < fs[2]:
                sim[2], fs[2] = [xc, yc], fc
            else:
                shrink = True
        if shrink:
            for i in (1, 2):
                sim[i] = [sim[0][0] + 0.5 * (sim[i][0] - sim[0][0]),
                          sim[0][1] + 0.5 * (sim[i][1] - sim[0][1])]
                fs[i] = f(*sim[i])


def shift_distance_nm(A, x0, y0, step, xatol=1e-10, fatol=1e-10, max_iter=4000):
    A = np.ascontiguousarray(A, dtype=np.complex128)
    return nelder_mead_2d(lambda x, y: _shift_norm(A, x, y), x0, y0, step, xatol, fatol, max_iter)


def _rotated_real_parts(A, phis):
    M = np.exp(1j * phis)[:, None, None] * A[None]
    return (M + np.conj(np.swapaxes(M, 1, 2))) / 2


def rotated_extremes(A, phis, tol=1e-14, max_sweeps=100):
    """Smallest and largest eigenvalue of ``Re(e^{i phi} A)`` for every ``phi``."""
    A = np.asarray(A, dtype=np.complex128)
    phis = np.asarray(phis, dtype=np.float64).reshape(-1)
    values, _, sweeps = eigh_batch(_rotated_real_parts(A, phis), tol, max_sweeps)
    return values.min(axis=1), values.max(axis=1), sweeps


def rotated_boundary(A, phis, tol=1e-14, max_sweeps=100):
    """Extremes of ``Re(e^{i phi} A)`` plus ``x* A x`` for a top eigenvector ``x``."""
    A = np.asarray(A, dtype=np.complex128)
    phis = np.asarray(phis, dtype=np.float64).reshape(-1)
    values, vectors, sweeps = eigh_batch(_rotated_real_parts(A, phis), tol, max_sweeps)
    # argmax picks the first of tied top eigenvalues, as the compiled kernel does
    top = np.argmax(values, axis=1)
    x = vectors[np.arange(len(phis)), :, top]
    points = np.einsum("ki,ij,kj->k", x.conj(), A, x)
    return values.min(axis=1), values.max(axis=1), points, sweeps
