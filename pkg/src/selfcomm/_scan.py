"""Grid scan plus golden-section polish for one-dimensional angle searches."""

import numpy as np

_INVPHI = (np.sqrt(5.0) - 1.0) / 2.0


def scan_min(f, lo, hi, n_angles, refine_tol=1e-10, n_best=3, period=None, grid_values=None):
    """Minimize ``f`` over ``[lo, hi)``.

    ``f`` maps an array of angles to an array of values. The grid has
    ``n_angles`` points; the ``n_best`` smallest cells are each refined by
    golden section on ``[t - h, t + h]`` until the bracket is at most
    ``refine_tol`` wide. All brackets advance together so ``f`` is called
    with one batch per iteration. No unimodality is assumed globally, and
    the result is never worse than the grid minimum. ``grid_values``, when
    given, stands in for ``f`` on the grid.

    Returns ``(t, value)``; ties go to the smaller angle.
    """
    grid = lo + (hi - lo) * np.arange(n_angles) / n_angles
    values = np.asarray(f(grid) if grid_values is None else grid_values, dtype=float)
    if values.shape != grid.shape:
        raise ValueError("grid_values must hold one value per grid angle")
    h = (hi - lo) / n_angles
    best = np.argsort(values, kind="stable")[:n_best]

    ts = [grid]
    vs = [values]
    a = grid[best] - h
    b = grid[best] + h
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fcd = np.asarray(f(np.concatenate([c, d])), dtype=float)
    fc, fd = fcd[: len(c)], fcd[len(c):]
    ts += [c, d]
    vs += [fc, fd]
    while np.max(b - a) > refine_tol:
        left = fc < fd
        a, b = np.where(left, a, c), np.where(left, d, b)
        new = np.where(left, b - _INVPHI * (b - a), a + _INVPHI * (b - a))
        fnew = np.asarray(f(new), dtype=float)
        c, d, fc, fd = (
            np.where(left, new, d),
            np.where(left, c, new),
            np.where(left, fnew, fd),
            np.where(left, fc, fnew),
        )
        ts.append(new)
        vs.append(fnew)

    ts = np.concatenate(ts)
    vs = np.concatenate(vs)
    if period is not None:
        ts = np.mod(ts, period)
    order = np.lexsort((ts, vs))
    return float(ts[order[0]]), float(vs[order[0]])


def scan_max(f, lo, hi, n_angles, refine_tol=1e-10, n_best=3, period=None, grid_values=None):
    neg = None if grid_values is None else -np.asarray(grid_values, dtype=float)
    t, v = scan_min(lambda x: -np.asarray(f(x)), lo, hi, n_angles, refine_tol, n_best, period, neg)
    return t, -v
