"""Dense complex matrix helpers: self-commutators, Hermitian spectra, norms.

Matrices are plain ``numpy`` complex128 arrays. ``as_matrix`` validates an
input once and hands back a read-only copy, so every function here can
treat its arguments as immutable values.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from . import _kernels_py

try:
    from ._kernels import eigh_batch as _eigh_batch
    from ._kernels import rotated_boundary as _rotated_boundary
    from ._kernels import rotated_extremes as _rotated_extremes
    from ._kernels import shift_distance_nm as _shift_distance_nm

    BACKEND = "compiled"
except ImportError:  # extension not built
    from ._kernels_py import eigh_batch as _eigh_batch
    from ._kernels_py import rotated_boundary as _rotated_boundary
    from ._kernels_py import rotated_extremes as _rotated_extremes
    from ._kernels_py import shift_distance_nm as _shift_distance_nm

    BACKEND = "numpy"

HERMITIAN_TOL = 1e-10
JACOBI_TOL = 1e-14
MAX_SWEEPS = 100
# above this size Householder/QL (LAPACK) replaces Jacobi
JACOBI_MAX_N = 64


class NotSquareError(ValueError):
    pass


class NotHermitianError(ValueError):
    pass


class ConvergenceError(RuntimeError):
    pass


class HermitianEigen(NamedTuple):
    values: np.ndarray
    vectors: np.ndarray


def as_matrix(A) -> np.ndarray:
    """Validate ``A`` as a finite square complex matrix and return a frozen copy."""
    M = np.array(A, dtype=np.complex128, copy=True)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise NotSquareError(f"expected a square matrix, got shape {M.shape}")
    if M.shape[0] < 1:
        raise NotSquareError("matrix must have at least one row")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix entries must be finite")
    M.flags.writeable = False
    return M


def _frozen(M):
    M.flags.writeable = False
    return M


def adjoint(A) -> np.ndarray:
    A = as_matrix(A)
    return _frozen(np.ascontiguousarray(A.conj().T))


def self_commutator(A) -> np.ndarray:
    """Return ``A*A - AA*``."""
    A = as_matrix(A)
    As = A.conj().T
    C = As @ A - A @ As
    # symmetrize away the rounding asymmetry of the two products
    return _frozen((C + C.conj().T) / 2)


def is_hermitian(H, tol=HERMITIAN_TOL) -> bool:
    H = np.asarray(H)
    scale = np.linalg.norm(H)
    return bool(np.linalg.norm(H - H.conj().T) <= tol * scale)


def eigh_stack(Hs, check=True):
    """Eigen-decompose a stack of Hermitian matrices.

    Returns ascending ``values`` of shape (m, n) and matching eigenvector
    columns of shape (m, n, n).
    """
    Hs = np.asarray(Hs, dtype=np.complex128)
    if Hs.ndim != 3 or Hs.shape[1] != Hs.shape[2]:
        raise NotSquareError(f"expected a stack of square matrices, got {Hs.shape}")
    if check:
        asym = np.linalg.norm(Hs - np.conj(np.swapaxes(Hs, 1, 2)), axis=(1, 2))
        if np.any(asym > HERMITIAN_TOL * np.linalg.norm(Hs, axis=(1, 2))):
            raise NotHermitianError("input is not Hermitian within tolerance")
    n = Hs.shape[1]
    if n > JACOBI_MAX_N:
        Hs = (Hs + np.conj(np.swapaxes(Hs, 1, 2))) / 2
        values, vectors = np.linalg.eigh(Hs)
        return values, vectors
    values, vectors, sweeps = _eigh_batch(Hs, JACOBI_TOL, MAX_SWEEPS)
    if np.any(sweeps < 0):
        raise ConvergenceError(f"Jacobi sweeps exceeded {MAX_SWEEPS}")
    order = np.argsort(values, axis=1, kind="stable")
    values = np.take_along_axis(values, order, axis=1)
    vectors = np.take_along_axis(vectors, order[:, None, :], axis=2)
    return values, vectors


def rotated_extremes(A, phis):
    """``(lambda_min, lambda_max)`` of ``Re(e^{i phi} A)`` for each angle in ``phis``.

    ``A`` must already be a validated matrix; no eigenvectors are formed.
    """
    phis = np.atleast_1d(np.asarray(phis, dtype=float))
    if A.shape[0] > JACOBI_MAX_N:
        M = np.exp(1j * phis)[:, None, None] * A[None]
        w = np.linalg.eigvalsh((M + np.conj(np.swapaxes(M, 1, 2))) / 2)
        return w[:, 0], w[:, -1]
    lo, hi, sweeps = _rotated_extremes(A, phis, JACOBI_TOL, MAX_SWEEPS)
    if np.any(sweeps < 0):
        raise ConvergenceError(f"Jacobi sweeps exceeded {MAX_SWEEPS}")
    return lo, hi


def rotated_boundary(A, phis):
    """Like :func:`rotated_extremes`, plus ``x* A x`` for a top eigenvector ``x``.

    Returns ``(lo, hi, points)``.
    """
    phis = np.atleast_1d(np.asarray(phis, dtype=float))
    if A.shape[0] > JACOBI_MAX_N:
        M = np.exp(1j * phis)[:, None, None] * A[None]
        w, V = np.linalg.eigh((M + np.conj(np.swapaxes(M, 1, 2))) / 2)
        x = V[:, :, -1]
        points = np.einsum("ki,ij,kj->k", x.conj(), A, x)
        return w[:, 0], w[:, -1], points
    lo, hi, points, sweeps = _rotated_boundary(A, phis, JACOBI_TOL, MAX_SWEEPS)
    if np.any(sweeps < 0):
        raise ConvergenceError(f"Jacobi sweeps exceeded {MAX_SWEEPS}")
    return lo, hi, points


def hermitian_eigen(H) -> HermitianEigen:
    """Spectral decomposition of a Hermitian matrix, eigenvalues ascending.

    Raises
    ------
    NotHermitianError
        If ``H`` departs from its adjoint by more than ``1e-10`` relative.
    ConvergenceError
        If the Jacobi iteration exceeds its sweep cap.
    """
    H = as_matrix(H)
    values, vectors = eigh_stack(H[None])
    return HermitianEigen(_frozen(values[0]), _frozen(vectors[0]))


def hermitian_spectrum(H) -> np.ndarray:
    return hermitian_eigen(H).values


def operator_norm(A) -> float:
    """Spectral norm, computed as the square root of the top eigenvalue of ``A*A``."""
    A = as_matrix(A)
    G = A.conj().T @ A
    G = (G + G.conj().T) / 2
    top = eigh_stack(G[None], check=False)[0][0, -1]
    return float(np.sqrt(max(top, 0.0)))


def operator_norm_stack(As) -> np.ndarray:
    As = np.asarray(As, dtype=np.complex128)
    G = np.conj(np.swapaxes(As, 1, 2)) @ As
    G = (G + np.conj(np.swapaxes(G, 1, 2))) / 2
    top = eigh_stack(G, check=False)[0][:, -1]
    return np.sqrt(np.maximum(top, 0.0))


def cartesian_parts(A, t=0.0):
    """Real and imaginary parts ``(H_t, J_t)`` of ``A e^{it}``, so ``A_t = H_t + i J_t``."""
    A = as_matrix(A)
    At = A * np.exp(1j * t)
    Ats = At.conj().T
    return _frozen((At + Ats) / 2), _frozen((At - Ats) / 2j)


def hermitian_min_shift(H) -> float:
    """``inf_lambda ||H - lambda I||`` for Hermitian ``H``: half its spectral spread."""
    w = hermitian_eigen(H).values
    return float((w[-1] - w[0]) / 2)
