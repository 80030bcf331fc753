"""Dense complex matrix kernel for the skew-Hermitian / unitary regime.

Matrices are plain ``numpy`` complex arrays. The exponential and logarithm
go through Hermitian (resp. Schur) eigendecompositions so that outputs are
unitary (resp. skew-Hermitian) to roundoff, which the error measurements
downstream rely on.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from .errors import BranchCutError, NotSkewHermitianError

UNITARITY_TOL = 1e-12
SKEW_TOL = 1e-12
LOG_UNITARY_TOL = 1e-10
LOG_ROUNDTRIP_TOL = 1e-10
BRANCH_TOL = 1e-8


def as_cmat(a) -> np.ndarray:
    """Coerce to a 2-d complex128 array with finite entries."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def dagger(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def op_norm(a) -> float:
    """Largest singular value."""
    m = as_cmat(a)
    if m.size == 0:
        raise ValueError("empty matrix")
    return float(np.linalg.norm(m, 2))


def commutator(a, b) -> np.ndarray:
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape != b.shape:
        raise ValueError(f"commutator needs equal square shapes, got {a.shape} and {b.shape}")
    return a @ b - b @ a


def is_diagonal(a: np.ndarray) -> bool:
    return not np.any(a - np.diag(np.diagonal(a)))


def _check_skew(a: np.ndarray, tol: float) -> None:
    resid = a + dagger(a)
    r_fro = np.linalg.norm(resid)
    if r_fro == 0.0:
        return
    a_fro = np.linalg.norm(a)
    # cheap sufficient test first: ||r||_op <= ||r||_F and ||a||_op >= ||a||_F / sqrt(n)
    if r_fro <= tol * a_fro / np.sqrt(a.shape[0]):
        return
    if op_norm(resid) <= tol * op_norm(a):
        return
    raise NotSkewHermitianError("generator not skew-Hermitian")


def expm_skew(a, tol: float = SKEW_TOL) -> np.ndarray:
    """Exponential of a skew-Hermitian matrix via eigh of ``i a``."""
    m = as_cmat(a)
    if m.shape[0] != m.shape[1]:
        raise ValueError("expm_skew needs a square matrix")
    _check_skew(m, tol)
    if is_diagonal(m):
        return np.diag(np.exp(1j * np.diagonal(m).imag))
    h = 1j * m
    h = 0.5 * (h + dagger(h))
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * w)) @ dagger(v)


def unitarity_defect(u) -> float:
    u = np.asarray(u)
    return op_norm(u @ dagger(u) - np.eye(u.shape[0]))


def logm_unitary(u, branch_cut: float = np.pi, tol: float = LOG_UNITARY_TOL) -> np.ndarray:
    """Skew-Hermitian logarithm of a unitary matrix.

    Eigenphases are placed in ``(branch_cut - 2*pi, branch_cut]``; the default
    cut at ``pi`` gives the principal logarithm. Raises ``BranchCutError`` when
    an eigenvalue lies within ``BRANCH_TOL`` (in angle) of the cut.
    """
    m = as_cmat(u)
    if m.shape[0] != m.shape[1]:
        raise ValueError("logm_unitary needs a square matrix")
    if unitarity_defect(m) > tol:
        raise ValueError("matrix is not unitary to tolerance")
    # complex Schur form of a normal matrix is diagonal with a unitary basis,
    # which stays orthonormal under degenerate eigenvalues (unlike eig)
    t, q = scipy.linalg.schur(m, output="complex")
    lam = np.diagonal(t)
    phases = np.angle(lam)
    rel = np.mod(phases - branch_cut, 2 * np.pi)
    dist = np.minimum(rel, 2 * np.pi - rel)
    if np.any(dist < BRANCH_TOL):
        raise BranchCutError("logarithm branch ambiguous")
    # rel in (0, 2pi): phase relative to the cut, shift into the window
    shifted = branch_cut - 2 * np.pi + rel
    z = (q * (1j * shifted)) @ dagger(q)
    return 0.5 * (z - dagger(z))
