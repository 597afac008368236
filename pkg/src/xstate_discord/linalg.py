"""Small dense linear algebra for one- and two-qubit operators.

All two-qubit matrices use the computational basis ordering
``|00>, |01>, |10>, |11>`` with Alice as the first (most significant) factor.
"""
from typing import NamedTuple

import numpy as np

from .errors import InvalidInputError

HERMITIAN_TOL = 1e-12
IMAG_TOL = 1e-12

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SX, SY, SZ)

# sigma_i (x) I, I (x) sigma_j and sigma_i (x) sigma_j, precomputed once
_A_OPS = np.array([np.kron(s, I2) for s in PAULIS])
_B_OPS = np.array([np.kron(I2, s) for s in PAULIS])
_AB_OPS = np.array([[np.kron(s, t) for t in PAULIS] for s in PAULIS])
# transposed and stacked so that one matrix-vector product gives all 15 expectations
_ALL_OPS_T = np.concatenate([_A_OPS, _B_OPS, _AB_OPS.reshape(9, 4, 4)]).transpose(0, 2, 1).reshape(15, 16)


class FanoDecomposition(NamedTuple):
    """Pauli-basis coordinates of a two-qubit operator.

    ``x`` and ``y`` are Alice's and Bob's Bloch vectors, ``T`` the 3x3
    correlation matrix with ``T[i, j] = tr(rho sigma_i (x) sigma_j)``.
    """

    x: np.ndarray
    y: np.ndarray
    T: np.ndarray


def as_matrix(m, dims=(2, 3, 4, 8)):
    """Coerce ``m`` to a finite square complex array of an allowed size."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] not in dims:
        raise InvalidInputError(f"expected a square matrix of size {dims}, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InvalidInputError("matrix has non-finite entries")
    return m


def hermiticity_residue(m):
    m = np.asarray(m)
    return float(np.max(np.abs(m - m.conj().T)))


def check_hermitian(m, tol=HERMITIAN_TOL):
    res = hermiticity_residue(m)
    if res > tol:
        raise InvalidInputError(f"matrix is not Hermitian (residue {res:.3g} > {tol:g})")
    return m


def real_part(values, tol=IMAG_TOL):
    """Drop an imaginary residue that is below ``tol``; raise otherwise."""
    values = np.asarray(values)
    if np.iscomplexobj(values):
        worst = float(np.max(np.abs(values.imag))) if values.size else 0.0
        if worst > tol:
            raise InvalidInputError(f"expected real quantity, imaginary residue {worst:.3g}")
        values = values.real
    return values.astype(float)


def fano_decompose(rho):
    """Bloch vectors and correlation matrix of a two-qubit operator.

    Parameters
    ----------
    rho : (4, 4) array_like
        Hermitian two-qubit matrix. Unit trace is assumed but not enforced,
        so unchecked nonphysical states can be decomposed as well.

    Returns
    -------
    FanoDecomposition
    """
    rho = check_hermitian(as_matrix(rho, dims=(4,)))
    # tr(A rho) = sum_ij A_ij rho_ji
    v = real_part(_ALL_OPS_T @ rho.ravel())
    return FanoDecomposition(v[:3], v[3:6], v[6:].reshape(3, 3))


def fano_compose(f):
    """Inverse of :func:`fano_decompose`."""
    x, y, T = (np.asarray(a, dtype=float) for a in f)
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y)) and np.all(np.isfinite(T))):
        raise InvalidInputError("Fano coordinates must be finite")
    m = np.eye(4, dtype=complex)
    m = m + np.einsum("k,kij->ij", x, _A_OPS)
    m = m + np.einsum("k,kij->ij", y, _B_OPS)
    m = m + np.einsum("kl,klij->ij", T, _AB_OPS)
    return m / 4


def partial_trace(rho, keep, dims=None):
    """Reduced state on the subsystems listed in ``keep``.

    Parameters
    ----------
    rho : array_like
        Square matrix on a tensor product of qubits (4x4 or 8x8).
    keep : int or sequence of int
        Indices of the retained factors, 0 being the leftmost.
    dims : sequence of int, optional
        Local dimensions. Defaults to all qubits.
    """
    rho = as_matrix(rho, dims=(4, 8))
    n = rho.shape[0]
    if dims is None:
        nq = int(round(np.log2(n)))
        dims = (2,) * nq
    dims = tuple(dims)
    if int(np.prod(dims)) != n:
        raise InvalidInputError(f"dims {dims} do not match matrix size {n}")
    if isinstance(keep, (int, np.integer)):
        keep = (int(keep),)
    keep = tuple(sorted(set(int(k) for k in keep)))
    if not keep or any(k < 0 or k >= len(dims) for k in keep):
        raise InvalidInputError(f"invalid subsystem selector {keep} for {len(dims)} factors")

    nf = len(dims)
    t = rho.reshape(dims + dims)
    # trace out from the highest index down so axis numbers stay valid
    for k in reversed(range(nf)):
        if k not in keep:
            cur = t.ndim // 2
            t = np.trace(t, axis1=k, axis2=k + cur)
    d = int(np.prod([dims[k] for k in keep]))
    return t.reshape(d, d)


def eigenvalues_hermitian(m, tol=1e-10):
    """Ascending real eigenvalues of a Hermitian matrix."""
    m = as_matrix(m)
    check_hermitian(m, tol)
    return np.linalg.eigvalsh(m)


def von_neumann_entropy(rho):
    """Entropy in bits, with ``0 log 0 = 0``."""
    lam = eigenvalues_hermitian(rho)
    lam = lam[lam > 0]
    return float(max(0.0, -np.sum(lam * np.log2(lam))))


def binary_spectrum_entropy(lam):
    """Vectorised entropy (bits) of rows of eigenvalues; non-positive entries count as 0."""
    lam = np.asarray(lam, dtype=float)
    safe = np.where(lam > 0, lam, 1.0)
    return -np.sum(np.where(lam > 0, lam * np.log2(safe), 0.0), axis=-1)


def hs_norm_sq(m):
    """Squared Hilbert-Schmidt norm ``tr(m^dagger m)``."""
    m = np.asarray(m, dtype=complex)
    return float(np.sum(np.abs(m) ** 2))
