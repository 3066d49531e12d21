"""Small dense complex linear algebra on numpy arrays.

Operators here live on at most a handful of qubits, so everything is a
plain dense ``complex128`` array.  Qubit 1 is the leftmost (slowest)
Kronecker factor throughout the package.
"""

from functools import reduce

import numpy as np

__all__ = [
    "matmul",
    "kron",
    "dagger",
    "expm_hermitian",
    "eigh_hermitian",
    "pauli",
    "identity",
    "embed_single",
    "kron_power",
    "is_hermitian",
]

HERMITIAN_TOL = 1e-10

_PAULI = {
    "i": np.eye(2, dtype=complex),
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}
for _m in _PAULI.values():
    _m.setflags(write=False)


def _as_matrix(a):
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {a.shape}")
    return a


def matmul(a, b):
    a, b = _as_matrix(a), _as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} @ {b.shape}")
    return a @ b


def kron(*mats):
    """Kronecker product, first argument is the slow (qubit-1) factor."""
    if not mats:
        raise ValueError("kron needs at least one matrix")
    return reduce(np.kron, (_as_matrix(m) for m in mats))


def dagger(a):
    return _as_matrix(a).conj().T


def is_hermitian(h, tol=HERMITIAN_TOL):
    h = _as_matrix(h)
    return h.shape[0] == h.shape[1] and np.abs(h - h.conj().T).max() <= tol


def eigh_hermitian(h):
    """Eigenpairs ``(w, v)`` of a Hermitian matrix with ``h = v diag(w) v^dagger``."""
    h = _as_matrix(h)
    if not is_hermitian(h):
        raise ValueError("matrix is not Hermitian within 1e-10")
    # LinAlgError from LAPACK (non-convergence) propagates unchanged.
    return np.linalg.eigh(h)


def expm_hermitian(h, t):
    """Return ``exp(-i h t)`` for Hermitian ``h`` via eigendecomposition."""
    w, v = eigh_hermitian(h)
    return (v * np.exp(-1j * w * t)) @ v.conj().T


def pauli(axis):
    try:
        return _PAULI[axis.lower()].copy()
    except (KeyError, AttributeError):
        raise ValueError(f"unknown Pauli axis {axis!r}") from None


def identity(dim):
    return np.eye(dim, dtype=complex)


def kron_power(m, n):
    return kron(*([m] * n))


def embed_single(axis, k, n):
    """``pauli(axis)`` acting on qubit ``k`` (1-based) of an ``n``-qubit register."""
    if not 1 <= k <= n:
        raise ValueError(f"qubit index {k} out of range 1..{n}")
    p = pauli(axis)
    return kron(*[p if j == k else _PAULI["i"] for j in range(1, n + 1)])
