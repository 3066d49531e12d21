"""Propagators under pulse schedules and state fidelities."""

from dataclasses import dataclass

import numpy as np

from .linalg import eigh_hermitian
from .schedule import PulseOp, pulse_matrix

__all__ = ["Propagator", "propagator", "naive_propagator", "fidelity", "fidelities"]

NORM_TOL = 1e-9


@dataclass(frozen=True)
class Propagator:
    matrix: np.ndarray
    total_time: float

    def __matmul__(self, other):
        if isinstance(other, Propagator):
            return Propagator(self.matrix @ other.matrix, self.total_time + other.total_time)
        return self.matrix @ other


def propagator(h_total, sched):
    """Total unitary of ``h_total`` driven through the pulse schedule.

    Each item applies ``pulse @ exp(-i h d)`` on the left of the running
    product.  ``h_total`` is diagonalised once; segments of equal length
    share one exponential.
    """
    h_total = np.asarray(h_total, dtype=complex)
    dim = h_total.shape[0]
    n = int(round(np.log2(dim)))
    if 2**n != dim:
        raise ValueError(f"dimension {dim} is not a power of two")
    w, v = eigh_hermitian(h_total)
    vh = v.conj().T
    segments = {}
    u = np.eye(dim, dtype=complex)
    for d, p in sched.items:
        seg = segments.get(d)
        if seg is None:
            seg = segments[d] = (v * np.exp(-1j * w * d)) @ vh
        u = seg @ u
        if p is not PulseOp.I:
            u = pulse_matrix(p, n) @ u
    return Propagator(u, sched.total_time)


def naive_propagator(h_total, sched):
    """Unfused reference product using ``scipy.linalg.expm`` per segment."""
    from scipy.linalg import expm

    h_total = np.asarray(h_total, dtype=complex)
    n = int(round(np.log2(h_total.shape[0])))
    u = np.eye(h_total.shape[0], dtype=complex)
    for d, p in sched.items:
        u = pulse_matrix(p, n) @ expm(-1j * h_total * d) @ u
    return Propagator(u, sched.total_time)


def _unwrap(u):
    return u.matrix if isinstance(u, Propagator) else np.asarray(u)


def fidelity(psi0, u_actual, u_ideal):
    """``|<psi0| u_ideal^dagger u_actual |psi0>|^2``."""
    psi0 = np.asarray(psi0, dtype=complex)
    u_actual, u_ideal = _unwrap(u_actual), _unwrap(u_ideal)
    if not (psi0.shape[0] == u_actual.shape[1] == u_ideal.shape[1]):
        raise ValueError("state and operator dimensions disagree")
    if abs(np.vdot(psi0, psi0).real - 1) > NORM_TOL:
        raise ValueError("initial state is not normalized")
    return float(abs(np.vdot(u_ideal @ psi0, u_actual @ psi0)) ** 2)


def fidelities(states, u_actual, u_ideal):
    """Vectorised :func:`fidelity` for ``states`` of shape ``(n_states, dim)``.

    Normalization is the caller's responsibility here.
    """
    states = np.asarray(states)
    out = states @ _unwrap(u_actual).T
    tgt = states @ _unwrap(u_ideal).T
    return np.abs(np.einsum("si,si->s", tgt.conj(), out)) ** 2
