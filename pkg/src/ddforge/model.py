"""System and error Hamiltonians, and quasi-static noise sampling.

Frequencies are angular, in rad/us; times are in us.  A frequency quoted
as ``2*pi x f MHz`` is stored as ``2*pi*f``.
"""

from dataclasses import dataclass

import numpy as np

from .linalg import embed_single

__all__ = [
    "MHZ",
    "SystemParams",
    "HamiltonianKind",
    "NoiseSample",
    "build_system_hamiltonian",
    "build_error_hamiltonian",
    "sample_noise",
]

MHZ = 2 * np.pi
"""One ``2*pi x MHz`` in rad/us."""

AXES = ("x", "y", "z")


@dataclass(frozen=True)
class SystemParams:
    epsilon: float = 0.0
    delta: float = 0.0
    j_z: float = 0.0
    j_x: float = 0.0

    def __post_init__(self):
        if not np.all(np.isfinite([self.epsilon, self.delta, self.j_z, self.j_x])):
            raise ValueError("system parameters must be finite")

    def scaled(self, factor):
        """All terms multiplied by ``factor`` (used to run a Hamiltonian backwards)."""
        return SystemParams(
            self.epsilon * factor, self.delta * factor, self.j_z * factor, self.j_x * factor
        )

    def coupling(self, variant):
        return self.j_z if variant == "ZZ" else self.j_x


@dataclass(frozen=True)
class HamiltonianKind:
    """Which coupling (``ZZ`` or ``XX``) acts between which two qubits (1-based)."""

    variant: str
    qubit_a: int = 1
    qubit_b: int = 2

    def __post_init__(self):
        if self.variant not in ("ZZ", "XX"):
            raise ValueError(f"variant must be 'ZZ' or 'XX', got {self.variant!r}")
        if self.qubit_a == self.qubit_b:
            raise ValueError("coupled qubits must differ")
        if min(self.qubit_a, self.qubit_b) < 1:
            raise ValueError("qubit indices are 1-based")


@dataclass(frozen=True)
class NoiseSample:
    """One quasi-static draw; ``deltas[k-1] = (dx, dy, dz)`` for qubit ``k``."""

    deltas: np.ndarray

    def __post_init__(self):
        d = np.array(self.deltas, dtype=float).reshape(-1, 3)
        d.setflags(write=False)
        object.__setattr__(self, "deltas", d)

    @property
    def n_qubits(self):
        return self.deltas.shape[0]

    @classmethod
    def zero(cls, n_qubits):
        return cls(np.zeros((n_qubits, 3)))


def build_system_hamiltonian(kind, p, n):
    """Ising-type two-qubit Hamiltonian embedded in an ``n``-qubit register.

    ``(eps/2)(Z_a + Z_b) + (Delta/2)(X_a + X_b) + J C_a C_b`` with ``C = Z`` for
    ``ZZ`` and ``C = X`` for ``XX``.  Qubits other than ``a`` and ``b`` get no
    system terms.
    """
    if max(kind.qubit_a, kind.qubit_b) > n:
        raise ValueError(f"qubits ({kind.qubit_a}, {kind.qubit_b}) do not fit in {n} qubits")
    a, b = kind.qubit_a, kind.qubit_b
    c = "z" if kind.variant == "ZZ" else "x"
    h = 0.5 * p.epsilon * (embed_single("z", a, n) + embed_single("z", b, n))
    h = h + 0.5 * p.delta * (embed_single("x", a, n) + embed_single("x", b, n))
    h = h + p.coupling(kind.variant) * (embed_single(c, a, n) @ embed_single(c, b, n))
    return h


def _single_qubit_ops(n):
    # shape (n, 3, d, d): ops[k, axis] = sigma_axis on qubit k+1
    return np.array([[embed_single(ax, k, n) for ax in AXES] for k in range(1, n + 1)])


_OPS_CACHE = {}


def build_error_hamiltonian(s):
    n = s.n_qubits
    ops = _OPS_CACHE.get(n)
    if ops is None:
        ops = _OPS_CACHE.setdefault(n, _single_qubit_ops(n))
    return np.einsum("ka,kaij->ij", s.deltas, ops)


def sample_noise(rng, j, n):
    """Draw every ``delta_k^a`` independently from ``Uniform[-j, j]``.

    Consumes exactly ``3 n`` uniforms from ``rng`` in qubit-major order.
    """
    if j < 0:
        raise ValueError("noise strength must be non-negative")
    return NoiseSample(rng.uniform(-j, j, size=(n, 3)))

