"""Gate catalog built from Ising-type couplings plus ancilla qubits.

A coupling ``J C_a C_b`` evolved for ``t`` gives ``exp(-i theta C_a C_b)``
with ``theta = J t``.  With the ancilla ``b`` prepared in an eigenstate of
``C`` with eigenvalue -1 (``|1>`` for ``Z``, ``|->`` for ``X``) this acts
as ``exp(i theta C_a)`` on the data qubit and leaves the ancilla alone.

Registers are described by a *layout*, a tuple of labels.  Data qubits
(labels starting with ``"d"``) come first; ``"A"`` ancillas start in
``|1>`` and ``"B"`` ancillas in ``|->``.
"""

from dataclasses import dataclass, field, replace

import numpy as np

from .evolve import Propagator, propagator
from .linalg import embed_single, expm_hermitian, identity, kron
from .model import HamiltonianKind, NoiseSample, build_error_hamiltonian, build_system_hamiltonian
from .schedule import make_schedule

__all__ = [
    "ANCILLA_STATES",
    "GateRecipe",
    "CompositeRecipe",
    "evolution_time",
    "z_rotation",
    "x_rotation",
    "zz_gate",
    "xx_gate",
    "primitive_catalog",
    "composite_catalog",
    "get_gate",
    "as_composite",
    "GATE_NAMES",
    "ideal_joint_target",
    "recipe_hamiltonian",
    "simulate_composite",
    "step_schedules",
]

KET_ONE = np.array([0, 1], dtype=complex)
KET_MINUS = np.array([1, -1], dtype=complex) / np.sqrt(2)

ANCILLA_STATES = {"ket_one": KET_ONE, "ket_minus": KET_MINUS}
_LABEL_INIT = {"A": "ket_one", "B": "ket_minus"}
_REQUIRED_INIT = {"ZZ": "ket_one", "XX": "ket_minus"}

MAX_QUBITS = 4


def evolution_time(theta, coupling):
    """Return ``(t, sign)`` with ``t = |theta| / coupling``.

    Negative angles are reached by reversing the Hamiltonian sign, never by
    evolving longer.
    """
    if not coupling > 0:
        raise ValueError(f"coupling must be positive, got {coupling}")
    if theta == 0:
        raise ValueError("zero rotation angle gives a zero-duration gate")
    return abs(theta) / coupling, (1 if theta > 0 else -1)


@dataclass(frozen=True)
class GateRecipe:
    """One coupling evolution.

    ``kind`` holds register indices (1-based).  For ancilla gates
    ``kind.qubit_a`` is the data qubit and ``kind.qubit_b`` the ancilla.
    """

    name: str
    kind: HamiltonianKind
    theta: float
    ancilla: str = "none"
    global_phase: complex = 1.0
    ideal_data_unitary: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        if self.ancilla not in ("none", "ket_one", "ket_minus"):
            raise ValueError(f"unknown ancilla init {self.ancilla!r}")
        if self.ancilla != "none" and self.ancilla != _REQUIRED_INIT[self.kind.variant]:
            raise ValueError(f"{self.kind.variant} coupling needs ancilla {_REQUIRED_INIT[self.kind.variant]}")
        if self.theta == 0:
            raise ValueError("theta must be nonzero")
        if self.ideal_data_unitary is None:
            object.__setattr__(self, "ideal_data_unitary", self._ideal())

    @property
    def axis(self):
        return "z" if self.kind.variant == "ZZ" else "x"

    @property
    def data_qubits(self):
        if self.ancilla == "none":
            return (self.kind.qubit_a, self.kind.qubit_b)
        return (self.kind.qubit_a,)

    def _ideal(self):
        c = embed_single(self.axis, 1, 1)
        if self.ancilla == "none":
            u = expm_hermitian(kron(c, c), self.theta)
        else:
            u = expm_hermitian(c, -self.theta)
        return self.global_phase * u

    def joint_ideal(self, n):
        """Ideal action (phase included) on an ``n``-qubit register."""
        a, b = self.kind.qubit_a, self.kind.qubit_b
        ca = embed_single(self.axis, a, n)
        if self.ancilla == "none":
            u = expm_hermitian(ca @ embed_single(self.axis, b, n), self.theta)
        else:
            u = expm_hermitian(ca, -self.theta)
        return self.global_phase * u


def z_rotation(theta, data=1, ancilla=2, phase=1.0, name=None):
    """``exp(i theta Z)`` on ``data`` through a ZZ coupling to a ``|1>`` ancilla."""
    return GateRecipe(name or f"rz({theta:g})", HamiltonianKind("ZZ", data, ancilla),
                      theta, "ket_one", phase)


def x_rotation(theta, data=1, ancilla=2, phase=1.0, name=None):
    """``exp(i theta X)`` on ``data`` through an XX coupling to a ``|->`` ancilla."""
    return GateRecipe(name or f"rx({theta:g})", HamiltonianKind("XX", data, ancilla),
                      theta, "ket_minus", phase)


def zz_gate(theta, a=1, b=2, phase=1.0, name=None):
    return GateRecipe(name or f"zz({theta:g})", HamiltonianKind("ZZ", a, b), theta, "none", phase)


def xx_gate(theta, a=1, b=2, phase=1.0, name=None):
    return GateRecipe(name or f"xx({theta:g})", HamiltonianKind("XX", a, b), theta, "none", phase)


def _s(data, ancilla):
    return z_rotation(-np.pi / 4, data, ancilla, np.exp(1j * np.pi / 4), "s")


def primitive_catalog():
    return [
        x_rotation(np.pi / 2, phase=-1j, name="x"),
        _s(1, 2),
        z_rotation(-np.pi / 8, phase=np.exp(1j * np.pi / 8), name="t"),
        zz_gate(-np.pi / 4, name="u3"),
        xx_gate(-np.pi / 4, name="u4"),
    ]


@dataclass(frozen=True)
class CompositeRecipe:
    """A sequence of coupling evolutions on a shared register.

    The ideal data unitary is ``global_phase`` times the time-ordered
    product of the step ideals (each carrying its own phase).
    """

    name: str
    layout: tuple
    steps: tuple
    global_phase: complex = 1.0
    ideal_data_unitary: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        if len(self.layout) > MAX_QUBITS:
            raise ValueError(f"{self.name}: {len(self.layout)} qubits exceeds {MAX_QUBITS}")
        labels = list(self.layout)
        n_data = sum(1 for lab in labels if lab.startswith("d"))
        if any(not lab.startswith("d") for lab in labels[:n_data]):
            raise ValueError("data qubits must precede ancillas in the layout")
        for s in self.steps:
            if max(s.kind.qubit_a, s.kind.qubit_b) > len(labels):
                raise ValueError(f"step {s.name} addresses a qubit outside the register")
            if s.ancilla != "none" and _LABEL_INIT.get(labels[s.kind.qubit_b - 1]) != s.ancilla:
                raise ValueError(f"step {s.name} expects ancilla {s.ancilla} on qubit {s.kind.qubit_b}")
            if any(q > n_data for q in s.data_qubits):
                raise ValueError(f"step {s.name} acts on an ancilla as data")
        if self.ideal_data_unitary is None:
            u = self.product_of_steps()
            # restrict to the data block with ancillas in their initial states
            anc = self.ancilla_state()
            dim = 2**n_data
            blocks = u.reshape(dim, anc.size, dim, anc.size)
            ideal = np.einsum("iajb,a,b->ij", blocks, anc.conj(), anc)
            object.__setattr__(self, "ideal_data_unitary", ideal)

    @property
    def n_qubits(self):
        return len(self.layout)

    @property
    def n_data(self):
        return sum(1 for lab in self.layout if lab.startswith("d"))

    def ancilla_state(self):
        """Product state of the ancillas in layout order (``[1]`` if none)."""
        vecs = [ANCILLA_STATES[_LABEL_INIT[lab]] for lab in self.layout[self.n_data:]]
        return kron(*[v[:, None] for v in vecs]).ravel() if vecs else np.ones(1, dtype=complex)

    def product_of_steps(self):
        n = self.n_qubits
        u = identity(2**n)
        for s in self.steps:
            u = s.joint_ideal(n) @ u
        return self.global_phase * u


def as_composite(recipe):
    if isinstance(recipe, CompositeRecipe):
        return recipe
    layout = ("d1", "d2") if recipe.ancilla == "none" else (
        ("d", "A") if recipe.ancilla == "ket_one" else ("d", "B"))
    return CompositeRecipe(recipe.name, layout, (recipe,), 1.0, recipe.ideal_data_unitary)


def _hadamard_steps(data, a, b):
    # -i U2(pi/2) U1(-pi/4) U2(-pi/4) U1(pi/4), rightmost first in time
    return (
        z_rotation(np.pi / 4, data, a),
        x_rotation(-np.pi / 4, data, b),
        z_rotation(-np.pi / 4, data, a),
        x_rotation(np.pi / 2, data, b),
    )


HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
CZ = np.diag([1, 1, 1, -1]).astype(complex)
CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)


def composite_catalog():
    h = CompositeRecipe("h", ("d", "A", "B"), _hadamard_steps(1, 2, 3), -1j, HADAMARD)
    cz = CompositeRecipe(
        "cz", ("d1", "d2", "A"),
        (zz_gate(-np.pi / 4, 1, 2, name="u3"), _s(1, 3), _s(2, 3)),
        np.exp(-1j * np.pi / 4),
        CZ,
    )
    cnot = CompositeRecipe(
        "cnot", ("d1", "d2", "A", "B"),
        _hadamard_steps(2, 3, 4)
        + (zz_gate(-np.pi / 4, 1, 2, name="u3"), _s(1, 3), _s(2, 3))
        + _hadamard_steps(2, 3, 4),
        -1j * np.exp(-1j * np.pi / 4) * -1j,
        CNOT,
    )
    return [h, cz, cnot]


GATE_NAMES = ("x", "s", "t", "u3", "u4", "h", "cz", "cnot")


def get_gate(name):
    """Look up a catalog gate by case-insensitive name, as a CompositeRecipe."""
    key = name.strip().lower()
    for r in primitive_catalog():
        if r.name == key:
            return as_composite(r)
    for c in composite_catalog():
        if c.name == key:
            return c
    raise KeyError(f"unknown gate {name!r}; choose from {', '.join(GATE_NAMES)}")


def ideal_joint_target(recipe):
    """Ideal unitary on data and ancillas: ideal data gate, identity on ancillas."""
    c = as_composite(recipe)
    return kron(c.ideal_data_unitary, identity(2 ** (c.n_qubits - c.n_data)))


def recipe_hamiltonian(step, params, n, reverse="system"):
    """System Hamiltonian and evolution time for one coupling step.

    ``reverse`` picks how a negative angle is realized: ``"system"`` negates
    the whole system Hamiltonian, ``"coupling"`` flips only the coupling.
    """
    coupling = params.coupling(step.kind.variant)
    t, sign = evolution_time(step.theta, coupling)
    if sign > 0:
        p = params
    elif reverse == "system":
        p = params.scaled(-1)
    elif reverse == "coupling":
        p = replace(params, **{"j_z" if step.kind.variant == "ZZ" else "j_x": -coupling})
    else:
        raise ValueError(f"unknown reversal convention {reverse!r}")
    return build_system_hamiltonian(step.kind, p, n), t


def simulate_composite(c, params, dd=("none", None), noise=None, reverse="system"):
    """Propagator of a (composite) recipe on its full register.

    Each step runs its own DD schedule over its own evolution time.  The
    quasi-static ``noise`` acts on every qubit throughout; idle qubits feel
    only the noise.  ``dd`` is ``(scheme, order)``.
    """
    c = as_composite(c)
    n = c.n_qubits
    if noise is None:
        noise = NoiseSample.zero(n)
    if noise.n_qubits != n:
        raise ValueError(f"noise covers {noise.n_qubits} qubits, register has {n}")
    h_err = build_error_hamiltonian(noise)
    u = Propagator(identity(2**n), 0.0)
    for h_sys, sched in step_schedules(c, params, dd, reverse):
        u = propagator(h_sys + h_err, sched) @ u
    return u


def step_schedules(c, params, dd=("none", None), reverse="system"):
    """``[(system Hamiltonian, PulseSchedule), ...]`` for each step in time order."""
    c = as_composite(c)
    scheme, order = dd
    out = []
    for step in c.steps:
        h_sys, t = recipe_hamiltonian(step, params, c.n_qubits, reverse)
        out.append((h_sys, make_schedule(t, scheme, order)))
    return out
