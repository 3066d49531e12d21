"""Monte Carlo estimates of average gate fidelity.

Every cell averages ``|<psi| U_ideal^dagger U |psi>|^2`` over ``n_states``
random initial states and ``n_noise`` quasi-static noise draws.

Random streams are derived from the master seed with
:class:`numpy.random.SeedSequence`:

* initial states: ``SeedSequence(master_seed, spawn_key=(STATE_KEY,))``
* noise draw ``r``: ``SeedSequence(master_seed, spawn_key=(NOISE_KEY, r))``

so a cell is reproducible on its own and the same states and noise draws
are shared by every DD column of a gate (common random numbers).
Per-draw fidelities land in an array indexed by draw and are reduced in
index order, which makes results independent of the worker count.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from .evolve import fidelities
from .gates import as_composite, get_gate, ideal_joint_target, simulate_composite
from .model import MHZ, NoiseSample, SystemParams, sample_noise

__all__ = [
    "CASES",
    "TABLE_GATES",
    "TABLE_COLUMNS",
    "ExperimentConfig",
    "FidelityStats",
    "noise_rng",
    "state_rng",
    "sample_initial_state",
    "sample_initial_states",
    "run_cell",
    "reproduce_table",
    "default_workers",
]

NOISE_KEY = 0
STATE_KEY = 1

CASES = {
    "case1": SystemParams(epsilon=10 * MHZ, delta=0.0, j_z=100 * MHZ, j_x=100 * MHZ),
    "case2": SystemParams(epsilon=100 * MHZ, delta=0.0, j_z=100 * MHZ, j_x=100 * MHZ),
}

TABLE_GATES = ("x", "s", "t", "u3", "u4")
# column name -> (include_decoherence, dd scheme, order)
TABLE_COLUMNS = {
    "no_decoherence": (False, "none", None),
    "no_dd": (True, "none", None),
    "pdd_np12": (True, "pdd", 12),
    "cdd_nc3": (True, "cdd", 3),
}


def _case_key(case):
    key = str(case).lower()
    return key if key.startswith("case") or key == "custom" else f"case{key}"


@dataclass(frozen=True)
class ExperimentConfig:
    """One table cell.

    For ``case1``/``case2`` the system parameters come from :data:`CASES`
    and any explicit values are overwritten.  ``noise_j`` defaults to
    ``j_z``.  ``state_distribution`` is ``"box"`` (real and imaginary parts
    of each amplitude uniform on ``[0, 1)``) or ``"haar"``.
    """

    gate: str
    case: str = "case1"
    dd: str = "none"
    dd_order: int = None
    epsilon: float = 0.0
    delta: float = 0.0
    j_x: float = 0.0
    j_z: float = 0.0
    n_states: int = 100
    n_noise: int = 1000
    master_seed: int = 0
    include_decoherence: bool = True
    noise_j: float = None
    state_distribution: str = "box"
    reverse: str = "system"

    def __post_init__(self):
        case = _case_key(self.case)
        object.__setattr__(self, "case", case)
        if case in CASES:
            for k, v in asdict(CASES[case]).items():
                object.__setattr__(self, k, v)
        elif case != "custom":
            raise ValueError(f"unknown case {self.case!r}")
        object.__setattr__(self, "gate", self.gate.strip().lower())
        object.__setattr__(self, "dd", self.dd.lower())
        if self.dd not in ("none", "pdd", "cdd"):
            raise ValueError(f"unknown DD scheme {self.dd!r}")
        if self.dd != "none" and (self.dd_order is None or self.dd_order < 1):
            raise ValueError(f"{self.dd} needs a positive order")
        if self.n_states < 1 or self.n_noise < 1:
            raise ValueError("n_states and n_noise must be positive")
        if self.state_distribution not in ("box", "haar"):
            raise ValueError(f"unknown state distribution {self.state_distribution!r}")
        if not 0 <= self.master_seed < 2**64:
            raise ValueError("master_seed must fit in 64 unsigned bits")

    @property
    def params(self):
        return SystemParams(self.epsilon, self.delta, self.j_z, self.j_x)

    @property
    def noise_strength(self):
        return self.j_z if self.noise_j is None else self.noise_j

    def with_column(self, column):
        deco, scheme, order = TABLE_COLUMNS[column]
        return replace(self, include_decoherence=deco, dd=scheme, dd_order=order)


@dataclass(frozen=True)
class FidelityStats:
    mean: float
    std_dev: float
    std_error: float
    n_pairs: int
    samples: np.ndarray = field(default=None, repr=False, compare=False)

    @classmethod
    def from_samples(cls, f):
        f = np.asarray(f, dtype=float)
        n = f.size
        std = float(f.std(ddof=1)) if n > 1 else 0.0
        return cls(float(f.mean()), std, std / np.sqrt(n), n, f)

    def as_dict(self):
        return {"mean": self.mean, "std_dev": self.std_dev,
                "std_error": self.std_error, "n_pairs": self.n_pairs}


def noise_rng(master_seed, r):
    return np.random.default_rng(np.random.SeedSequence(master_seed, spawn_key=(NOISE_KEY, r)))


def state_rng(master_seed):
    return np.random.default_rng(np.random.SeedSequence(master_seed, spawn_key=(STATE_KEY,)))


def _amplitudes(rng, size, distribution):
    if distribution == "haar":
        a = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    else:
        a = rng.random(size) + 1j * rng.random(size)
    return a / np.linalg.norm(a, axis=-1, keepdims=True)


def sample_initial_states(rng, recipe, n, distribution="box"):
    """``n`` random data states tensored with the recipe's ancilla state."""
    c = get_gate(recipe) if isinstance(recipe, str) else as_composite(recipe)
    data = _amplitudes(rng, (n, 2**c.n_data), distribution)
    anc = c.ancilla_state()
    return (data[:, :, None] * anc[None, None, :]).reshape(n, -1)


def sample_initial_state(rng, recipe, distribution="box"):
    return sample_initial_states(rng, recipe, 1, distribution)[0]


def default_workers():
    env = os.environ.get("DDFORGE_THREADS")
    if env:
        return max(1, int(env))
    return min(8, os.cpu_count() or 1)


def run_cell(cfg, workers=None):
    """Average fidelity for one (gate, case, DD column) configuration."""
    recipe = get_gate(cfg.gate)
    n = recipe.n_qubits
    params = cfg.params
    states = sample_initial_states(state_rng(cfg.master_seed), recipe, cfg.n_states,
                                   cfg.state_distribution)
    target = ideal_joint_target(recipe)
    n_noise = cfg.n_noise if cfg.include_decoherence else 1
    dd = (cfg.dd, cfg.dd_order)
    out = np.empty((n_noise, cfg.n_states))

    def work(r):
        if cfg.include_decoherence:
            noise = sample_noise(noise_rng(cfg.master_seed, r), cfg.noise_strength, n)
        else:
            noise = NoiseSample.zero(n)
        u = simulate_composite(recipe, params, dd, noise, cfg.reverse)
        out[r] = fidelities(states, u, target)

    workers = workers or default_workers()
    if workers == 1 or n_noise == 1:
        for r in range(n_noise):
            work(r)
    else:
        with ThreadPoolExecutor(workers) as pool:
            list(pool.map(work, range(n_noise)))
    return FidelityStats.from_samples(out.ravel())


def reproduce_table(case, seed=0, n_states=100, n_noise=1000, gates=TABLE_GATES, workers=None,
                    **overrides):
    """Every (gate, column) cell; returns ``{gate: {column: FidelityStats}}``."""
    table = {}
    for g in gates:
        base = ExperimentConfig(gate=g, case=case, n_states=n_states, n_noise=n_noise,
                                master_seed=seed, **overrides)
        table[g] = {col: run_cell(base.with_column(col), workers) for col in TABLE_COLUMNS}
    return table
