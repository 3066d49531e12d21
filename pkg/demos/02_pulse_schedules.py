"""
PDD and CDD schedules under static noise
========================================

Schedules are ``(duration, pulse)`` lists.  Here we look at their shape
and at how well they average away a random static error Hamiltonian.
"""

# %%
import numpy as np

from ddforge.evolve import fidelities, propagator
from ddforge.model import MHZ, build_error_hamiltonian, sample_noise
from ddforge.schedule import cdd_schedule, none_schedule, pdd_schedule

t = 2.5e-3  # us, the duration of an X gate at J = 2 pi x 100 MHz

# %%
print("PDD(1):", [p.name for p in pdd_schedule(t, 1).pulses])
print("CDD(2):", "".join(p.name for p in cdd_schedule(t, 2).pulses))
print("CDD(3) segments:", len(cdd_schedule(t, 3)))

# %% [markdown]
# Pure noise, target = identity.  Mean fidelity over 300 draws with
# ``delta ~ U[-J, J]``.

# %%
rng = np.random.default_rng(1)
noises = [build_error_hamiltonian(sample_noise(rng, 100 * MHZ, 2)) for _ in range(300)]
states = rng.normal(size=(50, 4)) + 1j * rng.normal(size=(50, 4))
states /= np.linalg.norm(states, axis=1, keepdims=True)


def mean_fid(make):
    return np.mean([fidelities(states, propagator(h, make()), np.eye(4)).mean() for h in noises])


print(f"{'none':8s} {mean_fid(lambda: none_schedule(t)):.5f}")
for n_p in (1, 3, 12, 48):
    print(f"PDD({n_p:2d}) {mean_fid(lambda: pdd_schedule(t, n_p)):.5f}")
for n_c in (1, 2, 3):
    print(f"CDD({n_c})   {mean_fid(lambda: cdd_schedule(t, n_c)):.5f}")
