"""
Gate fidelity tables
====================

Runs both parameter cases (weak and strong residual field ``epsilon``) for
the five primitive gates in four settings: no noise, noise without DD,
PDD with ``n_p = 12`` and CDD with ``n_c = 3``.  Pass ``--quick`` for a
small run.  The same numbers come from ``ddforge table --case N``.
"""

# %%
import sys
import time

from ddforge.cli import format_table
from ddforge.montecarlo import reproduce_table

quick = "--quick" in sys.argv
n_states, n_noise = (20, 100) if quick else (100, 1000)

# %%
for case in ("case1", "case2"):
    t0 = time.perf_counter()
    table = reproduce_table(case, seed=7, n_states=n_states, n_noise=n_noise)
    print(f"\n{case} ({time.perf_counter() - t0:.1f} s)")
    print(format_table(table, "md"))

# %% [markdown]
# Composite gates are simulated on their whole register (data plus
# ancillas); each coupling step carries its own DD sequence.

# %%
from ddforge.montecarlo import ExperimentConfig, run_cell

for g in ("h", "cz", "cnot"):
    row = []
    for col in ("no_decoherence", "no_dd", "pdd_np12", "cdd_nc3"):
        cfg = ExperimentConfig(gate=g, case="case1", n_states=20, n_noise=100,
                               master_seed=7).with_column(col)
        row.append(f"{run_cell(cfg).mean:.4f}")
    print(g, row)
