"""Finite-n coherent-information lower bounds for qubit channels.

Run:  python demos/03_channel_bounds.py
"""
import numpy as np

from cicap import OptConfig, grid_oracle_diag, maximally_mixed_ci, maximize_ci, standard_channel
from cicap.cli import sweep_rows


def h(p):
    return 0.0 if p in (0, 1) else -p * np.log2(p) - (1 - p) * np.log2(1 - p)


cfg = OptConfig(n=1, restarts=8, seed=0)
print("channel                    optimized   reference")
for p in (0.05, 0.1, 0.25):
    r = maximize_ci(standard_channel("dephasing", p), cfg)
    print(f"{f'dephasing({p})':27s}{r.best_ci_per_copy:.6f}    1-h(p) = {1 - h(p):.6f}")
r = maximize_ci(standard_channel("erasure", 0.25), cfg)
print(f"{'erasure(0.25)':27s}{r.best_ci_per_copy:.6f}    1-2p   = 0.500000")
for g in (0.1, 0.25, 0.4, 0.6):
    ch = standard_channel("amplitude_damping", g)
    r = maximize_ci(ch, cfg)
    print(f"{f'amplitude_damping({g})':27s}{r.best_ci_per_copy:.6f}    grid   = {grid_oracle_diag(ch, 2001):.6f}")

# For amplitude damping the maximally mixed input is not optimal.
ch = standard_channel("amplitude_damping", 0.3)
print(f"\namplitude_damping(0.3): maximally mixed {maximally_mixed_ci(ch):.6f}, optimized {maximize_ci(ch, cfg).best_ci_per_copy:.6f}")

# Two channel uses of the dephasing channel give no per-copy gain.
ch = standard_channel("dephasing", 0.1)
print(f"dephasing(0.1), n=2 per copy: {maximize_ci(ch, OptConfig(n=2, restarts=3)).best_ci_per_copy:.6f}")

print("\ndepolarizing sweep: p, max CI, maximally mixed CI, twirled-Choi hashing rate")
for row in sweep_rows("depolarizing", 0.0, 0.3, 0.05, 1, 0):
    print("  ".join(f"{v:.4f}" for v in row))
