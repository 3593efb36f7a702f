"""U (x) U* twirling: Monte-Carlo average versus the isotropic closed form.

Run:  python demos/02_twirling.py
"""
import numpy as np

from cicap import qla, random_density, twirl_closed_form, twirl_monte_carlo
from cicap.states import fidelity_with_max_entangled

sigma = random_density(4, seed=3, dims=(2, 2))
exact = twirl_closed_form(sigma)
print(f"input fidelity with P_+  : {fidelity_with_max_entangled(sigma):.6f}")
print(f"twirled fidelity with P_+: {fidelity_with_max_entangled(exact):.6f}")

print("\nsamples   median trace distance (20 seeds)")
for samples in (10, 100, 1_000, 10_000):
    d = [qla.trace_distance(twirl_monte_carlo(sigma, samples, s), exact) for s in range(20)]
    print(f"{samples:7d}   {np.median(d):.5f}")
