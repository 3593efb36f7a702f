"""Coherent information of some standard two-party states.

Run:  python demos/01_coherent_information.py
"""
import numpy as np

from cicap import IsotropicParams, bell_diagonal, coherent_info, entropy, isotropic, isotropic_ci
from cicap.states import BELL_LABELS, maximally_mixed

# Every Bell state carries one bit of coherent information on either side.
for k, label in enumerate(BELL_LABELS):
    p = np.zeros(4)
    p[k] = 1
    rho = bell_diagonal(p)
    print(f"{label:5s}  I^A = {coherent_info(rho, 'A').clipped:.6f}  I^B = {coherent_info(rho, 'B').clipped:.6f}")

# The maximally mixed two-qubit state: S(rho) = 2 > S(rho_B) = 1, so the raw value is -1.
ci = coherent_info(maximally_mixed((2, 2)), "B")
print(f"\nI/4: raw {ci.raw:+.6f}, clipped {ci.clipped:.6f}")

# Isotropic family: eigendecomposition versus the closed form.
print("\n   F   d   eigen-route   closed form")
for d in (2, 3, 4):
    for F in (0.5, 0.9, 0.99):
        params = IsotropicParams(F, d)
        a = coherent_info(isotropic(params), "B").clipped
        b = isotropic_ci(params).clipped
        print(f"{F:5.2f} {d:3d}   {a:.10f}  {b:.10f}")

# Bell-diagonal mixtures: the hashing rate 1 - S(rho) coincides with I^B.
rho = bell_diagonal([0.8, 0.2, 0, 0])
print(f"\nbell_diagonal(0.8, 0.2, 0, 0): 1 - S = {1 - entropy(rho.matrix):.6f}")
