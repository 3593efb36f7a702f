"""Run every verification suite at a small size and summarize.

Run:  python demos/04_verification.py
"""
from cicap import verify

for name in verify.SUITES:
    trials = {"hashing": 100, "reduction": 2000, "infoloss": 300, "properties": 500}.get(name, 0)
    report = verify.run_suite(name, trials, seed=0)
    print(report.summary_line())
    for inst in report.failures()[:3]:
        print(f"    {inst.description}: lhs={inst.lhs:.6f} rhs={inst.rhs:.6f}")

# The isotropic sequence F_n = 1 - 1/n converges slowly: the ratio deficit is about 2/n.
print("\n n   F=1-1/n    F=1-1/n^2")
slow = verify.lemma_ratios(20)
fast = verify.lemma_ratios(20, fidelity=lambda n: 1 - 1 / n**2)
for n in (2, 5, 10, 15, 20):
    print(f"{n:2d}   {slow[n]:.6f}   {fast[n]:.6f}")
