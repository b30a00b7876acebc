# Brute-force check: evolve the vacuum in a truncated Fock basis and compare
# with the Gaussian (Bogoliubov) result.
#
# The basis keeps only states with n_S = n_c + n_aS, which is all the vacuum
# can reach. Strong coupling keeps the times short enough for a small basis.

import numpy as np

from ramaniton import ModelParams, TruncationInadequate, compare

regime = ModelParams(12.4, 0.2, 1.0)
taus = np.arange(0, 4.01, 0.1)

report = compare(regime, taus, np.pi / 2, cutoff=16)
print("max N_S in window:", round(report.max_occupation, 4))
for name, dev in report.max_deviation.items():
    print(f"  {name:9s} deviation {dev:.1e}   cutoff-doubling shift {report.doubling_delta[name]:.1e}")
print("passed:", report.passed)

# Longer windows need a bigger basis: at N_S = 2 the thermal-like photon
# distribution still has ~1e-3 of its weight above 16 photons.
long = np.linspace(0, 7.25, 30)
for cutoff in (16, 32):
    try:
        r = compare(regime, long, np.pi / 2, cutoff)
        print(f"cutoff {cutoff}: passed={r.passed}")
    except TruncationInadequate as exc:
        print(f"cutoff {cutoff}: truncation inadequate, "
              f"worst doubling shift {max(exc.report.doubling_delta.values()):.1e}")

# A starved basis is refused outright.
try:
    compare(regime, taus, np.pi / 2, cutoff=4)
except TruncationInadequate as exc:
    print("cutoff 4:", str(exc).split(";")[0])
