# Mode frequencies of the coupled Stokes / phonon / anti-Stokes system.
#
# With the coupling off the three bare frequencies are -q, 1 and q, and the
# phonon line crosses the anti-Stokes line at q = 1. Any coupling opens a
# gap there; at the crossing it is eta / sqrt(2).

import numpy as np

from ramaniton import ModelParams, analytic_dispersion, basis_for, verify_canonical

for eta in (0.0, 0.1, 1.0):
    w = analytic_dispersion(ModelParams(12.4, eta, 1.0))
    print(f"eta={eta:<4}  omegas at q=1: {np.round(w, 6)}  gap={w[2] - w[1]:.6f}")

print("eta/sqrt(2) for eta=1:", 1 / np.sqrt(2))

# The Bogoliubov basis behind these numbers is para-unitary to rounding.
for q in (0.05, 0.9, 1.0, 1.1, 2.5):
    basis = basis_for(ModelParams(12.4, 0.1, q))
    print(f"q={q:<5} U Z U^dag Z - I residual: {verify_canonical(basis):.1e}")

# A coarse table, as the CLI would print it:
#   python3 -m ramaniton dispersion --eta 0.1 --q 0:3:0.25
params = ModelParams(12.4, 0.1, 0.0)
for q in np.arange(0, 3.01, 0.25):
    print("%5.2f  %9.5f  %9.5f  %9.5f" % (q, *analytic_dispersion(params.with_q(q))))
