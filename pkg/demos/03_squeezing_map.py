# Where is the squeezing largest?
#
# Scan the Raman shift at a few propagation lengths, then let the optimizer
# find the global maximum over (q, tau).

import numpy as np

from ramaniton import SILICON, SILICON_CONSTANTS, optimize_global, sweep_q
from ramaniton.model import dimensionless_length_to_physical

q_grid = np.linspace(0.995, 1.005, 1001)
for tau in (3000.0, 5000.0, 8885.77, 12000.0):
    table = sweep_q(SILICON, q_grid, tau)  # columns q, S_db, N_S, N_aS, g2
    best = table[np.argmax(table[:, 1])]
    print(f"tau={tau:8.1f}  best q={best[0]:.5f}  S={best[1]:6.3f} dB  g2={best[4]:.5f}")

# Away from the optimal length the best q is detuned from 1: local maxima.
best = optimize_global(SILICON, (0.99, 1.01), (0.0, 2e4))
length = dimensionless_length_to_physical(best.tau_star, SILICON_CONSTANTS)
print()
print(f"global optimum: q*={best.q_star:.6f}  tau*={best.tau_star:.2f}  S*={best.S_db:.3f} dB")
print(f"waveguide length {1e3 * length:.3f} mm")
