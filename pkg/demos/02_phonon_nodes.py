# Silicon at the phonon resonance: the phonon occupation breathes.
#
# Stokes photons are made together with phonons; anti-Stokes photons eat
# them. Whenever <N_c> returns to zero every Stokes photon has an
# anti-Stokes partner, and the two-mode squeezing peaks.

import numpy as np

from ramaniton import SILICON, SILICON_CONSTANTS, evolve_series, find_resonances
from ramaniton.model import dimensionless_length_to_physical

taus = np.linspace(0, 2e4, 2001)
series = evolve_series(SILICON, taus, phi=np.pi / 2)

for p in series[::200]:
    print(f"tau={p.tau:8.0f}  N_S={p.N_S:9.3f}  N_c={p.N_c:8.3f}  S={p.S_db:7.3f} dB")

node = find_resonances(series, SILICON)[0]
length = dimensionless_length_to_physical(node.tau_star, SILICON_CONSTANTS)
print()
print(f"first node at tau = {node.tau_star:.2f}  ({1e3 * length:.3f} mm of silicon)")
print(f"N_c there = {node.N_c_min:.2e}, N_S = {node.N_S:.2f}, N_aS = {node.N_aS:.2f}")
print(f"squeezing at the node: {node.S_db_at_node:.3f} dB")

# The state is a Gaussian pair state, so g2 = 2 + 1/N_S along the whole run.
p = min(series, key=lambda p: abs(p.tau - node.tau_star))
print(f"g2 = {p.g2:.8f}, 2 + 1/N_S = {2 + 1 / p.N_S:.8f}")

# Detuning by 5e-4 gives a different pattern: nodes at other lengths with
# less squeezing.
detuned = SILICON.with_q(0.9995)
for n in find_resonances(evolve_series(detuned, taus), detuned):
    print(f"q=0.9995 node at tau={n.tau_star:9.2f}  S={n.S_db_at_node:.3f} dB")
