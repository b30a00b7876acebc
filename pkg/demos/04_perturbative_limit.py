# Eliminating the phonon perturbatively gives an effective pair interaction
# g = eta_+ eta_- / (1 - q) and a squeezed vacuum with r = |g| tau.
#
# Far from resonance and for weak squeezing this matches the exact result,
# once tau is long compared with 1/|1 - q|. At q = 1 it breaks down.

from ramaniton import ModelParams, Singularity, observables_at, sw_prediction

params = ModelParams(12.4, 1e-2, 0.5)
print(" tau    tau|1-q|  exact dB   SW dB    ratio")
for tau in (2.0, 10.0, 40.0, 200.0, 1000.0, 3000.0):
    exact = observables_at(params, tau).S_db
    sw = sw_prediction(params, tau)
    print(f"{tau:6.0f}  {tau * 0.5:8.1f}  {exact:8.5f}  {sw.S_db_predicted:8.5f}  "
          f"{sw.S_db_predicted / exact:6.3f}")

# Short times: the exact squeezing starts quadratically (the phonon has to
# be excited first), so the linear prediction overshoots.

try:
    sw_prediction(params.with_q(1.0), 1000.0)
except Singularity as exc:
    print("\nq=1:", exc)
print("exact at q=1, tau=1000:", round(observables_at(params.with_q(1.0), 1000.0).S_db, 4), "dB")
