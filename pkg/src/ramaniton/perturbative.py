"""Schrieffer-Wolff effective pairing and its two-mode squeezing prediction.

Eliminating the phonon to second order leaves the pairing interaction
g (b_S^dag b_aS^dag + b_aS b_S) with g = eta_+ eta_- / (1 - q), which is
singular at the phonon resonance q = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import Singularity
from .model import ModelParams, derive_couplings

RESONANCE_TOL = 1e-9


@dataclass(frozen=True)
class SwPrediction:
    g_sw: float
    r: float
    S_db_predicted: float


def sw_coupling(params: ModelParams) -> float:
    """Effective pairing strength eta_+ eta_- / (1 - q) in units of Omega."""
    detuning = 1.0 - params.q
    if abs(detuning) <= RESONANCE_TOL:
        raise Singularity(f"perturbative coupling diverges at q={params.q}")
    eta_minus, eta_plus = derive_couplings(params)
    return eta_plus * eta_minus / detuning


def sw_squeezing_db(params: ModelParams, tau: float) -> float:
    """Two-mode squeezed vacuum prediction at the optimal phase.

    The squeeze parameter is r = |g| tau and the variance ratio e^{-2r},
    so S = 20 r / ln 10.
    """
    return 20.0 / math.log(10) * abs(sw_coupling(params)) * tau


def sw_prediction(params: ModelParams, tau: float) -> SwPrediction:
    g = sw_coupling(params)
    r = abs(g) * tau
    return SwPrediction(g_sw=g, r=r, S_db_predicted=20.0 / math.log(10) * r)
