"""Nonperturbative photon-phonon Raman model: Bogoliubov dynamics of the
Stokes, anti-Stokes and phonon modes, vacuum squeezing and photon-pair
correlations, with a truncated Fock-space cross-check."""

from .dynamics import (
    GaussianMoments, ObservablePoint, Propagator, analytic_variance_ratio,
    evolve_series, g2, minimum_variance, moments, observables_at, occupations,
    optimal_phase, propagator, quadrature_variance, squeezing_db,
)
from .errors import (
    ConsistencyError, DegenerateModes, InvalidOccupations, InvalidParameters,
    NoResonance, NonCanonical, RamanitonError, Singularity, TruncationInadequate,
    UndefinedCorrelation,
)
from .model import (
    PRESETS, SILICON, SILICON_CONSTANTS, ModelParams, PhysicalConstants,
    derive_couplings, dimensionless_length_to_physical, estimate_eta, kerr_eta,
    load_config, parse_config,
)
from .nambu import (
    BogoliubovBasis, NambuMatrix, Z, analytic_dispersion, basis_for,
    build_nambu_matrix, diagonalize, verify_canonical,
)
from .oracle import OracleReport, compare
from .perturbative import SwPrediction, sw_coupling, sw_prediction, sw_squeezing_db
from .sweep import (
    Optimum, ResonancePoint, SweepSpec, find_resonances, golden_section,
    optimize_global, sweep_dispersion, sweep_q,
)

__version__ = "0.1.0"
