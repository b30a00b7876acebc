"""Heisenberg evolution of the bare operators and vacuum-state observables.

The state evolved from the bare vacuum is Gaussian with zero mean, so the
normal moments <b_i^dag b_j> and anomalous moments <b_i b_j> determine every
observable. Mode rows are indexed 0: b_S, 1: c, 2: b_aS.

Functions taking :class:`GaussianMoments` broadcast over a leading batch
axis, which the sweep layer uses to evaluate whole time grids at once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _parallel
from .errors import ConsistencyError, InvalidOccupations, UndefinedCorrelation
from .model import ModelParams
from .nambu import BogoliubovBasis, Z, basis_for

QNL_VARIANCE = 0.25
G2_THRESHOLD = 1e-12
FLAT_TOL = 1e-15

CONSERVATION_TOL = 1e-9
IDENTITY_TOL = 1e-9
SYMPLECTIC_TOL = 1e-9


@dataclass(frozen=True)
class Propagator:
    """``v(tau) = M v(0)``; ``M`` may carry a leading batch axis."""

    M: np.ndarray
    tau: float | np.ndarray


@dataclass(frozen=True)
class GaussianMoments:
    """Second moments of the evolved vacuum.

    ``rows`` optionally keeps the b_S, c, b_aS rows of the propagator that
    generated the moments. The state is pure, so these rows factor both
    moment matrices; variances are then summed from amplitudes instead of
    differenced from moments, which keeps relative precision when the
    squeezing is strong.
    """

    normal: np.ndarray
    anomalous: np.ndarray
    tau: float | np.ndarray
    rows: Optional[np.ndarray] = None


@dataclass(frozen=True)
class ObservablePoint:
    tau: float
    N_S: float
    N_aS: float
    N_c: float
    S_db: float
    phi: float
    g2: Optional[float]
    variance: float


def propagators(basis: BogoliubovBasis, taus) -> np.ndarray:
    """Stack of M(tau) = U D(tau) U^-1 for every tau, shape (n, 6, 6).

    Evaluated as I + U (D - I) U^-1 with expm1 so short times keep full
    relative precision in the off-diagonal entries.
    """
    taus = np.asarray(taus, dtype=float)
    w = basis.omegas
    exponents = -1j * np.outer(taus, np.concatenate([w, -w]))
    E = np.expm1(exponents)
    U, Uinv = basis.U, basis.inverse
    return np.eye(6) + np.einsum("ij,nj,jk->nik", U, E, Uinv)


def propagator(basis: BogoliubovBasis, tau: float) -> Propagator:
    return Propagator(M=propagators(basis, [tau])[0], tau=float(tau))


def symplectic_residual(M: np.ndarray, relative: bool = False) -> float:
    """Max |M Z M^dag Z - I| over a single propagator or a stack.

    With ``relative=True`` each residual is divided by 1 + max|M_ij|^2, the
    scale of the products being cancelled; rounding alone leaves about
    1e-16 of that scale, which exceeds 1e-9 absolute once |M| ~ 1e3.
    """
    MZ = M @ Z
    residual = np.abs(MZ @ np.swapaxes(M.conj(), -1, -2) @ Z - np.eye(6))
    residual = residual.max(axis=(-2, -1))
    if relative:
        residual = residual / (1 + np.abs(M).max(axis=(-2, -1)) ** 2)
    return float(np.max(residual))


def moments(P: Propagator) -> GaussianMoments:
    M = P.M
    creation_part = M[..., :3, 3:]
    normal = creation_part.conj() @ np.swapaxes(creation_part, -1, -2)
    anomalous = M[..., :3, :3] @ np.swapaxes(creation_part, -1, -2)
    return GaussianMoments(normal=normal, anomalous=anomalous, tau=P.tau, rows=M[..., :3, :])


def occupations(m: GaussianMoments):
    """Mean occupations ``(N_S, N_aS, N_c)``."""
    n = m.normal
    return n[..., 0, 0].real, n[..., 2, 2].real, n[..., 1, 1].real


def _pair_moments(m: GaussianMoments):
    # Y = b_S + b_aS; returns <Y^dag Y> and <Y Y>
    n, a = m.normal, m.anomalous
    yy = n[..., 0, 0].real + n[..., 2, 2].real + 2 * n[..., 0, 2].real
    y2 = a[..., 0, 0] + a[..., 2, 2] + 2 * a[..., 0, 2]
    return yy, y2


def quadrature_variance(m: GaussianMoments, phi):
    """Variance of X = 2^(-3/2) [e^{-i phi}(b_S + b_aS) + h.c.].

    Var X = [1 + <Y^dag Y> + Re(e^{-2 i phi} <Y Y>)] / 4 since <X> = 0.
    """
    phase = np.exp(-1j * np.asarray(phi, dtype=float))
    if m.rows is None:
        yy, y2 = _pair_moments(m)
        return QNL_VARIANCE * (1 + yy + np.real(phase ** 2 * y2))
    # X(tau) = sum_k x_k v_k(0); in the vacuum Var X = sum_{k<3} |x_k|^2
    pair_row = m.rows[..., 0, :] + m.rows[..., 2, :]
    phase = phase[..., None]
    x = phase * pair_row[..., :3] + phase.conj() * pair_row[..., 3:].conj()
    return np.sum(np.abs(x) ** 2, axis=-1) / 8


def minimum_variance(m: GaussianMoments):
    """Quadrature variance at the optimal phase."""
    return quadrature_variance(m, optimal_phase(m))


def optimal_phase(m: GaussianMoments):
    """Phase in [0, pi) minimizing the quadrature variance.

    The variance is A + Re(B e^{-2 i phi}) with B = <YY>/4, minimized where
    e^{-2 i phi} B = -|B|. Returns pi/2 when B vanishes (flat case).
    """
    _, y2 = _pair_moments(m)
    phi = np.mod(0.5 * (np.angle(y2) + np.pi), np.pi)
    phi = np.where(np.abs(y2) <= FLAT_TOL, np.pi / 2, phi)
    return float(phi) if phi.ndim == 0 else phi


def squeezing_db(m: GaussianMoments, phi=None):
    """Squeezing in dB relative to the vacuum; ``phi=None`` uses the optimal phase."""
    if phi is None:
        variance = minimum_variance(m)
    else:
        variance = quadrature_variance(m, phi)
    return 0.0 - 10 * np.log10(variance / QNL_VARIANCE)


def _g2_values(m: GaussianMoments):
    n, a = m.normal, m.anomalous
    N_S, N_aS, _ = occupations(m)
    pair = np.abs(a[..., 0, 2]) ** 2 + np.abs(n[..., 0, 2]) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        value = 1 + pair / (N_S * N_aS)
    return np.where((N_S > G2_THRESHOLD) & (N_aS > G2_THRESHOLD), value, np.nan)


def g2(m: GaussianMoments):
    """Zero-delay Stokes/anti-Stokes intensity cross-correlation.

    For a zero-mean Gaussian state Wick's theorem gives
    g2 = 1 + (|<b_S b_aS>|^2 + |<b_S^dag b_aS>|^2) / (N_S N_aS).
    """
    value = _g2_values(m)
    if np.any(np.isnan(value)):
        raise UndefinedCorrelation("g2 undefined: an occupation is below 1e-12")
    return float(value) if value.ndim == 0 else value


def analytic_variance_ratio(N_S: float, N_c: float) -> float:
    """|sqrt(1 + N_S) - sqrt(N_S - N_c)|^2, the squeezed-to-vacuum variance ratio."""
    slack = 1e-12 * (1 + abs(N_S))
    if N_c - N_S > slack or N_c < -slack:
        raise InvalidOccupations(f"need N_S >= N_c >= 0, got N_S={N_S}, N_c={N_c}")
    paired = max(N_S - N_c, 0.0)
    # difference of square roots rewritten to avoid cancellation at large N_S
    diff = (1 + N_c) / (math.sqrt(1 + N_S) + math.sqrt(paired))
    return diff * diff


def _series_chunk(basis, taus, phi):
    M = propagators(basis, taus)
    residual = symplectic_residual(M, relative=True)
    if residual > SYMPLECTIC_TOL:
        raise ConsistencyError(f"propagator not symplectic: residual {residual:.3g}")
    m = moments(Propagator(M=M, tau=taus))
    N_S, N_aS, N_c = occupations(m)
    phis = optimal_phase(m) if phi is None else np.full(len(taus), float(phi))
    variance = quadrature_variance(m, phis)
    best = minimum_variance(m)
    g2s = _g2_values(m)

    points = []
    for k, tau in enumerate(taus):
        drift = abs(N_S[k] - N_aS[k] - N_c[k])
        if drift > CONSERVATION_TOL * (1 + N_S[k]):
            raise ConsistencyError(f"tau={tau}: N_S - N_aS - N_c = {drift:.3g}")
        ratio = analytic_variance_ratio(N_S[k], N_c[k])
        if abs(best[k] / QNL_VARIANCE - ratio) > IDENTITY_TOL * ratio:
            raise ConsistencyError(f"tau={tau}: variance identity off by "
                                   f"{abs(best[k] / QNL_VARIANCE / ratio - 1):.3g}")
        g = None if np.isnan(g2s[k]) else float(g2s[k])
        if g is not None and N_S[k] > 1e-6:
            exact = 2 + 1 / N_S[k]
            if abs(g - exact) > IDENTITY_TOL * exact:
                raise ConsistencyError(f"tau={tau}: g2={g} but 2 + 1/N_S = {exact}")
        points.append(ObservablePoint(
            tau=float(tau), N_S=float(N_S[k]), N_aS=float(N_aS[k]), N_c=float(N_c[k]),
            S_db=float(0.0 - 10 * np.log10(variance[k] / QNL_VARIANCE)),
            phi=float(phis[k]), g2=g, variance=float(variance[k]),
        ))
    return points


def evolve_series(params: ModelParams, taus, phi=np.pi / 2, *, basis=None,
                  threads=None, chunk_size=256) -> list[ObservablePoint]:
    """Observables of the evolved vacuum at each time in ``taus``.

    ``phi=None`` reports squeezing at the optimal phase of each point.
    Conservation, the g2 identity and the variance identity are checked at
    every point; a violation raises :class:`ConsistencyError`.
    """
    taus = np.asarray(taus, dtype=float)
    if taus.ndim != 1 or taus.size == 0:
        raise ValueError("taus must be a non-empty 1-D grid")
    if np.any(np.diff(taus) < 0):
        raise ValueError("taus must be ascending")
    if basis is None:
        basis = basis_for(params)
    parts = _parallel.parallel_map(
        lambda chunk: _series_chunk(basis, chunk, phi),
        _parallel.chunks(taus, chunk_size), threads,
    )
    return [p for part in parts for p in part]


def observables_at(params: ModelParams, tau: float, phi=None, basis=None) -> ObservablePoint:
    """Single-point convenience wrapper around :func:`evolve_series`."""
    return evolve_series(params, [tau], phi, basis=basis, threads=1)[0]
