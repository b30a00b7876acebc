"""Parameter sweeps, phonon-node detection and squeezing optimization."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import _parallel
from .dynamics import (
    ObservablePoint, Propagator, _g2_values, minimum_variance, moments,
    occupations, propagators, quadrature_variance, QNL_VARIANCE,
)
from .errors import InvalidParameters, NoResonance
from .model import ModelParams
from .nambu import analytic_dispersion, basis_for

GOLDEN_ITERATIONS = 60
NODE_FRACTION = 1e-3
DEFAULT_Q_POINTS = 2001

_INV_PHI = (math.sqrt(5) - 1) / 2


@dataclass(frozen=True)
class SweepSpec:
    """Grid definition for a sweep; ``phi=None`` optimizes the phase per point."""

    base: ModelParams
    q_grid: Optional[np.ndarray] = None
    tau_grid: Optional[np.ndarray] = None
    phi: Optional[float] = None

    def __post_init__(self):
        for name in ("q_grid", "tau_grid"):
            grid = getattr(self, name)
            if grid is not None:
                object.__setattr__(self, name, check_grid(grid, name))
        if self.q_grid is not None and (self.q_grid[0] < 0 or self.q_grid[-1] > self.base.omega_ratio):
            raise InvalidParameters("q_grid leaves [0, omega_ratio]")
        if self.tau_grid is not None and self.tau_grid[0] < 0:
            raise InvalidParameters("tau_grid must be non-negative")


@dataclass(frozen=True)
class ResonancePoint:
    tau_star: float
    q: float
    N_c_min: float
    S_db_at_node: float
    is_global: bool
    N_S: float
    N_aS: float


@dataclass(frozen=True)
class Optimum:
    q_star: float
    tau_star: float
    S_db: float
    coarse_S_db: float


def check_grid(grid, name="grid") -> np.ndarray:
    grid = np.atleast_1d(np.asarray(grid, dtype=float))
    if grid.ndim != 1 or grid.size == 0:
        raise InvalidParameters(f"{name} must be a non-empty 1-D sequence")
    if not np.all(np.isfinite(grid)):
        raise InvalidParameters(f"{name} contains non-finite values")
    if np.any(np.diff(grid) <= 0):
        raise InvalidParameters(f"{name} must be strictly ascending")
    return grid


def golden_section(f, a: float, b: float, iterations: int = GOLDEN_ITERATIONS):
    """Minimize a unimodal ``f`` on [a, b]; returns ``(x, f(x))``.

    Fixed iteration budget, so the cost is deterministic. The bracket
    shrinks by 0.618 per iteration.
    """
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iterations):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    return (c, fc) if fc < fd else (d, fd)


def sweep_dispersion(params: ModelParams, q_grid) -> np.ndarray:
    """Rows ``(q, omega1, omega2, omega3)`` from the closed-form dispersion."""
    q_grid = check_grid(q_grid, "q_grid")
    return np.array([(q, *analytic_dispersion(params.with_q(q))) for q in q_grid])


def _nc_at(basis, tau):
    m = moments(Propagator(M=propagators(basis, [tau]), tau=np.array([tau])))
    return float(occupations(m)[2][0])


def _point(basis, tau, phi) -> dict:
    m = moments(Propagator(M=propagators(basis, [tau]), tau=np.array([tau])))
    N_S, N_aS, N_c = (float(x[0]) for x in occupations(m))
    if phi is None:
        variance = float(minimum_variance(m)[0])
    else:
        variance = float(quadrature_variance(m, np.array([phi]))[0])
    g2 = float(_g2_values(m)[0])
    return dict(N_S=N_S, N_aS=N_aS, N_c=N_c, g2=g2,
                S_db=0.0 - 10 * math.log10(variance / QNL_VARIANCE))


def find_resonances(series: Sequence[ObservablePoint], params: ModelParams) -> list[ResonancePoint]:
    """Phonon-occupation nodes of a time series, refined by golden-section search.

    A node is an interior local minimum of N_c, reached after N_c has risen,
    whose refined value is at most 1e-3 of the running maximum of N_c and
    of N_S. The second bound is the pairing condition |N_S - N_aS| <= 1e-3 N_S;
    it rejects revivals where the whole state returns to the vacuum. The
    squeezing at each node is reported at the optimal phase; the node with
    the largest squeezing is flagged ``is_global``.

    Raises
    ------
    NoResonance
        No qualifying minimum in the series.
    """
    taus = np.array([p.tau for p in series])
    n_c = np.array([p.N_c for p in series])
    running_max = np.maximum.accumulate(n_c)
    basis = basis_for(params)

    found = []
    for i in range(1, len(series) - 1):
        if not (n_c[i] <= n_c[i - 1] and n_c[i] <= n_c[i + 1]):
            continue
        if running_max[i] <= 0 or n_c[i] >= running_max[i]:
            continue
        tau_star, n_c_min = golden_section(lambda t: _nc_at(basis, t), taus[i - 1], taus[i + 1])
        n_c_min = max(n_c_min, 0.0)
        if n_c_min > NODE_FRACTION * running_max[i]:
            continue
        point = _point(basis, tau_star, None)
        if n_c_min > NODE_FRACTION * point["N_S"]:
            continue
        found.append((float(tau_star), float(n_c_min), point))

    if not found:
        raise NoResonance(f"no N_c node in tau range [{taus[0]}, {taus[-1]}] at q={params.q}")
    best = max(range(len(found)), key=lambda k: found[k][2]["S_db"])
    return [
        ResonancePoint(tau_star=float(t), q=params.q, N_c_min=nc, S_db_at_node=pt["S_db"],
                       is_global=(k == best), N_S=pt["N_S"], N_aS=pt["N_aS"])
        for k, (t, nc, pt) in enumerate(found)
    ]


def sweep_q(params: ModelParams, q_grid, tau: float, phi_policy="optimal",
            threads=None) -> np.ndarray:
    """Rows ``(q, S_db, N_S, N_aS, g2)`` at a fixed propagation time.

    ``phi_policy`` is ``"optimal"`` or a fixed phase in radians. ``g2`` is
    NaN where it is undefined.
    """
    q_grid = check_grid(q_grid, "q_grid")
    phi = None if phi_policy == "optimal" else float(phi_policy)

    def row(q):
        pt = _point(basis_for(params.with_q(q)), tau, phi)
        return (q, pt["S_db"], pt["N_S"], pt["N_aS"], pt["g2"])

    return np.array(_parallel.parallel_map(row, q_grid, threads))


def _squeezing_grid(params, q, taus):
    basis = basis_for(params.with_q(q))
    m = moments(Propagator(M=propagators(basis, taus), tau=taus))
    return 0.0 - 10 * np.log10(minimum_variance(m) / QNL_VARIANCE)


def optimize_global(params: ModelParams, q_range, tau_range, n_q: int = 41,
                    n_tau: int = 141, rounds: int = 3, threads=None) -> Optimum:
    """Maximize squeezing (optimal phase) over (q, tau).

    A coarse grid locates the best cell; alternating golden-section searches
    in tau and q then refine it inside the neighbouring grid cells. The
    returned value is never below the coarse-grid maximum.
    """
    q_grid = np.linspace(*q_range, n_q)
    tau_grid = np.linspace(*tau_range, n_tau)
    rows = _parallel.parallel_map(lambda q: _squeezing_grid(params, q, tau_grid), q_grid, threads)
    table = np.array(rows)
    i, j = np.unravel_index(int(np.argmax(table)), table.shape)
    coarse = float(table[i, j])
    q_lo, q_hi = q_grid[max(i - 1, 0)], q_grid[min(i + 1, n_q - 1)]
    t_lo, t_hi = tau_grid[max(j - 1, 0)], tau_grid[min(j + 1, n_tau - 1)]

    best_q, best_tau, best = float(q_grid[i]), float(tau_grid[j]), coarse
    for _ in range(rounds):
        tau, value = golden_section(
            lambda t: -_squeezing_grid(params, best_q, np.array([t]))[0], t_lo, t_hi)
        if -value > best:
            best_tau, best = float(tau), -value
        q, value = golden_section(
            lambda x: -_squeezing_grid(params, x, np.array([best_tau]))[0], q_lo, q_hi)
        if -value > best:
            best_q, best = float(q), -value
    return Optimum(q_star=best_q, tau_star=best_tau, S_db=float(best), coarse_S_db=coarse)
