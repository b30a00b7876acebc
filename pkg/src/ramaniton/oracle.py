"""Exact evolution in a truncated Fock basis, used to cross-check the Nambu path.

The Hamiltonian conserves N_S - N_aS - N_c, and the bare vacuum has zero
charge, so the basis is restricted to states with n_S = n_c + n_aS. A cutoff
on n_S then bounds every occupation and the dimension is
(cutoff + 1)(cutoff + 2)/2.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from functools import lru_cache

import numpy as np

from .dynamics import QNL_VARIANCE, ObservablePoint, evolve_series
from .errors import TruncationInadequate
from .model import ModelParams, derive_couplings

OBSERVABLES = ("N_S", "N_aS", "N_c", "variance", "g2")
DEVIATION_TOL = 1e-3
DOUBLING_TOL = 1e-4
ATOL = 1e-12


@dataclass(frozen=True)
class FockBasis:
    cutoff: int
    states: tuple
    index: dict = field(repr=False, compare=False)

    def __len__(self):
        return len(self.states)

    @property
    def numbers(self) -> np.ndarray:
        """Occupations as an (n, 3) integer array with columns (n_S, n_c, n_aS)."""
        return np.array(self.states, dtype=int).reshape(-1, 3)


@dataclass(frozen=True)
class OracleState:
    amplitudes: np.ndarray
    tau: float


@dataclass(frozen=True)
class Spectral:
    """Eigendecomposition of a Hermitian matrix, reused across evolution times."""

    energies: np.ndarray
    vectors: np.ndarray


def build_basis(cutoff: int) -> FockBasis:
    """Zero-charge states ordered lexicographically in (n_S, n_c)."""
    if cutoff < 0:
        raise ValueError(f"cutoff must be >= 0, got {cutoff}")
    states = tuple(
        (n_s, n_c, n_s - n_c) for n_s in range(cutoff + 1) for n_c in range(n_s + 1)
    )
    return FockBasis(cutoff=cutoff, states=states,
                     index={s: i for i, s in enumerate(states)})


def build_hamiltonian(params: ModelParams, basis: FockBasis) -> np.ndarray:
    """Matrix of the rotating-frame Hamiltonian in units of hbar*Omega.

    Diagonal -q n_S + q n_aS + n_c; couplings
    i eta_- (c^dag b_S^dag - c b_S) + i eta_+ (c b_aS^dag - c^dag b_aS).
    Transitions that leave the cutoff are dropped.
    """
    eta_minus, eta_plus = derive_couplings(params)
    q = params.q
    dim = len(basis)
    H = np.zeros((dim, dim), dtype=complex)
    for i, (n_s, n_c, n_as) in enumerate(basis.states):
        H[i, i] = -q * n_s + q * n_as + n_c
        # c^dag b_S^dag
        j = basis.index.get((n_s + 1, n_c + 1, n_as))
        if j is not None:
            amp = 1j * eta_minus * math.sqrt((n_s + 1) * (n_c + 1))
            H[j, i] += amp
            H[i, j] += amp.conjugate()
        # c b_aS^dag
        if n_c > 0:
            j = basis.index.get((n_s, n_c - 1, n_as + 1))
            if j is None:
                raise AssertionError("c b_aS^dag left the zero-charge sector")
            amp = 1j * eta_plus * math.sqrt(n_c * (n_as + 1))
            H[j, i] += amp
            H[i, j] += amp.conjugate()
    return H


def spectral(H: np.ndarray) -> Spectral:
    energies, vectors = np.linalg.eigh(H)
    return Spectral(energies=energies, vectors=vectors)


def vacuum(basis: FockBasis) -> OracleState:
    amplitudes = np.zeros(len(basis), dtype=complex)
    amplitudes[basis.index[(0, 0, 0)]] = 1.0
    return OracleState(amplitudes=amplitudes, tau=0.0)


def evolve_exact(H, tau: float, psi0: OracleState) -> OracleState:
    """exp(-i H tau) psi0 through the eigendecomposition of H.

    ``H`` may be a matrix or a precomputed :class:`Spectral`, so repeated
    calls at different times reuse one decomposition.
    """
    decomposition = H if isinstance(H, Spectral) else spectral(H)
    V = decomposition.vectors
    coefficients = V.conj().T @ psi0.amplitudes
    phases = np.exp(-1j * decomposition.energies * tau)
    return OracleState(amplitudes=V @ (phases * coefficients), tau=psi0.tau + tau)


@lru_cache(maxsize=8)
def _pair_operator(cutoff: int):
    """Sparse b_S b_aS as (source, target, coefficient) arrays."""
    basis = build_basis(cutoff)
    source, target, coefficient = [], [], []
    for i, (n_s, n_c, n_as) in enumerate(basis.states):
        if n_s and n_as:
            source.append(i)
            target.append(basis.index[(n_s - 1, n_c, n_as - 1)])
            coefficient.append(math.sqrt(n_s * n_as))
    return np.array(source, dtype=int), np.array(target, dtype=int), np.array(coefficient)


def _pair_annihilation(psi: np.ndarray, basis: FockBasis) -> complex:
    """<psi| b_S b_aS |psi>; the only in-sector quadratic term of X^2."""
    source, target, coefficient = _pair_operator(basis.cutoff)
    return complex(np.sum(psi[target].conj() * coefficient * psi[source]))


def oracle_observables(psi: OracleState, basis: FockBasis, phi: float) -> ObservablePoint:
    """Occupations, quadrature variance and g2 evaluated in the Fock basis.

    Within the zero-charge sector <b_S^2>, <b_aS^2> and <b_S^dag b_aS>
    vanish, leaving Var X = [1 + N_S + N_aS + 2 Re(e^{-2i phi} <b_S b_aS>)]/4.
    """
    weights = np.abs(psi.amplitudes) ** 2
    numbers = basis.numbers
    n_s, n_c, n_as = (weights @ numbers).tolist()
    pair = _pair_annihilation(psi.amplitudes, basis)
    variance = QNL_VARIANCE * (1 + n_s + n_as + 2 * (np.exp(-2j * phi) * pair).real)
    if n_s > ATOL and n_as > ATOL:
        g2 = float(weights @ (numbers[:, 0] * numbers[:, 2])) / (n_s * n_as)
    else:
        g2 = None
    return ObservablePoint(
        tau=psi.tau, N_S=n_s, N_aS=n_as, N_c=n_c,
        S_db=float(0.0 - 10 * np.log10(variance / QNL_VARIANCE)),
        phi=float(phi), g2=g2, variance=float(variance),
    )


def fock_series(params: ModelParams, taus, phi: float, cutoff: int) -> list[ObservablePoint]:
    basis = build_basis(cutoff)
    decomposition = spectral(build_hamiltonian(params, basis))
    psi0 = vacuum(basis)
    return [oracle_observables(evolve_exact(decomposition, t, psi0), basis, phi)
            for t in np.asarray(taus, dtype=float)]


def _relative(a, b) -> float:
    if a is None or b is None:
        return 0.0
    return abs(a - b) / max(abs(b), ATOL)


def _max_deviation(points, reference) -> dict:
    return {
        name: max(_relative(getattr(p, name), getattr(r, name)) for p, r in zip(points, reference))
        for name in OBSERVABLES
    }


@dataclass
class OracleReport:
    params: ModelParams
    phi: float
    cutoff: int
    taus: list
    max_occupation: float
    max_deviation: dict
    doubling_delta: dict
    passed: bool
    failures: list

    def to_dict(self) -> dict:
        data = asdict(self)
        data["params"] = asdict(self.params)
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def compare(params: ModelParams, taus, phi: float, cutoff: int) -> OracleReport:
    """Max relative deviation of the Fock path from the Nambu path over ``taus``.

    The Fock run is repeated at twice the cutoff to measure truncation error.

    Raises
    ------
    TruncationInadequate
        N_S exceeds cutoff/4 at some time, or doubling the cutoff moves an
        observable by more than 1e-4 relative. The partial report is attached.
    """
    taus = [float(t) for t in taus]
    nambu = evolve_series(params, taus, phi)
    fock = fock_series(params, taus, phi, cutoff)
    doubled = fock_series(params, taus, phi, 2 * cutoff)

    max_occupation = max(p.N_S for p in nambu)
    deviation = _max_deviation(fock, nambu)
    doubling = _max_deviation(fock, doubled)
    failures = []
    if max_occupation > cutoff / 4:
        failures.append(f"max N_S = {max_occupation:.4g} exceeds cutoff/4 = {cutoff / 4:g}")
    failures += [f"cutoff doubling shifts {k} by {v:.3g}"
                 for k, v in doubling.items() if v > DOUBLING_TOL]
    truncation_failed = bool(failures)
    failures += [f"{k} deviates from the Nambu path by {v:.3g}"
                 for k, v in deviation.items() if v > DEVIATION_TOL]

    report = OracleReport(
        params=params, phi=float(phi), cutoff=cutoff, taus=taus,
        max_occupation=max_occupation, max_deviation=deviation,
        doubling_delta=doubling, passed=not failures, failures=failures,
    )
    if truncation_failed:
        raise TruncationInadequate("; ".join(failures), report)
    return report
