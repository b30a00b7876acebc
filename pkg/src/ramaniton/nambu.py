"""Nambu-space form of the Hamiltonian and its exact Bogoliubov diagonalization.

Mode order throughout is ``v = (b_S, c, b_aS, b_S^dag, c^dag, b_aS^dag)`` and
the Hamiltonian is ``H = 1/2 v^dag L v`` (additive constant dropped), in
units of hbar*Omega.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateModes, NonCanonical
from .model import ModelParams, derive_couplings

Z = np.diag([1.0, 1.0, 1.0, -1.0, -1.0, -1.0])

DEGENERACY_TOL = 1e-8
CANONICAL_TOL = 1e-8
SPECTRUM_TOL = 1e-10


@dataclass(frozen=True)
class NambuMatrix:
    """6x6 Hermitian coefficient matrix together with the parameters it encodes."""

    entries: np.ndarray
    params: ModelParams

    @property
    def A(self) -> np.ndarray:
        return self.entries[:3, :3]

    @property
    def B(self) -> np.ndarray:
        return self.entries[:3, 3:]


@dataclass(frozen=True)
class BogoliubovBasis:
    """Para-unitary transformation ``v = U alpha`` and the mode frequencies.

    Columns 0-2 of ``U`` are the particle eigenvectors for ``omegas[0..2]``,
    columns 3-5 their particle-hole partners.
    """

    U: np.ndarray
    omegas: np.ndarray

    @property
    def inverse(self) -> np.ndarray:
        return Z @ self.U.conj().T @ Z

    @property
    def W(self) -> np.ndarray:
        return np.diag(np.concatenate([self.omegas, self.omegas]))


def particle_hole(vector: np.ndarray) -> np.ndarray:
    """Swap the particle and hole halves of a Nambu vector and conjugate."""
    return np.concatenate([vector[3:].conj(), vector[:3].conj()])


def build_nambu_matrix(params: ModelParams) -> NambuMatrix:
    eta_minus, eta_plus = derive_couplings(params)
    A = np.diag([-params.q, 1.0, params.q]).astype(complex)
    # i*eta_plus (c b_aS^dag - c^dag b_aS)
    A[2, 1] = 1j * eta_plus
    A[1, 2] = -1j * eta_plus
    # i*eta_minus (c^dag b_S^dag - c b_S); the 1/2 in 1/2 v^dag L v is
    # absorbed by the two symmetric entries
    B = np.zeros((3, 3), dtype=complex)
    B[0, 1] = B[1, 0] = 1j * eta_minus
    entries = np.block([[A, B], [B.conj(), A.conj()]])
    return NambuMatrix(entries=entries, params=params)


def _shifts(q: float, split_sq_offset: float) -> tuple[float, float]:
    """Return ``(q - omega2, q - omega3)`` without cancellation.

    ``split_sq_offset`` is eta^2 q / 2; the two shifts are the roots of
    x^2 - (q - 1) x - split_sq_offset/4 = 0.
    """
    s = q - 1.0
    root = math.sqrt(s * s + split_sq_offset)
    if s >= 0:
        d2 = 0.5 * (s + root)
        d3 = -0.25 * split_sq_offset / d2 if d2 else 0.0
    else:
        d3 = 0.5 * (s - root)
        d2 = -0.25 * split_sq_offset / d3
    return d2, d3


def analytic_dispersion(params: ModelParams) -> tuple[float, float, float]:
    """Closed-form mode frequencies (omega1, omega2, omega3) in units of Omega.

    omega1 = -q and omega2,3 = (q+1)/2 -/+ sqrt((q-1)^2 + eta^2 q/2)/2,
    evaluated in a cancellation-free form.
    """
    q = params.q
    d2, d3 = _shifts(q, params.eta ** 2 * q / 2)
    return 0.0 - q, q - d2, q - d3


def _check_nondegenerate(omegas) -> None:
    w = sorted(omegas)
    gap = min(w[1] - w[0], w[2] - w[1])
    if gap < DEGENERACY_TOL:
        raise DegenerateModes(
            f"mode frequencies {tuple(omegas)} are degenerate within {gap:.3g}; "
            "perturb q or use the decoupled basis"
        )


def _fix_phase(vector: np.ndarray) -> np.ndarray:
    k = int(np.argmax(np.abs(vector)))
    return vector * (abs(vector[k]) / vector[k])


def _particle_columns(q: float, eta_minus: float, eta_plus: float):
    """Positive-norm eigenvectors of Z.L from the charge-sector null spaces.

    The generator conserves N_S - N_aS - N_c, so Z.L splits into the sectors
    (b_S, c^dag, b_aS^dag) and (b_S^dag, c, b_aS). Each eigenvector is the
    null vector of a 3x3 block, written with cancellation-free shifts so the
    near-degenerate Stokes/anti-Stokes pair keeps full precision.
    """
    # (eta_plus^2 - eta_minus^2) = eta^2 q / 8, formed without cancellation
    pair_weight = (eta_plus - eta_minus) * (eta_plus + eta_minus)
    d2, d3 = _shifts(q, 4.0 * pair_weight)
    omegas = np.array([-q, q - d2, q - d3])

    if eta_plus == 0.0:
        # decoupled: bare modes, labelled by their frequencies
        e = np.eye(6, dtype=complex)
        cols = [e[0], e[2], e[1]] if q < 1 else [e[0], e[1], e[2]]
        return cols, omegas

    first = np.zeros(6, dtype=complex)
    first[0] = eta_plus
    first[5] = eta_minus
    first /= math.sqrt(pair_weight)
    cols = [first]
    for d in (d2, d3):
        col = np.zeros(6, dtype=complex)
        col[1] = d
        col[2] = -1j * eta_plus
        col[3] = -1j * eta_minus
        col /= math.sqrt(pair_weight + d * d)
        cols.append(col)
    return cols, omegas


def verify_canonical(basis: BogoliubovBasis) -> float:
    """Max elementwise residual of ``U Z U^dag Z - I``."""
    U = basis.U
    return float(np.max(np.abs(U @ Z @ U.conj().T @ Z - np.eye(U.shape[0]))))


def eigen_residual(L: NambuMatrix, basis: BogoliubovBasis) -> float:
    """Max elementwise residual of ``(Z L) U - U (Z W)``."""
    U = basis.U
    return float(np.max(np.abs(Z @ L.entries @ U - U @ Z @ basis.W)))


def diagonalize(L: NambuMatrix) -> BogoliubovBasis:
    """Para-unitary diagonalization of the Nambu matrix.

    The spectrum of Z.L is computed with a general complex eigensolver and
    cross-checked against the closed-form dispersion; the eigenvectors come
    from the sector null spaces (see :func:`_particle_columns`) and are
    normalized to v^dag Z v = 1 with the largest component real and positive.

    Raises
    ------
    DegenerateModes
        Two frequencies closer than 1e-8.
    NonCanonical
        Spectrum mismatch, complex eigenvalues, or a normalization residual
        above 1e-8.
    """
    analytic = analytic_dispersion(L.params)
    _check_nondegenerate(analytic)

    M = Z @ L.entries
    q = L.entries[2, 2].real
    eta_minus = L.entries[0, 4].imag
    eta_plus = L.entries[2, 1].imag

    spectrum = np.linalg.eigvals(M)
    if np.max(np.abs(spectrum.imag)) > SPECTRUM_TOL:
        raise NonCanonical(f"complex spectrum: max |Im| = {np.max(np.abs(spectrum.imag)):.3g}")
    expected = np.sort(np.concatenate([analytic, np.negative(analytic)]))
    mismatch = np.max(np.abs(np.sort(spectrum.real) - expected))
    if mismatch > SPECTRUM_TOL:
        raise NonCanonical(f"eigenvalues deviate from the dispersion by {mismatch:.3g}")

    cols, omegas = _particle_columns(q, eta_minus, eta_plus)
    U = np.empty((6, 6), dtype=complex)
    for j, col in enumerate(cols):
        col = _fix_phase(col)
        U[:, j] = col
        U[:, j + 3] = particle_hole(col)
    basis = BogoliubovBasis(U=U, omegas=omegas)

    residual = verify_canonical(basis)
    if residual > CANONICAL_TOL:
        raise NonCanonical(f"U Z U^dag Z - I residual {residual:.3g}")
    residual = eigen_residual(L, basis)
    if residual > CANONICAL_TOL:
        raise NonCanonical(f"eigen-relation residual {residual:.3g}")
    return basis


def decoupled_basis(params: ModelParams) -> BogoliubovBasis:
    """Bare-mode basis for eta = 0, valid even where the frequencies cross.

    Columns follow the bare order (b_S, c, b_aS), so ``omegas`` is
    (-q, 1, q) rather than sorted.
    """
    if params.eta != 0:
        raise ValueError("decoupled basis only applies at eta = 0")
    return BogoliubovBasis(U=np.eye(6, dtype=complex),
                           omegas=np.array([-params.q, 1.0, params.q]))


def basis_for(params: ModelParams) -> BogoliubovBasis:
    """:func:`diagonalize` for coupled modes, the bare basis at eta = 0."""
    if params.eta == 0:
        return decoupled_basis(params)
    return diagonalize(build_nambu_matrix(params))
