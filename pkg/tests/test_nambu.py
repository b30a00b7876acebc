import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ramaniton import (
    SILICON, DegenerateModes, ModelParams, Z, analytic_dispersion, basis_for,
    build_nambu_matrix, diagonalize, verify_canonical,
)
from ramaniton.nambu import decoupled_basis, eigen_residual, particle_hole

params_st = st.builds(
    ModelParams,
    omega_ratio=st.just(12.4),
    eta=st.floats(1e-3, 1.0),
    q=st.floats(0.01, 3.0),
)


def test_matrix_entries_silicon():
    L = build_nambu_matrix(SILICON)
    assert L.B[0, 1] == pytest.approx(1j * 8.441e-4, abs=1e-7)
    assert L.A[2, 1] == pytest.approx(1j * 9.152e-4, abs=1e-7)
    assert L.A[1, 2] == -L.A[2, 1]


def test_decoupled_matrix_is_diagonal():
    L = build_nambu_matrix(ModelParams(12.4, 0.0, 0.7))
    np.testing.assert_array_equal(L.entries, np.diag([-0.7, 1, 0.7, -0.7, 1, 0.7]))


@given(params_st)
def test_matrix_structure(params):
    L = build_nambu_matrix(params)
    assert np.max(np.abs(L.entries - L.entries.conj().T)) < 1e-14
    np.testing.assert_array_equal(L.B, L.B.T)
    np.testing.assert_array_equal(L.entries[3:, 3:], L.A.conj())


def test_dispersion_values():
    w = analytic_dispersion(ModelParams(12.4, 1.0, 1.0))
    assert w[0] == -1
    assert w[1] == pytest.approx(1 - np.sqrt(2) / 4, abs=1e-12)
    assert w[2] == pytest.approx(1 + np.sqrt(2) / 4, abs=1e-12)


@pytest.mark.parametrize("q", [0.3, 1.0, 2.5])
def test_dispersion_decoupled_limit(q):
    w = analytic_dispersion(ModelParams(12.4, 0.0, q))
    assert w == pytest.approx((-q, min(q, 1), max(q, 1)))


@given(params_st)
def test_dispersion_matches_formula(params):
    q, eta = params.q, params.eta
    root = np.sqrt((q - 1) ** 2 + eta**2 * q / 2)
    expected = (-q, (q + 1) / 2 - root / 2, (q + 1) / 2 + root / 2)
    assert analytic_dispersion(params) == pytest.approx(expected, abs=1e-12)


@settings(max_examples=200)
@given(params_st)
def test_diagonalization_invariants(params):
    L = build_nambu_matrix(params)
    basis = diagonalize(L)
    assert verify_canonical(basis) < 1e-10
    assert eigen_residual(L, basis) < 1e-10
    np.testing.assert_allclose(basis.omegas, analytic_dispersion(params), atol=1e-10)
    spectrum = np.sort(np.linalg.eigvals(Z @ L.entries).real)
    np.testing.assert_allclose(spectrum, np.sort(np.r_[basis.omegas, -basis.omegas]), atol=1e-10)


@given(params_st)
def test_hole_columns_are_particle_partners(params):
    U = basis_for(params).U
    for j in range(3):
        np.testing.assert_array_equal(U[:, j + 3], particle_hole(U[:, j]))


def test_gap_at_resonance():
    w = analytic_dispersion(ModelParams(12.4, 1.0, 1.0))
    assert w[2] - w[1] == pytest.approx(1 / np.sqrt(2))


def test_q_zero_is_degenerate():
    with pytest.raises(DegenerateModes):
        diagonalize(build_nambu_matrix(ModelParams(12.4, 0.1, 0.0)))


def test_decoupled_basis_crossing():
    basis = basis_for(ModelParams(12.4, 0.0, 1.0))
    np.testing.assert_array_equal(basis.U, np.eye(6))
    assert verify_canonical(basis) == 0
    with pytest.raises(ValueError):
        decoupled_basis(SILICON)
