import numpy as np
import pytest
from hypothesis import given, strategies as st

from ramaniton import (
    SILICON, InvalidParameters, ModelParams, NoResonance, SweepSpec, evolve_series,
    find_resonances, golden_section, optimize_global, sweep_dispersion, sweep_q,
)
from ramaniton.sweep import check_grid


@given(center=st.floats(-10, 10), width=st.floats(0.1, 5))
def test_golden_section_quadratic(center, width):
    x, fx = golden_section(lambda t: (t - center) ** 2, center - width, center + 2 * width)
    assert x == pytest.approx(center, abs=1e-9 * (1 + width))
    assert fx < 1e-15 * (1 + width) ** 2


def test_check_grid():
    np.testing.assert_array_equal(check_grid(1.0), [1.0])
    for bad in ([], [1, 1], [2, 1], [0, np.nan]):
        with pytest.raises(InvalidParameters):
            check_grid(bad)


def test_sweep_spec_validates():
    with pytest.raises(InvalidParameters):
        SweepSpec(base=SILICON, q_grid=[0, 20])
    with pytest.raises(InvalidParameters):
        SweepSpec(base=SILICON, tau_grid=[-1, 2])


def test_dispersion_sweep_shape():
    table = sweep_dispersion(ModelParams(12.4, 0.1, 1), np.linspace(0, 3, 31))
    assert table.shape == (31, 4)
    assert np.all(table[:, 2] <= table[:, 3])


def test_first_node_silicon():
    series = evolve_series(SILICON, np.linspace(0, 2e4, 2001))
    nodes = find_resonances(series, SILICON)
    assert len(nodes) == 1
    node = nodes[0]
    assert node.tau_star == pytest.approx(8885.77, abs=0.05)
    assert node.is_global
    assert node.N_c_min < 1e-3
    assert abs(node.N_S - node.N_aS) <= 1e-3 * node.N_S
    assert node.S_db_at_node == pytest.approx(27.875, abs=1e-3)


def test_detuned_nodes_below_global():
    params = SILICON.with_q(0.9995)
    nodes = find_resonances(evolve_series(params, np.linspace(0, 2e4, 2001)), params)
    assert len(nodes) >= 2
    assert max(n.S_db_at_node for n in nodes) < 27.875


def test_no_resonance_on_short_window():
    with pytest.raises(NoResonance):
        find_resonances(evolve_series(SILICON, np.linspace(0, 1000, 101)), SILICON)


def test_sweep_q_peaks_at_resonance():
    table = sweep_q(SILICON, np.linspace(0.99, 1.01, 201), 8885.77)
    assert table.shape == (201, 5)
    best = table[np.argmax(table[:, 1])]
    assert best[0] == pytest.approx(1.0, abs=1e-4)
    assert best[1] == pytest.approx(27.875, abs=1e-3)
    assert np.nanargmin(table[:, 4]) == np.argmax(table[:, 1])


def test_sweep_q_fixed_phase_not_better():
    grid = np.linspace(0.995, 1.005, 21)
    opt = sweep_q(SILICON, grid, 5000.0)
    fixed = sweep_q(SILICON, grid, 5000.0, phi_policy=0.3)
    assert np.all(fixed[:, 1] <= opt[:, 1] + 1e-9)


def test_off_resonance_local_maxima():
    # for lengths other than the global optimum the best q is detuned
    grid = np.linspace(0.995, 1.005, 2001)
    table = sweep_q(SILICON, grid, 3000.0)
    assert abs(table[np.argmax(table[:, 1]), 0] - 1) > 1e-3


def test_optimize_global_silicon():
    best = optimize_global(SILICON, (0.99, 1.01), (0.0, 2e4))
    assert best.q_star == pytest.approx(1.0, abs=1e-3)
    assert best.tau_star == pytest.approx(8890, rel=1e-2)
    assert best.S_db == pytest.approx(28, abs=0.5)
    assert best.S_db >= best.coarse_S_db
