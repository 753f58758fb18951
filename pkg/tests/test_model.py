import numpy as np
import pytest

from engine.errors import DimensionError, DomainError
from engine.model import (
    BathGrid, ExplicitSpectrum, FlatSpectrum, HamiltonianSpec, LorentzianSpectrum, ModeLayout,
    OhmicSpectrum, assemble_r, coupling_at, coupling_from_spectrum, symplectic_form,
)


def test_layout_indices():
    layout = ModeLayout(3)
    assert layout.n_modes == 4
    assert layout.size == 8
    assert layout.creation_index(2) == 2
    assert layout.annihilation_index(0) == 4
    with pytest.raises(DimensionError):
        layout.annihilation_index(4)


def test_uniform_grid_density():
    grid = BathGrid.uniform(1.0e7, 1.0e7, 200)
    assert len(grid) == 200
    assert grid.frequencies[-1] == pytest.approx(2.0e9)
    assert grid.density == pytest.approx(1.0e-7)


@pytest.mark.parametrize("freqs", [(1.0, 1.0, 2.0), (3.0, 2.0), (1.0, 2.0, 4.0)])
def test_grid_rejects_non_uniform_or_unsorted(freqs):
    with pytest.raises(DomainError):
        BathGrid(freqs)


def test_single_mode_grid_has_no_spacing():
    grid = BathGrid((1.0e9,))
    with pytest.raises(DomainError):
        grid.density


def test_lorentzian_peak_at_resonance():
    grid = BathGrid.uniform(0.5e9, 0.25e9, 5)
    g = LorentzianSpectrum(1.0e6, 2.0e6).couplings(grid, 1.0e9)
    assert g[2] == pytest.approx(2.0e6)
    assert np.all(g[[0, 1, 3, 4]] < g[2])


def test_lorentzian_inferred_parameters_match_printed_couplings():
    """γ_j = 2.8209e12/√((ω_j − ω)² + 1e12)"""
    grid = BathGrid.uniform(5.05e8, 5.0e6, 200)
    g = coupling_from_spectrum(LorentzianSpectrum(1.0e6, 2.8209e6), grid, 1.0e9)
    expected = 2.8209e12 / np.sqrt((grid.array - 1.0e9) ** 2 + 1.0e12)
    np.testing.assert_allclose(g, expected, rtol=1e-12)


def test_ohmic_couplings():
    grid = BathGrid.uniform(1.0e8, 1.0e8, 3)
    g = OhmicSpectrum(1.0e6, 1.0e9).couplings(grid, 1.0e9)
    np.testing.assert_allclose(g, np.sqrt(1.0e6 * grid.array) * np.exp(-grid.array / 1.0e9))


def test_ohmic_rejects_non_positive_frequency():
    grid = BathGrid.uniform(0.0, 1.0e8, 3)
    with pytest.raises(DomainError):
        OhmicSpectrum(1.0e6, 1.0e9).couplings(grid, 1.0e9)


def test_flat_and_explicit():
    grid = BathGrid.uniform(1.0, 1.0, 4)
    np.testing.assert_array_equal(FlatSpectrum(3.0).couplings(grid, 2.0), [3.0] * 4)
    explicit = ExplicitSpectrum((1.0, 2.0, 3.0, 4.0))
    np.testing.assert_array_equal(explicit.couplings(grid, 2.0), [1.0, 2.0, 3.0, 4.0])
    assert coupling_at(explicit, grid, 2.5) == pytest.approx(2.5)
    with pytest.raises(DimensionError):
        explicit.couplings(BathGrid.uniform(1.0, 1.0, 3), 2.0)


@pytest.mark.parametrize("spectrum", [
    lambda: LorentzianSpectrum(-1.0, 1.0),
    lambda: FlatSpectrum(0.0),
    lambda: OhmicSpectrum(1.0, -1.0),
    lambda: ExplicitSpectrum((1.0, -2.0)),
])
def test_spectrum_parameter_validation(spectrum):
    with pytest.raises(DomainError):
        spectrum()


def test_assemble_r_structure(small_hamiltonian, small_layout):
    t = 3.0e-9
    r = assemble_r(small_hamiltonian, small_layout, t)
    assert r.data.shape == (12, 12)
    assert r.physicality_defect() == 0.0
    assert r.e_block[0, 0] == pytest.approx(2.0e7 * t)
    assert r.c_block[0, 0] == pytest.approx(-2.0e7 * t)
    assert r.p_block[0, 2] == pytest.approx(1j * 2.0e7 * t)
    assert r.p_block[0, 0] == 0.0
    # 저장소 블록에는 스퀴징이 없다
    assert np.count_nonzero(r.e_block) == 1


def test_assemble_r_linear_in_time(small_hamiltonian, small_layout):
    r1 = assemble_r(small_hamiltonian, small_layout, 1.0)
    r2 = assemble_r(small_hamiltonian, small_layout, 2.5e-9)
    np.testing.assert_allclose(r1.scaled(2.5e-9).data, r2.data)


def test_lab_frame_p_block():
    """실험실 좌표계: P 대각 = iωt, iω_j t, 비대각 = iγ_j t"""
    grid = BathGrid.uniform(0.8e9, 0.2e9, 3)
    h = HamiltonianSpec.lab_frame(grid, 1.0e9, [1.0e6, 2.0e6, 3.0e6])
    r = assemble_r(h, h.layout(), 1.0e-9)
    p = r.p_block
    np.testing.assert_allclose(np.diag(p), 1j * np.array([1.0e9, 0.8e9, 1.0e9, 1.2e9]) * 1.0e-9)
    np.testing.assert_allclose(p[0, 1:], 1j * np.array([1.0e6, 2.0e6, 3.0e6]) * 1.0e-9)
    np.testing.assert_allclose(p[1:, 0], p[0, 1:])
    assert np.count_nonzero(r.e_block) == 0


def test_rotating_frame_detunings(small_grid):
    h = HamiltonianSpec.rotating_frame(0.0, small_grid, 1.0e9, [1.0] * 5)
    np.testing.assert_allclose(h.bath_detunings, small_grid.array - 1.0e9)
    assert h.system_detuning == 0.0


def test_interaction_sign(small_hamiltonian, small_layout):
    plus = assemble_r(small_hamiltonian, small_layout, 1.0)
    minus = assemble_r(small_hamiltonian.with_sign(-1), small_layout, 1.0)
    np.testing.assert_allclose(minus.p_block[0, 1:], -plus.p_block[0, 1:])
    np.testing.assert_allclose(np.diag(minus.p_block), np.diag(plus.p_block))
    with pytest.raises(DomainError):
        small_hamiltonian.with_sign(0)


def test_assemble_r_validation(small_hamiltonian):
    with pytest.raises(DimensionError):
        assemble_r(small_hamiltonian, ModeLayout(4), 1.0)
    with pytest.raises(DomainError):
        assemble_r(small_hamiltonian, ModeLayout(5), -1.0)


def test_hamiltonian_length_mismatch():
    with pytest.raises(DimensionError):
        HamiltonianSpec(0.0, 0.0, (1.0, 2.0), (1.0,))


def test_symplectic_form():
    s = symplectic_form(ModeLayout(1))
    np.testing.assert_array_equal(s, [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]])
