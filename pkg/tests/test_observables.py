import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from engine.errors import DimensionError, DomainError, InvalidObservableError, NumericError
from engine.model import BathGrid, FlatSpectrum, HamiltonianSpec, ModeLayout, assemble_r
from engine.observables import (
    InitialMoments, TimeSeries, excitation_norm, ideal_squeezed_variance, momentum_variance,
    quadrature_variance, survival_probability, system_coefficients,
)
from engine.propagator import TransferMatrix, transfer


def squeezer(eps):
    h = HamiltonianSpec(0.0, eps, (0.0,), (0.0,))
    return h, h.layout()


@pytest.mark.parametrize("eps_t", [0.0, 0.5, 1.0, 2.0])
def test_pure_squeezing_variance(eps_t):
    """γ = 0: Var X = e^{−2εt}, Var P = e^{2εt}"""
    h, layout = squeezer(1.0e8)
    m = transfer(assemble_r(h, layout, 1.0), eps_t / 1.0e8)
    vacuum = InitialMoments.vacuum(layout)
    assert quadrature_variance(m, vacuum) == pytest.approx(np.exp(-2 * eps_t), rel=1e-12)
    assert momentum_variance(m, vacuum) == pytest.approx(np.exp(2 * eps_t), rel=1e-12)


def test_identity_coefficients():
    layout = ModeLayout(2)
    a, b = system_coefficients(TransferMatrix.identity(layout))
    np.testing.assert_array_equal(a, [1, 0, 0])
    np.testing.assert_array_equal(b, [0, 0, 0])


def test_thermal_variance_scales_with_noise():
    layout = ModeLayout(1)
    m = TransferMatrix.identity(layout)
    assert quadrature_variance(m, InitialMoments.thermal(layout, [0.5, 3.0])) == pytest.approx(2.0)


@st.composite
def excitation_conserving(draw):
    n_bath = draw(st.integers(min_value=1, max_value=8))
    rng = np.random.default_rng(draw(st.integers(min_value=0, max_value=2 ** 32 - 1)))
    h = HamiltonianSpec(0.0, 0.0, tuple(rng.normal(scale=2.0, size=n_bath)),
                        tuple(rng.uniform(0.0, 1.0, size=n_bath)))
    return h, draw(st.floats(min_value=0.0, max_value=5.0))


@given(excitation_conserving())
@settings(max_examples=20, deadline=None)
def test_vacuum_variance_is_one_without_squeezing(case):
    h, t = case
    layout = h.layout()
    m = transfer(assemble_r(h, layout, 1.0), t)
    assert abs(quadrature_variance(m, InitialMoments.vacuum(layout)) - 1.0) < 1e-10
    assert abs(excitation_norm(m) - 1.0) < 1e-10
    assert 0.0 <= survival_probability(m) <= 1.0 + 1e-12


@given(st.integers(min_value=0, max_value=2 ** 32 - 1), st.floats(min_value=0.0, max_value=3.0))
@settings(max_examples=20, deadline=None)
def test_heisenberg_floor(seed, t):
    rng = np.random.default_rng(seed)
    h = HamiltonianSpec(0.0, float(rng.uniform(0, 1)), tuple(rng.normal(size=3)), tuple(rng.uniform(0, 1, size=3)))
    layout = h.layout()
    m = transfer(assemble_r(h, layout, 1.0), t)
    vacuum = InitialMoments.vacuum(layout)
    assert quadrature_variance(m, vacuum) * momentum_variance(m, vacuum) >= 1.0 - 1e-9


def test_survival_single_bath_mode_rabi():
    """공명 단일 모드: P(t) = cos²(γt)"""
    h = HamiltonianSpec(0.0, 0.0, (0.0,), (2.0,))
    layout = h.layout()
    r1 = assemble_r(h, layout, 1.0)
    for t in (0.0, 0.3, 0.785, 1.2):
        assert survival_probability(transfer(r1, t)) == pytest.approx(np.cos(2.0 * t) ** 2, abs=1e-12)


def test_survival_rejects_squeezing():
    h, layout = squeezer(1.0)
    m = transfer(assemble_r(h, layout, 1.0), 0.5)
    with pytest.raises(InvalidObservableError):
        survival_probability(m)


def test_moments_validation():
    layout = ModeLayout(2)
    with pytest.raises(DimensionError):
        InitialMoments.thermal(layout, [0.0, 0.0])
    with pytest.raises(DomainError):
        InitialMoments((0.0, -1.0))
    with pytest.raises(DimensionError):
        quadrature_variance(TransferMatrix.identity(layout), InitialMoments((0.0,)))


def test_time_series_validation():
    series = TimeSeries([0.0, 1.0e-9], [1.0, 0.5], label="x", time_scale=2.0e8, scale_name="eps_t")
    np.testing.assert_allclose(series.dimensionless_times, [0.0, 0.2])
    assert len(series) == 2
    with pytest.raises(DomainError):
        TimeSeries([1.0, 1.0], [0.0, 0.0], label="x")
    with pytest.raises(DimensionError):
        TimeSeries([1.0, 2.0], [0.0], label="x")
    with pytest.raises(NumericError):
        TimeSeries([1.0], [np.nan], label="x")


def test_ideal_squeezed_variance():
    np.testing.assert_allclose(ideal_squeezed_variance(1.0e8, [0.0, 1.0e-8]), [1.0, np.exp(-2.0)])
