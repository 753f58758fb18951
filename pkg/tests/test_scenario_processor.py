import numpy as np
import pytest

from config.sim_config import SimulationConfig
from engine.errors import DomainError, NumericDriftError
from engine.model import assemble_r
from engine.observables import survival_probability
from engine.propagator import transfer
from processors.invariant_checker import InvariantChecker
from processors.scenario import Scenario
from processors.scenario_processor import ScenarioProcessor
from solvers.eqo_solver import EqoSolver
from solvers.reference_solver import LorentzianExactSolver, MarkovSolver


def test_single_series_run(survival_scenario, config):
    result = ScenarioProcessor(config).run(survival_scenario)
    assert [s.label for s in result.series] == ['eqo_unkicked']
    series = result.series[0]
    assert series.values[0] == 1.0
    assert np.all((series.values >= 0.0) & (series.values <= 1.0 + 1e-12))
    assert series.scale_name == 'lambda_t'
    assert result.elapsed_s >= 0.0
    assert 'elapsed_s' not in result.report


def test_unkicked_solver_on_irregular_times(survival_scenario, config):
    times = np.array([0.0, 1.0e-9, 7.0e-9, 7.5e-9, 4.0e-8])
    series = EqoSolver(config).solve(survival_scenario, times)
    r1 = assemble_r(survival_scenario.hamiltonian(), survival_scenario.layout(), 1.0)
    expected = [survival_probability(transfer(r1, t)) for t in times]
    np.testing.assert_allclose(series.values, expected, atol=1e-12)


def test_unkicked_solver_rejects_unsorted_times(survival_scenario, config):
    with pytest.raises(DomainError):
        EqoSolver(config).solve(survival_scenario, np.array([2.0e-9, 1.0e-9]))


def test_kicked_solver_requires_schedule(survival_scenario, config):
    with pytest.raises(DomainError):
        EqoSolver(config, kicked=True).solve(survival_scenario)


def test_kick_comparison(squeezing_scenario, config):
    result = ScenarioProcessor(config).run(squeezing_scenario)
    kicked, unkicked = result.get('eqo_kicked'), result.get('eqo_unkicked')
    np.testing.assert_allclose(kicked.times, 1.0e-9 * np.arange(1, 11))
    assert len(unkicked) == 20
    report = result.report
    assert len(report['samples']) == 10
    assert report['kicked_closer_everywhere']
    assert report['max_deviation_kicked'] < report['max_deviation_unkicked']


def test_every_kick_sampling_matches_boundaries(squeezing_scenario, config):
    data = squeezing_scenario.to_dict()
    data['kicks']['sample_every_kick'] = True
    every = EqoSolver(config, kicked=True).solve(Scenario.from_dict(data))
    boundary = EqoSolver(config, kicked=True).solve(squeezing_scenario)
    assert len(every) == 2 * len(boundary)
    np.testing.assert_allclose(every.values[1::2], boundary.values, rtol=1e-12)


def test_disabled_kicks_match_plain_evolution(squeezing_scenario, config):
    data = squeezing_scenario.to_dict()
    data['kicks']['enabled'] = False
    disabled = EqoSolver(config, kicked=True).solve(Scenario.from_dict(data))
    plain = EqoSolver(config).solve(squeezing_scenario, disabled.times)
    np.testing.assert_allclose(disabled.values, plain.values, rtol=1e-9)


def test_decoupling_study_monotone(squeezing_scenario, config):
    study = ScenarioProcessor(config).decoupling_study(squeezing_scenario)
    assert [row['n_cycles'] for row in study['rows']] == [10, 20, 40]
    assert study['monotone_decreasing']
    assert all(order > 0 for order in study['observed_orders'])


def test_decoupling_study_needs_kicks(survival_scenario, config):
    with pytest.raises(DomainError):
        ScenarioProcessor(config).decoupling_study(survival_scenario)


def test_reference_comparison_flat(make_scenario_dict, config):
    scenario = Scenario.from_dict(make_scenario_dict(comparison='references'))
    result = ScenarioProcessor(config).run(scenario)
    assert [s.label for s in result.series] == ['eqo_unkicked', 'markov_master_equation']
    markov = result.get('markov_master_equation')
    np.testing.assert_allclose(markov.values, np.exp(-markov.time_scale * markov.times), atol=1e-6)
    assert result.report['window_samples'] > 0
    assert 'max_deviation_exact' not in result.report
    assert result.report['max_deviation_markov'] < 0.2


def test_reference_report_includes_unscaled_exact_form(make_scenario_dict, config):
    scenario = Scenario.from_dict(make_scenario_dict(
        comparison='references',
        spectrum={'kind': 'lorentzian', 'gamma_width_per_s': 1.0e7, 'eta_per_s': 4.0e6},
    ))
    result = ScenarioProcessor(config).run(scenario)
    assert [s.label for s in result.series] == ['eqo_unkicked', 'lorentzian_exact', 'markov_master_equation']
    report = result.report
    density = 1.0 / 1.0e7
    assert report['theta_squared'] == pytest.approx(4.0 * np.pi * 4.0e6 ** 2 * density * 1.0e7 - 1.0e14)
    assert report['unscaled_theta_squared'] == pytest.approx(4.0 * np.pi * 4.0e6 ** 2 * density - 1.0e14)
    assert report['max_deviation_exact_unscaled'] >= 0.0


def test_series_metadata_records_both_drift_measures(squeezing_scenario, config):
    result = ScenarioProcessor(config).run(squeezing_scenario)
    for series in result.series:
        meta = series.metadata
        assert meta['max_absolute_symplectic_defect'] >= meta['max_symplectic_defect']
        assert meta['max_symplectic_defect'] <= config.drift_tol


def test_solver_cache_is_scoped_to_context(survival_scenario, make_scenario_dict, config):
    stronger = Scenario.from_dict(make_scenario_dict(name='stronger', spectrum={'kind': 'flat', 'gamma_per_s': 1.0e7}))
    with EqoSolver(config) as solver:
        first = solver.solve(survival_scenario)
        assert solver._cache
        second = solver.solve(stronger)
    assert not solver._cache

    with EqoSolver(config) as fresh:
        expected = fresh.solve(stronger)
    np.testing.assert_array_equal(second.values, expected.values)
    assert not np.allclose(first.values, second.values)


def test_exact_solver_requires_lorentzian(survival_scenario, config):
    with pytest.raises(DomainError):
        LorentzianExactSolver(config).solve(survival_scenario)


def test_markov_solver_requires_survival(squeezing_scenario, config):
    with pytest.raises(DomainError):
        MarkovSolver(config).solve(squeezing_scenario)


def test_markov_solver_uses_configured_truncation(survival_scenario, tmp_path):
    config = SimulationConfig(fock_nmax=2, log_dir=str(tmp_path))
    series = MarkovSolver(config).solve(survival_scenario)
    assert series.values[0] == 1.0
    assert series.metadata['scenario'] == 'small_survival'


def test_drift_error_carries_scenario_name(squeezing_scenario):
    config = SimulationConfig(drift_tol=1e-300)
    with pytest.raises(NumericDriftError) as info:
        ScenarioProcessor(config).run(squeezing_scenario)
    assert 'small_squeezing' in str(info.value)


@pytest.mark.parametrize("fixture_name", ['survival_scenario', 'squeezing_scenario'])
def test_invariant_checker_passes(request, fixture_name, config):
    scenario = request.getfixturevalue(fixture_name)
    report = InvariantChecker(config).check(scenario)
    assert report['passed'], [c for c in report['checks'] if not c['passed']]
    names = [c['name'] for c in report['checks']]
    assert 'r_matrix_physicality' in names
    if scenario.kicks is not None:
        assert 'kick_cycle_decoupled_reduction' in names
    else:
        assert any(name.startswith('vacuum_variance') for name in names)
