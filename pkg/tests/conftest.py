import numpy as np
import pytest

from config.sim_config import SimulationConfig
from engine.model import BathGrid, FlatSpectrum, HamiltonianSpec, ModeLayout
from processors.scenario import Scenario


@pytest.fixture
def config(tmp_path):
    """임시 디렉토리를 쓰는 기본 설정"""
    return SimulationConfig(output_dir=str(tmp_path / "output"), log_dir=str(tmp_path / "logs"),
                            scenario_dir=str(tmp_path / "scenarios"))


@pytest.fixture
def small_grid():
    return BathGrid.uniform(0.9e9, 0.05e9, 5)


@pytest.fixture
def small_hamiltonian(small_grid):
    """ε ≠ 0, 5개 저장소 모드"""
    gammas = np.array([1.0e7, 2.0e7, 3.0e7, 2.0e7, 1.0e7])
    return HamiltonianSpec.rotating_frame(2.0e7, small_grid, 1.0e9, gammas)


@pytest.fixture
def small_layout():
    return ModeLayout(5)


def scenario_dict(**overrides):
    """작은 평탄 결합 survival 시나리오 dict"""
    data = {
        'name': 'small_survival',
        'description': 'test',
        'observable': 'survival',
        'comparison': 'none',
        'system_frequency_rad_per_s': 1.0e9,
        'squeeze_rate_per_s': 0.0,
        'spectrum': {'kind': 'flat', 'gamma_per_s': 5.0e6},
        'grid': {'first_rad_per_s': 0.9e9, 'spacing_rad_per_s': 1.0e7, 'count': 21},
        'time_grid': {'t_max_s': 1.0e-7, 'n_samples': 11, 'include_zero': True},
    }
    data.update(overrides)
    return data


@pytest.fixture
def survival_scenario():
    return Scenario.from_dict(scenario_dict())


@pytest.fixture
def squeezing_scenario():
    """Lorentzian 저장소, 킥 비교용 작은 스퀴징 시나리오"""
    return Scenario.from_dict(scenario_dict(
        name='small_squeezing',
        observable='variance',
        comparison='kicks',
        squeeze_rate_per_s=1.0e8,
        spectrum={'kind': 'lorentzian', 'gamma_width_per_s': 2.0e9, 'eta_per_s': 5.0e7},
        grid={'first_rad_per_s': 1.0e8, 'spacing_rad_per_s': 1.0e8, 'count': 20},
        time_grid={'t_max_s': 1.0e-8, 'n_samples': 20},
        kicks={'tau0_s': 0.5e-9},
    ))


@pytest.fixture
def make_scenario_dict():
    return scenario_dict
