"""
기본 제공 시나리오 (그림 재현용 설정)

fig1a  Lorentzian 저장소 + 진공 스퀴징, 킥 유무 비교
fig1b  Ohmic 저장소 + 진공 스퀴징, 킥 유무 비교
fig2a  Lorentzian 저장소 잔류 확률 vs 정확해 / Markov
fig2b  평탄 결합 잔류 확률 vs Markov
"""
import copy
import logging
from typing import Dict, List, Tuple

from engine.errors import ScenarioConfigError
from processors.scenario import Scenario

logger = logging.getLogger(__name__)

PRESETS: Dict[str, dict] = {
    'fig1a': {
        'name': 'fig1a',
        'description': 'Lorentzian 저장소(Γ=2e9, η=5e7)에서 스퀴징 분산, 킥(τ₀=1.67 ns) 유무 비교',
        'observable': 'variance',
        'comparison': 'kicks',
        'system_frequency_rad_per_s': 1.0e9,
        'squeeze_rate_per_s': 1.0e8,
        'spectrum': {'kind': 'lorentzian', 'gamma_width_per_s': 2.0e9, 'eta_per_s': 5.0e7},
        'grid': {'first_rad_per_s': 1.0e7, 'spacing_rad_per_s': 1.0e7, 'count': 200},
        'time_grid': {'t_max_s': 2.0e-8, 'n_samples': 200},
        'kicks': {'tau0_s': 1.67e-9},
    },
    'fig1b': {
        'name': 'fig1b',
        'description': 'Ohmic 저장소(ξ=1e6, ω_c=1e9)에서 스퀴징 분산, 킥(τ₀=2.5 ns) 유무 비교',
        'observable': 'variance',
        'comparison': 'kicks',
        'system_frequency_rad_per_s': 1.0e9,
        'squeeze_rate_per_s': 7.0e8,
        'spectrum': {'kind': 'ohmic', 'xi_per_s': 1.0e6, 'cutoff_rad_per_s': 1.0e9},
        'grid': {'first_rad_per_s': 1.0e7, 'spacing_rad_per_s': 1.0e7, 'count': 200},
        # 첫 주기 경계가 εt = 3.5 이므로 경계 2개를 포함하도록 εt ≤ 7
        'time_grid': {'t_max_s': 1.0e-8, 'n_samples': 200},
        'kicks': {'tau0_s': 2.5e-9},
    },
    'fig2a': {
        'name': 'fig2a',
        'description': 'Lorentzian 저장소(Γ=1e6, η=2.8209e6) 잔류 확률: EQO vs 정확해 vs Markov',
        'observable': 'survival',
        'comparison': 'references',
        'system_frequency_rad_per_s': 1.0e9,
        'squeeze_rate_per_s': 0.0,
        'spectrum': {'kind': 'lorentzian', 'gamma_width_per_s': 1.0e6, 'eta_per_s': 2.8209e6},
        'grid': {'first_rad_per_s': 5.05e8, 'spacing_rad_per_s': 5.0e6, 'count': 200},
        'time_grid': {'t_max_s': 1.0e-6, 'n_samples': 201, 'include_zero': True},
    },
    'fig2b': {
        'name': 'fig2b',
        'description': '평탄 결합(γ=5.6419e6) 잔류 확률: EQO vs Markov',
        'observable': 'survival',
        'comparison': 'references',
        'system_frequency_rad_per_s': 1.0e9,
        'squeeze_rate_per_s': 0.0,
        'spectrum': {'kind': 'flat', 'gamma_per_s': 5.6419e6},
        'grid': {'first_rad_per_s': 1.0e7, 'spacing_rad_per_s': 1.0e7, 'count': 200},
        'time_grid': {'t_max_s': 2.0e-7, 'n_samples': 201, 'include_zero': True},
    },
}


def preset_dict(name: str) -> dict:
    """프리셋 원본 dict (사본)"""
    if name not in PRESETS:
        raise ScenarioConfigError(f"알 수 없는 프리셋: {name} (사용 가능: {', '.join(sorted(PRESETS))})",
                                  source='<preset>', field='name')
    return copy.deepcopy(PRESETS[name])


def get_preset(name: str) -> Scenario:
    """프리셋 이름으로 Scenario 생성"""
    return Scenario.from_dict(preset_dict(name), source=f'<preset:{name}>')


def list_presets() -> List[Tuple[str, str]]:
    """(이름, 설명) 목록"""
    return [(name, PRESETS[name]['description']) for name in sorted(PRESETS)]
