"""
잔류 확률 기준 해 솔버 (Lorentzian 정확해, Markov 마스터 방정식)
"""
import logging
from typing import Optional

import numpy as np

from engine.errors import DomainError
from engine.model import LorentzianSpectrum
from engine.observables import TimeSeries
from engine.reference import (
    FockState, LorentzianExactParams, lindblad_evolve, lorentzian_exact_survival,
)
from solvers.base_solver import BaseSolver

logger = logging.getLogger(__name__)


def _require_survival(scenario) -> None:
    if scenario.observable != 'survival':
        raise DomainError(f"{scenario.name}: 기준 해는 survival 관측량에서만 정의됩니다")


class LorentzianExactSolver(BaseSolver):
    """Lorentzian 저장소의 연속 극한 정확해 (unscaled=True 면 Θ² = 4πη²D − Γ² 로 계산)"""

    def __init__(self, config=None, unscaled: bool = False):
        super().__init__(config)
        self.unscaled = unscaled
        self.label = "lorentzian_exact_unscaled" if unscaled else "lorentzian_exact"

    def params(self, scenario) -> LorentzianExactParams:
        _require_survival(scenario)
        spectrum = scenario.spectrum
        if not isinstance(spectrum, LorentzianSpectrum):
            raise DomainError(f"{scenario.name}: 정확해는 Lorentzian 스펙트럼에서만 사용할 수 있습니다")
        if len(scenario.grid) < 2:
            raise DomainError(f"{scenario.name}: 모드 밀도를 정의하려면 저장소 모드가 2개 이상 필요합니다")
        center = scenario.omega if spectrum.omega_center is None else spectrum.omega_center
        if center != scenario.omega:
            logger.warning(f"{scenario.name}: Lorentzian 중심({center:.4e})이 시스템 주파수와 달라 "
                           f"정확해는 공명 근사로 계산됩니다")
        return LorentzianExactParams(spectrum.gamma_width, spectrum.eta,
                                     scenario.grid.density, scenario.omega)

    def solve(self, scenario, times: Optional[np.ndarray] = None) -> TimeSeries:
        p = self.params(scenario)
        times = scenario.time_grid.times() if times is None else np.asarray(times, dtype=float)
        theta_squared = p.unscaled_theta_squared if self.unscaled else p.theta_squared
        regime = "과감쇠" if theta_squared < 0 else "진동"
        logger.info(f"{scenario.name}: 정확해 계산 (Θ²={theta_squared:.3e}, {regime})")
        values = lorentzian_exact_survival(p, times, theta_squared)
        scale, scale_name = scenario.time_scale()
        return TimeSeries(times, np.atleast_1d(values), label=self.label,
                          metadata={'scenario': scenario.name, 'theta_squared': theta_squared,
                                    'markov_rate_per_s': p.markov_rate},
                          time_scale=scale, scale_name=scale_name)


class MarkovSolver(BaseSolver):
    """0 K Markov 마스터 방정식 (회전 좌표계, ω = 0)"""

    label = "markov_master_equation"

    def solve(self, scenario, times: Optional[np.ndarray] = None) -> TimeSeries:
        _require_survival(scenario)
        rate = scenario.markov_rate()
        if rate is None:
            raise DomainError(f"{scenario.name}: Markov 감쇠율을 정의하려면 저장소 모드가 2개 이상 필요합니다")
        times = scenario.time_grid.times() if times is None else np.asarray(times, dtype=float)
        rho0 = FockState.number_state(1, self.config.fock_nmax)
        logger.info(f"{scenario.name}: 마스터 방정식 적분 (λ={rate:.4e}/s, n_max={rho0.n_max})")
        series = lindblad_evolve(rate, rho0, times, omega=0.0,
                                 local_error=self.config.lindblad_local_error)
        series.metadata['scenario'] = scenario.name
        return series
