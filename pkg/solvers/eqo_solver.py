"""
EQO 전달 행렬 기반 솔버

- 킥 없음: 임의 시각 격자에서 e^{−tR₁S} 를 구간별 누적 곱으로 계산
- 킥 있음: 주기 경계(또는 매 킥)에서 M_cycleᵏ (필요 시 · M₊(τ₀))
"""
import hashlib
import logging
from typing import Callable, Optional

import numpy as np

from engine.errors import DomainError, NumericDriftError
from engine.model import assemble_r
from engine.observables import (
    InitialMoments, TimeSeries, quadrature_variance, survival_probability,
)
from engine.propagator import TransferMatrix, kick_cycle, stroboscopic_series, transfer
from solvers.base_solver import BaseSolver

logger = logging.getLogger(__name__)


def observable_reader(observable: str, moments: InitialMoments) -> Callable[[TransferMatrix], float]:
    """관측량 이름 → 전달 행렬에서 값을 읽는 함수"""
    if observable == 'variance':
        return lambda m: quadrature_variance(m, moments)
    if observable == 'survival':
        return survival_probability
    raise DomainError(f"지원하지 않는 관측량: {observable}")


class EqoSolver(BaseSolver):
    """EQO 솔버 (kicked=True 면 패리티 킥 스케줄 적용)"""

    def __init__(self, config=None, kicked: bool = False):
        super().__init__(config)
        self.kicked = kicked
        self.label = "eqo_kicked" if kicked else "eqo_unkicked"

    def solve(self, scenario, times: Optional[np.ndarray] = None) -> TimeSeries:
        """
        시나리오의 관측량 시계열 계산

        Args:
            scenario: Scenario
            times: 샘플 시각 (s). 킥 실행에서는 무시되고 스케줄에서 결정됨

        Returns:
            TimeSeries (라벨 eqo_kicked / eqo_unkicked)
        """
        try:
            if self.kicked:
                if scenario.kicks is None:
                    raise DomainError(f"{scenario.name}: 킥 스케줄이 없습니다")
                return self._solve_kicked(scenario)
            return self._solve_free(scenario, times)
        except NumericDriftError as e:
            logger.error(f"{scenario.name}: 수치 드리프트로 중단 ({self.label})")
            raise e.with_context(scenario.name) if e.context is None else e

    def _series(self, scenario, times, values, **metadata) -> TimeSeries:
        scale, scale_name = scenario.time_scale()
        metadata.update({'scenario': scenario.name, 'observable': scenario.observable,
                         'frame': scenario.frame, 'n_bath_modes': len(scenario.grid)})
        return TimeSeries(times, values, label=self.label, metadata=metadata,
                          time_scale=scale, scale_name=scale_name)

    def _step(self, r1, fingerprint: str, dt: float) -> TransferMatrix:
        # linspace 간격은 몇 가지 부동소수 값으로만 나타나므로 정확한 dt 를 키로 사용
        key = (fingerprint, dt)
        step = self._cache.get(key)
        if step is None:
            step = transfer(r1, dt, self.config.expm_tol)
            self._cache[key] = step
        return step

    def _solve_free(self, scenario, times: Optional[np.ndarray]) -> TimeSeries:
        times = scenario.time_grid.times() if times is None else np.asarray(times, dtype=float)
        if times.size and (times[0] < 0 or np.any(np.diff(times) <= 0)):
            raise DomainError("샘플 시각은 0 이상이고 엄격히 증가해야 합니다")

        layout = scenario.layout()
        r1 = assemble_r(scenario.hamiltonian(), layout, 1.0)
        fingerprint = hashlib.sha1(r1.data.tobytes()).hexdigest()
        read = observable_reader(scenario.observable, scenario.moments())

        logger.info(f"{scenario.name}: 킥 없는 진화 {times.size}개 시각, 모드 {layout.n_modes}개")
        current = TransferMatrix.identity(layout)
        previous = 0.0
        values = []
        max_defect = max_absolute = 0.0
        for t in times:
            dt = float(t - previous)
            if dt > 0:
                current = current.then(self._step(r1, fingerprint, dt))
                absolute, scaled = current.check_drift(self.config.drift_tol)
                max_absolute = max(max_absolute, absolute)
                max_defect = max(max_defect, scaled)
            values.append(read(current))
            previous = float(t)

        return self._series(scenario, times, values, max_symplectic_defect=max_defect,
                            max_absolute_symplectic_defect=max_absolute)

    def _solve_kicked(self, scenario) -> TimeSeries:
        schedule = scenario.kicks
        layout = scenario.layout()
        h = scenario.hamiltonian()
        read = observable_reader(scenario.observable, scenario.moments())
        tol = self.config.expm_tol

        logger.info(f"{scenario.name}: 킥 진화 τ₀={schedule.tau0:.3e}s, {schedule.n_cycles} 주기"
                    f"{' (킥 비활성)' if not schedule.kicks_enabled else ''}")
        m_cycle = kick_cycle(h, layout, schedule.tau0, schedule.kicks_enabled, tol)
        half = None
        if scenario.sample_every_kick:
            # 주기 중간(첫 킥 직후) 값은 M_cycleᵏ·M₊(τ₀). 관측량은 패리티에 불변
            half = transfer(assemble_r(h.with_sign(1), layout, 1.0), schedule.tau0, tol)

        values = []
        max_defect = max_absolute = 0.0
        previous = TransferMatrix.identity(layout)
        for _, m in stroboscopic_series(m_cycle, schedule.n_cycles, self.config.drift_tol):
            if half is not None:
                values.append(read(previous.then(half)))
            values.append(read(m))
            absolute, scaled = m.drift_measures()
            max_absolute = max(max_absolute, absolute)
            max_defect = max(max_defect, scaled)
            previous = m

        times = scenario.kicked_times()
        return self._series(scenario, times, values, tau0_s=schedule.tau0,
                            n_cycles=schedule.n_cycles, kicks_enabled=schedule.kicks_enabled,
                            max_symplectic_defect=max_defect, max_absolute_symplectic_defect=max_absolute)
