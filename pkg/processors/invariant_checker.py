"""
시나리오 단위 불변량 점검 (check 서브커맨드)

시계열을 저장하지 않고 해당 시나리오의 해밀토니안에서
R 행렬 물리성, 교환관계 보존, 켤레 구조, 들뜸 보존, 하이젠베르크 하한,
γ = 0 에서의 킥 주기 축약을 확인한다.
"""
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional

import numpy as np

from config.sim_config import SimulationConfig
from engine.model import assemble_r
from engine.observables import (
    InitialMoments, excitation_norm, momentum_variance, quadrature_variance, survival_probability,
)
from engine.propagator import kick_cycle, transfer
from processors.scenario import Scenario

logger = logging.getLogger(__name__)

STRUCTURE_TOL = 1e-10
SAMPLE_FRACTIONS = (0.25, 0.5, 1.0)


@dataclass
class CheckResult:
    name: str
    value: float
    tolerance: float
    passed: bool

    def to_dict(self) -> Dict[str, Any]:
        return {'name': self.name, 'value': self.value, 'tolerance': self.tolerance, 'passed': self.passed}


class InvariantChecker:
    """시나리오 해밀토니안에 대한 불변량 점검기"""

    def __init__(self, config: Optional[SimulationConfig] = None):
        self.config = config or SimulationConfig()
        self.results: List[CheckResult] = []

    def _record(self, name: str, value: float, tolerance: float, passed: Optional[bool] = None) -> None:
        ok = value <= tolerance if passed is None else passed
        self.results.append(CheckResult(name, float(value), tolerance, bool(ok)))
        level = logging.INFO if ok else logging.WARNING
        logger.log(level, f"  {'PASS' if ok else 'FAIL'} {name}: {value:.3e} (허용 {tolerance:.1e})")

    def check(self, scenario: Scenario) -> Dict[str, Any]:
        """
        불변량 점검 실행

        Args:
            scenario: 점검할 시나리오

        Returns:
            {'scenario', 'passed', 'checks': [...]}
        """
        self.results = []
        logger.info(f"불변량 점검 시작: {scenario.name}")
        layout = scenario.layout()
        h = scenario.hamiltonian()
        r1 = assemble_r(h, layout, 1.0)
        vacuum = InitialMoments.vacuum(layout)

        self._record('r_matrix_physicality', r1.physicality_defect(), STRUCTURE_TOL)

        for fraction in SAMPLE_FRACTIONS:
            t = fraction * scenario.time_grid.t_max
            m = transfer(r1, t, self.config.expm_tol)
            tag = f't={t:.3e}s'
            self._record(f'symplectic[{tag}]', m.scaled_symplectic_defect(), self.config.drift_tol)
            self._record(f'conjugation[{tag}]', m.conjugation_defect(), STRUCTURE_TOL)

            var_x = quadrature_variance(m, vacuum)
            var_p = momentum_variance(m, vacuum)
            self._record(f'heisenberg_floor[{tag}]', max(0.0, 1.0 - var_x * var_p), 1e-9)

            if scenario.squeeze_rate == 0:
                self._record(f'vacuum_variance[{tag}]', abs(var_x - 1.0), STRUCTURE_TOL)
                self._record(f'excitation_norm[{tag}]', abs(excitation_norm(m) - 1.0), STRUCTURE_TOL)
                p = survival_probability(m)
                self._record(f'survival_range[{tag}]', p, 1.0, passed=-1e-12 <= p <= 1.0 + 1e-12)

        if scenario.kicks is not None:
            tau0 = scenario.kicks.tau0
            cycle = kick_cycle(h, layout, tau0, scenario.kicks.kicks_enabled, self.config.expm_tol)
            self._record('kick_cycle_symplectic', cycle.scaled_symplectic_defect(), self.config.drift_tol)

            free = h.decoupled()
            reduced = kick_cycle(free, layout, tau0, True, self.config.expm_tol)
            plain = transfer(assemble_r(free, layout, 1.0), 2.0 * tau0, self.config.expm_tol)
            scale = max(1.0, float(np.max(np.abs(plain.data))))
            self._record('kick_cycle_decoupled_reduction',
                         float(np.max(np.abs(reduced.data - plain.data))) / scale, STRUCTURE_TOL)

        passed = all(r.passed for r in self.results)
        failed = [r.name for r in self.results if not r.passed]
        if passed:
            logger.info(f"불변량 점검 통과: {scenario.name} ({len(self.results)}개)")
        else:
            logger.warning(f"불변량 점검 실패: {scenario.name} - {', '.join(failed)}")
        return {
            'scenario': scenario.name,
            'passed': passed,
            'checks': [r.to_dict() for r in self.results],
        }
