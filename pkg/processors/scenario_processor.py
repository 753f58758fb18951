import logging
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from config.sim_config import SimulationConfig
from engine.errors import DomainError, EngineError
from engine.model import LorentzianSpectrum
from engine.observables import TimeSeries, ideal_squeezed_variance
from processors.scenario import Scenario
from solvers.eqo_solver import EqoSolver
from solvers.reference_solver import LorentzianExactSolver, MarkovSolver

logger = logging.getLogger(__name__)

SURVIVAL_WINDOW = 0.1
EXACT_AGREEMENT_TOL = 0.05
MARKOV_DEPARTURE = 0.1


@dataclass
class ScenarioResult:
    """시나리오 실행 결과 (시계열 목록 + 비교 보고서)"""
    scenario: Scenario
    series: List[TimeSeries]
    report: Dict[str, Any] = field(default_factory=dict)
    elapsed_s: float = 0.0

    def get(self, label: str) -> TimeSeries:
        for s in self.series:
            if s.label == label:
                return s
        raise KeyError(f"{self.scenario.name}: 시계열 '{label}' 이 없습니다")


def _max_abs(a: np.ndarray) -> float:
    return float(np.max(np.abs(a))) if a.size else 0.0


class ScenarioProcessor:
    """시나리오 종류(단일/킥 비교/기준 해 비교)에 맞게 솔버를 조합하는 클래스"""

    def __init__(self, config: Optional[SimulationConfig] = None):
        self.config = config or SimulationConfig()

    def run(self, scenario: Scenario) -> ScenarioResult:
        """
        시나리오 실행

        Args:
            scenario: 검증된 Scenario

        Returns:
            ScenarioResult (comparison 이 kicks 면 킥/무킥, references 면 수치/정확해/Markov)
        """
        started = time.perf_counter()
        try:
            logger.info("=" * 50)
            logger.info(f"시나리오 실행 시작: {scenario.name} ({scenario.comparison})")
            logger.info("=" * 50)

            if scenario.comparison == 'kicks':
                result = self._run_kicks(scenario)
            elif scenario.comparison == 'references':
                result = self._run_references(scenario)
            else:
                kicked = scenario.kicks is not None
                with EqoSolver(self.config, kicked=kicked) as solver:
                    series = solver.solve(scenario)
                result = ScenarioResult(scenario, [series], {'scenario': scenario.name,
                                                              'comparison': 'none'})

            result.elapsed_s = time.perf_counter() - started
            logger.info(f"시나리오 완료: {scenario.name} "
                        f"(시계열 {len(result.series)}개, {result.elapsed_s:.2f}s)")
            return result

        except EngineError as e:
            logger.error(f"시나리오 실행 실패 [{scenario.name}]: {str(e)}")
            raise

    # ------------------------------------------------------------------
    # 킥 유무 비교
    # ------------------------------------------------------------------
    def _run_kicks(self, scenario: Scenario) -> ScenarioResult:
        logger.info("\n[1/2] 킥 없는 진화 계산 중...")
        with EqoSolver(self.config, kicked=False) as solver:
            unkicked = solver.solve(scenario)
        logger.info("\n[2/2] 킥 진화 계산 중...")
        with EqoSolver(self.config, kicked=True) as solver:
            kicked = solver.solve(scenario)

        report = self.kick_report(scenario, kicked)
        return ScenarioResult(scenario, [kicked, unkicked], report)

    def kick_report(self, scenario: Scenario, kicked: TimeSeries) -> Dict[str, Any]:
        """킥 샘플 시각마다 킥/무킥 값을 이상적 결과와 비교"""
        # 킥 시각에서의 무킥 값은 보고서 전용으로 따로 계산
        with EqoSolver(self.config, kicked=False) as solver:
            unkicked_at = solver.solve(scenario, kicked.times)
        if scenario.observable == 'variance':
            ideal = ideal_squeezed_variance(scenario.squeeze_rate, kicked.times)
            ideal_name = 'exp(-2 eps t)'
        else:
            ideal = np.ones_like(kicked.times)
            ideal_name = 'P = 1'

        dev_kicked = np.abs(kicked.values - ideal)
        dev_unkicked = np.abs(unkicked_at.values - ideal)
        closer = dev_kicked < dev_unkicked

        report = {
            'scenario': scenario.name,
            'comparison': 'kicks',
            'ideal': ideal_name,
            'samples': [
                {'t_seconds': float(t), 'dimensionless_time': float(t * kicked.time_scale),
                 'kicked': float(k), 'unkicked': float(u), 'ideal': float(i),
                 'kicked_closer': bool(c)}
                for t, k, u, i, c in zip(kicked.times, kicked.values, unkicked_at.values, ideal, closer)
            ],
            'max_deviation_kicked': _max_abs(dev_kicked),
            'max_deviation_unkicked': _max_abs(dev_unkicked),
            'kicked_closer_everywhere': bool(np.all(closer)),
        }
        if report['kicked_closer_everywhere']:
            logger.info(f"모든 킥 샘플에서 킥 결과가 이상적 결과에 더 가깝습니다 ({closer.size}개)")
        else:
            logger.warning(f"킥 결과가 더 멀어진 샘플: {int(np.sum(~closer))}/{closer.size}")
        return report

    # ------------------------------------------------------------------
    # 기준 해 비교 (잔류 확률)
    # ------------------------------------------------------------------
    def _run_references(self, scenario: Scenario) -> ScenarioResult:
        has_exact = isinstance(scenario.spectrum, LorentzianSpectrum)
        steps = 3 if has_exact else 2

        logger.info(f"\n[1/{steps}] EQO 잔류 확률 계산 중...")
        with EqoSolver(self.config, kicked=False) as solver:
            numeric = solver.solve(scenario)
        series = [numeric]

        exact = unscaled = None
        if has_exact:
            logger.info(f"\n[2/{steps}] Lorentzian 정확해 계산 중...")
            with LorentzianExactSolver(self.config) as solver:
                exact = solver.solve(scenario, numeric.times)
            # Θ² = 4πη²D − Γ² 형태는 보고서 비교용으로만 계산 (출력 시계열 아님)
            with LorentzianExactSolver(self.config, unscaled=True) as solver:
                unscaled = solver.solve(scenario, numeric.times)
            series.append(exact)

        logger.info(f"\n[{steps}/{steps}] Markov 마스터 방정식 적분 중...")
        with MarkovSolver(self.config) as solver:
            markov = solver.solve(scenario, numeric.times)
        series.append(markov)

        return ScenarioResult(scenario, series, self.reference_report(scenario, numeric, exact, markov, unscaled))

    def reference_report(self, scenario: Scenario, numeric: TimeSeries,
                         exact: Optional[TimeSeries], markov: TimeSeries,
                         unscaled: Optional[TimeSeries] = None) -> Dict[str, Any]:
        """P(t) ≥ 0.1 구간에서 수치해와 기준 해의 최대 편차"""
        window = numeric.values >= SURVIVAL_WINDOW
        dev_markov = _max_abs((numeric.values - markov.values)[window])
        report: Dict[str, Any] = {
            'scenario': scenario.name,
            'comparison': 'references',
            'window': f'P >= {SURVIVAL_WINDOW}',
            'window_samples': int(np.sum(window)),
            'markov_rate_per_s': markov.time_scale,
            'max_deviation_markov': dev_markov,
            'markov_departs': dev_markov > MARKOV_DEPARTURE,
        }
        logger.info(f"Markov 대비 최대 편차: {dev_markov:.4f}")

        if exact is not None:
            dev_exact = _max_abs((numeric.values - exact.values)[window])
            confirmed = dev_exact <= EXACT_AGREEMENT_TOL
            report.update({
                'max_deviation_exact': dev_exact,
                'exact_tolerance': EXACT_AGREEMENT_TOL,
                'exact_hypothesis_confirmed': confirmed,
                'theta_squared': exact.metadata.get('theta_squared'),
            })
            if confirmed:
                logger.info(f"정확해 대비 최대 편차: {dev_exact:.4f} (허용 {EXACT_AGREEMENT_TOL})")
            else:
                # 불일치는 숨기지 않고 보고만 한다
                logger.warning(f"정확해 파라미터 가정 불일치: 최대 편차 {dev_exact:.4f} > {EXACT_AGREEMENT_TOL}")

        if unscaled is not None:
            dev_unscaled = _max_abs((numeric.values - unscaled.values)[window])
            report.update({
                'unscaled_theta_squared': unscaled.metadata.get('theta_squared'),
                'max_deviation_exact_unscaled': dev_unscaled,
            })
            logger.info(f"Θ² = 4πη²D − Γ² 형태 정확해 대비 최대 편차: {dev_unscaled:.4f}")
        return report

    # ------------------------------------------------------------------
    # 디커플링 극한
    # ------------------------------------------------------------------
    def decoupling_study(self, scenario: Scenario, divisors: Sequence[int] = (1, 2, 4),
                         eps_t_max: float = 1.0) -> Dict[str, Any]:
        """
        τ₀ 를 줄여 가며 킥 분산의 e^{−2εt} 대비 최대 편차 측정

        Args:
            scenario: 킥 스케줄이 있는 variance 시나리오
            divisors: τ₀ 나눗수
            eps_t_max: 비교 구간 εt 상한

        Returns:
            τ₀ 별 최대 편차, 단조 감소 여부, 관측된 수렴 차수
        """
        if scenario.kicks is None or scenario.observable != 'variance' or scenario.squeeze_rate <= 0:
            raise DomainError(f"{scenario.name}: 디커플링 분석은 킥 스케줄이 있는 스퀴징 시나리오에서만 가능합니다")

        t_max = eps_t_max / scenario.squeeze_rate
        rows = []
        for d in divisors:
            tau0 = scenario.kicks.tau0 / d
            n_cycles = int(np.floor(t_max / (2.0 * tau0) + 1e-9))
            if n_cycles < 1:
                raise DomainError(f"τ₀/{d} = {tau0:.3e}s 주기가 εt ≤ {eps_t_max} 구간보다 깁니다")
            variant = Scenario.from_dict(_with_kicks(scenario, tau0, n_cycles), source=f'<decoupling:{d}>')
            with EqoSolver(self.config, kicked=True) as solver:
                series = solver.solve(variant)
            deviation = _max_abs(series.values - ideal_squeezed_variance(scenario.squeeze_rate, series.times))
            rows.append({'tau0_s': tau0, 'n_cycles': n_cycles, 'max_deviation': deviation})
            logger.info(f"τ₀ = {tau0:.3e}s: 최대 편차 {deviation:.4e}")

        deviations = [r['max_deviation'] for r in rows]
        orders = [float(np.log2(a / b)) for a, b in zip(deviations, deviations[1:]) if a > 0 and b > 0]
        return {
            'scenario': scenario.name,
            'eps_t_max': eps_t_max,
            'rows': rows,
            'monotone_decreasing': all(b < a for a, b in zip(deviations, deviations[1:])),
            'observed_orders': orders,
        }


def _with_kicks(scenario: Scenario, tau0: float, n_cycles: int) -> Dict[str, Any]:
    data = scenario.to_dict()
    data['kicks'] = dict(data['kicks'], tau0_s=tau0, n_cycles=n_cycles)
    data['time_grid'] = dict(data['time_grid'], t_max_s=2.0 * tau0 * n_cycles)
    return data
