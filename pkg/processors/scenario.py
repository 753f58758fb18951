"""
시나리오 정의와 파싱

JSON/YAML 시나리오 스키마 (단위가 붙은 필드명):

    name, description
    observable: "variance" | "survival"
    comparison: "none" | "kicks" | "references"
    frame: "rotating" | "lab"
    system_frequency_rad_per_s, squeeze_rate_per_s
    spectrum: {kind: lorentzian, gamma_width_per_s, eta_per_s, [center_rad_per_s]}
              {kind: ohmic, xi_per_s, cutoff_rad_per_s}
              {kind: flat, gamma_per_s}
              {kind: explicit, couplings_per_s: [...]}
    grid: {first_rad_per_s, spacing_rad_per_s, count}
    time_grid: {t_max_s, n_samples, [include_zero]}
    kicks: {tau0_s, [n_cycles], [enabled], [sample_every_kick]}     (선택)
    occupations: [n̄_0, n̄_1, …, n̄_N]                                 (선택)
    output: {[format], [path]}                                       (선택)
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Mapping, Optional, Tuple

import numpy as np

from engine.errors import EngineError, ScenarioConfigError
from engine.model import (
    BathGrid, ExplicitSpectrum, FlatSpectrum, HamiltonianSpec, LorentzianSpectrum,
    ModeLayout, OhmicSpectrum, SpectrumSpec, coupling_at, coupling_from_spectrum,
)
from engine.observables import InitialMoments
from engine.propagator import KickSchedule
from engine.reference import markov_decay_rate

logger = logging.getLogger(__name__)

OBSERVABLES = ('variance', 'survival')
COMPARISONS = ('none', 'kicks', 'references')
FRAMES = ('rotating', 'lab')
FORMATS = ('csv', 'json', 'xlsx')
CYCLE_ROUNDING = 1e-9


@dataclass(frozen=True)
class TimeGrid:
    """킥 없는 실행의 샘플 시각: (0, t_max] 등간격 n 개 (include_zero 면 [0, t_max])"""
    t_max: float
    n_samples: int
    include_zero: bool = False

    def times(self) -> np.ndarray:
        if self.include_zero:
            return np.linspace(0.0, self.t_max, self.n_samples)
        return self.t_max * np.arange(1, self.n_samples + 1) / self.n_samples


@dataclass(frozen=True)
class OutputSpec:
    format: Optional[str] = None
    path: Optional[str] = None


@dataclass(frozen=True)
class Scenario:
    """하나의 실험 설정 (해밀토니안, 저장소, 킥 스케줄, 관측량, 시간 격자)"""
    name: str
    description: str
    observable: str
    comparison: str
    frame: str
    omega: float
    squeeze_rate: float
    spectrum: SpectrumSpec
    grid: BathGrid
    time_grid: TimeGrid
    kicks: Optional[KickSchedule] = None
    sample_every_kick: bool = False
    occupations: Optional[Tuple[float, ...]] = None
    output: OutputSpec = OutputSpec()
    grid_params: Optional[Tuple[float, float, int]] = field(default=None, compare=False)

    # ------------------------------------------------------------------
    # 파생 물리량
    # ------------------------------------------------------------------
    def couplings(self) -> np.ndarray:
        return coupling_from_spectrum(self.spectrum, self.grid, self.omega)

    def layout(self) -> ModeLayout:
        return ModeLayout(len(self.grid))

    def hamiltonian(self, interaction_sign: int = 1) -> HamiltonianSpec:
        gammas = self.couplings()
        if self.frame == 'lab':
            return HamiltonianSpec.lab_frame(self.grid, self.omega, gammas, interaction_sign)
        return HamiltonianSpec.rotating_frame(self.squeeze_rate, self.grid, self.omega,
                                              gammas, interaction_sign)

    def moments(self) -> InitialMoments:
        layout = self.layout()
        if self.occupations is None:
            return InitialMoments.vacuum(layout)
        return InitialMoments.thermal(layout, self.occupations)

    def markov_rate(self) -> Optional[float]:
        """λ = 2πD g(ω)² (모드가 1개면 None)"""
        if len(self.grid) < 2:
            return None
        return markov_decay_rate(self.grid.density, coupling_at(self.spectrum, self.grid, self.omega))

    def time_scale(self) -> Tuple[float, str]:
        """무차원 시간 축 (εt 또는 λt)"""
        if self.observable == 'variance' and self.squeeze_rate > 0:
            return self.squeeze_rate, 'eps_t'
        rate = self.markov_rate()
        if self.observable == 'survival' and rate:
            return rate, 'lambda_t'
        return 1.0, 't'

    def kicked_times(self) -> np.ndarray:
        if self.kicks is None:
            return np.empty(0)
        if self.sample_every_kick:
            return self.kicks.tau0 * np.arange(1, 2 * self.kicks.n_cycles + 1)
        return self.kicks.boundary_times()

    # ------------------------------------------------------------------
    # 직렬화
    # ------------------------------------------------------------------
    def _grid_params(self) -> Tuple[float, float, int]:
        if self.grid_params is not None:
            return self.grid_params
        spacing = self.grid.spacing if len(self.grid) > 1 else 0.0
        return self.grid.frequencies[0], spacing, len(self.grid)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            'name': self.name,
            'description': self.description,
            'observable': self.observable,
            'comparison': self.comparison,
            'frame': self.frame,
            'system_frequency_rad_per_s': self.omega,
            'squeeze_rate_per_s': self.squeeze_rate,
            'spectrum': _spectrum_to_dict(self.spectrum),
            'grid': dict(zip(('first_rad_per_s', 'spacing_rad_per_s', 'count'), self._grid_params())),
            'time_grid': {
                't_max_s': self.time_grid.t_max,
                'n_samples': self.time_grid.n_samples,
                'include_zero': self.time_grid.include_zero,
            },
        }
        if self.kicks is not None:
            data['kicks'] = {
                'tau0_s': self.kicks.tau0,
                'n_cycles': self.kicks.n_cycles,
                'enabled': self.kicks.kicks_enabled,
                'sample_every_kick': self.sample_every_kick,
            }
        if self.occupations is not None:
            data['occupations'] = list(self.occupations)
        if self.output.format or self.output.path:
            data['output'] = {k: v for k, v in (('format', self.output.format),
                                                ('path', self.output.path)) if v}
        return data

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], source: str = "<dict>") -> "Scenario":
        """검증 포함 파싱. 오류는 필드 경로를 담은 ScenarioConfigError"""
        return _ScenarioParser(data, source).parse()


def _spectrum_to_dict(spec: SpectrumSpec) -> Dict[str, Any]:
    if isinstance(spec, LorentzianSpectrum):
        out = {'kind': 'lorentzian', 'gamma_width_per_s': spec.gamma_width, 'eta_per_s': spec.eta}
        if spec.omega_center is not None:
            out['center_rad_per_s'] = spec.omega_center
        return out
    if isinstance(spec, OhmicSpectrum):
        return {'kind': 'ohmic', 'xi_per_s': spec.xi, 'cutoff_rad_per_s': spec.omega_cutoff}
    if isinstance(spec, FlatSpectrum):
        return {'kind': 'flat', 'gamma_per_s': spec.gamma}
    return {'kind': 'explicit', 'couplings_per_s': list(spec.values)}


class _ScenarioParser:
    """dict → Scenario, 필드 단위 진단"""

    def __init__(self, data: Mapping[str, Any], source: str):
        self.data = data
        self.source = source

    def fail(self, field: str, message: str) -> ScenarioConfigError:
        return ScenarioConfigError(message, source=self.source, field=field)

    def section(self, parent: Mapping[str, Any], key: str, path: str,
                required: bool = True) -> Optional[Mapping[str, Any]]:
        value = parent.get(key)
        if value is None:
            if required:
                raise self.fail(path, "필수 섹션이 없습니다")
            return None
        if not isinstance(value, Mapping):
            raise self.fail(path, "객체(dict)여야 합니다")
        return value

    def number(self, parent: Mapping[str, Any], key: str, path: str,
               default: Optional[float] = None, minimum: Optional[float] = None,
               strictly_positive: bool = False) -> float:
        value = parent.get(key, default)
        if value is None:
            raise self.fail(path, "필수 값이 없습니다")
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise self.fail(path, f"숫자여야 합니다: {value!r}")
        value = float(value)
        if not np.isfinite(value):
            raise self.fail(path, "유한한 값이어야 합니다")
        if strictly_positive and value <= 0:
            raise self.fail(path, f"양수여야 합니다: {value}")
        if minimum is not None and value < minimum:
            raise self.fail(path, f"{minimum} 이상이어야 합니다: {value}")
        return value

    def integer(self, parent: Mapping[str, Any], key: str, path: str,
                default: Optional[int] = None, minimum: int = 1) -> int:
        value = parent.get(key, default)
        if value is None:
            raise self.fail(path, "필수 값이 없습니다")
        if isinstance(value, bool) or not isinstance(value, int):
            raise self.fail(path, f"정수여야 합니다: {value!r}")
        if value < minimum:
            raise self.fail(path, f"{minimum} 이상이어야 합니다: {value}")
        return value

    def choice(self, parent: Mapping[str, Any], key: str, path: str,
               options: Tuple[str, ...], default: Optional[str] = None) -> str:
        value = parent.get(key, default)
        if value not in options:
            raise self.fail(path, f"{options} 중 하나여야 합니다: {value!r}")
        return value

    def flag(self, parent: Mapping[str, Any], key: str, path: str, default: bool) -> bool:
        value = parent.get(key, default)
        if not isinstance(value, bool):
            raise self.fail(path, f"true/false 여야 합니다: {value!r}")
        return value

    def spectrum(self) -> SpectrumSpec:
        spec = self.section(self.data, 'spectrum', 'spectrum')
        kind = self.choice(spec, 'kind', 'spectrum.kind', ('lorentzian', 'ohmic', 'flat', 'explicit'))
        try:
            if kind == 'lorentzian':
                center = spec.get('center_rad_per_s')
                return LorentzianSpectrum(
                    self.number(spec, 'gamma_width_per_s', 'spectrum.gamma_width_per_s', strictly_positive=True),
                    self.number(spec, 'eta_per_s', 'spectrum.eta_per_s', strictly_positive=True),
                    None if center is None else self.number(spec, 'center_rad_per_s', 'spectrum.center_rad_per_s',
                                                            strictly_positive=True),
                )
            if kind == 'ohmic':
                return OhmicSpectrum(
                    self.number(spec, 'xi_per_s', 'spectrum.xi_per_s', strictly_positive=True),
                    self.number(spec, 'cutoff_rad_per_s', 'spectrum.cutoff_rad_per_s', strictly_positive=True),
                )
            if kind == 'flat':
                return FlatSpectrum(self.number(spec, 'gamma_per_s', 'spectrum.gamma_per_s', strictly_positive=True))
            values = spec.get('couplings_per_s')
            if not isinstance(values, list) or not values:
                raise self.fail('spectrum.couplings_per_s', "비어 있지 않은 목록이어야 합니다")
            return ExplicitSpectrum(tuple(
                self.number({'v': v}, 'v', f'spectrum.couplings_per_s[{i}]', minimum=0.0)
                for i, v in enumerate(values)
            ))
        except ScenarioConfigError:
            raise
        except EngineError as e:
            raise self.fail('spectrum', str(e))

    def grid(self) -> Tuple[BathGrid, Tuple[float, float, int]]:
        grid = self.section(self.data, 'grid', 'grid')
        first = self.number(grid, 'first_rad_per_s', 'grid.first_rad_per_s')
        count = self.integer(grid, 'count', 'grid.count')
        spacing = self.number(grid, 'spacing_rad_per_s', 'grid.spacing_rad_per_s',
                              default=0.0 if count == 1 else None, minimum=0.0)
        if count > 1 and spacing <= 0:
            raise self.fail('grid.spacing_rad_per_s', "양수여야 합니다")
        if count == 1:
            return BathGrid((first,)), (first, spacing, count)
        return BathGrid.uniform(first, spacing, count), (first, spacing, count)

    def parse(self) -> Scenario:
        if not isinstance(self.data, Mapping):
            raise self.fail('<root>', "시나리오 최상위는 객체(dict)여야 합니다")
        data = self.data

        name = data.get('name')
        if not isinstance(name, str) or not name.strip():
            raise self.fail('name', "비어 있지 않은 문자열이어야 합니다")
        description = data.get('description', '')
        observable = self.choice(data, 'observable', 'observable', OBSERVABLES)
        comparison = self.choice(data, 'comparison', 'comparison', COMPARISONS, default='none')
        frame = self.choice(data, 'frame', 'frame', FRAMES, default='rotating')
        omega = self.number(data, 'system_frequency_rad_per_s', 'system_frequency_rad_per_s',
                            strictly_positive=True)
        squeeze = self.number(data, 'squeeze_rate_per_s', 'squeeze_rate_per_s', default=0.0, minimum=0.0)

        if observable == 'survival' and squeeze != 0:
            raise self.fail('squeeze_rate_per_s', "survival 관측량은 ε = 0 에서만 정의됩니다")
        if frame == 'lab' and squeeze != 0:
            raise self.fail('frame', "실험실 좌표계는 스퀴징 구동(시간 의존)을 지원하지 않습니다")
        if comparison == 'references' and observable != 'survival':
            raise self.fail('comparison', "references 비교는 survival 관측량에서만 가능합니다")

        spectrum = self.spectrum()
        grid, grid_params = self.grid()

        tg = self.section(data, 'time_grid', 'time_grid')
        time_grid = TimeGrid(
            self.number(tg, 't_max_s', 'time_grid.t_max_s', strictly_positive=True),
            self.integer(tg, 'n_samples', 'time_grid.n_samples'),
            self.flag(tg, 'include_zero', 'time_grid.include_zero', False),
        )

        kicks = None
        sample_every_kick = False
        ks = self.section(data, 'kicks', 'kicks', required=(comparison == 'kicks'))
        if ks is not None:
            tau0 = self.number(ks, 'tau0_s', 'kicks.tau0_s', strictly_positive=True)
            max_cycles = int(np.floor(time_grid.t_max / (2.0 * tau0) + CYCLE_ROUNDING))
            if max_cycles < 1:
                raise self.fail('kicks.n_cycles', f"t_max {time_grid.t_max:.3e} s 안에 완결된 킥 주기(2τ₀ = {2 * tau0:.3e} s)가 없습니다")
            n_cycles = self.integer(ks, 'n_cycles', 'kicks.n_cycles', default=max_cycles)
            if n_cycles > max_cycles:
                raise self.fail('kicks.n_cycles', f"킥 주기 {n_cycles}회(2τ₀·n = {2 * tau0 * n_cycles:.3e} s)가 "
                                                  f"t_max {time_grid.t_max:.3e} s 를 넘습니다")
            kicks = KickSchedule(tau0, n_cycles, self.flag(ks, 'enabled', 'kicks.enabled', True))
            sample_every_kick = self.flag(ks, 'sample_every_kick', 'kicks.sample_every_kick', False)

        occupations = None
        if 'occupations' in data:
            occ = data['occupations']
            if not isinstance(occ, list) or len(occ) != len(grid) + 1:
                raise self.fail('occupations', f"길이 {len(grid) + 1} 의 목록이어야 합니다")
            occupations = tuple(self.number({'v': v}, 'v', f'occupations[{i}]', minimum=0.0)
                                for i, v in enumerate(occ))

        output = OutputSpec()
        out = self.section(data, 'output', 'output', required=False)
        if out is not None:
            fmt = out.get('format')
            if fmt is not None and fmt not in FORMATS:
                raise self.fail('output.format', f"{FORMATS} 중 하나여야 합니다: {fmt!r}")
            path = out.get('path')
            if path is not None and not isinstance(path, str):
                raise self.fail('output.path', "문자열이어야 합니다")
            output = OutputSpec(fmt, path)

        scenario = Scenario(
            name=name.strip(), description=str(description), observable=observable,
            comparison=comparison, frame=frame, omega=omega, squeeze_rate=squeeze,
            spectrum=spectrum, grid=grid, time_grid=time_grid, kicks=kicks,
            sample_every_kick=sample_every_kick, occupations=occupations, output=output,
            grid_params=grid_params,
        )

        # 스펙트럼-격자 조합 검증 (Ohmic 양의 주파수, Explicit 길이)
        try:
            scenario.couplings()
        except EngineError as e:
            raise self.fail('spectrum', str(e))

        logger.debug(f"시나리오 파싱 완료: {scenario.name} ({self.source})")
        return scenario
