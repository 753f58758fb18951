"""
모드 배치, 스펙트럼 밀도로부터의 결합 상수, R 행렬 조립

Λᵀ = (a†, b₁†, …, b_N†, a, b₁, …, b_N) 순서를 사용한다.
지수 (1/2)ΛᵀRΛ 는 iHt/ħ 와 같도록 조립하며, 모든 시뮬레이션은
펌프 주파수 ω 로 회전하는 좌표계(δ₀ = 0, 저장소 디튜닝 ω_j − ω)에서 수행한다.
주파수/비율은 Hz 로 표기된 값을 그대로 각주파수로 사용한다 (2π 인자 없음).
"""
import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from .errors import DimensionError, DomainError
from .matexp import ComplexMatrix

logger = logging.getLogger(__name__)

SYSTEM_MODE = 0
GRID_UNIFORMITY_RTOL = 1e-9


@dataclass(frozen=True)
class ModeLayout:
    """시스템 모드 1개 + 저장소 모드 N개의 인덱스 규약"""
    n_bath: int

    def __post_init__(self):
        if self.n_bath < 0:
            raise DimensionError(f"저장소 모드 수는 0 이상이어야 합니다: {self.n_bath}")

    @property
    def n_modes(self) -> int:
        """전체 모드 수 M = N + 1"""
        return self.n_bath + 1

    @property
    def size(self) -> int:
        """Λ 벡터 길이 2M"""
        return 2 * self.n_modes

    def creation_index(self, mode: int) -> int:
        self._check_mode(mode)
        return mode

    def annihilation_index(self, mode: int) -> int:
        self._check_mode(mode)
        return self.n_modes + mode

    def _check_mode(self, mode: int) -> None:
        if not 0 <= mode < self.n_modes:
            raise DimensionError(f"모드 인덱스 범위 초과: {mode} (M={self.n_modes})")


# ----------------------------------------------------------------------------
# 주파수 격자
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class BathGrid:
    """등간격 저장소 주파수 격자"""
    frequencies: Tuple[float, ...]

    def __post_init__(self):
        freqs = np.asarray(self.frequencies, dtype=float)
        if freqs.ndim != 1 or freqs.size == 0:
            raise DimensionError("저장소 주파수 격자가 비어 있습니다")
        if not np.all(np.isfinite(freqs)):
            raise DomainError("저장소 주파수에 NaN/Inf 가 포함되어 있습니다")
        if freqs.size > 1:
            steps = np.diff(freqs)
            if np.any(steps <= 0):
                raise DomainError("저장소 주파수는 엄격히 증가해야 합니다")
            if np.max(np.abs(steps - steps.mean())) > GRID_UNIFORMITY_RTOL * abs(steps.mean()):
                raise DomainError("저장소 주파수 간격이 균일하지 않습니다")
        object.__setattr__(self, "frequencies", tuple(float(f) for f in freqs))

    @classmethod
    def uniform(cls, first: float, spacing: float, count: int) -> "BathGrid":
        """ω_j = first + (j-1)·spacing, j = 1..count"""
        if count < 1 or spacing <= 0:
            raise DomainError(f"잘못된 격자 설정: first={first}, spacing={spacing}, count={count}")
        return cls(tuple(first + spacing * np.arange(count)))

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.frequencies, dtype=float)

    @property
    def spacing(self) -> float:
        """Δω (모드가 1개면 정의되지 않으므로 DomainError)"""
        if len(self.frequencies) < 2:
            raise DomainError("모드가 1개인 격자에는 간격이 정의되지 않습니다")
        return float(np.mean(np.diff(self.array)))

    @property
    def density(self) -> float:
        """모드 밀도 D = 1/Δω"""
        return 1.0 / self.spacing

    def __len__(self) -> int:
        return len(self.frequencies)


# ----------------------------------------------------------------------------
# 스펙트럼 밀도
# ----------------------------------------------------------------------------

def _require_positive(**values: float) -> None:
    for name, value in values.items():
        if not value > 0:
            raise DomainError(f"{name} 은(는) 양수여야 합니다: {value}")


@dataclass(frozen=True)
class LorentzianSpectrum:
    """g(ω_j) = ηΓ / √((ω_j − ω_c)² + Γ²), ω_c 미지정 시 시스템 주파수"""
    gamma_width: float
    eta: float
    omega_center: Optional[float] = None

    def __post_init__(self):
        _require_positive(gamma_width=self.gamma_width, eta=self.eta)
        if self.omega_center is not None:
            _require_positive(omega_center=self.omega_center)

    def couplings(self, grid: BathGrid, omega: float) -> np.ndarray:
        center = omega if self.omega_center is None else self.omega_center
        detuning = grid.array - center
        return self.eta * self.gamma_width / np.sqrt(detuning ** 2 + self.gamma_width ** 2)


@dataclass(frozen=True)
class OhmicSpectrum:
    """g(ω_j) = √(ξ ω_j) e^{−ω_j/ω_c}"""
    xi: float
    omega_cutoff: float

    def __post_init__(self):
        _require_positive(xi=self.xi, omega_cutoff=self.omega_cutoff)

    def couplings(self, grid: BathGrid, omega: float) -> np.ndarray:
        freqs = grid.array
        if np.any(freqs <= 0):
            raise DomainError("Ohmic 스펙트럼은 양의 저장소 주파수가 필요합니다")
        return np.sqrt(self.xi * freqs) * np.exp(-freqs / self.omega_cutoff)


@dataclass(frozen=True)
class FlatSpectrum:
    """상수 결합 γ"""
    gamma: float

    def __post_init__(self):
        _require_positive(gamma=self.gamma)

    def couplings(self, grid: BathGrid, omega: float) -> np.ndarray:
        return np.full(len(grid), self.gamma, dtype=float)


@dataclass(frozen=True)
class ExplicitSpectrum:
    """결합 상수 목록을 그대로 사용"""
    values: Tuple[float, ...]

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        if any(not np.isfinite(v) or v < 0 for v in vals):
            raise DomainError("Explicit 결합 상수는 0 이상의 유한값이어야 합니다")
        object.__setattr__(self, "values", vals)

    def couplings(self, grid: BathGrid, omega: float) -> np.ndarray:
        if len(self.values) != len(grid):
            raise DimensionError(f"결합 상수 수({len(self.values)})와 격자 크기({len(grid)}) 불일치")
        return np.asarray(self.values, dtype=float)


SpectrumSpec = Union[LorentzianSpectrum, OhmicSpectrum, FlatSpectrum, ExplicitSpectrum]


def coupling_from_spectrum(spec: SpectrumSpec, grid: BathGrid, omega: float) -> np.ndarray:
    """
    스펙트럼으로부터 저장소 모드별 결합 상수 γ_j 계산

    Args:
        spec: 스펙트럼 종류와 파라미터
        grid: 저장소 주파수 격자
        omega: 시스템(펌프) 주파수

    Returns:
        길이 N 의 γ_j 배열
    """
    gammas = spec.couplings(grid, omega)
    logger.debug(f"{type(spec).__name__}: γ_j 범위 [{gammas.min():.4e}, {gammas.max():.4e}]")
    return gammas


def coupling_at(spec: SpectrumSpec, grid: BathGrid, omega: float) -> float:
    """시스템 주파수에서의 결합 g(ω) (Explicit 은 격자 위 선형 보간)"""
    if isinstance(spec, ExplicitSpectrum):
        return float(np.interp(omega, grid.array, spec.couplings(grid, omega)))
    node = BathGrid((float(omega),))
    return float(spec.couplings(node, omega)[0])


# ----------------------------------------------------------------------------
# 해밀토니안과 R 행렬
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class HamiltonianSpec:
    """
    회전 좌표계 이차 해밀토니안

    H/ħ = δ₀a†a − (i/2)ε[(a†)² − a²] + Σ(ω_j − ω)b_j†b_j ± Σγ_j(a†b_j + b_j†a)
    """
    system_detuning: float
    squeeze_rate: float
    bath_detunings: Tuple[float, ...]
    couplings: Tuple[float, ...]
    interaction_sign: int = 1

    def __post_init__(self):
        detunings = tuple(float(d) for d in self.bath_detunings)
        gammas = tuple(float(g) for g in self.couplings)
        if len(detunings) != len(gammas):
            raise DimensionError(f"디튜닝 수({len(detunings)})와 결합 수({len(gammas)}) 불일치")
        if self.interaction_sign not in (1, -1):
            raise DomainError(f"상호작용 부호는 +1 또는 -1 이어야 합니다: {self.interaction_sign}")
        values = (self.system_detuning, self.squeeze_rate) + detunings + gammas
        if not all(np.isfinite(v) for v in values):
            raise DomainError("해밀토니안 파라미터에 NaN/Inf 가 포함되어 있습니다")
        object.__setattr__(self, "bath_detunings", detunings)
        object.__setattr__(self, "couplings", gammas)

    @classmethod
    def rotating_frame(cls, squeeze_rate: float, grid: BathGrid, omega: float,
                       couplings: Sequence[float], interaction_sign: int = 1) -> "HamiltonianSpec":
        """펌프 주파수 ω 회전 좌표계 (δ₀ = 0)"""
        return cls(0.0, squeeze_rate, tuple(grid.array - omega), tuple(couplings), interaction_sign)

    @classmethod
    def lab_frame(cls, grid: BathGrid, omega: float, couplings: Sequence[float],
                  interaction_sign: int = 1) -> "HamiltonianSpec":
        """실험실 좌표계 (δ₀ = ω, 저장소 주파수 ω_j, 스퀴징 없음)"""
        return cls(float(omega), 0.0, tuple(grid.frequencies), tuple(couplings), interaction_sign)

    @property
    def n_bath(self) -> int:
        return len(self.couplings)

    def layout(self) -> ModeLayout:
        return ModeLayout(self.n_bath)

    def with_sign(self, sign: int) -> "HamiltonianSpec":
        return HamiltonianSpec(self.system_detuning, self.squeeze_rate,
                               self.bath_detunings, self.couplings, sign)

    def decoupled(self) -> "HamiltonianSpec":
        return HamiltonianSpec(self.system_detuning, self.squeeze_rate,
                               self.bath_detunings, (0.0,) * self.n_bath, self.interaction_sign)


@dataclass(frozen=True)
class RMatrix:
    """대칭 2M×2M 지수 행렬 R = [[E, P], [Pᵀ, C]]"""
    layout: ModeLayout
    data: ComplexMatrix = field(repr=False)

    @property
    def e_block(self) -> ComplexMatrix:
        m = self.layout.n_modes
        return self.data[:m, :m]

    @property
    def p_block(self) -> ComplexMatrix:
        m = self.layout.n_modes
        return self.data[:m, m:]

    @property
    def c_block(self) -> ComplexMatrix:
        m = self.layout.n_modes
        return self.data[m:, m:]

    def scaled(self, factor: float) -> "RMatrix":
        return RMatrix(self.layout, self.data * factor)

    def physicality_defect(self) -> float:
        """max(|R − Rᵀ|, |P† + P|, |C + conj(E)|)"""
        e, p, c = self.e_block, self.p_block, self.c_block
        return float(max(
            np.max(np.abs(self.data - self.data.T)),
            np.max(np.abs(p.conj().T + p)),
            np.max(np.abs(c + e.conj())),
        ))


def assemble_r(h: HamiltonianSpec, layout: ModeLayout, t: float) -> RMatrix:
    """
    (1/2)ΛᵀRΛ = iH t/ħ 가 되도록 R 조립

    Args:
        h: 해밀토니안 사양
        layout: 모드 배치 (layout.n_bath == len(h.couplings))
        t: 시간 (s, 0 이상)

    Returns:
        RMatrix
    """
    if t < 0:
        raise DomainError(f"시간은 0 이상이어야 합니다: {t}")
    if h.n_bath != layout.n_bath:
        raise DimensionError(f"결합 상수 수({h.n_bath})와 저장소 모드 수({layout.n_bath}) 불일치")

    m = layout.n_modes
    gammas = np.asarray(h.couplings, dtype=float)

    p = np.zeros((m, m), dtype=np.complex128)
    p[0, 0] = 1j * h.system_detuning * t
    idx = np.arange(1, m)
    p[idx, idx] = 1j * np.asarray(h.bath_detunings, dtype=float) * t
    p[0, 1:] = 1j * h.interaction_sign * gammas * t
    p[1:, 0] = 1j * h.interaction_sign * gammas * t

    e = np.zeros((m, m), dtype=np.complex128)
    e[0, 0] = h.squeeze_rate * t
    c = -e.conj()

    data = np.block([[e, p], [p.T, c]])
    return RMatrix(layout, data)


def symplectic_form(layout: ModeLayout) -> ComplexMatrix:
    """S = [[0, I], [−I, 0]]"""
    m = layout.n_modes
    ident = np.eye(m, dtype=np.complex128)
    zero = np.zeros((m, m), dtype=np.complex128)
    return np.block([[zero, ident], [-ident, zero]])
