"""
전달 행렬과 초기 가우시안 모멘트로부터 관측량 계산

a(t) = Σ_k (A_k a_k + B_k a_k†) 의 계수는 M 의 시스템 소멸 열에서 읽는다:
A_k = M[M+k, M], B_k = M[k, M].
사분위 규약 X = a + a† (진공 분산 1), P = i(a† − a).
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Sequence, Tuple

import numpy as np

from .errors import DimensionError, DomainError, InvalidObservableError, NumericError
from .model import ModeLayout
from .propagator import TransferMatrix

logger = logging.getLogger(__name__)

EXCITATION_CONSERVING_ATOL = 1e-10


@dataclass(frozen=True)
class InitialMoments:
    """평균 0 가우시안 곱 상태의 모드별 평균 점유수 n̄_k"""
    occupations: Tuple[float, ...]

    def __post_init__(self):
        occ = tuple(float(n) for n in self.occupations)
        if not occ:
            raise DimensionError("점유수 목록이 비어 있습니다")
        if any(not np.isfinite(n) or n < 0 for n in occ):
            raise DomainError("평균 점유수는 0 이상의 유한값이어야 합니다")
        object.__setattr__(self, "occupations", occ)

    @classmethod
    def vacuum(cls, layout: ModeLayout) -> "InitialMoments":
        return cls((0.0,) * layout.n_modes)

    @classmethod
    def thermal(cls, layout: ModeLayout, occupations: Sequence[float]) -> "InitialMoments":
        moments = cls(tuple(occupations))
        if len(moments.occupations) != layout.n_modes:
            raise DimensionError(f"점유수 수({len(moments.occupations)})와 모드 수({layout.n_modes}) 불일치")
        return moments

    @property
    def noise(self) -> np.ndarray:
        """2n̄_k + 1"""
        return 2.0 * np.asarray(self.occupations) + 1.0


@dataclass
class TimeSeries:
    """샘플링된 관측량 시계열"""
    times: np.ndarray
    values: np.ndarray
    label: str
    metadata: Dict[str, Any] = field(default_factory=dict)
    time_scale: float = 1.0
    scale_name: str = "t"

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.times.shape != self.values.shape or self.times.ndim != 1:
            raise DimensionError(f"times/values 길이 불일치: {self.times.shape} vs {self.values.shape}")
        if self.times.size > 1 and np.any(np.diff(self.times) <= 0):
            raise DomainError(f"{self.label}: 시간은 엄격히 증가해야 합니다")
        if not np.all(np.isfinite(self.values)):
            raise NumericError(f"{self.label}: 값에 NaN/Inf 가 포함되어 있습니다")

    @property
    def dimensionless_times(self) -> np.ndarray:
        """time_scale·t (εt 또는 λt)"""
        return self.time_scale * self.times

    def __len__(self) -> int:
        return int(self.times.size)


def system_coefficients(m: TransferMatrix) -> Tuple[np.ndarray, np.ndarray]:
    """a(t) 의 (A_k, B_k) 계수 배열"""
    n = m.layout.n_modes
    column = m.data[:, m.layout.annihilation_index(0)]
    return column[n:], column[:n]


def _check_moments(m: TransferMatrix, moments: InitialMoments) -> None:
    if len(moments.occupations) != m.layout.n_modes:
        raise DimensionError(f"점유수 수({len(moments.occupations)})와 모드 수({m.layout.n_modes}) 불일치")


def quadrature_variance(m: TransferMatrix, moments: InitialMoments) -> float:
    """
    ⟨(ΔX)²⟩, X = a(t) + a(t)†

    Args:
        m: 전달 행렬
        moments: 초기 점유수

    Returns:
        Σ_k |A_k + conj(B_k)|²(2n̄_k + 1)
    """
    _check_moments(m, moments)
    a, b = system_coefficients(m)
    return float(np.sum(np.abs(a + b.conj()) ** 2 * moments.noise))


def momentum_variance(m: TransferMatrix, moments: InitialMoments) -> float:
    """⟨(ΔP)²⟩, P = i(a† − a): Σ_k |conj(B_k) − A_k|²(2n̄_k + 1)"""
    _check_moments(m, moments)
    a, b = system_coefficients(m)
    return float(np.sum(np.abs(b.conj() - a) ** 2 * moments.noise))


def excitation_norm(m: TransferMatrix) -> float:
    """Σ_k |A_k|² (들뜸 보존 진화에서 1)"""
    a, _ = system_coefficients(m)
    return float(np.sum(np.abs(a) ** 2))


def survival_probability(m: TransferMatrix, atol: float = EXCITATION_CONSERVING_ATOL) -> float:
    """
    |1⟩_sys ⊗ 진공 초기 상태의 |1⟩ 잔류 확률 P(t) = |u(t)|²

    들뜸 수를 보존하는 진화(ε = 0)에서만 정의된다.

    Args:
        m: 전달 행렬
        atol: 생성/소멸 혼합 블록 허용 크기

    Returns:
        |u(t)|²
    """
    mixing = m.squeezing_block_norm()
    if mixing > atol:
        raise InvalidObservableError(f"스퀴징 블록이 0 이 아닙니다 (max={mixing:.3e}); 잔류 확률은 ε = 0 에서만 정의됩니다")
    idx = m.layout.annihilation_index(0)
    return float(abs(m.data[idx, idx]) ** 2)


def ideal_squeezed_variance(squeeze_rate: float, times) -> np.ndarray:
    """저장소가 없을 때의 진공 스퀴징 분산 e^{−2εt}"""
    return np.exp(-2.0 * squeeze_rate * np.asarray(times, dtype=float))
