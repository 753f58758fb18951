"""
EQO 엔진 검증용 기준 해

- Lorentzian 저장소의 정확한 시스템 진폭
- 0 K Markov 마스터 방정식 (절단된 Fock 공간, 고정 스텝 RK4)
"""
import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import DimensionError, DomainError, IntegratorStepError
from .observables import TimeSeries

logger = logging.getLogger(__name__)

SERIES_THRESHOLD = 1e-4
TRACE_DRIFT_LIMIT = 1e-8
DEFAULT_FOCK_NMAX = 5
DEFAULT_LOCAL_ERROR = 1e-9


@dataclass(frozen=True)
class LorentzianExactParams:
    """정확해 파라미터 (Γ, η, D, ω)"""
    gamma_width: float
    eta: float
    density: float
    omega: float

    def __post_init__(self):
        for name in ("gamma_width", "eta", "density", "omega"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise DomainError(f"{name} 은(는) 양수여야 합니다: {value}")

    @property
    def theta_squared(self) -> float:
        """Θ² = 4πη²DΓ − Γ² (음수면 과감쇠)"""
        g = self.gamma_width
        return 4.0 * np.pi * self.eta ** 2 * self.density * g - g ** 2

    @property
    def unscaled_theta_squared(self) -> float:
        """4πη²D − Γ² (Γ 인자가 빠진 형태, Γ → 0 에서 |cos(Θt/2)|² 진동)"""
        return 4.0 * np.pi * self.eta ** 2 * self.density - self.gamma_width ** 2

    @property
    def theta(self) -> complex:
        return complex(np.sqrt(complex(self.theta_squared)))

    @property
    def markov_rate(self) -> float:
        """공명에서의 g(ω) = η 에 대한 λ = 2πDη²"""
        return markov_decay_rate(self.density, self.eta)


def lorentzian_exact_amplitude(p: LorentzianExactParams, t, theta_squared: Optional[float] = None) -> np.ndarray:
    """
    u(t)e^{−Γt/2} = e^{−Γt/2}[cos(Θt/2) + (Γ/Θ)sin(Θt/2)] (전역 위상 e^{−iωt} 제외)

    |Θt| < 1e-4 에서는 Θ² 에 대한 급수를 사용하여 Θ = 0 경계에서 연속이다.
    그 외에는 지수 형태로 계산하여 과감쇠 영역에서도 넘침이 없다.
    """
    times = np.asarray(t, dtype=float)
    if np.any(times < 0):
        raise DomainError("시간은 0 이상이어야 합니다")
    g = p.gamma_width
    theta_sq = p.theta_squared if theta_squared is None else float(theta_squared)
    theta = complex(np.sqrt(complex(theta_sq)))

    small = np.abs(theta) * times < SERIES_THRESHOLD

    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        q = theta_sq * times ** 2 / 4.0
        series = np.exp(-g * times / 2.0) * (
            (1.0 - q / 2.0 + q ** 2 / 24.0)
            + g * times / 2.0 * (1.0 - q / 6.0 + q ** 2 / 120.0)
        )
        ratio = g / (1j * theta) if theta != 0 else 0.0
        fast = np.exp((-g + 1j * theta) * times / 2.0)
        slow = np.exp((-g - 1j * theta) * times / 2.0)
        closed = 0.5 * ((1.0 + ratio) * fast + (1.0 - ratio) * slow)

    return np.where(small, series, closed)


def lorentzian_exact_survival(p: LorentzianExactParams, t, theta_squared: Optional[float] = None) -> np.ndarray:
    """
    Lorentzian 저장소에서의 정확한 잔류 확률 |u(t)e^{−Γt/2}|²

    Args:
        p: 정확해 파라미터
        t: 시간 (스칼라 또는 배열, s)
        theta_squared: Θ² 대체값 (생략 시 p.theta_squared)

    Returns:
        P(t) (스칼라 입력이면 float)
    """
    survival = np.abs(lorentzian_exact_amplitude(p, t, theta_squared)) ** 2
    return float(survival) if np.ndim(t) == 0 else survival


def markov_decay_rate(density: float, g_at_omega: float) -> float:
    """
    Markov 감쇠율 λ = 2πD g(ω)²

    Args:
        density: 모드 밀도 D (s)
        g_at_omega: 시스템 주파수에서의 결합 (s⁻¹)

    Returns:
        λ (s⁻¹)
    """
    if not density > 0:
        raise DomainError(f"모드 밀도는 양수여야 합니다: {density}")
    if g_at_omega < 0:
        raise DomainError(f"결합 세기는 0 이상이어야 합니다: {g_at_omega}")
    return 2.0 * np.pi * density * g_at_omega ** 2


# ----------------------------------------------------------------------------
# Markov 마스터 방정식
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class FockState:
    """절단된 Fock 공간 밀도 행렬 (차원 n_max + 1)"""
    rho: np.ndarray = field(repr=False)

    def __post_init__(self):
        rho = np.array(self.rho, dtype=np.complex128)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] < 2:
            raise DimensionError(f"밀도 행렬 모양이 잘못되었습니다: {rho.shape}")
        if np.max(np.abs(rho - rho.conj().T)) > 1e-12:
            raise DomainError("밀도 행렬이 에르미트가 아닙니다")
        if abs(np.trace(rho).real - 1.0) > 1e-10:
            raise DomainError(f"밀도 행렬 trace 가 1 이 아닙니다: {np.trace(rho).real}")
        if np.min(np.linalg.eigvalsh(rho)) < -1e-10:
            raise DomainError("밀도 행렬이 양의 준정부호가 아닙니다")
        object.__setattr__(self, "rho", rho)

    @classmethod
    def number_state(cls, n: int, n_max: int = DEFAULT_FOCK_NMAX) -> "FockState":
        if not 0 <= n <= n_max:
            raise DomainError(f"Fock 준위 {n} 이 절단 {n_max} 를 벗어납니다")
        rho = np.zeros((n_max + 1, n_max + 1), dtype=np.complex128)
        rho[n, n] = 1.0
        return cls(rho)

    @property
    def n_max(self) -> int:
        return self.rho.shape[0] - 1

    def population(self, level: int) -> float:
        return float(self.rho[level, level].real)


def _ladder(n_max: int):
    a = np.diag(np.sqrt(np.arange(1, n_max + 1, dtype=float)), k=1).astype(np.complex128)
    return a, a.conj().T, a.conj().T @ a


def lindblad_evolve(rate: float, rho0: FockState, t_grid: Sequence[float], omega: float = 0.0,
                    local_error: float = DEFAULT_LOCAL_ERROR, level: int = 1) -> TimeSeries:
    """
    0 K Markov 마스터 방정식 적분

    dρ/dt = −iω[a†a, ρ] + (λ/2)(2aρa† − a†aρ − ρa†a)

    Args:
        rate: 감쇠율 λ (s⁻¹, 0 이상)
        rho0: 초기 상태
        t_grid: 샘플 시각 (s, 0 이상, 엄격히 증가)
        omega: 시스템 주파수 (회전 좌표계에서는 0)
        local_error: 스텝당 국소 오차 목표
        level: 기록할 Fock 준위

    Returns:
        ⟨level|ρ(t)|level⟩ 시계열
    """
    if rate < 0:
        raise DomainError(f"감쇠율은 0 이상이어야 합니다: {rate}")
    times = np.asarray(t_grid, dtype=float)
    if times.ndim != 1 or np.any(times < 0) or (times.size > 1 and np.any(np.diff(times) <= 0)):
        raise DomainError("t_grid 는 0 이상이고 엄격히 증가해야 합니다")
    if not 0 <= level <= rho0.n_max:
        raise DomainError(f"준위 {level} 이 절단 {rho0.n_max} 를 벗어납니다")

    a, ad, num = _ladder(rho0.n_max)

    def rhs(rho: np.ndarray) -> np.ndarray:
        damping = 0.5 * rate * (2.0 * a @ rho @ ad - num @ rho - rho @ num)
        return -1j * omega * (num @ rho - rho @ num) + damping

    # 선형 생성자 노름 상한으로 RK4 국소 오차 (hν)^5/120 < local_error 가 되도록 스텝 선택
    bound = 2.0 * rho0.n_max * (abs(omega) + rate)
    h_max = (120.0 * local_error) ** 0.2 / bound if bound > 0 else np.inf

    rho = rho0.rho.copy()
    current = 0.0
    values = []
    n_steps_total = 0
    max_drift = 0.0
    for target in times:
        span = target - current
        if span > 0:
            n_steps = max(1, int(np.ceil(span / h_max))) if np.isfinite(h_max) else 1
            h = span / n_steps
            for _ in range(n_steps):
                k1 = rhs(rho)
                k2 = rhs(rho + 0.5 * h * k1)
                k3 = rhs(rho + 0.5 * h * k2)
                k4 = rhs(rho + h * k3)
                rho = rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
                drift = abs(np.trace(rho).real - 1.0)
                max_drift = max(max_drift, drift)
                if drift > TRACE_DRIFT_LIMIT:
                    logger.error(f"마스터 방정식 trace 이탈: {drift:.3e} (t={current:.3e})")
                    raise IntegratorStepError(f"trace 이탈 {drift:.3e} > {TRACE_DRIFT_LIMIT:.0e}")
            n_steps_total += n_steps
            current = target
        values.append(rho[level, level].real)

    logger.debug(f"마스터 방정식 적분 완료: {n_steps_total} 스텝, 최대 trace 이탈 {max_drift:.2e}")
    return TimeSeries(times, np.asarray(values), label="markov_master_equation",
                      metadata={"rate_per_s": rate, "rk4_steps": n_steps_total,
                                "max_trace_drift": max_drift},
                      time_scale=rate, scale_name="lambda_t")
