"""
전달 행렬 e^{−RS}, 패리티 킥, 킥 주기 합성, 스트로보스코픽 거듭제곱

Heisenberg 표기: Λᵀ(t) = Λᵀ·M. 진화 U = U₂U₁ (U₁ 먼저) 에 대해
전달 행렬은 M = M₁·M₂ 이다. 즉 먼저 적용된 구간의 행렬이 왼쪽에 온다.
"""
import logging
from dataclasses import dataclass, field
from typing import Iterator, Optional, Tuple

import numpy as np

from .errors import DomainError, NumericDriftError
from .matexp import DEFAULT_TOL, ComplexMatrix, expm, mat_mul
from .model import HamiltonianSpec, ModeLayout, RMatrix, assemble_r, symplectic_form

logger = logging.getLogger(__name__)

DRIFT_TOL = 1e-9


def _apply_symplectic(m: ComplexMatrix, n_modes: int) -> ComplexMatrix:
    # M·S 를 블록 교환으로 계산
    return np.hstack([-m[:, n_modes:], m[:, :n_modes]])


@dataclass(frozen=True)
class TransferMatrix:
    """Bogoliubov 변환 M (Λᵀ(t) = Λᵀ·M)"""
    layout: ModeLayout
    data: ComplexMatrix = field(repr=False)

    @classmethod
    def identity(cls, layout: ModeLayout) -> "TransferMatrix":
        return cls(layout, np.eye(layout.size, dtype=np.complex128))

    def then(self, later: "TransferMatrix") -> "TransferMatrix":
        """self 구간 이후 later 구간을 이어 붙인 전달 행렬"""
        return TransferMatrix(self.layout, mat_mul(self.data, later.data))

    def blocks(self) -> Tuple[ComplexMatrix, ComplexMatrix, ComplexMatrix, ComplexMatrix]:
        """[[A, B], [B', A']]"""
        m = self.layout.n_modes
        d = self.data
        return d[:m, :m], d[:m, m:], d[m:, :m], d[m:, m:]

    def symplectic_defect(self) -> float:
        """max |M·S·Mᵀ − S| (절대값)"""
        m = self.layout.n_modes
        msmt = _apply_symplectic(self.data, m) @ self.data.T
        return float(np.max(np.abs(msmt - symplectic_form(self.layout))))

    def drift_measures(self) -> Tuple[float, float]:
        """(절대 위반량, max(1, max|M_ij|²) 로 나눈 위반량)"""
        absolute = self.symplectic_defect()
        scale = max(1.0, float(np.max(np.abs(self.data))) ** 2)
        return absolute, absolute / scale

    def scaled_symplectic_defect(self) -> float:
        """원소 크기로 정규화한 교환관계 위반량 (스퀴징으로 커진 행렬용)"""
        return self.drift_measures()[1]

    def conjugation_defect(self) -> float:
        """max(|A' − conj(A)|, |B' − conj(B)|)"""
        a, b, b2, a2 = self.blocks()
        return float(max(np.max(np.abs(a2 - a.conj())), np.max(np.abs(b2 - b.conj()))))

    def squeezing_block_norm(self) -> float:
        """생성/소멸 혼합 블록(B, B')의 최대 원소 크기"""
        _, b, b2, _ = self.blocks()
        return float(max(np.max(np.abs(b)), np.max(np.abs(b2))))

    def check_drift(self, tol: float = DRIFT_TOL, context: Optional[str] = None) -> Tuple[float, float]:
        """
        교환관계 보존 확인, 위반 시 NumericDriftError (재정규화하지 않음)

        판정은 정규화 위반량 기준. 반환값은 (절대, 정규화) 위반량
        """
        absolute, defect = self.drift_measures()
        if defect > tol:
            logger.error(f"교환관계 보존 위반: {defect:.3e} > {tol:.1e}")
            raise NumericDriftError(f"M·S·Mᵀ ≠ S (defect={defect:.3e}, tol={tol:.1e})", defect, context)
        return absolute, defect


@dataclass(frozen=True)
class KickSchedule:
    """등간격 패리티 킥 스케줄 (주기 2τ₀)"""
    tau0: float
    n_cycles: int
    kicks_enabled: bool = True

    def __post_init__(self):
        if not self.tau0 > 0:
            raise DomainError(f"τ₀ 는 양수여야 합니다: {self.tau0}")
        if self.n_cycles < 1:
            raise DomainError(f"n_cycles 는 1 이상이어야 합니다: {self.n_cycles}")

    @property
    def cycle_duration(self) -> float:
        return 2.0 * self.tau0

    def boundary_times(self) -> np.ndarray:
        """주기 경계 t = 2kτ₀, k = 1..n_cycles"""
        return self.cycle_duration * np.arange(1, self.n_cycles + 1)


def transfer(r1: RMatrix, t: float, tol: float = DEFAULT_TOL) -> TransferMatrix:
    """
    단위 시간 생성자 R₁ 로부터 시간 t 의 전달 행렬 e^{−t·R₁S}

    Args:
        r1: t = 1 로 조립한 R
        t: 시간 (s, 0 이상)
        tol: expm 허용 오차

    Returns:
        TransferMatrix
    """
    if t < 0:
        raise DomainError(f"시간은 0 이상이어야 합니다: {t}")
    layout = r1.layout
    generator = _apply_symplectic(r1.data, layout.n_modes)
    return TransferMatrix(layout, expm(-t * generator, tol))


def parity_matrix(layout: ModeLayout) -> TransferMatrix:
    """P = e^{−iπa†a}: 시스템 a, a† 부호 반전"""
    diag = np.ones(layout.size, dtype=np.complex128)
    diag[layout.creation_index(0)] = -1.0
    diag[layout.annihilation_index(0)] = -1.0
    return TransferMatrix(layout, np.diag(diag))


def kick_cycle(h: HamiltonianSpec, layout: ModeLayout, tau0: float,
               kicks_enabled: bool = True, tol: float = DEFAULT_TOL) -> TransferMatrix:
    """
    2τ₀ 한 주기의 전달 행렬

    Y = P e^{−iH_Iτ₀} P e^{−iH_Iτ₀} = e^{−iτ₀(H₀ − H_int)} e^{−iτ₀(H₀ + H_int)} 이므로
    +H_int 구간이 먼저 적용되고 Heisenberg 곱은 M₊·M₋ 이다.
    kicks_enabled=False 이면 두 구간 모두 +H_int (평범한 2τ₀ 진화).

    Args:
        h: 해밀토니안 사양 (부호는 무시하고 +1/−1 을 새로 설정)
        layout: 모드 배치
        tau0: 킥 간격 (s)
        kicks_enabled: 패리티 킥 적용 여부
        tol: expm 허용 오차

    Returns:
        한 주기 TransferMatrix
    """
    if not tau0 > 0:
        raise DomainError(f"τ₀ 는 양수여야 합니다: {tau0}")
    first = transfer(assemble_r(h.with_sign(1), layout, 1.0), tau0, tol)
    second_sign = -1 if kicks_enabled else 1
    second = transfer(assemble_r(h.with_sign(second_sign), layout, 1.0), tau0, tol)
    return first.then(second)


def stroboscopic(m_cycle: TransferMatrix, n: int) -> TransferMatrix:
    """
    M_cycleⁿ (반복 제곱)

    Args:
        m_cycle: 한 주기 전달 행렬
        n: 주기 수 (0 이면 항등)

    Returns:
        n 주기 전달 행렬
    """
    if n < 0:
        raise DomainError(f"주기 수는 0 이상이어야 합니다: {n}")
    result = np.eye(m_cycle.layout.size, dtype=np.complex128)
    base = m_cycle.data
    while n:
        if n & 1:
            result = mat_mul(result, base)
        n >>= 1
        if n:
            base = mat_mul(base, base)
    return TransferMatrix(m_cycle.layout, result)


def stroboscopic_series(m_cycle: TransferMatrix, n_cycles: int,
                        drift_tol: float = DRIFT_TOL) -> Iterator[Tuple[int, TransferMatrix]]:
    """k = 1..n_cycles 에 대해 (k, M_cycleᵏ) 를 누적 곱으로 생성하며 드리프트 감시"""
    current = m_cycle
    for k in range(1, n_cycles + 1):
        if k > 1:
            current = current.then(m_cycle)
        current.check_drift(drift_tol)
        yield k, current
