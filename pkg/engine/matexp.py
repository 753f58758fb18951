"""
복소 밀집 행렬 연산과 행렬 지수함수 커널

다른 모든 모듈이 이 모듈의 expm / mat_mul / one_norm 을 사용한다.
행렬은 complex128 numpy 배열(ComplexMatrix)로 다루며, 모든 함수는
입력을 변경하지 않고 새 배열을 반환한다.
"""
import logging
from typing import Tuple

import numpy as np

from .errors import DimensionError, NumericError

logger = logging.getLogger(__name__)

ComplexMatrix = np.ndarray

DEFAULT_TOL = 1e-13
MAX_TOL = 1e-6

# 대각 Padé 근사 계수 (차수 13 기준)
PADE_COEFFS = (
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
)

# 차수별 1-노름 임계값 (단위 반올림 오차 기준)
PADE_THETA = {
    3: 1.495585217958292e-2,
    5: 2.539398330063230e-1,
    7: 9.504178996162932e-1,
    9: 2.097847961257068e0,
    13: 5.371920351148152e0,
}

_LOW_ORDER_COEFFS = {
    3: (120.0, 60.0, 12.0, 1.0),
    5: (30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0),
    7: (17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0),
    9: (17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
        2162160.0, 110880.0, 3960.0, 90.0, 1.0),
}


def as_complex_matrix(a, name: str = "A") -> ComplexMatrix:
    """
    입력을 검증된 ComplexMatrix 로 변환

    Args:
        a: 2차원 배열로 변환 가능한 값
        name: 오류 메시지에 쓰일 이름

    Returns:
        complex128 2차원 배열 (rows, cols ≥ 1, 모든 원소 유한)
    """
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise DimensionError(f"{name}: 2차원 행렬이 아닙니다 (shape={m.shape})")
    if not np.all(np.isfinite(m)):
        raise NumericError(f"{name}: NaN/Inf 원소가 포함되어 있습니다")
    return m


def _require_square(m: ComplexMatrix, name: str) -> None:
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"{name}: 정방행렬이 아닙니다 (shape={m.shape})")


def one_norm(a) -> float:
    """최대 열 합 노름 ‖A‖₁"""
    m = np.asarray(a, dtype=np.complex128)
    if m.size == 0:
        return 0.0
    return float(np.max(np.sum(np.abs(m), axis=0)))


def mat_mul(a, b) -> ComplexMatrix:
    """
    행렬 곱 A·B

    Args:
        a: (n, k) 행렬
        b: (k, m) 행렬

    Returns:
        (n, m) 곱 행렬
    """
    ma = as_complex_matrix(a, "A")
    mb = as_complex_matrix(b, "B")
    if ma.shape[1] != mb.shape[0]:
        raise DimensionError(f"곱셈 차원 불일치: {ma.shape} · {mb.shape}")
    product = ma @ mb
    if not np.all(np.isfinite(product)):
        raise NumericError("행렬 곱 결과에 NaN/Inf 가 발생했습니다")
    return product


def _pade_low(a: ComplexMatrix, order: int, ident: ComplexMatrix) -> Tuple[ComplexMatrix, ComplexMatrix]:
    c = _LOW_ORDER_COEFFS[order]
    a2 = a @ a
    powers = [ident, a2]
    for _ in range(2, order // 2 + 1):
        powers.append(powers[-1] @ a2)
    odd = sum(c[2 * k + 1] * powers[k] for k in range(order // 2 + 1))
    even = sum(c[2 * k] * powers[k] for k in range(order // 2 + 1))
    return a @ odd, even


def _pade13(a: ComplexMatrix, ident: ComplexMatrix) -> Tuple[ComplexMatrix, ComplexMatrix]:
    b = PADE_COEFFS
    a2 = a @ a
    a4 = a2 @ a2
    a6 = a2 @ a4
    u = a @ (a6 @ (b[13] * a6 + b[11] * a4 + b[9] * a2)
             + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident)
    v = (a6 @ (b[12] * a6 + b[10] * a4 + b[8] * a2)
         + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident)
    return u, v


def _expm_pade(m: ComplexMatrix) -> ComplexMatrix:
    n = m.shape[0]
    ident = np.eye(n, dtype=np.complex128)
    norm = one_norm(m)

    for order in (3, 5, 7, 9):
        if norm <= PADE_THETA[order]:
            u, v = _pade_low(m, order, ident)
            logger.debug(f"expm: Padé 차수 {order}, 스케일링 없음 (‖A‖₁={norm:.3e})")
            return np.linalg.solve(v - u, v + u)

    scale = max(0, int(np.ceil(np.log2(norm / PADE_THETA[13]))))
    scaled = m / (2.0 ** scale)
    u, v = _pade13(scaled, ident)
    result = np.linalg.solve(v - u, v + u)
    for _ in range(scale):
        result = result @ result
    logger.debug(f"expm: Padé 차수 13, 제곱 {scale}회 (‖A‖₁={norm:.3e})")
    return result


def _expm_eig(m: ComplexMatrix) -> ComplexMatrix:
    # 대각화 가능한 행렬에서만 정확하다. 교차 검증용 대체 백엔드.
    w, v = np.linalg.eig(m)
    return (v * np.exp(w)) @ np.linalg.inv(v)


def expm(a, tol: float = DEFAULT_TOL, method: str = "pade") -> ComplexMatrix:
    """
    행렬 지수함수 e^A

    스케일링-제곱 + 차수 13 대각 Padé 근사. 스케일링 횟수는 1-노름으로 정한다.

    Args:
        a: 정방 복소 행렬
        tol: 허용 상대 오차, (0, 1e-6] 범위
        method: 'pade' (기본) 또는 'eig' (고유분해 기반 교차 검증용)

    Returns:
        e^A
    """
    if not (0.0 < tol <= MAX_TOL):
        raise ValueError(f"tol 은 (0, {MAX_TOL}] 범위여야 합니다: {tol}")
    m = as_complex_matrix(a, "A")
    _require_square(m, "A")

    if method == "pade":
        result = _expm_pade(m)
    elif method == "eig":
        result = _expm_eig(m)
    else:
        raise ValueError(f"지원하지 않는 expm 방식: {method}")

    if not np.all(np.isfinite(result)):
        raise NumericError(f"expm 결과에 NaN/Inf 가 발생했습니다 (‖A‖₁={one_norm(m):.3e})")
    return result
