"""엔진 공통 예외"""
from typing import Optional


class EngineError(Exception):
    """수치 엔진 예외의 기본 클래스"""


class DimensionError(EngineError, ValueError):
    """행렬/벡터 차원 불일치"""


class DomainError(EngineError, ValueError):
    """정의역을 벗어난 입력 (예: Ohmic 스펙트럼의 비양수 주파수)"""


class NumericError(EngineError, ArithmeticError):
    """NaN/Inf 등 비유한 수치"""


class NumericDriftError(NumericError):
    """전달 행렬의 교환관계 보존(M·S·Mᵀ = S) 위반"""

    def __init__(self, message: str, defect: float, context: Optional[str] = None):
        self.defect = defect
        self.context = context
        prefix = f"[{context}] " if context else ""
        super().__init__(f"{prefix}{message}")

    def with_context(self, context: str) -> "NumericDriftError":
        return NumericDriftError(str(self), self.defect, context)


class IntegratorStepError(NumericError):
    """마스터 방정식 적분 중 trace 보존 실패"""


class InvalidObservableError(EngineError, ValueError):
    """해당 전달 행렬에서 정의되지 않는 관측량"""


class ScenarioConfigError(EngineError, ValueError):
    """시나리오 설정 파싱 오류 (파일/필드/라인 정보 포함)"""

    def __init__(self, message: str, source: str = "<dict>",
                 field: Optional[str] = None, line: Optional[int] = None):
        self.message = message
        self.source = source
        self.field = field
        self.line = line
        location = source
        if line is not None:
            location += f":{line}"
        if field:
            location += f" [{field}]"
        super().__init__(f"{location}: {message}")
