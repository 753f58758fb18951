from abc import ABC, abstractmethod
import logging
from typing import Optional

import numpy as np

from config.sim_config import SimulationConfig
from engine.observables import TimeSeries

logger = logging.getLogger(__name__)


class BaseSolver(ABC):
    """시계열 솔버 기본 클래스"""

    label = "solver"

    def __init__(self, config: Optional[SimulationConfig] = None):
        self.config = config or SimulationConfig()
        self._cache = {}

    @abstractmethod
    def solve(self, scenario, times: Optional[np.ndarray] = None) -> TimeSeries:
        """시나리오를 주어진 시각(생략 시 시나리오 기본 격자)에서 풀어 시계열 반환"""
        pass

    def clear(self) -> None:
        """캐시된 전달 행렬 해제"""
        if self._cache:
            logger.debug(f"{self.label}: 캐시 {len(self._cache)}개 해제")
        self._cache.clear()

    def __enter__(self):
        """Context manager 진입"""
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        """Context manager 종료"""
        self.clear()
