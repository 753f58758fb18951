import os
import re
import json
import logging
from typing import Dict, Optional

import yaml

from engine.errors import ScenarioConfigError
from processors.presets import PRESETS, get_preset
from processors.scenario import Scenario

logger = logging.getLogger(__name__)

SCENARIO_SUFFIXES = ('.json', '.yaml', '.yml')


def _locate_field(text: str, field: Optional[str]) -> Optional[int]:
    """필드 경로의 마지막 키가 처음 등장하는 줄 번호 (1부터)"""
    if not field:
        return None
    key = re.sub(r'\[\d+\]$', '', field.split('.')[-1])
    pattern = re.compile(r'(^|[\s{,"\'])' + re.escape(key) + r'["\']?\s*:')
    for number, line in enumerate(text.splitlines(), start=1):
        if pattern.search(line):
            return number
    return None


class ScenarioLoader:
    """시나리오 파일(JSON/YAML) 로더"""

    def __init__(self, base_path: str = "scenarios"):
        self.base_path = base_path
        self.scenarios: Dict[str, Scenario] = {}

    def parse_text(self, text: str, source: str) -> Scenario:
        """
        시나리오 텍스트 파싱

        Args:
            text: 파일 내용
            source: 진단 메시지에 표시할 출처 (파일 경로)

        Returns:
            Scenario
        """
        if source.lower().endswith(('.yaml', '.yml')):
            try:
                data = yaml.safe_load(text)
            except yaml.YAMLError as e:
                mark = getattr(e, 'problem_mark', None)
                line = mark.line + 1 if mark is not None else None
                raise ScenarioConfigError(f"YAML 구문 오류: {getattr(e, 'problem', e)}", source=source, line=line)
        else:
            try:
                data = json.loads(text)
            except json.JSONDecodeError as e:
                raise ScenarioConfigError(f"JSON 구문 오류: {e.msg} (열 {e.colno})", source=source, line=e.lineno)

        try:
            return Scenario.from_dict(data, source=source)
        except ScenarioConfigError as e:
            if e.line is not None:
                raise
            raise ScenarioConfigError(e.message, source=source, field=e.field,
                                      line=_locate_field(text, e.field)) from None

    def load_scenario(self, file_path: str) -> Scenario:
        """
        시나리오 파일 로드 (캐시 사용)

        Args:
            file_path: .json / .yaml / .yml 경로

        Returns:
            Scenario
        """
        cache_key = os.path.abspath(file_path)
        if cache_key in self.scenarios:
            return self.scenarios[cache_key]

        try:
            with open(file_path, 'r', encoding='utf-8') as f:
                scenario = self.parse_text(f.read(), file_path)
            self.scenarios[cache_key] = scenario
            logger.info(f"시나리오 로드 성공: {file_path} ({scenario.name})")
            return scenario
        except FileNotFoundError:
            logger.error(f"시나리오 파일을 찾을 수 없음: {file_path}")
            raise
        except ScenarioConfigError as e:
            logger.error(f"시나리오 설정 오류: {str(e)}")
            raise

    def resolve(self, target: str) -> Scenario:
        """
        프리셋 이름 또는 파일 경로를 Scenario 로 변환

        파일 경로가 아니면 base_path 아래에서 '<target>.json|.yaml|.yml' 을 찾는다.
        """
        if target in PRESETS:
            return get_preset(target)
        if os.path.isfile(target):
            return self.load_scenario(target)
        for suffix in SCENARIO_SUFFIXES:
            candidate = os.path.join(self.base_path, f"{target}{suffix}")
            if os.path.isfile(candidate):
                return self.load_scenario(candidate)
        raise ScenarioConfigError(f"프리셋이나 시나리오 파일이 아닙니다 (프리셋: {', '.join(sorted(PRESETS))})",
                                  source=target)

    def load_all_scenarios(self) -> Dict[str, Scenario]:
        """
        base_path 의 모든 시나리오 파일 로드

        Returns:
            시나리오 이름과 Scenario 의 딕셔너리
        """
        scenarios = {}
        if not os.path.exists(self.base_path):
            logger.warning(f"시나리오 디렉토리를 찾을 수 없음: {self.base_path}")
            return scenarios

        for filename in sorted(os.listdir(self.base_path)):
            if filename.endswith(SCENARIO_SUFFIXES):
                scenario = self.load_scenario(os.path.join(self.base_path, filename))
                scenarios[scenario.name] = scenario

        return scenarios
