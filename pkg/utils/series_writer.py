"""
시계열 출력 (csv / json / xlsx)

모든 쓰기는 대상 디렉토리의 임시 파일에 기록한 뒤 os.replace 로 교체한다.
"""
import os
import json
import logging
import tempfile
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, Optional, Union

import numpy as np
import pandas as pd
from openpyxl.utils import get_column_letter

from engine.observables import TimeSeries

logger = logging.getLogger(__name__)

COLUMNS = ['t_seconds', 'dimensionless_time', 'value', 'series_label']
FLOAT_FORMAT = '%.17g'


def to_native(value: Any) -> Any:
    """numpy 타입을 JSON 직렬화 가능한 파이썬 기본 타입으로 변환"""
    if isinstance(value, dict):
        return {str(k): to_native(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_native(v) for v in value]
    if isinstance(value, np.ndarray):
        return [to_native(v) for v in value.tolist()]
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


def _atomic_write(path: Path, write: Callable[[str], None], suffix: str = '.tmp') -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=str(path.parent), prefix=f'.{path.name}.', suffix=suffix)
    os.close(fd)
    try:
        write(tmp)
        os.replace(tmp, path)
    except Exception:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise


def _write_json(path: Path, payload: Dict[str, Any]) -> None:
    text = json.dumps(to_native(payload), indent=2, sort_keys=True, ensure_ascii=False, allow_nan=False)

    def write(tmp: str) -> None:
        with open(tmp, 'w', encoding='utf-8', newline='\n') as f:
            f.write(text + '\n')

    _atomic_write(path, write)


class SeriesWriter:
    """TimeSeries 저장 유틸리티"""

    @staticmethod
    def to_frame(series: Union[TimeSeries, Iterable[TimeSeries]]) -> pd.DataFrame:
        """
        시계열들을 long 형식 DataFrame 으로 변환

        Args:
            series: TimeSeries 또는 그 목록

        Returns:
            컬럼 t_seconds, dimensionless_time, value, series_label
        """
        items = [series] if isinstance(series, TimeSeries) else list(series)
        frames = [
            pd.DataFrame({
                't_seconds': s.times,
                'dimensionless_time': s.dimensionless_times,
                'value': s.values,
                'series_label': s.label,
            }, columns=COLUMNS)
            for s in items if len(s)
        ]
        if not frames:
            return pd.DataFrame(columns=COLUMNS)
        return pd.concat(frames, ignore_index=True)

    @staticmethod
    def save_csv(series, output_path: str) -> None:
        df = SeriesWriter.to_frame(series)
        _atomic_write(Path(output_path),
                      lambda tmp: df.to_csv(tmp, index=False, float_format=FLOAT_FORMAT,
                                            lineterminator='\n', encoding='utf-8'))

    @staticmethod
    def save_json(series, output_path: str, scenario: Optional[Dict[str, Any]] = None,
                  report: Optional[Dict[str, Any]] = None) -> None:
        items = [series] if isinstance(series, TimeSeries) else list(series)
        payload = {
            'metadata': {'scenario': scenario, 'report': report},
            'series': [
                {
                    'label': s.label,
                    'scale_name': s.scale_name,
                    'time_scale': s.time_scale,
                    'metadata': s.metadata,
                    't_seconds': s.times,
                    'dimensionless_time': s.dimensionless_times,
                    'value': s.values,
                }
                for s in items
            ],
        }
        _write_json(Path(output_path), payload)

    @staticmethod
    def save_xlsx(series, output_path: str, scenario: Optional[Dict[str, Any]] = None) -> None:
        df = SeriesWriter.to_frame(series)
        sheets = {'series': df}
        if scenario is not None:
            sheets['scenario'] = pd.DataFrame(
                [(k, json.dumps(to_native(v), ensure_ascii=False)) for k, v in scenario.items()],
                columns=['field', 'value'],
            )

        def write(tmp: str) -> None:
            with pd.ExcelWriter(tmp, engine='openpyxl') as writer:
                for sheet_name, frame in sheets.items():
                    frame.to_excel(writer, sheet_name=sheet_name, index=False)

                    # 컬럼 너비 자동 조정
                    worksheet = writer.sheets[sheet_name]
                    for col_idx, column in enumerate(frame.columns, start=1):
                        lengths = frame[column].astype(str).map(len)
                        column_length = max(lengths.max() if len(lengths) else 0, len(column))
                        worksheet.column_dimensions[get_column_letter(col_idx)].width = min(column_length + 2, 50)

        _atomic_write(Path(output_path), write, suffix='.xlsx')


def emit(series: Union[TimeSeries, List[TimeSeries]], fmt: str, path: str,
         scenario: Optional[Dict[str, Any]] = None, report: Optional[Dict[str, Any]] = None) -> None:
    """
    시계열 저장

    Args:
        series: TimeSeries 또는 그 목록
        fmt: 'csv' | 'json' | 'xlsx'
        path: 출력 경로
        scenario: JSON/xlsx 메타데이터에 실을 시나리오 dict
        report: JSON 메타데이터에 실을 비교 보고서
    """
    try:
        if fmt == 'csv':
            SeriesWriter.save_csv(series, path)
        elif fmt == 'json':
            SeriesWriter.save_json(series, path, scenario, report)
        elif fmt == 'xlsx':
            SeriesWriter.save_xlsx(series, path, scenario)
        else:
            raise ValueError(f"지원하지 않는 출력 형식: {fmt}")
        logger.info(f"{fmt.upper()} 파일 저장 완료: {path}")
    except Exception as e:
        logger.error(f"시계열 저장 실패 ({path}): {str(e)}")
        raise


def save_report(report: Dict[str, Any], path: str) -> None:
    """비교/점검 보고서를 JSON 으로 저장"""
    _write_json(Path(path), report)
    logger.info(f"보고서 저장 완료: {path}")
