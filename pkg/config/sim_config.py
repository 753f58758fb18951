import os
import logging
from dataclasses import dataclass, fields
from dotenv import load_dotenv

# .env 파일 로드
load_dotenv()

logger = logging.getLogger(__name__)

SUPPORTED_FORMATS = ('csv', 'json', 'xlsx')


@dataclass
class SimulationConfig:
    """시뮬레이션 공통 설정"""
    expm_tol: float = 1e-13
    drift_tol: float = 1e-9
    fock_nmax: int = 5
    lindblad_local_error: float = 1e-9
    output_dir: str = "output"
    log_dir: str = "logs"
    scenario_dir: str = "scenarios"
    max_workers: int = 4
    default_format: str = "csv"


def _env(name: str, default, cast):
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return cast(raw)
    except ValueError:
        logger.warning(f"환경변수 {name}={raw!r} 를 해석할 수 없어 기본값 {default} 사용")
        return default


def load_config() -> SimulationConfig:
    """환경변수(.env 포함)에서 시뮬레이션 설정 로드"""
    config = SimulationConfig(
        expm_tol=_env('EQO_EXPM_TOL', 1e-13, float),
        drift_tol=_env('EQO_DRIFT_TOL', 1e-9, float),
        fock_nmax=_env('EQO_FOCK_NMAX', 5, int),
        lindblad_local_error=_env('EQO_LINDBLAD_LOCAL_ERROR', 1e-9, float),
        output_dir=_env('EQO_OUTPUT_DIR', 'output', str),
        log_dir=_env('EQO_LOG_DIR', 'logs', str),
        scenario_dir=_env('EQO_SCENARIO_DIR', 'scenarios', str),
        max_workers=_env('EQO_MAX_WORKERS', 4, int),
        default_format=_env('EQO_DEFAULT_FORMAT', 'csv', str).lower(),
    )

    # 설정 검증
    validate_config(config)

    return config


def validate_config(config: SimulationConfig) -> SimulationConfig:
    """범위를 벗어난 값은 경고 후 기본값으로 되돌림"""
    defaults = SimulationConfig()
    checks = {
        'expm_tol': lambda v: 0 < v <= 1e-6,
        'drift_tol': lambda v: v > 0,
        'fock_nmax': lambda v: v >= 1,
        'lindblad_local_error': lambda v: 0 < v < 1,
        'max_workers': lambda v: v >= 1,
        'default_format': lambda v: v in SUPPORTED_FORMATS,
    }

    invalid = []
    for f in fields(config):
        check = checks.get(f.name)
        if check and not check(getattr(config, f.name)):
            invalid.append(f.name)
            setattr(config, f.name, getattr(defaults, f.name))

    if invalid:
        logger.warning(f"설정값 범위 오류 - 기본값 사용: {', '.join(invalid)}")

    return config
