#!/usr/bin/env python
# -*- coding: utf-8 -*-

import sys
import logging
import argparse
from pathlib import Path
from datetime import datetime
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Tuple

from config.sim_config import SUPPORTED_FORMATS, SimulationConfig, load_config
from engine.errors import EngineError
from processors.invariant_checker import InvariantChecker
from processors.presets import list_presets
from processors.scenario import Scenario
from processors.scenario_processor import ScenarioProcessor
from utils.scenario_loader import ScenarioLoader
from utils.series_writer import emit, save_report

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1


def setup_logging(log_dir: str, level: str = 'INFO') -> None:
    """파일(일자별) + 콘솔 로깅 설정"""
    # 로그 디렉토리 생성
    Path(log_dir).mkdir(parents=True, exist_ok=True)

    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[
            logging.FileHandler(f'{log_dir}/eqo_sim_{datetime.now().strftime("%Y%m%d")}.log', encoding='utf-8'),
            logging.StreamHandler()
        ]
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='eqo-sim',
        description='이차 보손 해밀토니안(EQO) 기반 패리티 킥 디커플링 시뮬레이터',
    )
    parser.add_argument('--log-level', default='INFO', help='로그 레벨 (기본값: INFO)')
    sub = parser.add_subparsers(dest='command', required=True)

    run = sub.add_parser('run', help='프리셋 또는 시나리오 파일 실행')
    run.add_argument('targets', nargs='+', help='프리셋 이름 또는 시나리오 파일 경로(.json/.yaml)')
    run.add_argument('--format', choices=SUPPORTED_FORMATS, help='출력 형식 (기본값: EQO_DEFAULT_FORMAT)')
    run.add_argument('--out', help='출력 파일 경로 (대상이 여러 개면 디렉토리)')
    run.add_argument('--tolerance-report', action='store_true', help='비교 보고서를 <출력>.report.json 으로 저장')

    sub.add_parser('list-presets', help='기본 제공 프리셋 목록')

    check = sub.add_parser('check', help='시계열 저장 없이 시나리오 불변량 점검')
    check.add_argument('targets', nargs='+', help='프리셋 이름 또는 시나리오 파일 경로')
    check.add_argument('--decoupling', action='store_true', help='τ₀, τ₀/2, τ₀/4 디커플링 수렴 측정 포함')
    check.add_argument('--out', help='보고서 출력 디렉토리')
    check.add_argument('--tolerance-report', action='store_true', help='점검 보고서를 JSON 으로 저장')
    return parser


def output_target(scenario: Scenario, config: SimulationConfig, fmt: Optional[str],
                  out: Optional[str], batch: bool) -> Tuple[str, str]:
    """(형식, 경로) 결정: 명령행 > 시나리오 output > 설정 기본값"""
    fmt = fmt or scenario.output.format or config.default_format
    filename = f'{scenario.name}.{fmt}'
    if out and batch:
        return fmt, str(Path(out) / filename)
    if out:
        return fmt, out
    if scenario.output.path:
        return fmt, scenario.output.path
    return fmt, str(Path(config.output_dir) / filename)


def report_path(output_path: str) -> str:
    path = Path(output_path)
    return str(path.with_name(f'{path.stem}.report.json'))


def run_one(scenario: Scenario, config: SimulationConfig, args, batch: bool) -> bool:
    """시나리오 하나 실행 후 저장. 성공 여부 반환"""
    try:
        result = ScenarioProcessor(config).run(scenario)
        fmt, path = output_target(scenario, config, args.format, args.out, batch)
        emit(result.series, fmt, path, scenario=scenario.to_dict(), report=result.report)
        if args.tolerance_report:
            # 실행 시간은 보고서 파일에만 기록 (시계열 출력은 입력이 같으면 바이트 동일)
            save_report(dict(result.report, elapsed_s=round(result.elapsed_s, 3)), report_path(path))
        print(f"✅ {scenario.name}: {path} ({result.elapsed_s:.1f}s)")
        return True
    except (EngineError, OSError) as e:
        logger.error(f"{scenario.name} 실행 실패: {str(e)}")
        print(f"❌ {scenario.name}: {e}", file=sys.stderr)
        return False


def resolve_targets(targets: List[str], config: SimulationConfig) -> List[Scenario]:
    loader = ScenarioLoader(config.scenario_dir)
    return [loader.resolve(target) for target in targets]


def command_run(args, config: SimulationConfig) -> int:
    scenarios = resolve_targets(args.targets, config)
    batch = len(scenarios) > 1
    workers = min(config.max_workers, len(scenarios))

    logger.info(f"실행 대상 {len(scenarios)}개 (동시 실행 {workers})")
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(lambda s: run_one(s, config, args, batch), scenarios))
    else:
        outcomes = [run_one(s, config, args, batch) for s in scenarios]

    failed = outcomes.count(False)
    print("\n" + "=" * 50)
    print(f"완료: {len(outcomes) - failed}/{len(outcomes)}")
    print("=" * 50)
    return EXIT_OK if failed == 0 else EXIT_FAILURE


def command_list_presets(config: SimulationConfig) -> int:
    print("\n사용 가능한 프리셋:")
    for name, description in list_presets():
        print(f"  {name:<8} {description}")

    scenarios = ScenarioLoader(config.scenario_dir).load_all_scenarios()
    if scenarios:
        print(f"\n시나리오 파일 ({config.scenario_dir}):")
        for name, scenario in scenarios.items():
            print(f"  {name:<8} {scenario.description}")
    return EXIT_OK


def command_check(args, config: SimulationConfig) -> int:
    all_passed = True
    for scenario in resolve_targets(args.targets, config):
        report = InvariantChecker(config).check(scenario)
        if args.decoupling and scenario.kicks is not None and scenario.observable == 'variance':
            study = ScenarioProcessor(config).decoupling_study(scenario)
            report['decoupling'] = study
            report['passed'] = report['passed'] and study['monotone_decreasing']

        failed = [c['name'] for c in report['checks'] if not c['passed']]
        status = "통과" if report['passed'] else "실패"
        print(f"{scenario.name}: {status} ({len(report['checks']) - len(failed)}/{len(report['checks'])})")
        for name in failed:
            print(f"  - {name}")
        if 'decoupling' in report:
            for row in report['decoupling']['rows']:
                print(f"  τ₀={row['tau0_s']:.3e}s 최대 편차 {row['max_deviation']:.4e}")

        if args.tolerance_report:
            out_dir = Path(args.out or config.output_dir)
            save_report(report, str(out_dir / f'{scenario.name}_check.json'))
        all_passed = all_passed and report['passed']
    return EXIT_OK if all_passed else EXIT_FAILURE


def main(argv: Optional[List[str]] = None) -> int:
    """메인 실행 함수"""
    args = build_parser().parse_args(argv)
    config = load_config()
    setup_logging(config.log_dir, args.log_level)

    try:
        if args.command == 'run':
            return command_run(args, config)
        if args.command == 'list-presets':
            return command_list_presets(config)
        return command_check(args, config)
    except EngineError as e:
        logger.error(f"실행 중단: {str(e)}")
        print(f"오류: {e}", file=sys.stderr)
        return EXIT_FAILURE
    finally:
        logger.info("프로그램 종료")


if __name__ == "__main__":
    sys.exit(main())
