import json

import pandas as pd
import pytest

import main


@pytest.fixture
def cli_env(tmp_path, monkeypatch):
    monkeypatch.setenv('EQO_OUTPUT_DIR', str(tmp_path / 'output'))
    monkeypatch.setenv('EQO_LOG_DIR', str(tmp_path / 'logs'))
    monkeypatch.setenv('EQO_SCENARIO_DIR', str(tmp_path / 'scenarios'))
    monkeypatch.setenv('EQO_MAX_WORKERS', '2')
    return tmp_path


@pytest.fixture
def scenario_file(cli_env, make_scenario_dict):
    path = cli_env / 'small.json'
    path.write_text(json.dumps(make_scenario_dict(), indent=2), encoding='utf-8')
    return path


def test_list_presets(cli_env, capsys):
    assert main.main(['list-presets']) == 0
    out = capsys.readouterr().out
    for name in ('fig1a', 'fig1b', 'fig2a', 'fig2b'):
        assert name in out


def test_list_presets_includes_scenario_files(cli_env, capsys, make_scenario_dict):
    scenario_dir = cli_env / 'scenarios'
    scenario_dir.mkdir()
    (scenario_dir / 'extra.json').write_text(
        json.dumps(make_scenario_dict(name='extra_run', description='from directory')), encoding='utf-8')
    assert main.main(['list-presets']) == 0
    out = capsys.readouterr().out
    assert 'extra_run' in out
    assert 'from directory' in out


def test_run_writes_csv_and_report(scenario_file, cli_env):
    out = cli_env / 'result.csv'
    assert main.main(['run', str(scenario_file), '--out', str(out), '--tolerance-report']) == 0
    df = pd.read_csv(out)
    assert df.loc[0, 'value'] == 1.0
    report = json.loads((cli_env / 'result.report.json').read_text(encoding='utf-8'))
    assert report['scenario'] == 'small_survival'
    assert report['elapsed_s'] >= 0.0


def test_run_batch_into_directory(scenario_file, cli_env, make_scenario_dict):
    second = cli_env / 'second.json'
    second.write_text(json.dumps(make_scenario_dict(name='second')), encoding='utf-8')
    out_dir = cli_env / 'batch'
    assert main.main(['run', str(scenario_file), str(second), '--out', str(out_dir), '--format', 'json']) == 0
    payload = json.loads((out_dir / 'second.json').read_text(encoding='utf-8'))
    assert payload['metadata']['scenario']['name'] == 'second'
    assert (out_dir / 'small_survival.json').exists()


def test_run_default_output_location(scenario_file, cli_env):
    assert main.main(['run', str(scenario_file)]) == 0
    assert (cli_env / 'output' / 'small_survival.csv').exists()


def test_run_bad_config_exits_non_zero(cli_env, capsys):
    bad = cli_env / 'bad.json'
    bad.write_text('{"name": "bad", "observable": "energy"}', encoding='utf-8')
    assert main.main(['run', str(bad)]) == 1
    assert 'observable' in capsys.readouterr().err


def test_check_command(scenario_file, cli_env):
    assert main.main(['check', str(scenario_file), '--tolerance-report', '--out', str(cli_env / 'checks')]) == 0
    report = json.loads((cli_env / 'checks' / 'small_survival_check.json').read_text(encoding='utf-8'))
    assert report['passed']


def test_unknown_subcommand_is_usage_error(cli_env):
    with pytest.raises(SystemExit) as info:
        main.main(['frobnicate'])
    assert info.value.code == 2
